"""Gosper-style arithmetic on multidimensional continued fractions."""

from ._mcfgosper import (
    DivisionByZero,
    InputExhausted,
    Mcf,
    McfError,
    PrecisionExhausted,
    Terminated,
    bilinear,
    expand,
    experiment,
    fit_slope,
    moebius,
    product_forms,
    sum_forms,
    verify_bilinear,
    verify_moebius,
)

__all__ = [
    "DivisionByZero",
    "InputExhausted",
    "Mcf",
    "McfError",
    "PrecisionExhausted",
    "Terminated",
    "bilinear",
    "expand",
    "experiment",
    "fit_slope",
    "moebius",
    "product_forms",
    "sum_forms",
    "verify_bilinear",
    "verify_moebius",
]

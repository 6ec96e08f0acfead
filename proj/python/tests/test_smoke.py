import pytest

import mcfgosper as mg

E1_MATRIX = [[3, 0, 0], [0, -2, 0], [0, 0, 6]]


def e1_input():
    return mg.Mcf.periodic([(1, 1)], [(1, 0), (2, 1)])


def test_expand_cube_root():
    assert mg.expand("cbrt:2", 2, 4) == [(1, 1), (1, 0), (2, 1), (1, 0)]


def test_expand_terminates():
    with pytest.raises(mg.Terminated):
        mg.expand("rational:3/2", 1, 5)


def test_moebius_example():
    run = mg.moebius(e1_input(), E1_MATRIX, max_outputs=7)
    assert run["outputs"] == [(0, -1), (2, 1), (2, 0), (2, 2), (1, 1), (5, 3), (2, 1)]
    assert run["inputs_at_output"] == [3, 5, 8, 8, 9, 11, 13]
    assert run["stop"] == "max-outputs"


def test_partial_output_matches_plain():
    plain = mg.moebius(e1_input(), E1_MATRIX, max_outputs=20)
    part = mg.moebius(e1_input(), E1_MATRIX, max_outputs=20, partial_output=True)
    assert plain["outputs"] == part["outputs"]


def test_bilinear_sum_of_square_roots():
    x = mg.Mcf.from_source("sqrt:2", 1)
    run = mg.bilinear(x, x, op="sum", max_outputs=6)
    assert run["outputs"] == [(2,), (1,), (4,), (1,), (4,), (1,)]


def test_verify_against_oracle():
    run = mg.moebius(mg.Mcf.from_source("cbrt:3", 2), [[3, 5, 0], [5, 3, 0], [1, 0, 2]], max_outputs=10)
    rep = mg.verify_moebius(run["outputs"], "cbrt:3", 2, [[3, 5, 0], [5, 3, 0], [1, 0, 2]])
    assert rep["agreed"], rep["message"]
    bad = [list(t) for t in run["outputs"]]
    bad[4][0] += 1
    rep = mg.verify_moebius(bad, "cbrt:3", 2, [[3, 5, 0], [5, 3, 0], [1, 0, 2]])
    assert rep["mismatch_index"] == 4


def test_big_integers_round_trip():
    big = 10**40 + 7
    x = mg.Mcf.finite([(big,)])
    assert x.prefix(1) == [(big,)]
    run = mg.moebius(mg.Mcf.periodic([(1,)], [(2,)]), [[big, 0], [0, 1]], max_outputs=1)
    assert run["outputs"][0][0] > 10**40


def test_input_exhausted_is_reported():
    run = mg.moebius(mg.Mcf.finite([(1,), (2,)]), [[1, 1], [0, 1]], max_outputs=9)
    assert run["stop"] == "input-exhausted"


def test_bad_arguments():
    with pytest.raises(ValueError):
        mg.expand("nope:1", 1, 3)
    with pytest.raises(TypeError):
        mg.Mcf.finite([(1.5,)])


def test_fit_slope_and_experiment():
    assert mg.fit_slope([1, 2, 3, 4]) == pytest.approx(1.0)
    res = mg.experiment(trials=3, max_outputs=20, seed=3)
    assert res["csv"].startswith("trial_id,")
    assert 0 < res["mean_slope"] < 1
    assert mg.experiment(trials=3, max_outputs=20, seed=3)["csv"] == res["csv"]

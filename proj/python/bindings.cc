#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "mcf/bilinear.h"
#include "mcf/errors.h"
#include "mcf/experiments.h"
#include "mcf/io.h"
#include "mcf/mcf.h"
#include "mcf/mobius.h"
#include "mcf/oracle.h"
#include "mcf/partial_output.h"
#include "mcf/real_source.h"

namespace py = pybind11;
using namespace mcf;

namespace {

// Python ints cross the boundary as decimal strings; values are unbounded.
BigInt to_big(const py::handle& h) {
  if (!py::isinstance<py::int_>(h)) throw py::type_error("expected an int");
  return BigInt(py::str(h).cast<std::string>());
}

py::int_ from_big(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

Tuple to_tuple(const py::handle& h) {
  Tuple t;
  for (auto v : h) t.push_back(to_big(v));
  return t;
}

std::vector<Tuple> to_tuples(const py::handle& h) {
  std::vector<Tuple> out;
  for (auto v : h) out.push_back(to_tuple(v));
  return out;
}

py::tuple from_tuple(const Tuple& t) {
  py::tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = from_big(t[i]);
  return out;
}

py::list from_tuples(const std::vector<Tuple>& ts) {
  py::list out;
  for (const auto& t : ts) out.append(from_tuple(t));
  return out;
}

Matrix to_matrix(const py::handle& h) {
  std::vector<std::vector<BigInt>> rows;
  for (auto r : h) rows.push_back(to_tuple(r));
  return Matrix::from_rows(rows);
}

py::list from_matrix(const Matrix& c) {
  py::list rows;
  for (std::size_t r = 0; r < c.rows(); ++r) rows.append(py::list(from_tuple(c.row(r))));
  return rows;
}

FormFamily to_forms(const py::handle& h) {
  FormFamily f;
  for (auto c : h) f.push_back(to_matrix(c));
  return f;
}

py::list from_forms(const FormFamily& f) {
  py::list out;
  for (const auto& c : f) out.append(from_matrix(c));
  return out;
}

py::dict from_run(const RunResult& r) {
  py::dict d;
  d["outputs"] = from_tuples(r.outputs);
  d["inputs_at_output"] = r.log.inputs_at_output;
  d["stop"] = to_string(r.stop);
  d["exhausted_side"] = r.exhausted_side;
  d["steps"] = steps_csv(r.log, true);
  return d;
}

py::dict from_verify(const VerifyReport& rep) {
  py::dict d;
  d["agreed"] = rep.agreed;
  d["mismatch_index"] = rep.mismatch_index ? py::cast(*rep.mismatch_index) : py::none();
  d["undecidable"] = rep.undecidable;
  d["expected"] = from_tuples(rep.expected);
  d["message"] = rep.message;
  return d;
}

FormFamily forms_or_op(const py::object& forms, const std::string& op, std::size_t m) {
  if (!forms.is_none()) return to_forms(forms);
  if (op == "sum") return sum_forms(m);
  if (op == "product") return product_forms(m);
  throw py::value_error("give forms or op='sum'/'product'");
}

}  // namespace

PYBIND11_MODULE(_mcfgosper, mod) {
  mod.doc() = "Gosper-style arithmetic on multidimensional continued fractions";

  auto base = py::register_exception<McfError>(mod, "McfError", PyExc_RuntimeError);
  py::register_exception<DivisionByZero>(mod, "DivisionByZero", base.ptr());
  py::register_exception<PrecisionExhausted>(mod, "PrecisionExhausted", base.ptr());
  py::register_exception<InputExhausted>(mod, "InputExhausted", base.ptr());
  py::register_exception<Terminated>(mod, "Terminated", base.ptr());

  py::class_<Mcf>(mod, "Mcf")
      .def_static("finite", [](const py::object& steps) { return Mcf::finite(to_tuples(steps)); },
                  py::arg("steps"))
      .def_static("periodic",
                  [](const py::object& pre, const py::object& per) {
                    return Mcf::periodic(to_tuples(pre), to_tuples(per));
                  },
                  py::arg("preperiod"), py::arg("period"))
      .def_static("from_json", &parse_mcf_json, py::arg("text"))
      .def_static("from_source",
                  [](const std::string& spec, std::size_t m, std::size_t max_bits) {
                    return jpa_stream(parse_source(spec, m), JpaOptions{64, max_bits});
                  },
                  py::arg("source"), py::arg("m"), py::arg("max_bits") = 1 << 14,
                  "Lazy Jacobi-Perron expansion of a source such as 'cbrt:2'")
      .def_property_readonly("m", &Mcf::dimension)
      .def("prefix", [](const Mcf& x, std::size_t n) { return from_tuples(x.prefix(n)); },
           py::arg("n"))
      .def("to_json", &mcf_to_json)
      .def("__repr__", [](const Mcf& x) { return "<Mcf " + x.label() + ">"; });

  mod.def("expand",
          [](const std::string& source, std::size_t m, std::size_t steps, std::size_t max_bits) {
            return from_tuples(jpa_expand(parse_source(source, m), steps, JpaOptions{64, max_bits}));
          },
          py::arg("source"), py::arg("m"), py::arg("steps"), py::arg("max_bits") = 4096,
          "First `steps` Jacobi-Perron quotient tuples of a source");

  mod.def("moebius",
          [](const Mcf& x, const py::object& matrix, std::size_t max_outputs, std::size_t max_steps,
             bool partial_output, bool allow_singular) {
            const Matrix c = to_matrix(matrix);
            const RunLimits lim{max_outputs, max_steps};
            RunResult r;
            {
              py::gil_scoped_release nogil;
              r = partial_output ? run_with_partial(x, c, lim, {}, allow_singular)
                                 : run_mobius(x, c, lim, {}, allow_singular);
            }
            return from_run(r);
          },
          py::arg("x"), py::arg("matrix"), py::arg("max_outputs") = 10,
          py::arg("max_steps") = 100000, py::arg("partial_output") = false,
          py::arg("allow_singular") = false);

  mod.def("bilinear",
          [](const Mcf& x, const Mcf& y, const py::object& forms, const std::string& op,
             std::size_t max_outputs, std::size_t max_steps, bool partial_output) {
            const FormFamily f = forms_or_op(forms, op, x.dimension());
            const RunLimits lim{max_outputs, max_steps};
            RunResult r;
            {
              py::gil_scoped_release nogil;
              r = partial_output ? run_bilinear_with_partial(x, y, f, lim)
                                 : run_bilinear(x, y, f, lim);
            }
            return from_run(r);
          },
          py::arg("x"), py::arg("y"), py::arg("forms") = py::none(), py::arg("op") = "",
          py::arg("max_outputs") = 10, py::arg("max_steps") = 100000,
          py::arg("partial_output") = false);

  mod.def("verify_moebius",
          [](const py::object& outputs, const std::string& source, std::size_t m,
             const py::object& matrix, std::size_t max_bits) {
            const JpaOptions opts{64, max_bits};
            return from_verify(verify_prefix(
                to_tuples(outputs), eval_moebius(parse_source(source, m), to_matrix(matrix), opts), opts));
          },
          py::arg("outputs"), py::arg("source"), py::arg("m"), py::arg("matrix"),
          py::arg("max_bits") = 4096, "Check engine outputs against the oracle image of a source");

  mod.def("verify_bilinear",
          [](const py::object& outputs, const std::string& x, const std::string& y, std::size_t m,
             const py::object& forms, const std::string& op, std::size_t max_bits) {
            const JpaOptions opts{64, max_bits};
            const auto image = eval_bilinear(parse_source(x, m), parse_source(y, m),
                                             forms_or_op(forms, op, m), opts);
            return from_verify(verify_prefix(to_tuples(outputs), image, opts));
          },
          py::arg("outputs"), py::arg("x"), py::arg("y"), py::arg("m"),
          py::arg("forms") = py::none(), py::arg("op") = "", py::arg("max_bits") = 4096);

  mod.def("sum_forms", [](std::size_t m) { return from_forms(sum_forms(m)); }, py::arg("m"));
  mod.def("product_forms", [](std::size_t m) { return from_forms(product_forms(m)); }, py::arg("m"));

  mod.def("fit_slope",
          [](const std::vector<std::size_t>& inputs) { return fit_slope(inputs).get_d(); },
          py::arg("inputs_at_output"));

  mod.def("experiment",
          [](const std::string& mode, std::size_t m, std::size_t trials, std::size_t max_outputs,
             std::uint64_t bound, std::uint64_t matrix_bound, std::uint64_t seed, std::size_t jobs,
             bool partial_output) {
            TrialConfig cfg;
            cfg.mode = parse_trial_mode(mode);
            cfg.m = m;
            cfg.trials = trials;
            cfg.max_outputs = max_outputs;
            cfg.bound = bound;
            cfg.matrix_bound = matrix_bound;
            cfg.seed = seed;
            cfg.jobs = jobs;
            cfg.partial_output = partial_output;
            SuiteResult res;
            {
              py::gil_scoped_release nogil;
              res = run_suite(cfg);
            }
            py::dict d;
            d["csv"] = res.csv();
            d["mean_slope"] = res.mean_slope() ? py::cast(res.mean_slope()->get_d()) : py::none();
            d["max_slope"] = res.max_slope() ? py::cast(res.max_slope()->get_d()) : py::none();
            d["guard_hits"] = res.guard_hits();
            return d;
          },
          py::arg("mode") = "random-mcf", py::arg("m") = 2, py::arg("trials") = 100,
          py::arg("max_outputs") = 500, py::arg("bound") = 1000, py::arg("matrix_bound") = 0,
          py::arg("seed") = 1, py::arg("jobs") = 1, py::arg("partial_output") = false);
}

#include "mcf/cli.h"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

#include "mcf/bilinear.h"
#include "mcf/errors.h"
#include "mcf/experiments.h"
#include "mcf/io.h"
#include "mcf/mobius.h"
#include "mcf/oracle.h"
#include "mcf/partial_output.h"
#include "mcf/real_source.h"

namespace mcf {

namespace {

struct EngineFlags {
  std::size_t max_outputs = 10;
  std::size_t max_steps = 100000;
  std::string log_path;
  std::string out_path;
  bool partial = false;
  std::string format = "text";
  std::size_t max_bits = 1 << 14;
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--max-outputs,-M", f.max_outputs, "Stop after this many output tuples")
      ->capture_default_str();
  cmd->add_option("--max-steps,-N", f.max_steps, "Bound on total transitions (inputs + outputs)")
      ->capture_default_str();
  cmd->add_option("--log", f.log_path, "Write per-step CSV to this file");
  cmd->add_option("--out,-o", f.out_path, "Write outputs to this file instead of stdout");
  cmd->add_flag("--partial-output", f.partial, "Shear off partial outputs early");
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--max-bits", f.max_bits, "Precision budget for source expansion")
      ->capture_default_str();
}

// An input given either as an MCF JSON file or as a source spec.
struct InputFlags {
  std::string file;
  std::string source;
};

JpaOptions jpa_opts(std::size_t max_bits) { return JpaOptions{64, std::max<std::size_t>(max_bits, 64)}; }

Mcf load_stream(const InputFlags& in, std::size_t m, std::size_t max_bits, const char* what) {
  if (!in.file.empty() && !in.source.empty())
    throw CLI::ValidationError(std::string(what) + ": give a file or a source, not both");
  if (!in.file.empty()) return parse_mcf_json(read_file(in.file));
  if (!in.source.empty()) return jpa_stream(parse_source(in.source, m), jpa_opts(max_bits));
  throw CLI::ValidationError(std::string(what) + ": an input file or source is required");
}

// The real value behind an input, for the oracle.
SourcePtr load_value(const InputFlags& in, std::size_t m) {
  if (!in.file.empty()) return mcf_source(parse_mcf_json(read_file(in.file)));
  return parse_source(in.source, m);
}

void emit(const std::vector<Tuple>& tuples, std::size_t m, const EngineFlags& f, std::ostream& out) {
  const std::string body = f.format == "json" ? tuples_to_json(tuples, m) + "\n" : tuples_to_text(tuples);
  if (f.out_path.empty())
    out << body;
  else
    write_file(f.out_path, body);
}

int finish_run(const RunResult& res, std::size_t m, const EngineFlags& f, std::ostream& out,
               std::ostream& err) {
  emit(res.outputs, m, f, out);
  if (!f.log_path.empty()) write_file(f.log_path, steps_csv(res.log, f.partial));
  switch (res.stop) {
    case StopReason::MaxOutputs: return kExitOk;
    case StopReason::GuardHit:
      err << "guard hit: " << res.log.steps.size() << " transitions, " << res.outputs.size()
          << " outputs\n";
      return kExitGuardHit;
    case StopReason::InputExhausted:
      err << "input stream '" << res.exhausted_side << "' exhausted after " << res.outputs.size()
          << " outputs\n";
      return kExitInputExhausted;
  }
  return kExitOk;
}

FormFamily load_forms(const std::string& file, const std::string& op, std::size_t m) {
  if (!file.empty() && !op.empty()) throw CLI::ValidationError("give --forms or --op, not both");
  if (!file.empty()) return parse_forms_json(read_file(file));
  if (op == "sum") return sum_forms(m);
  if (op == "product") return product_forms(m);
  throw CLI::ValidationError("one of --forms or --op is required");
}

// Dimension from whichever input carries it; --m is required for sources.
std::size_t infer_m(std::size_t m_flag, const std::vector<const InputFlags*>& ins) {
  for (const auto* in : ins)
    if (!in->file.empty()) {
      const std::size_t m = parse_mcf_json(read_file(in->file)).dimension();
      if (m_flag && m_flag != m) throw CLI::ValidationError("--m disagrees with the input file");
      return m;
    }
  if (!m_flag) throw CLI::ValidationError("--m is required when inputs are given as sources");
  return m_flag;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moebius and bilinear transforms of multidimensional continued fractions", "mcf"};
  app.require_subcommand(1);

  // expand
  auto* expand = app.add_subcommand("expand", "Jacobi-Perron expansion of a real tuple");
  std::string ex_source;
  std::size_t ex_m = 0, ex_steps = 10, ex_bits = 1 << 14;
  std::string ex_format = "text";
  expand->add_option("--source", ex_source, "rational:P/Q,..., sqrt:D, cbrt:D or root:K:D")->required();
  expand->add_option("--m", ex_m, "Dimension")->required()->check(CLI::PositiveNumber);
  expand->add_option("--steps", ex_steps, "Number of quotient tuples")->capture_default_str();
  expand->add_option("--format", ex_format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  expand->add_option("--max-bits", ex_bits)->capture_default_str();

  // moebius
  auto* moebius = app.add_subcommand("moebius", "Moebius transform of one MCF");
  InputFlags mo_in;
  std::string mo_matrix;
  std::size_t mo_m = 0;
  EngineFlags mo_f;
  moebius->add_option("--input", mo_in.file, "MCF JSON file");
  moebius->add_option("--source", mo_in.source, "Expand this source as the input");
  moebius->add_option("--m", mo_m, "Dimension (needed with --source)");
  moebius->add_option("--matrix", mo_matrix, "Row-major matrix JSON file")->required();
  add_engine_flags(moebius, mo_f);

  // bilinear
  auto* bilinear = app.add_subcommand("bilinear", "Bilinear transform of two MCFs");
  InputFlags bi_x, bi_y;
  std::string bi_forms, bi_op;
  std::size_t bi_m = 0;
  bool bi_dump = false;
  EngineFlags bi_f;
  bilinear->add_option("--x", bi_x.file, "MCF JSON file for x");
  bilinear->add_option("--y", bi_y.file, "MCF JSON file for y");
  bilinear->add_option("--x-source", bi_x.source, "Expand this source as x");
  bilinear->add_option("--y-source", bi_y.source, "Expand this source as y");
  bilinear->add_option("--m", bi_m, "Dimension (needed with sources or --op)");
  bilinear->add_option("--forms", bi_forms, "JSON array of m+1 matrices");
  bilinear->add_option("--op", bi_op, "Synthesize the form family")->check(CLI::IsMember({"sum", "product"}));
  bilinear->add_flag("--dump-forms", bi_dump, "Print the form family on stderr before running");
  add_engine_flags(bilinear, bi_f);

  // verify
  auto* verify = app.add_subcommand("verify", "Run an engine and check its outputs against the oracle");
  std::string vf_against;
  InputFlags vf_x, vf_y;
  std::string vf_matrix, vf_forms, vf_op;
  std::size_t vf_m = 0;
  EngineFlags vf_f;
  verify->add_option("--against", vf_against)->required()->check(CLI::IsMember({"moebius", "bilinear"}));
  verify->add_option("--input,--x", vf_x.file, "MCF JSON file (x for bilinear)");
  verify->add_option("--source,--x-source", vf_x.source, "Source spec (x for bilinear)");
  verify->add_option("--y", vf_y.file, "MCF JSON file for y");
  verify->add_option("--y-source", vf_y.source, "Source spec for y");
  verify->add_option("--m", vf_m);
  verify->add_option("--matrix", vf_matrix);
  verify->add_option("--forms", vf_forms);
  verify->add_option("--op", vf_op)->check(CLI::IsMember({"sum", "product"}));
  add_engine_flags(verify, vf_f);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Inputs-per-output statistics");
  TrialConfig cfg;
  std::string ep_mode = "random-mcf", ep_out;
  experiment->add_option("--mode", ep_mode)
      ->check(CLI::IsMember({"cubic", "random-mcf", "random-bilinear"}))
      ->capture_default_str();
  experiment->add_option("--m", cfg.m)->capture_default_str();
  experiment->add_option("--trials", cfg.trials)->capture_default_str();
  experiment->add_option("--max-outputs", cfg.max_outputs)->capture_default_str();
  experiment->add_option("--max-steps", cfg.max_steps, "0 = 10*M + 1000")->capture_default_str();
  experiment->add_option("--bound", cfg.bound, "Partial quotients in [0, B]")->capture_default_str();
  experiment->add_option("--matrix-bound", cfg.matrix_bound, "Matrix entries in [0, B]; 0 = --bound")
      ->capture_default_str();
  experiment->add_option("--seed", cfg.seed)->capture_default_str();
  experiment->add_option("--d-min", cfg.d_min)->capture_default_str();
  experiment->add_option("--d-max", cfg.d_max)->capture_default_str();
  experiment->add_option("--jobs", cfg.jobs)->capture_default_str();
  experiment->add_option("--verify-fraction", cfg.verify_fraction)->capture_default_str();
  experiment->add_flag("--partial-output", cfg.partial_output);
  experiment->add_option("--out", ep_out, "CSV destination (stdout if absent)");

  // dump-forms
  auto* dump = app.add_subcommand("dump-forms", "Print a synthesized form family");
  std::string df_op;
  std::size_t df_m = 0;
  dump->add_option("--op", df_op)->required()->check(CLI::IsMember({"sum", "product"}));
  dump->add_option("--m", df_m)->required()->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*expand) {
      const auto src = parse_source(ex_source, ex_m);
      std::vector<Tuple> steps;
      try {
        steps = jpa_expand(src, ex_steps, jpa_opts(ex_bits));
      } catch (const Terminated& t) {
        steps = t.steps();
        err << "expansion terminated after " << steps.size() << " steps\n";
      }
      out << (ex_format == "json" ? tuples_to_json(steps, ex_m) + "\n" : tuples_to_text(steps));
      return kExitOk;
    }
    if (*moebius) {
      const std::size_t m = infer_m(mo_m, {&mo_in});
      const Mcf input = load_stream(mo_in, m, mo_f.max_bits, "moebius");
      const Matrix c = parse_matrix_json(read_file(mo_matrix));
      const RunLimits lim{mo_f.max_outputs, mo_f.max_steps};
      const RunResult res = mo_f.partial ? run_with_partial(input, c, lim) : run_mobius(input, c, lim);
      return finish_run(res, m, mo_f, out, err);
    }
    if (*bilinear) {
      std::size_t m = bi_m;
      if (!bi_x.file.empty() || !bi_y.file.empty() || !bi_m) m = infer_m(bi_m, {&bi_x, &bi_y});
      const FormFamily forms = load_forms(bi_forms, bi_op, m);
      if (bi_dump) err << forms_to_json(forms) << '\n';
      const Mcf x = load_stream(bi_x, m, bi_f.max_bits, "bilinear x");
      const Mcf y = load_stream(bi_y, m, bi_f.max_bits, "bilinear y");
      const RunLimits lim{bi_f.max_outputs, bi_f.max_steps};
      const RunResult res =
          bi_f.partial ? run_bilinear_with_partial(x, y, forms, lim) : run_bilinear(x, y, forms, lim);
      return finish_run(res, m, bi_f, out, err);
    }
    if (*verify) {
      const bool bil = vf_against == "bilinear";
      const std::size_t m = bil ? infer_m(vf_m, {&vf_x, &vf_y}) : infer_m(vf_m, {&vf_x});
      const JpaOptions opts = jpa_opts(vf_f.max_bits);
      RunResult res;
      SourcePtr image;
      if (!bil) {
        if (vf_matrix.empty()) throw CLI::ValidationError("verify --against moebius needs --matrix");
        const Matrix c = parse_matrix_json(read_file(vf_matrix));
        const Mcf in = load_stream(vf_x, m, vf_f.max_bits, "verify");
        const RunLimits lim{vf_f.max_outputs, vf_f.max_steps};
        res = vf_f.partial ? run_with_partial(in, c, lim) : run_mobius(in, c, lim);
        image = eval_moebius(load_value(vf_x, m), c, opts);
      } else {
        const FormFamily forms = load_forms(vf_forms, vf_op, m);
        const Mcf x = load_stream(vf_x, m, vf_f.max_bits, "verify x");
        const Mcf y = load_stream(vf_y, m, vf_f.max_bits, "verify y");
        const RunLimits lim{vf_f.max_outputs, vf_f.max_steps};
        res = vf_f.partial ? run_bilinear_with_partial(x, y, forms, lim) : run_bilinear(x, y, forms, lim);
        image = eval_bilinear(load_value(vf_x, m), load_value(vf_y, m), forms, opts);
      }
      emit(res.outputs, m, vf_f, out);
      const VerifyReport rep = verify_prefix(res.outputs, image, opts);
      err << rep.message << '\n';
      if (rep.agreed) return kExitOk;
      return rep.mismatch_index ? kExitMismatch : kExitPrecisionExhausted;
    }
    if (*experiment) {
      cfg.mode = parse_trial_mode(ep_mode);
      const SuiteResult res = run_suite(cfg);
      if (ep_out.empty())
        out << res.csv();
      else
        write_file(ep_out, res.csv());
      std::ostringstream summary;
      summary << "trials: " << res.trials.size() << ", guard hits: " << res.guard_hits();
      if (auto s = res.mean_slope()) summary << ", mean slope: " << s->get_d();
      if (auto s = res.max_slope()) summary << ", max slope: " << s->get_d();
      std::size_t flagged = 0, mismatches = 0;
      for (const auto& t : res.trials) {
        flagged += t.singular;
        mismatches += t.verify == VerifyStatus::Mismatch;
      }
      if (flagged) summary << ", singular-matrix runs: " << flagged;
      if (mismatches) summary << ", oracle mismatches: " << mismatches;
      err << summary.str() << '\n';
      return mismatches ? kExitMismatch : kExitOk;
    }
    if (*dump) {
      out << forms_to_json(df_op == "sum" ? sum_forms(df_m) : product_forms(df_m)) << '\n';
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << '\n';
    return kExitPrecisionExhausted;
  } catch (const InputExhausted& e) {
    err << e.what() << '\n';
    return kExitInputExhausted;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const McfError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mcf

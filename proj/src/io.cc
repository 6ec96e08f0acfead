#include "mcf/io.h"

#include <fstream>
#include <limits>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mcf {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": invalid JSON: " + e.what());
  }
}

BigInt to_big(const json& v, const char* what) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) {
      const auto u = v.get<std::uint64_t>();
      return BigInt(std::to_string(u));
    }
    return BigInt(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    static const std::regex int_re("[+-]?[0-9]+");
    if (!std::regex_match(s, int_re))
      throw std::invalid_argument(std::string(what) + ": '" + s + "' is not an integer");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  throw std::invalid_argument(std::string(what) + ": expected an integer, got " + v.dump());
}

json from_big(const BigInt& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

std::vector<std::vector<BigInt>> to_grid(const json& v, const char* what) {
  if (!v.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array of arrays");
  std::vector<std::vector<BigInt>> out;
  for (const auto& row : v) {
    if (!row.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array of arrays");
    std::vector<BigInt> r;
    for (const auto& e : row) r.push_back(to_big(e, what));
    out.push_back(std::move(r));
  }
  return out;
}

json grid_json(const std::vector<std::vector<BigInt>>& g) {
  json out = json::array();
  for (const auto& row : g) {
    json r = json::array();
    for (const auto& v : row) r.push_back(from_big(v));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<BigInt>> components(const std::vector<Tuple>& steps, std::size_t m) {
  std::vector<std::vector<BigInt>> out(m);
  for (const auto& t : steps)
    for (std::size_t i = 0; i < m; ++i) out[i].push_back(t[i]);
  return out;
}

Matrix matrix_from(const json& v, const char* what) {
  auto g = to_grid(v, what);
  if (g.empty()) throw std::invalid_argument(std::string(what) + ": empty matrix");
  for (const auto& r : g)
    if (r.size() != g.size()) throw std::invalid_argument(std::string(what) + ": matrix must be square");
  return Matrix::from_rows(g);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

json matrix_json(const Matrix& c) {
  std::vector<std::vector<BigInt>> g;
  for (std::size_t r = 0; r < c.rows(); ++r) g.push_back(c.row(r));
  return grid_json(g);
}

}  // namespace

Mcf parse_mcf_json(const std::string& text) {
  const json j = parse(text, "mcf");
  if (!j.is_object() || !j.contains("m") || !j.contains("preperiod"))
    throw std::invalid_argument("mcf: expected {\"m\", \"preperiod\"[, \"period\"]}");
  if (!j["m"].is_number_integer() || j["m"].get<long>() < 1)
    throw std::invalid_argument("mcf: m must be a positive integer");
  const auto m = j["m"].get<std::size_t>();
  const auto pre = to_grid(j["preperiod"], "mcf preperiod");
  std::vector<std::vector<BigInt>> per;
  if (j.contains("period") && !j["period"].is_null()) per = to_grid(j["period"], "mcf period");
  if (pre.size() != m) throw std::invalid_argument("mcf: preperiod must have m component arrays");
  if (!per.empty() && per.size() != m)
    throw std::invalid_argument("mcf: period must have m component arrays");
  if (!per.empty() && per.front().empty())
    throw std::invalid_argument("mcf: period must not be empty");
  return Mcf::from_components(pre, per);
}

std::string mcf_to_json(const Mcf& mcf) {
  if (mcf.is_generated()) throw std::invalid_argument("mcf: generator-backed streams have no JSON form");
  const std::size_t m = mcf.dimension();
  json j;
  j["m"] = m;
  j["preperiod"] = grid_json(components(mcf.preperiod(), m));
  if (!mcf.period().empty()) j["period"] = grid_json(components(mcf.period(), m));
  return j.dump();
}

std::string tuples_to_json(const std::vector<Tuple>& tuples, std::size_t m) {
  json j;
  j["m"] = m;
  j["preperiod"] = grid_json(components(tuples, m));
  return j.dump();
}

std::vector<Tuple> tuples_from_json(const std::string& text) {
  const Mcf f = parse_mcf_json(text);
  if (!f.is_finite()) throw std::invalid_argument("tuples: expected a finite MCF");
  return f.preperiod();
}

Matrix parse_matrix_json(const std::string& text) { return matrix_from(parse(text, "matrix"), "matrix"); }

std::string matrix_to_json(const Matrix& c) { return matrix_json(c).dump(); }

FormFamily parse_forms_json(const std::string& text) {
  const json j = parse(text, "forms");
  if (!j.is_array() || j.size() < 2)
    throw std::invalid_argument("forms: expected an array of m+1 >= 2 matrices");
  FormFamily f;
  for (const auto& c : j) {
    f.push_back(matrix_from(c, "forms"));
    if (f.back().rows() != j.size())
      throw std::invalid_argument("forms: each matrix must be (m+1)x(m+1) for m+1 matrices");
  }
  return f;
}

std::string forms_to_json(const FormFamily& f) {
  json j = json::array();
  for (const auto& c : f) j.push_back(matrix_json(c));
  return j.dump();
}

std::string tuples_to_text(const std::vector<Tuple>& tuples) {
  std::ostringstream os;
  for (std::size_t n = 0; n < tuples.size(); ++n) os << n << ": " << to_string(tuples[n]) << '\n';
  return os.str();
}

std::vector<Tuple> tuples_from_text(const std::string& text) {
  static const std::regex line_re(R"(\s*(\d+)\s*:\s*\(([^)]*)\)\s*)");
  std::vector<Tuple> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch mt;
    if (!std::regex_match(line, mt, line_re))
      throw std::invalid_argument("tuples: cannot parse line '" + line + "'");
    if (std::stoul(mt[1]) != out.size())
      throw std::invalid_argument("tuples: expected step " + std::to_string(out.size()));
    Tuple t;
    std::istringstream items(mt[2]);
    std::string item;
    while (std::getline(items, item, ',')) t.push_back(to_big(json(trim(item)), "tuples"));
    if (t.empty()) throw std::invalid_argument("tuples: empty tuple in line '" + line + "'");
    if (!out.empty() && t.size() != out.front().size())
      throw std::invalid_argument("tuples: inconsistent dimension");
    out.push_back(std::move(t));
  }
  return out;
}

std::string steps_csv(const StepLog& log, bool with_bits) {
  std::ostringstream os;
  os << "step,kind,inputs_so_far,outputs_so_far" << (with_bits ? ",max_entry_bits" : "") << '\n';
  for (std::size_t k = 0; k < log.steps.size(); ++k) {
    const auto& s = log.steps[k];
    os << k + 1 << ',' << to_string(s.kind) << ',' << s.inputs << ',' << s.outputs;
    if (with_bits) os << ',' << s.max_entry_bits;
    os << '\n';
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << contents;
  if (!out) throw std::invalid_argument("write to '" + path + "' failed");
}

}  // namespace mcf

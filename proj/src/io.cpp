#include "hqcqp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hqcqp {

using nlohmann::json;

namespace {

std::string line_anchor(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based index of the byte after the error.
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(end), '\n');
  const auto last_nl = text.rfind('\n', end == 0 ? 0 : end - 1);
  const std::size_t col = last_nl == std::string_view::npos || end == 0 ? end + 1 : end - last_nl;
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, int n, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(what + ": expected an array of " + std::to_string(n) + " rows");
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(what + ": row " + std::to_string(r) + " must have " + std::to_string(n) +
                       " entries");
    for (int c = 0; c < n; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError(what + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
                         ") must be a [re, im] pair of numbers");
      const double re = e[0].get<double>();
      const double im = e[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw ParseError(what + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
                         ") is not finite");
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

json problem_to_json(const HqcqpProblem& prob) {
  json j;
  j["version"] = 1;
  j["dim"] = prob.dim();
  j["T"] = matrix_to_json(prob.objective().matrix());
  json ps = json::array();
  for (const auto& p : prob.constraints()) ps.push_back(matrix_to_json(p.matrix()));
  j["P"] = std::move(ps);
  return j;
}

HqcqpProblem problem_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("problem must be a JSON object");
  if (!j.contains("version") || j["version"] != 1) throw ParseError("unsupported or missing version (expected 1)");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("missing integer field 'dim'");
  const int n = j["dim"].get<int>();
  if (n < 1) throw ParseError("'dim' must be positive");
  if (!j.contains("T")) throw ParseError("missing field 'T'");
  if (!j.contains("P") || !j["P"].is_array()) throw ParseError("missing array field 'P'");
  const auto m = j["P"].size();
  if (m < 1 || m > 3) throw ParseError("'P' must hold 1 to 3 matrices, got " + std::to_string(m));

  auto hermitian = [&](const json& jm, const std::string& what) {
    const CMatrix raw = matrix_from_json(jm, n, what);
    if (!validate_hermitian(raw)) throw ParseError(what + " is not Hermitian");
    return HermitianMatrix(raw);
  };
  HermitianMatrix t = hermitian(j["T"], "T");
  std::vector<HermitianMatrix> ps;
  for (std::size_t i = 0; i < m; ++i) ps.push_back(hermitian(j["P"][i], "P[" + std::to_string(i) + "]"));
  try {
    return HqcqpProblem(std::move(t), std::move(ps));
  } catch (const NotPositiveDefiniteError& e) {
    throw ParseError(std::string("T: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
}

HqcqpProblem parse_problem(std::string_view text, const std::string& source) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(source + ":" + line_anchor(text, e.byte) + ": malformed JSON: " + e.what());
  }
  try {
    return problem_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

HqcqpProblem read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), path.string());
}

std::string serialize_problem(const HqcqpProblem& prob) { return problem_to_json(prob).dump() + "\n"; }

void write_problem_file(const std::filesystem::path& path, const HqcqpProblem& prob) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_problem(prob);
  if (!out) throw Error("write failed: " + path.string());
}

json vector_to_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

json solution_to_json(const Solution& s) {
  json j;
  j["p_star"] = s.p_star;
  j["c_star"] = s.c_star;
  j["u"] = vector_to_json(s.u);
  j["x"] = vector_to_json(s.x);
  j["case_tag"] = s.tag.to_string();
  j["binding"] = s.binding;
  j["multipliers"] = s.multipliers;
  j["iterations"] = s.iterations;
  if (s.dual_value) j["dual_value"] = *s.dual_value;
  j["diagnostics"] = {{"multiplicity", s.diagnostics.multiplicity},
                      {"eigen_gap", s.diagnostics.eigen_gap},
                      {"balance_residual", s.diagnostics.balance_residual},
                      {"flagged", s.diagnostics.flagged}};
  return j;
}

void write_trace_csv(std::ostream& os, const std::vector<TracePoint>& trace) {
  os << "iteration,incumbent_c\n";
  const auto old = os.precision(17);
  for (const auto& p : trace) os << p.iteration << ',' << p.value << '\n';
  os.precision(old);
}

}  // namespace hqcqp

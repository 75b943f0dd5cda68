#pragma once

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rembound/bounds.hpp"
#include "rembound/mrf.hpp"
#include "rembound/oracle.hpp"

namespace rembound {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Complex parse_complex(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexMatrix parse_matrix(const nlohmann::json& j, Eigen::Index n,
                                  const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
    throw ParseError(where + ": expected " + std::to_string(n) + " rows");
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ParseError(where + " row " + std::to_string(r) + ": expected " +
                       std::to_string(n) + " entries");
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = parse_complex(row[static_cast<size_t>(c)],
                              where + "[" + std::to_string(r) + "][" +
                                  std::to_string(c) + "]");
  }
  return m;
}

inline nlohmann::json complex_json(Complex z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

inline nlohmann::json matrix_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace detail

// { "n": int, "poles": [[re,im],...], "B0": matrix, "B": [matrix,...] }
inline MatrixRationalFunction problem_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("problem file: expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("field 'n': expected an integer");
  const Eigen::Index n = j["n"].get<Eigen::Index>();
  if (n < 1) throw ParseError("field 'n': must be positive");
  if (!j.contains("B0")) throw ParseError("field 'B0': missing");

  MatrixRationalFunction t;
  t.n = n;
  t.b0 = detail::parse_matrix(j["B0"], n, "B0");

  const auto poles = j.value("poles", nlohmann::json::array());
  const auto bs = j.value("B", nlohmann::json::array());
  if (poles.size() != bs.size())
    throw ParseError("fields 'poles' and 'B' must have the same length");
  for (size_t i = 0; i < poles.size(); ++i) {
    Complex pole =
        detail::parse_complex(poles[i], "poles[" + std::to_string(i) + "]");
    t.terms.push_back(
        {pole, detail::parse_matrix(bs[i], n, "B[" + std::to_string(i) + "]")});
  }
  return t;
}

inline nlohmann::json problem_to_json(const MatrixRationalFunction& t) {
  nlohmann::json j;
  j["n"] = t.n;
  j["B0"] = detail::matrix_json(t.b0);
  j["poles"] = nlohmann::json::array();
  j["B"] = nlohmann::json::array();
  for (const auto& term : t.terms) {
    j["poles"].push_back(detail::complex_json(term.pole));
    j["B"].push_back(detail::matrix_json(term.coeff));
  }
  return j;
}

inline MatrixRationalFunction read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return problem_from_json(j);
}

inline void write_problem_file(const std::string& path,
                               const MatrixRationalFunction& t) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << problem_to_json(t).dump(2) << "\n";
}

inline nlohmann::json report_to_json(const BoundReport& r) {
  nlohmann::json j;
  j["method"] = method_name(r.method);
  j["value"] = r.value;
  j["direction"] = r.direction == BoundDirection::Upper ? "upper" : "lower";
  j["norm"] = norm_name(r.norm);
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["notes"] = r.notes;
  j["elapsed_seconds"] = r.elapsed.count();
  return j;
}

// Two-decimal formatting, matching the reference tables.
inline std::string format_fixed2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

inline std::string render_report_table(const std::vector<BoundReport>& reports,
                                       std::optional<double> mu) {
  std::ostringstream os;
  os << std::left << std::setw(22) << "method" << std::setw(10) << "dir"
     << std::setw(10) << "norm" << std::setw(16) << "value"
     << "status\n";
  for (const auto& r : reports) {
    os << std::left << std::setw(22) << method_name(r.method) << std::setw(10)
       << (r.direction == BoundDirection::Upper ? "upper" : "lower")
       << std::setw(10) << norm_name(r.norm) << std::setw(16)
       << format_fixed2(r.value)
       << (r.hypothesis_ok ? "ok" : "hypothesis-failed");
    for (const auto& note : r.notes) os << "  [" << note << "]";
    os << "\n";
  }
  if (mu) os << "mu (oracle max modulus): " << format_fixed2(*mu) << "\n";
  return os.str();
}

}  // namespace rembound

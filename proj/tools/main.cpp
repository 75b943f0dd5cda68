#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rembound/rembound.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

rembound::NormKind parse_norm(const std::string& s) {
  if (s == "spectral") return rembound::NormKind::Spectral;
  if (s == "one") return rembound::NormKind::One;
  if (s == "inf") return rembound::NormKind::Infinity;
  throw CLI::ValidationError("--norm", "expected spectral|one|inf");
}

Eigen::Index oracle_limit() {
  if (const char* env = std::getenv("REMBOUND_ORACLE_LIMIT"))
    return static_cast<Eigen::Index>(std::atoll(env));
  return 2500;  // total companion dimension (m+1)n
}

std::vector<rembound::BoundReport> compute_bounds(
    const rembound::MatrixRationalFunction& t,
    const std::vector<std::string>& methods, rembound::NormKind norm) {
  using namespace rembound;
  auto wanted = [&](const std::string& name) {
    return methods.empty() ||
           std::find(methods.begin(), methods.end(), name) != methods.end();
  };
  std::vector<BoundReport> reports;
  if (wanted("bauer-fike")) reports.push_back(bauer_fike_bound(t, norm));
  if (wanted("unitary-closed-form") && !t.terms.empty() &&
      (!methods.empty() || detail::all_coefficients_unitary(t)))
    reports.push_back(unitary_closed_form_bound(t));
  if (wanted("rational-upper")) reports.push_back(rational_upper_bound(t, norm));
  if (wanted("rational-lower")) reports.push_back(rational_lower_bound(t, norm));
  if (wanted("polynomial")) reports.push_back(polynomial_bound(t, norm));
  return reports;
}

int cmd_bounds(const std::string& path, const std::vector<std::string>& methods,
               const std::string& norm_name, const std::string& out_kind) {
  using namespace rembound;
  MatrixRationalFunction t;
  try {
    t = read_problem_file(path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  auto violations = validate(t);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "error: " << v << "\n";
    return kExitValidation;
  }
  NormKind norm = parse_norm(norm_name);
  auto reports = compute_bounds(t, methods, norm);
  if (out_kind == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) j.push_back(report_to_json(r));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render_report_table(reports, std::nullopt);
  }
  return kExitOk;
}

int cmd_table1(const std::vector<Eigen::Index>& n_list,
               const std::string& alpha_str, bool with_mu,
               const std::string& out_kind) {
  using namespace rembound;
  Complex alpha;
  {
    std::istringstream is(alpha_str);
    double re = 1.0, im = 0.0;
    char comma = 0;
    is >> re;
    if (is >> comma && comma == ',') is >> im;
    alpha = Complex(re, im);
  }

  nlohmann::json jrows = nlohmann::json::array();
  std::ostringstream table;
  table << std::left << std::setw(8) << "n";
  if (with_mu) table << std::setw(16) << "mu";
  table << std::setw(16) << "R1" << std::setw(16) << "R2" << std::setw(16)
        << "R3" << "\n";

  for (Eigen::Index n : n_list) {
    if (n < 2) {
      std::cerr << "error: n must be >= 2\n";
      return kExitValidation;
    }
    auto t = string_problem({n, alpha});
    std::optional<double> mu;
    if (with_mu && 2 * n <= oracle_limit()) {
      try {
        mu = spectrum(t, 0.0, /*with_residuals=*/false).mu;
      } catch (const EigensolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
      }
    }
    double r1 = bauer_fike_bound(t, NormKind::Spectral).value;
    double r2 = rational_upper_bound(t, NormKind::Spectral).value;
    double r3 = polynomial_bound(t, NormKind::Spectral).value;

    table << std::left << std::setw(8) << n;
    if (with_mu)
      table << std::setw(16) << (mu ? format_fixed2(*mu) : std::string("-"));
    table << std::setw(16) << format_fixed2(r1) << std::setw(16)
          << format_fixed2(r2) << std::setw(16) << format_fixed2(r3) << "\n";

    nlohmann::json row;
    row["n"] = n;
    if (mu) row["mu"] = *mu;
    row["R1"] = r1;
    row["R2"] = r2;
    row["R3"] = r3;
    jrows.push_back(row);
  }
  if (out_kind == "json")
    std::cout << jrows.dump(2) << "\n";
  else
    std::cout << table.str();
  return kExitOk;
}

int cmd_verify(const std::string& path, double pole_tol, bool corrupt_upper) {
  using namespace rembound;
  MatrixRationalFunction t;
  try {
    t = read_problem_file(path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  auto violations = validate(t);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "error: " << v << "\n";
    return kExitValidation;
  }
  try {
    auto reports = compute_bounds(t, {}, NormKind::Spectral);
    if (corrupt_upper) {
      // Test hook: damage the upper bounds so verification must fail.
      for (auto& r : reports)
        if (r.direction == BoundDirection::Upper) r.value *= 0.5;
    }
    auto summary = verify_bounds(t, reports, pole_tol);
    std::cout << "mu: " << summary.mu << "\n";
    for (const auto& c : summary.checks) {
      std::cout << std::left << std::setw(22) << method_name(c.method)
                << (c.certified ? (c.pass ? "pass" : "FAIL")
                                : "skipped (hypothesis not satisfied)")
                << "  slack " << c.slack << "\n";
    }
    return summary.all_pass ? kExitOk : 1;
  } catch (const EigensolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue modulus bounds for matrix rational functions"};
  app.require_subcommand(1);

  // bounds
  std::string in_path, norm_name = "spectral", out_kind = "text";
  std::string methods_csv;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "Compute eigenvalue bounds for a problem file");
  bounds_cmd->add_option("file", in_path, "Problem file (JSON)")->required();
  bounds_cmd->add_option("--methods", methods_csv,
                         "Comma-separated subset: bauer-fike,unitary-closed-form,"
                         "rational-upper,rational-lower,polynomial");
  bounds_cmd->add_option("--norm", norm_name, "spectral|one|inf");
  bounds_cmd->add_option("--out", out_kind, "text|json");

  // table1
  std::vector<Eigen::Index> n_list{3, 5, 10, 100};
  std::string alpha_str = "1";
  bool with_mu = true;
  auto* table_cmd = app.add_subcommand(
      "table1", "Bounds and oracle mu for the string eigenvibration problem");
  table_cmd->add_option("--n", n_list, "Discretization sizes")->delimiter(',');
  table_cmd->add_option("--alpha", alpha_str, "Pole, as re or re,im");
  table_cmd->add_flag("--with-mu,!--no-mu", with_mu,
                      "Include the oracle mu column (default on)");
  table_cmd->add_option("--out", out_kind, "text|json");

  // verify
  double pole_tol = 0.0;
  bool corrupt_upper = false;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Verify the computed bounds against the eigenvalue oracle");
  verify_cmd->add_option("file", in_path, "Problem file (JSON)")->required();
  verify_cmd->add_option("--pole-tol", pole_tol,
                         "Pole filter distance (default: per-pole scaled)");
  verify_cmd->add_flag("--corrupt-upper", corrupt_upper)->group("");  // test hook

  CLI11_PARSE(app, argc, argv);

  std::vector<std::string> methods;
  if (!methods_csv.empty()) {
    std::istringstream is(methods_csv);
    std::string tok;
    while (std::getline(is, tok, ',')) methods.push_back(tok);
  }

  try {
    if (bounds_cmd->parsed())
      return cmd_bounds(in_path, methods, norm_name, out_kind);
    if (table_cmd->parsed())
      return cmd_table1(n_list, alpha_str, with_mu, out_kind);
    if (verify_cmd->parsed())
      return cmd_verify(in_path, pole_tol, corrupt_upper);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

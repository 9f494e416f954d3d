#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ncbv/json_io.hpp"
#include "ncbv/verify.hpp"

namespace ncbv::cli {

enum Exit : int { success = 0, check_failed = 1, usage_error = 2 };

struct RunConfig {
  std::string command;
  std::string multi_index;
  std::optional<unsigned> n;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> degree_cap;
  std::string output = "json";
  std::string output_path;
  unsigned k_max = 15;
  unsigned genus = 0;
  unsigned free_boundaries = 0;
  std::string algebra_path;
  std::string boundaries;
  std::uint64_t cases = 200;
};

/// Raised for arguments that parse but are invalid for the command.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Json index_json(const MultiIndex& idx) { return idx.exponents(); }

inline std::string rational(const Scalar& q) { return format_scalar(q); }

inline MultiIndex required_index(const RunConfig& cfg) {
  if (cfg.multi_index.empty()) throw UsageError("--idx is required");
  try {
    return MultiIndex::parse(cfg.multi_index);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct Emitted {
  std::string text;
  int code = success;
};

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string double_str(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline Emitted polynomial_command(const RunConfig& cfg, const NuPolynomial& p, const MultiIndex& idx) {
  const std::string label = "p_{" + to_string(idx) + "}";
  if (cfg.output == "csv") return {to_csv(p)};
  if (cfg.output == "plain") {
    std::string out = label + "(ν) = " + to_string(p) + "\n";
    if (cfg.n) out += label + "(" + std::to_string(*cfg.n) + ") = " + rational(p.evaluate(*cfg.n)) + "\n";
    return {out};
  }
  Json j{{"command", cfg.command}, {"multi_index", index_json(idx)}, {"polynomial", to_json(p)}};
  if (cfg.n) {
    j["N"] = *cfg.n;
    j["value"] = rational(p.evaluate(*cfg.n));
  }
  return {dump(j)};
}

inline Emitted cmd_moments(const RunConfig& cfg, const Reducer& reduce) {
  const MultiIndex idx = required_index(cfg);
  return polynomial_command(cfg, reduce(idx), idx);
}

inline Emitted cmd_oracle(const RunConfig& cfg) {
  const MultiIndex idx = required_index(cfg);
  const unsigned cap = cfg.degree_cap.value_or(16);
  if (idx.without_zeros().total() > cap)
    throw UsageError("total degree " + std::to_string(idx.without_zeros().total()) + " exceeds --degree-cap " +
                     std::to_string(cap));
  return polynomial_command(cfg, wick_oracle(idx, cap), idx);
}

inline Emitted cmd_verify(const RunConfig& cfg, const Reducer& reduce) {
  VerifyConfig v;
  v.degree_cap = cfg.degree_cap.value_or(12);
  v.seed = cfg.seed.value_or(7);
  v.structural_cases = cfg.cases;
  const auto results = run_verify(v, reduce);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  const int code = ok ? success : check_failed;
  if (cfg.output == "csv") {
    std::string out = "name,passed,cases\n";
    for (const auto& r : results) out += r.name + "," + (r.passed ? "true" : "false") + "," + std::to_string(r.cases) + "\n";
    return {out, code};
  }
  if (cfg.output == "plain") {
    std::string out;
    for (const auto& r : results) {
      out += std::string(r.passed ? "PASS " : "FAIL ") + r.name + " [" + r.scale + "]";
      if (!r.passed) out += ": " + r.counterexample;
      out += "\n";
    }
    return {out, code};
  }
  Json checks = Json::array();
  for (const auto& r : results) checks.push_back(to_json(r));
  Json j{{"command", "verify"}, {"degree_cap", v.degree_cap}, {"seed", v.seed}, {"cases", v.structural_cases},
         {"passed", ok}, {"checks", std::move(checks)}};
  return {dump(j), code};
}

inline Emitted cmd_mc(const RunConfig& cfg, const Reducer& reduce) {
  const MultiIndex idx = required_index(cfg);
  if (!cfg.n || !cfg.samples || !cfg.seed) throw UsageError("mc needs --N, --samples and --seed");
  if (*cfg.samples < 2) throw UsageError("--samples must be at least 2");
  const auto r = monte_carlo_moment(idx, *cfg.n, *cfg.samples, *cfg.seed);
  const Scalar exact = reduce(idx).evaluate(*cfg.n);
  const double z = r.standard_error > 0 ? (r.estimate - exact.get_d()) / r.standard_error : 0.0;
  if (cfg.output == "csv")
    return {"estimate,standard_error,exact,z\n" + double_str(r.estimate) + "," + double_str(r.standard_error) + "," +
            rational(exact) + "," + double_str(z) + "\n"};
  if (cfg.output == "plain")
    return {"E[∏Tr(X^i)] for idx " + to_string(idx) + ", N = " + std::to_string(*cfg.n) + ": " +
            double_str(r.estimate) + " ± " + double_str(r.standard_error) + " (exact " + rational(exact) +
            ", z = " + double_str(z) + ")\n"};
  Json j{{"command", "mc"},
         {"multi_index", index_json(idx)},
         {"N", *cfg.n},
         {"samples", *cfg.samples},
         {"seed", *cfg.seed},
         {"estimate", r.estimate},
         {"standard_error", r.standard_error},
         {"exact", rational(exact)},
         {"z", z},
         {"within_5_sigma", std::abs(z) <= 5.0}};
  return {dump(j)};
}

inline Emitted cmd_hz(const RunConfig& cfg, const Reducer& reduce) {
  if (cfg.k_max < 2) throw UsageError("--k-max must be at least 2");
  std::vector<NuPolynomial> p(cfg.k_max + 1);
  p[0] = NuPolynomial::monomial(1);
  for (unsigned k = 1; k <= cfg.k_max; ++k) p[k] = reduce({2 * k});
  CheckResult rec("harer_zagier_recurrence", "2 ≤ k ≤ " + std::to_string(cfg.k_max));
  for (unsigned k = 2; k <= cfg.k_max; ++k) {
    ++rec.cases;
    const auto res = harer_zagier_residual(k, p[k], p[k - 1], p[k - 2]);
    if (!res.is_zero()) rec.fail("k = " + std::to_string(k) + ": residual " + to_string(res));
  }
  CheckResult closed("harer_zagier_closed_form", cfg.n ? "N = " + std::to_string(*cfg.n) : "not requested");
  CheckResult cat("catalan_leading_coefficient", "1 ≤ k ≤ " + std::to_string(cfg.k_max));
  for (unsigned k = 1; k <= cfg.k_max; ++k) {
    ++cat.cases;
    if (p[k].leading_coefficient() != Scalar(catalan(k))) cat.fail("k = " + std::to_string(k));
    if (cfg.n) {
      ++closed.cases;
      if (p[k].evaluate(*cfg.n) != harer_zagier_closed(k, *cfg.n)) closed.fail("k = " + std::to_string(k));
    }
  }
  const bool ok = rec.passed && closed.passed && cat.passed;
  const int code = ok ? success : check_failed;
  if (cfg.output == "csv") {
    std::string out = "k,exponent,numerator,denominator\n";
    for (unsigned k = 0; k <= cfg.k_max; ++k)
      for (const auto& [e, c] : p[k].coeffs())
        out += std::to_string(k) + "," + std::to_string(e) + "," + c.get_num().get_str() + "," +
               c.get_den().get_str() + "\n";
    return {out, code};
  }
  if (cfg.output == "plain") {
    std::string out;
    for (unsigned k = 0; k <= cfg.k_max; ++k) {
      out += "p_" + std::to_string(2 * k) + "(ν) = " + to_string(p[k]);
      if (cfg.n) out += "   [N = " + std::to_string(*cfg.n) + ": " + rational(p[k].evaluate(*cfg.n)) + "]";
      out += "\n";
    }
    for (const auto* r : {&rec, &closed, &cat})
      out += std::string(r->passed ? "PASS " : "FAIL ") + r->name + (r->passed ? "" : ": " + r->counterexample) + "\n";
    return {out, code};
  }
  Json polys = Json::array();
  for (unsigned k = 0; k <= cfg.k_max; ++k) {
    Json entry{{"k", k}, {"polynomial", to_json(p[k])}};
    if (cfg.n) {
      entry["value"] = rational(p[k].evaluate(*cfg.n));
      if (k >= 1) entry["closed_form"] = rational(harer_zagier_closed(k, *cfg.n));
    }
    polys.push_back(std::move(entry));
  }
  Json j{{"command", "hz"}, {"k_max", cfg.k_max}};
  if (cfg.n) j["N"] = *cfg.n;
  j["passed"] = ok;
  j["polynomials"] = std::move(polys);
  j["checks"] = Json::array({to_json(rec), to_json(closed), to_json(cat)});
  return {dump(j), code};
}

inline Emitted cmd_otft(const RunConfig& cfg) {
  if (cfg.algebra_path.empty() == !cfg.n) throw UsageError("otft needs exactly one of --N and --algebra");
  std::optional<FrobeniusAlgebra> f;
  std::string algebra_name;
  if (cfg.n) {
    if (*cfg.n > 6) throw UsageError("--N above 6 is too large for dense OTFT evaluation");
    f = frobenius_matrix(*cfg.n);
    algebra_name = "Mat_" + std::to_string(*cfg.n);
  } else {
    std::ifstream in(cfg.algebra_path);
    if (!in) throw UsageError("cannot read " + cfg.algebra_path);
    try {
      f = frobenius_from_json(Json::parse(in));
    } catch (const std::exception& e) {
      throw UsageError("bad algebra file: " + std::string(e.what()));
    }
    algebra_name = cfg.algebra_path;
  }
  std::vector<std::vector<Vector>> boundaries;
  if (!cfg.boundaries.empty()) {
    try {
      for (const auto& b : Json::parse(cfg.boundaries)) {
        auto& out = boundaries.emplace_back();
        for (const auto& c : b) out.push_back(scalars_from_json(c));
      }
    } catch (const std::exception& e) {
      throw UsageError("bad --boundaries: " + std::string(e.what()));
    }
  } else {
    const MultiIndex arities = required_index(cfg);
    std::mt19937_64 rng(cfg.seed.value_or(1));
    std::uniform_int_distribution<int> entry(-3, 3);
    for (unsigned k : arities.exponents()) {
      auto& out = boundaries.emplace_back(k, Vector(f->dim()));
      for (auto& c : out)
        for (auto& x : c) x = entry(rng);
    }
  }
  if (boundaries.empty()) throw UsageError("at least one boundary is required");
  for (const auto& b : boundaries) {
    if (b.empty()) throw UsageError("every boundary needs at least one input");
    for (const auto& c : b)
      if (c.size() != f->dim()) throw UsageError("input has length " + std::to_string(c.size()) + ", algebra has dimension " + std::to_string(f->dim()));
  }
  const Scalar value = otft_mu(*f, cfg.genus, cfg.free_boundaries, boundaries);
  std::optional<Scalar> trace_formula;
  if (cfg.n) {
    const std::uint32_t n = *cfg.n;
    Scalar t = 1;
    for (unsigned k = 0; k < cfg.free_boundaries; ++k) t *= n;
    for (const auto& b : boundaries) {
      DenseMatrix<Scalar> prod = DenseMatrix<Scalar>::identity(n);
      for (const auto& c : b) {
        DenseMatrix<Scalar> m(n, n);
        for (std::uint32_t k = 0; k < n * n; ++k) m(k / n, k % n) = c[k];
        prod = prod * m;
      }
      t *= prod.trace();
    }
    trace_formula = t;
  }
  if (cfg.output == "csv") return {"value\n" + rational(value) + "\n"};
  if (cfg.output == "plain") {
    std::string out = "μ^{" + std::to_string(cfg.genus) + "," + std::to_string(cfg.free_boundaries) + "} on " +
                      algebra_name + " = " + rational(value) + "\n";
    if (trace_formula) out += "N^b ∏ Tr = " + rational(*trace_formula) + "\n";
    return {out};
  }
  Json bs = Json::array();
  for (const auto& b : boundaries) {
    Json row = Json::array();
    for (const auto& c : b) row.push_back(scalars_to_json(c));
    bs.push_back(std::move(row));
  }
  Json j{{"command", "otft"}, {"algebra", algebra_name}, {"genus", cfg.genus}, {"free_boundaries", cfg.free_boundaries},
         {"boundaries", std::move(bs)}, {"value", rational(value)}};
  if (trace_formula) j["trace_formula"] = rational(*trace_formula);
  return {dump(j)};
}

}  // namespace detail

/// Runs the command line; `reduce` replaces the reduction engine (tests use
/// this to inject a broken engine).
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const Reducer& reduce = default_reducer()) {
  RunConfig cfg;
  CLI::App app{"Exact noncommutative BV engine and GUE moment calculator", "ncbv"};
  app.require_subcommand(1);
  const auto output_formats = CLI::IsMember({"json", "csv", "plain"});

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output, "json, csv or plain")->check(output_formats);
    sub->add_option("--out", cfg.output_path, "write the report to this file instead of stdout");
  };
  auto idx = [&](CLI::App* sub, const char* help) { sub->add_option("--idx", cfg.multi_index, help); };

  auto* moments = app.add_subcommand("moments", "exact p(ν) by cohomological reduction");
  idx(moments, "exponents i1,i2,...");
  moments->add_option("--N", cfg.n, "also evaluate at ν = N")->check(CLI::PositiveNumber);
  common(moments);

  auto* oracle = app.add_subcommand("oracle", "p(ν) by summing over Wick pairings");
  idx(oracle, "exponents i1,i2,...");
  oracle->add_option("--N", cfg.n, "also evaluate at ν = N")->check(CLI::PositiveNumber);
  oracle->add_option("--degree-cap", cfg.degree_cap, "largest total degree (default 16)")->check(CLI::PositiveNumber);
  common(oracle);

  auto* verify = app.add_subcommand("verify", "run the verification checks");
  verify->add_option("--degree-cap", cfg.degree_cap, "oracle and confluence cap (default 12)")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "seed for the randomized suites (default 7)");
  verify->add_option("--cases", cfg.cases, "cases per randomized suite")->check(CLI::PositiveNumber);
  common(verify);

  auto* otft = app.add_subcommand("otft", "open TFT tensor μ^{g,b} of a Frobenius algebra");
  otft->add_option("--N", cfg.n, "use Mat_N with the trace pairing")->check(CLI::PositiveNumber);
  otft->add_option("--algebra", cfg.algebra_path, "Frobenius algebra JSON file");
  idx(otft, "inputs per boundary, used with random integer inputs");
  otft->add_option("--boundaries", cfg.boundaries, "JSON list of boundaries, each a list of coefficient vectors");
  otft->add_option("--genus", cfg.genus, "genus g");
  otft->add_option("--free-boundaries", cfg.free_boundaries, "boundaries without inputs b");
  otft->add_option("--seed", cfg.seed, "seed for random inputs");
  common(otft);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of E[∏ Tr(X^i)] over the GUE");
  idx(mc, "exponents i1,i2,...");
  mc->add_option("--N", cfg.n, "matrix size")->check(CLI::PositiveNumber);
  mc->add_option("--samples", cfg.samples, "number of samples");
  mc->add_option("--seed", cfg.seed, "64-bit seed");
  common(mc);

  auto* hz = app.add_subcommand("hz", "Harer-Zagier recurrence and closed form");
  hz->add_option("--k-max", cfg.k_max, "largest k (default 15)");
  hz->add_option("--N", cfg.n, "compare with the closed form at this N")->check(CLI::PositiveNumber);
  common(hz);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return success;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return success;
  } catch (const CLI::ParseError& e) {
    err << "ncbv: " << e.what() << "\n";
    return usage_error;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  detail::Emitted result;
  try {
    if (cfg.command == "moments") result = detail::cmd_moments(cfg, reduce);
    else if (cfg.command == "oracle") result = detail::cmd_oracle(cfg);
    else if (cfg.command == "verify") result = detail::cmd_verify(cfg, reduce);
    else if (cfg.command == "otft") result = detail::cmd_otft(cfg);
    else if (cfg.command == "mc") result = detail::cmd_mc(cfg, reduce);
    else result = detail::cmd_hz(cfg, reduce);
  } catch (const UsageError& e) {
    err << "ncbv " << cfg.command << ": " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "ncbv " << cfg.command << ": " << e.what() << "\n";
    return usage_error;
  }

  if (cfg.output_path.empty()) {
    out << result.text;
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "ncbv: cannot write " << cfg.output_path << "\n";
      return usage_error;
    }
    file << result.text;
  }
  return result.code;
}

}  // namespace ncbv::cli

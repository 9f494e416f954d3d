#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ncbv/cli.hpp"

using namespace ncbv;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args, const Reducer& reduce = default_reducer()) {
  args.insert(args.begin(), "ncbv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, reduce);
  return {code, out.str(), err.str()};
}

Reducer sign_flipped() {
  auto good = default_reducer();
  return [good](const MultiIndex& idx) {
    const NuPolynomial exact = good(idx);
    NuPolynomial p;
    for (const auto& [e, c] : exact.coeffs()) p.add(e, e == 1 ? Scalar(-c) : c);
    return p;
  };
}

TEST(Cli, MomentsJson) {
  auto r = run({"moments", "--idx", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j["polynomial"]["coeffs"], (Json{{"1", "1/1"}, {"3", "2/1"}}));
  EXPECT_EQ(j["multi_index"], (Json{4}));

  j = run({"moments", "--idx", "3,1", "--N", "2"}).json();
  EXPECT_EQ(j["polynomial"]["coeffs"], (Json{{"2", "3/1"}}));
  EXPECT_EQ(j["multi_index"], (Json{1, 3}));
  EXPECT_EQ(j["value"], "12/1");

  j = run({"moments", "--idx", "3"}).json();
  EXPECT_TRUE(j["polynomial"]["coeffs"].empty());
}

TEST(Cli, MomentsCsvRoundTrips) {
  for (const char* idx : {"4", "2,2,2", "1,1,4", "3"}) {
    auto r = run({"moments", "--idx", idx, "--output", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nu_polynomial_from_csv(r.out), default_reducer()(MultiIndex::parse(idx))) << idx;
  }
}

TEST(Cli, PlainOutput) {
  auto r = run({"moments", "--idx", "1,3", "--N", "2", "--output", "plain"});
  EXPECT_EQ(r.out, "p_{1,3}(ν) = 3ν^2\np_{1,3}(2) = 12/1\n");
}

TEST(Cli, OracleAgreesWithMoments) {
  for (const char* idx : {"4,4", "2,1,1", "6"}) {
    auto a = run({"oracle", "--idx", idx}).json(), b = run({"moments", "--idx", idx}).json();
    EXPECT_EQ(a["polynomial"], b["polynomial"]) << idx;
  }
  EXPECT_EQ(run({"oracle", "--idx", "10", "--degree-cap", "8"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"moments"}).code, 2);
  EXPECT_EQ(run({"moments", "--idx", "1,x"}).code, 2);
  EXPECT_EQ(run({"moments", "--idx", "1,"}).code, 2);
  EXPECT_EQ(run({"moments", "--idx", "2", "--output", "xml"}).code, 2);
  EXPECT_EQ(run({"moments", "--idx", "2", "--N", "0"}).code, 2);
  EXPECT_EQ(run({"mc", "--idx", "2", "--N", "2"}).code, 2);
  EXPECT_EQ(run({"otft", "--genus", "1"}).code, 2);
  auto r = run({"moments", "--idx", "1,x"});
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("'x'"), std::string::npos) << r.err;
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifyReportsScale) {
  auto r = run({"verify", "--degree-cap", "6", "--cases", "20"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = r.json();
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["degree_cap"], 6);
  bool saw_oracle = false;
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();
    EXPECT_GT(c["cases"].get<int>(), 0) << c.dump();
    EXPECT_FALSE(c["scale"].get<std::string>().empty());
    if (c["name"] == "oracle_equivalence") {
      saw_oracle = true;
      EXPECT_NE(c["scale"].get<std::string>().find("≤ 6"), std::string::npos);
    }
  }
  EXPECT_TRUE(saw_oracle);
}

TEST(Cli, VerifyCatchesBrokenEngine) {
  auto r = run({"verify", "--degree-cap", "6", "--cases", "10"}, sign_flipped());
  EXPECT_EQ(r.code, 1);
  auto j = r.json();
  EXPECT_FALSE(j["passed"].get<bool>());
  const auto& golden = j["checks"][0];
  EXPECT_EQ(golden["name"], "golden_table");
  EXPECT_FALSE(golden["passed"].get<bool>());
  EXPECT_NE(golden["counterexample"].get<std::string>().find("p_{4}: coefficient of ν^1 is -1, expected 1"),
            std::string::npos)
      << golden.dump();
}

TEST(Cli, MonteCarloIsDeterministic) {
  std::vector<std::string> args{"mc", "--idx", "2", "--N", "3", "--samples", "100000", "--seed", "7"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto j = a.json();
  EXPECT_EQ(j["exact"], "9/1");
  EXPECT_LE(std::abs(j["z"].get<double>()), 5.0);
  EXPECT_TRUE(j["within_5_sigma"].get<bool>());
}

TEST(Cli, MonteCarloFourthMoment) {
  auto j = run({"mc", "--idx", "1,1,1,1", "--N", "2", "--samples", "200000", "--seed", "1"}).json();
  EXPECT_EQ(j["exact"], "12/1");
  EXPECT_NEAR(j["estimate"].get<double>(), 12.0, 5 * j["standard_error"].get<double>());
}

TEST(Cli, HarerZagier) {
  auto r = run({"hz", "--k-max", "6", "--N", "3"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = r.json();
  EXPECT_TRUE(j["passed"].get<bool>());
  ASSERT_EQ(j["polynomials"].size(), 7u);
  EXPECT_EQ(j["polynomials"][2]["polynomial"]["coeffs"], (Json{{"1", "1/1"}, {"3", "2/1"}}));
  for (const auto& p : j["polynomials"])
    if (p["k"].get<int>() >= 1) {
      EXPECT_EQ(p["value"], p["closed_form"]) << p.dump();
    }
}

TEST(Cli, OtftOnMatrices) {
  // μ^{0,0} on one boundary with input 1 is Tr(1) = N.
  auto j = run({"otft", "--N", "3", "--boundaries", R"([[["1","0","0","0","1","0","0","0","1"]]])"}).json();
  EXPECT_EQ(j["value"], "3/1");
  EXPECT_EQ(j["trace_formula"], j["value"]);
  for (const char* g : {"0", "1", "2"}) {
    auto r = run({"otft", "--N", "2", "--genus", g, "--free-boundaries", "1", "--idx", "2,1", "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["value"], r.json()["trace_formula"]) << g;
  }
  EXPECT_EQ(run({"otft", "--N", "2", "--boundaries", "[[[1,2]]]"}).code, 2);
}

TEST(Cli, OtftFromAlgebraFile) {
  const auto path = std::filesystem::temp_directory_path() / "ncbv_cli_algebra.json";
  {
    std::ofstream f(path);
    f << frobenius_to_json(frobenius_cyclic_group(2, Scalar(1))).dump();
  }
  auto r = run({"otft", "--algebra", path.string(), "--genus", "1", "--boundaries", R"([[["1","0"]]])"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, 0) << r.err;
  // ℚ[ℤ/2] with ⟨g^a, g^b⟩ = δ_{a+b,0}: the handle Σ e_i e_j y^i y^j is 4·1.
  EXPECT_EQ(r.json()["value"], "4/1");
  EXPECT_FALSE(r.json().contains("trace_formula"));
}

TEST(Cli, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "ncbv_cli_out.json";
  auto r = run({"moments", "--idx", "2,2", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::filesystem::remove(path);
  EXPECT_EQ(ss.str(), run({"moments", "--idx", "2,2"}).out);
}

}  // namespace

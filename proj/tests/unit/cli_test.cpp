#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "regtor/cli/app.hpp"
#include "regtor/cli/config.hpp"
#include "regtor/cli/polynomial_parser.hpp"

namespace {

using regtor::cli::ConfigError;
using regtor::cli::parse_config;
using regtor::cli::parse_polynomial;
using regtor::cli::PolynomialSyntaxError;
using regtor::linalg::BaseRing;
using regtor::poly::Monomial;
using regtor::poly::Polynomial;

const std::vector<std::string> kXY = {"x", "y"};

Polynomial term(long c, unsigned a, unsigned b) { return Polynomial::term(BaseRing::integers(), Monomial({a, b}), c); }

TEST(PolynomialParser, Grammar) {
  const auto Z = BaseRing::integers();
  EXPECT_EQ(parse_polynomial("x", kXY, Z), term(1, 1, 0));
  EXPECT_EQ(parse_polynomial("x^2 - 3*x*y + 7", kXY, Z), term(1, 2, 0) + term(-3, 1, 1) + term(7, 0, 0));
  EXPECT_EQ(parse_polynomial("(x + y)^2", kXY, Z), term(1, 2, 0) + term(2, 1, 1) + term(1, 0, 2));
  EXPECT_EQ(parse_polynomial("-(x - y) * -y", kXY, Z), term(1, 1, 1) + term(-1, 0, 2));
  EXPECT_EQ(parse_polynomial("  2 * x ^ 3 ", kXY, Z), term(2, 3, 0));
  EXPECT_TRUE(parse_polynomial("x - x", kXY, Z).is_zero());
  EXPECT_TRUE(parse_polynomial("2*x", kXY, BaseRing::prime_field(2)).is_zero());
}

TEST(PolynomialParser, ErrorsCarryColumns) {
  const auto Z = BaseRing::integers();
  auto column_of = [&](const std::string& text) -> std::size_t {
    try {
      parse_polynomial(text, kXY, Z);
    } catch (const PolynomialSyntaxError& e) {
      return e.column();
    }
    return 0;
  };
  EXPECT_EQ(column_of("x + z"), 5u);
  EXPECT_EQ(column_of("x +"), 4u);
  EXPECT_EQ(column_of("(x + y"), 1u);
  EXPECT_EQ(column_of("x ^ y"), 5u);
  EXPECT_EQ(column_of("x y"), 3u);
  EXPECT_EQ(column_of(""), 1u);
  EXPECT_EQ(column_of("x^1001"), 3u);
}

// Random polynomials with small coefficients render and parse back.
TEST(PolynomialParser, RenderRoundTripProperty) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> names = {"x", "y", "z"};
  for (auto ring : {BaseRing::integers(), BaseRing::prime_field(5)}) {
    for (int trial = 0; trial < 300; ++trial) {
      Polynomial p(ring, 3);
      const int terms = static_cast<int>(rng() % 5);
      for (int t = 0; t < terms; ++t) {
        Monomial m({static_cast<unsigned>(rng() % 4), static_cast<unsigned>(rng() % 4),
                    static_cast<unsigned>(rng() % 4)});
        p.add_term(m, ring.from_int(static_cast<long>(rng() % 21) - 10));
      }
      const std::string text = p.to_string(names);
      EXPECT_EQ(parse_polynomial(text, names, ring), p) << text;
    }
  }
}

TEST(Config, ValidKeyValue) {
  auto c = parse_config("base = Z\nvars = x, y\nweights = 1, 1\nsequence = x, y\ns_max = 3\ndegree_max = 8\n");
  EXPECT_EQ(c.vars, kXY);
  EXPECT_EQ(c.sequence, kXY);
  EXPECT_EQ(c.s_max, 3u);
  EXPECT_EQ(c.degree_max, 8u);
  EXPECT_EQ(c.checks, regtor::suite::all_checks());
}

TEST(Config, DefaultsAndComments) {
  auto c = parse_config("# comment\n  vars = a,b  # trailing\nsequence = a^2 ,  b*(a+b)\n\n");
  EXPECT_EQ(c.base, "Z");
  EXPECT_EQ(c.weights, (std::vector<unsigned>{1, 1}));
  EXPECT_EQ(c.sequence, (std::vector<std::string>{"a^2", "a*b + b^2"}));
  EXPECT_EQ(c.seed, 0u);
}

ConfigError error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return ConfigError(ConfigError::Kind::kParse, "none");
}

TEST(Config, ValidationErrors) {
  auto e = error_of("vars = x, y\nsequence = x + y^2, y\n");
  EXPECT_EQ(e.kind(), ConfigError::Kind::kValidation);
  EXPECT_NE(std::string(e.what()).find("not homogeneous"), std::string::npos) << e.what();

  e = error_of("base = Fp 4\nvars = x\nsequence = x\n");
  EXPECT_EQ(e.kind(), ConfigError::Kind::kValidation);
  EXPECT_NE(std::string(e.what()).find("4 is not prime"), std::string::npos) << e.what();

  EXPECT_EQ(error_of("vars = x, y\nsequence = x\n").kind(), ConfigError::Kind::kValidation);
  EXPECT_EQ(error_of("vars = x\nsequence = x^3\ndegree_max = 2\n").kind(), ConfigError::Kind::kValidation);
  EXPECT_EQ(error_of("vars = x\nsequence = x\ns_max = 0\n").kind(), ConfigError::Kind::kValidation);
  EXPECT_EQ(error_of("vars = x\nsequence = x\nchecks = THEOREM2\n").kind(), ConfigError::Kind::kValidation);
  EXPECT_EQ(error_of("vars = x\nsequence = 0\n").kind(), ConfigError::Kind::kValidation);
  EXPECT_EQ(error_of("vars = x\nweights = 0\nsequence = x\n").kind(), ConfigError::Kind::kValidation);
  EXPECT_EQ(error_of("vars = x, x\nsequence = x, x\n").kind(), ConfigError::Kind::kValidation);
  EXPECT_EQ(error_of("sequence = x\n").kind(), ConfigError::Kind::kValidation);
}

TEST(Config, ParseErrorsCarryLineAndColumn) {
  auto e = error_of("vars = x, y\nsequence = x, y + w\n");
  EXPECT_EQ(e.kind(), ConfigError::Kind::kParse);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 19u);
  EXPECT_NE(std::string(e.what()).find("PARSE_ERROR at line 2, column 19"), std::string::npos) << e.what();

  e = error_of("vars = x\n\nno equals sign\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 1u);

  e = error_of("vars = x\nsequence = x\ns_max = three\n");
  EXPECT_EQ(e.kind(), ConfigError::Kind::kParse);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 9u);

  EXPECT_EQ(error_of("vars = x\nvars = y\n").line(), 2u);
  EXPECT_EQ(error_of("colour = red\n").kind(), ConfigError::Kind::kParse);
  EXPECT_EQ(error_of("vars = x,,y\n").column(), 10u);

  e = error_of("{\n  \"vars\": [\"x\"],\n  \"sequence\": [\"x\"\n}");
  EXPECT_EQ(e.kind(), ConfigError::Kind::kParse);
  EXPECT_EQ(e.line(), 4u);
}

TEST(Config, JsonForm) {
  auto c = parse_config(R"({"base": "Fp 5", "vars": ["x", "y"], "weights": [1, 2], "sequence": ["x^2", "y"],
                             "s_max": 2, "degree_max": 6, "seed": 9, "checks": ["THEOREM1", "REGULARITY"],
                             "format": "text"})");
  EXPECT_EQ(c.base, "Fp 5");
  EXPECT_EQ(c.weights, (std::vector<unsigned>{1, 2}));
  EXPECT_EQ(c.checks, (std::vector<regtor::suite::CheckId>{regtor::suite::CheckId::kRegularity,
                                                           regtor::suite::CheckId::kTheorem1}));
  EXPECT_EQ(c.format, regtor::cli::OutputFormat::kText);
  EXPECT_EQ(error_of(R"({"vars": "x", "sequence": ["x"]})").kind(), ConfigError::Kind::kValidation);
  EXPECT_EQ(error_of(R"({"vars": ["x"], "sequence": ["x"], "s_max": -1})").kind(), ConfigError::Kind::kValidation);
}

// parse_config(render_config(c)) == c over generated configs.
TEST(Config, RenderRoundTripProperty) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> bases = {"Z", "Q", "Fp 2", "Fp 7"};
  const auto& ids = regtor::suite::all_checks();
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    std::ostringstream text;
    text << "base = " << bases[rng() % bases.size()] << "\nvars = ";
    std::vector<unsigned> weights;
    for (std::size_t i = 0; i < n; ++i) {
      text << (i ? ", " : "") << "v" << i;
      weights.push_back(1 + static_cast<unsigned>(rng() % 3));
    }
    text << "\nweights = ";
    for (std::size_t i = 0; i < n; ++i) text << (i ? ", " : "") << weights[i];
    text << "\nsequence = ";
    for (std::size_t i = 0; i < n; ++i) text << (i ? ", " : "") << (1 + rng() % 3) << "*v" << i << "^" << (1 + rng() % 3);
    text << "\ns_max = " << 1 + rng() % 4 << "\ndegree_max = " << 12 + rng() % 5 << "\nseed = " << rng() % 1000;
    text << "\nchecks = ";
    const std::size_t k = rng() % 4;
    if (k == 0) {
      text << "all";
    } else if (k == 1) {
      text << "none";
    } else {
      for (std::size_t i = 0; i < k; ++i) text << (i ? ", " : "") << regtor::suite::to_string(ids[rng() % ids.size()]);
    }
    text << "\nformat = " << (rng() % 2 ? "json" : "text") << "\n";
    if (rng() % 2) text << "output = out" << trial << ".json\n";

    regtor::cli::RunConfig c;
    try {
      c = parse_config(text.str());
    } catch (const ConfigError& e) {
      // Coefficients divisible by the characteristic make an entry zero.
      EXPECT_EQ(e.kind(), ConfigError::Kind::kValidation) << e.what();
      continue;
    }
    EXPECT_EQ(parse_config(regtor::cli::render_config(c)), c) << regtor::cli::render_config(c);
  }
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = regtor::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("regtor_cli_test_" + name);
  std::ofstream(path) << content;
  return path;
}

TEST(Cli, HelpAndUsage) {
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("verify"), std::string::npos);
  EXPECT_EQ(run({"verify", "--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"verify", "--config", "/nonexistent/file.cfg"}).code, 2);
  EXPECT_EQ(run({"verify", "--config", "x.cfg", "--format", "xml"}).code, 2);
}

TEST(Cli, ListChecks) {
  auto r = run({"list-checks"});
  EXPECT_EQ(r.code, 0);
  for (auto id : regtor::suite::all_checks()) {
    EXPECT_NE(r.out.find(regtor::suite::to_string(id)), std::string::npos);
  }
}

TEST(Cli, ExitCodesFollowTheCertificate) {
  auto good = temp_file("good.cfg", "vars = x, y\nsequence = x, y\ns_max = 2\ndegree_max = 5\n");
  auto bad = temp_file("bad.cfg", "vars = x, y\nsequence = x, x\ns_max = 2\ndegree_max = 5\n");
  auto invalid = temp_file("invalid.cfg", "vars = x, y\nsequence = x + y^2, y\n");
  auto pass = run({"verify", "--config", good.string()});
  EXPECT_EQ(pass.code, 0) << pass.out << pass.err;
  EXPECT_NE(pass.out.find("overall: PASS"), std::string::npos);

  auto fail = run({"verify", "--config", bad.string(), "--out", "-"});
  EXPECT_EQ(fail.code, 1);
  auto cert = regtor::Json::parse(fail.out);
  EXPECT_EQ(cert["overall"], "FAIL");
  EXPECT_EQ(cert["checks"][0]["id"], "REGULARITY");
  EXPECT_EQ(cert["checks"][0]["status"], "FAIL");
  EXPECT_EQ(cert["checks"].back()["status"], "SKIPPED");

  auto usage = run({"verify", "--config", invalid.string()});
  EXPECT_EQ(usage.code, 2);
  EXPECT_NE(usage.err.find("VALIDATION_ERROR"), std::string::npos);

  EXPECT_EQ(run({"verify", "--config", good.string(), "--degree-max", "0"}).code, 2);
  EXPECT_EQ(run({"verify", "--config", good.string(), "--check", "NOPE"}).code, 2);
}

TEST(Cli, SelectionAndText) {
  auto good = temp_file("sel.cfg", "vars = x\nsequence = x\ns_max = 1\ndegree_max = 4\n");
  auto r = run({"verify", "--config", good.string(), "--check", "DELTA0", "--check", "REGULARITY", "--format", "text",
                "--out", "-"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("REGULARITY"), r.out.find("\n") + 1);
  EXPECT_NE(r.out.find("DELTA0"), std::string::npos);
  EXPECT_EQ(r.out.find("THEOREM1"), std::string::npos);
}

TEST(Cli, CertificatesAreByteIdenticalAndReportable) {
  auto cfg = temp_file("det.cfg", "vars = x, y\nsequence = x^2, y^3\ns_max = 2\ndegree_max = 7\nseed = 3\n");
  auto out1 = std::filesystem::temp_directory_path() / "regtor_cli_test_cert1.json";
  auto out2 = std::filesystem::temp_directory_path() / "regtor_cli_test_cert2.json";
  EXPECT_EQ(run({"verify", "--config", cfg.string(), "--out", out1.string(), "--threads", "1"}).code, 0);
  EXPECT_EQ(run({"verify", "--config", cfg.string(), "--out", out2.string(), "--threads", "4"}).code, 0);
  std::ifstream a(out1), b(out2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());

  auto report = run({"report", out1.string()});
  EXPECT_EQ(report.code, 0);
  EXPECT_NE(report.out.find("THEOREM1          PASS"), std::string::npos) << report.out;
  EXPECT_EQ(run({"report", "/nonexistent.json"}).code, 2);
}

}  // namespace

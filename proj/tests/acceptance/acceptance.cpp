// Runs the nine acceptance criteria and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "regtor/cli/app.hpp"
#include "regtor/linalg/homology.hpp"
#include "regtor/model/model_complex.hpp"
#include "regtor/suite/suite.hpp"
#include "support/convert.hpp"
#include "support/instances.hpp"
#include "support/koszul_oracle.hpp"
#include "support/snf_oracle.hpp"

namespace {

using regtor::Json;
using regtor::linalg::BaseRing;
using regtor::suite::CheckId;
using regtor::suite::RunOptions;
using testing_support::variable_instance;
using testing_support::x2y3_instance;

/// Collects the first problem of a criterion; later ones are counted.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (problems_++ == 0) first_ = what;
  }
  bool ok() const { return problems_ == 0; }
  std::string summary() const {
    return first_ + (problems_ > 1 ? " (+" + std::to_string(problems_ - 1) + " more)" : "");
  }

 private:
  std::size_t problems_ = 0;
  std::string first_;
};

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

RunOptions options(unsigned s_max, unsigned degree_max) {
  RunOptions o;
  o.s_max = s_max;
  o.degree_max = degree_max;
  o.threads = 0;
  return o;
}

const regtor::CheckReport& report_of(const regtor::suite::Certificate& cert, CheckId id) {
  for (const auto& c : cert.checks) {
    if (c.id == id) return c.report;
  }
  throw std::runtime_error("missing check " + regtor::suite::to_string(id));
}

std::string label(const regtor::poly::RingContext& ctx) {
  std::string s = ctx.base().name() + "(";
  for (std::size_t i = 0; i < ctx.n(); ++i) s += (i ? "," : "") + ctx.render(ctx.sequence()[i]);
  return s + ")";
}

void require_pass(Verdict& v, const regtor::suite::Certificate& cert, CheckId id, const std::string& where) {
  const auto& r = report_of(cert, id);
  v.require(r.passed(), regtor::suite::to_string(id) + " on " + where + ": " + r.detail + " " +
                            (r.witness.is_null() ? "" : r.witness.dump()));
}

// 1. Short exact Tor sequences on the variable sequence, n = 1..3, s_max = 3, D = 8, with
// the ranks of Tor_k(S, I^s) cross-checked by brute-force Koszul homology.
std::string theorem1(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t rows = 0;
  std::size_t oracle_cells = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto ctx = variable_instance(n);
    auto cert = regtor::suite::run_all(ctx, options(3, 8), {CheckId::kTheorem1});
    const auto& r = report_of(cert, CheckId::kTheorem1);
    require_pass(v, cert, CheckId::kTheorem1, label(*ctx));
    if (!r.passed()) continue;
    for (const auto& row : r.payload["ranks"]) {
      const std::size_t s = row["s"];
      const std::size_t k = row["k"];
      const std::size_t expected = binomial(n, k) * binomial(n + s - 1, n - 1);
      v.require(row["tor_graded"].get<std::size_t>() == expected,
                "rank Tor_" + std::to_string(k) + "(I^" + std::to_string(s) + "/I^" + std::to_string(s + 1) +
                    ") = " + row["tor_graded"].dump() + ", expected " + std::to_string(expected));
      ++rows;
    }
    // Independent homology of Λ ⊗ I^s for the same sequence.
    oracle::MonomialSequence seq{n, {}};
    for (std::size_t i = 0; i < n; ++i) {
      oracle::Exponents e(n, 0);
      e[i] = 1;
      seq.gens.push_back(e);
    }
    for (unsigned s = 0; s <= 3; ++s) {
      for (unsigned k = 0; k <= n; ++k) {
        std::size_t total = 0;
        for (unsigned d = 0; d <= 8; ++d) {
          auto [free_rank, torsion] = oracle::koszul_homology(seq, s, k, d);
          v.require(torsion.empty(), "oracle finds torsion in Tor_k(I^s)");
          total += free_rank;
          ++oracle_cells;
        }
        for (const auto& row : r.payload["ranks"]) {
          if (row["s"] == s && row["k"] == k) {
            v.require(row["tor_power"].get<std::size_t>() == total,
                      "rank Tor_" + std::to_string(k) + "(I^" + std::to_string(s) + ") differs from the oracle");
          }
        }
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(seconds < 60.0, "took " + std::to_string(seconds) + " s");
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << rows << " rank rows, " << oracle_cells << " oracle cells, " << seconds << " s";
  return os.str();
}

// 2. delta^0(e_j) = -{r_j} on the three canonical instances.
std::string delta0(Verdict& v) {
  std::vector<std::shared_ptr<const regtor::poly::RingContext>> instances = {variable_instance(1),
                                                                              variable_instance(2), x2y3_instance()};
  std::string images;
  for (const auto& ctx : instances) {
    auto cert = regtor::suite::run_all(ctx, options(3, 8), {CheckId::kDelta0});
    require_pass(v, cert, CheckId::kDelta0, label(*ctx));
    const auto& r = report_of(cert, CheckId::kDelta0);
    if (!r.passed()) continue;
    Json minus_identity = Json::array();
    for (std::size_t i = 0; i < ctx->n(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < ctx->n(); ++j) row.push_back(i == j ? -1 : 0);
      minus_identity.push_back(row);
    }
    v.require(r.payload["matrix"] == minus_identity, "matrix on " + label(*ctx) + " is " + r.payload["matrix"].dump());
    for (const auto& image : r.payload["images"]) {
      images += (images.empty() ? "" : "; ") + label(*ctx) + ": " + image.get<std::string>();
    }
  }
  return images;
}

// 3. Model identification and the long exact sequence, variable sequence.
std::string model_identification(Verdict& v) {
  std::size_t entries = 0;
  std::size_t nodes = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto ctx = variable_instance(n);
    auto cert = regtor::suite::run_all(ctx, options(3, 8), {CheckId::kPropSequence, CheckId::kLongSequence});
    require_pass(v, cert, CheckId::kPropSequence, label(*ctx));
    require_pass(v, cert, CheckId::kLongSequence, label(*ctx));
    const auto& p = report_of(cert, CheckId::kPropSequence).payload;
    if (p.is_object()) {
      entries += p["entries_compared"].get<std::size_t>();
      v.require(p["cells_beyond_degree_bound"] == 0, "some cells of " + label(*ctx) + " were beyond the bound");
      for (const auto& b : p["change_of_basis"]) {
        v.require(b["signed_permutation"].get<bool>(), "change of basis is not a signed permutation");
      }
    }
    const auto& l = report_of(cert, CheckId::kLongSequence).payload;
    if (l.is_object()) nodes += l["nodes_checked"].get<std::size_t>();
  }
  return std::to_string(entries) + " matrix entries, " + std::to_string(nodes) + " exact nodes";
}

// 4. Leibniz rule on the singular extension over Z and F_2.
std::string leibniz(Verdict& v) {
  std::size_t pairs = 0;
  for (auto base : {BaseRing::integers(), BaseRing::prime_field(2)}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      auto ctx = variable_instance(n, base);
      auto cert = regtor::suite::run_all(ctx, options(3, 8), {CheckId::kLeibniz});
      require_pass(v, cert, CheckId::kLeibniz, label(*ctx));
      const auto& p = report_of(cert, CheckId::kLeibniz).payload;
      if (p.is_object()) pairs += p["pairs_checked"].get<std::size_t>();
    }
    auto ctx = x2y3_instance(base);
    auto cert = regtor::suite::run_all(ctx, options(3, 8), {CheckId::kLeibniz});
    require_pass(v, cert, CheckId::kLeibniz, label(*ctx));
  }
  return std::to_string(pairs) + " basis pairs on the variable sequences";
}

// 5. Exterior bialgebra identities and Koszul acyclicity.
std::string identities(Verdict& v) {
  std::vector<std::shared_ptr<const regtor::poly::RingContext>> instances = {
      variable_instance(1), variable_instance(2), variable_instance(3), x2y3_instance()};
  for (const auto& ctx : instances) {
    auto o = options(3, 8);
    o.bialgebra_trials = 100;
    auto cert = regtor::suite::run_all(ctx, o, {CheckId::kBialgebra, CheckId::kKoszulResolution});
    require_pass(v, cert, CheckId::kBialgebra, label(*ctx));
    require_pass(v, cert, CheckId::kKoszulResolution, label(*ctx));
    const auto& p = report_of(cert, CheckId::kBialgebra).payload;
    v.require(p.is_object() && p["random_trials"] == 100, "bialgebra run did not use 100 random trials");
  }
  return std::to_string(instances.size()) + " instances, 100 random trials each, degree 8";
}

// 6. Model complex over Z, Q, F_2, F_5 for n <= 4, s_max = 4.
std::string model_complex(Verdict& v) {
  std::size_t runs = 0;
  for (auto base : {BaseRing::integers(), BaseRing::rationals(), BaseRing::prime_field(2), BaseRing::prime_field(5)}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      auto exact = regtor::model::verify_model_exactness(n, 4, base);
      v.require(exact.passed(), "exactness n=" + std::to_string(n) + " over " + base.name() + ": " + exact.detail);
      auto colinear = regtor::model::verify_colinearity(n, 4, base);
      v.require(colinear.passed(),
                "colinearity n=" + std::to_string(n) + " over " + base.name() + ": " + colinear.detail);
      ++runs;
    }
  }
  // Over Z the image of each differential is saturated, so every kernel is a
  // direct summand and free.
  for (std::size_t n = 1; n <= 4; ++n) {
    for (unsigned s = 0; s <= 4; ++s) {
      for (unsigned k = 1; k <= n; ++k) {
        auto m = regtor::model::model_differential(n, s, k, BaseRing::integers());
        auto ref = oracle::invariant_factors(testing_support::to_oracle(m));
        for (const auto& d : ref) v.require(d == 1, "coker of the model differential has torsion");
      }
    }
  }
  return std::to_string(runs) + " (n, base) runs";
}

std::filesystem::path config_path(const std::string& name) {
  return std::filesystem::path(REGTOR_CONFIG_DIR) / name;
}

int run_tool(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  int code = regtor::cli::run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

// 7. Negative control (x, x) through the command line.
std::string negative_control(Verdict& v) {
  std::string out;
  const int code = run_tool({"verify", "--config", config_path("bad_xx.cfg").string(), "--out", "-"}, &out);
  v.require(code == 1, "exit code " + std::to_string(code));
  Json cert = Json::parse(out);
  std::size_t skipped = 0;
  for (const auto& c : cert["checks"]) {
    if (c["id"] == "REGULARITY") {
      v.require(c["status"] == "FAIL" && c.contains("witness"), "REGULARITY did not fail with a witness");
    }
    if (c["id"] == "KOSZUL_RESOLUTION") {
      v.require(c["status"] == "FAIL" && c["witness"]["k"] == 1, "Koszul H_1 != 0 was not detected");
    }
    if (c["status"] == "SKIPPED") ++skipped;
  }
  v.require(skipped == 7, std::to_string(skipped) + " dependent checks skipped, expected 7");
  return "exit " + std::to_string(code) + ", " + std::to_string(skipped) + " dependent checks skipped";
}

// 8. Two runs write byte-identical certificates.
std::string determinism(Verdict& v) {
  std::size_t bytes = 0;
  for (const std::string name : {"xy.cfg", "x2y3.cfg"}) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / ("regtor_acceptance_a_" + name + ".json");
    const auto b = dir / ("regtor_acceptance_b_" + name + ".json");
    v.require(run_tool({"verify", "--config", config_path(name).string(), "--out", a.string(), "--threads", "1"}) == 0,
              name + " did not pass");
    v.require(run_tool({"verify", "--config", config_path(name).string(), "--out", b.string(), "--threads", "0"}) == 0,
              name + " did not pass");
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    v.require(!sa.str().empty() && sa.str() == sb.str(), name + " certificates differ");
    bytes += sa.str().size();
  }
  return std::to_string(bytes) + " bytes compared";
}

// 9. Subquotient homology against a dense Boost SNF reference, and lift
// independence of the connecting maps of criterion 1.
std::string oracles(Verdict& v) {
  const BaseRing Z = BaseRing::integers();
  std::mt19937_64 rng(2024);
  std::size_t torsion_cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto a = static_cast<std::size_t>(testing_support::draw(rng, 1, 12));
    auto b = static_cast<std::size_t>(testing_support::draw(rng, 1, 12));
    auto c = static_cast<std::size_t>(testing_support::draw(rng, 1, 12));
    auto [d_in, d_out] = testing_support::random_complex(rng, Z, a, b, c, 5);
    auto h = regtor::linalg::subquotient_homology(d_in, d_out);
    auto [free_rank, torsion] = oracle::homology(testing_support::to_oracle(d_in), testing_support::to_oracle(d_out), b);
    bool same = h.invariants().free_rank == free_rank && h.invariants().torsion.size() == torsion.size();
    for (std::size_t i = 0; same && i < torsion.size(); ++i) {
      same = h.invariants().torsion[i].get_str() == torsion[i].str();
    }
    v.require(same, "trial " + std::to_string(trial) + ": engine " + h.invariants().to_string());
    if (!torsion.empty()) ++torsion_cases;
  }
  std::size_t cells = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto ctx = variable_instance(n);
    regtor::suite::Workspace ws(ctx, options(3, 8));
    for (unsigned s = 0; s <= 3; ++s) {
      for (auto tag : {regtor::modules::SesTag::defining(s), regtor::modules::SesTag::filtration(s)}) {
        const auto& natural = ws.connecting(tag);
        const auto& reversed = ws.connecting(tag, regtor::linalg::PivotOrder::kReversed);
        for (std::size_t k = 0; k < natural.cells.size(); ++k) {
          for (std::size_t d = 0; d < natural.cells[k].size(); ++d) {
            v.require(natural.cells[k][d] == reversed.cells[k][d],
                      "lift dependence on " + tag.label() + " for n=" + std::to_string(n));
            ++cells;
          }
        }
      }
    }
  }
  return "200 complexes (" + std::to_string(torsion_cases) + " with torsion), " + std::to_string(cells) +
         " connecting cells under both lifts";
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<std::string(Verdict&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "short exact Tor sequences", theorem1},
      {2, "delta^0 on generators", delta0},
      {3, "model identification and long exact sequence", model_identification},
      {4, "Leibniz rule", leibniz},
      {5, "identity suite and Koszul acyclicity", identities},
      {6, "model complex", model_complex},
      {7, "negative controls", negative_control},
      {8, "determinism", determinism},
      {9, "oracle cross-checks", oracles},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    std::string detail;
    try {
      detail = c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << c.number << " " << (v.ok() ? "PASS" : "FAIL") << ": " << c.name << " -- "
              << (v.ok() ? detail : v.summary()) << std::endl;
    if (!v.ok()) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

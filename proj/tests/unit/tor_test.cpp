#include <gtest/gtest.h>

#include "regtor/exterior/exterior.hpp"
#include "regtor/tor/tor.hpp"
#include "support/instances.hpp"
#include "support/koszul_oracle.hpp"

using namespace regtor::tor;
using regtor::linalg::BaseRing;
using regtor::modules::BilinearMap;
using regtor::modules::FiltrationModule;
using regtor::modules::ModuleCache;
using regtor::modules::SesTag;
using regtor::modules::ShortExactSequence;
using regtor::poly::RingContext;
using testing_support::variable_instance;
using testing_support::x2y3_instance;
using testing_support::xx_instance;

namespace {

const BaseRing kZ = BaseRing::integers();

std::shared_ptr<const TorModule> tor_of(std::shared_ptr<const FiltrationModule> m) {
  return std::make_shared<const TorModule>(std::make_shared<const KoszulTensorComplex>(m));
}

std::size_t total_rank(const TorModule& t, unsigned k) {
  std::size_t r = 0;
  for (unsigned d = 0; d <= t.degree_bound(); ++d) r += t.invariants(k, d).free_rank;
  return r;
}

ExactMatrix identity(std::size_t n) { return ExactMatrix::identity(kZ, n); }

Vector unit(std::size_t size, std::size_t i) {
  Vector v(size);
  v[i] = 1;
  return v;
}

struct SesTor {
  std::shared_ptr<const TorModule> left, middle, right;
  TorMap inclusion, projection, connecting;
};

SesTor tor_of_ses(const ShortExactSequence& ses, PivotOrder order = PivotOrder::kNatural) {
  SesTor t;
  t.left = tor_of(ses.left_ptr());
  t.middle = tor_of(ses.middle_ptr());
  t.right = tor_of(ses.right_ptr());
  t.inclusion = induced_map(ses.inclusion(), *t.left, *t.middle);
  t.projection = induced_map(ses.projection(), *t.middle, *t.right);
  t.connecting = connecting_hom(ses, t.middle->complex(), *t.left, *t.right, order);
  return t;
}

BilinearMap unit_product(std::shared_ptr<const FiltrationModule> m) {
  return BilinearMap(m, m, m, [](std::size_t, std::size_t) -> std::optional<std::size_t> { return 0; });
}

}  // namespace

TEST(KoszulTensorComplex, SquaresToZero) {
  for (auto ctx : {variable_instance(3), x2y3_instance(), xx_instance()}) {
    ModuleCache cache(ctx, 6);
    for (auto m : {cache.power(0), cache.power(2), cache.quotient(1, 3)}) {
      KoszulTensorComplex c(m);
      for (unsigned k = 2; k <= ctx->n(); ++k) {
        for (unsigned d = 0; d <= 6; ++d) {
          EXPECT_TRUE((c.differential(k - 1, d) * c.differential(k, d)).is_zero());
        }
      }
    }
  }
}

TEST(KoszulTensorComplex, MatchesSymbolicDifferential) {
  for (auto ctx : {variable_instance(3), x2y3_instance()}) {
    ModuleCache cache(ctx, 6);
    KoszulTensorComplex c(cache.power(0));
    const auto& r = c.module();
    for (unsigned k = 1; k <= ctx->n(); ++k) {
      for (unsigned d = 0; d <= 6; ++d) {
        for (const auto& b : c.blocks(k, d)) {
          for (std::size_t g = 0; g < b.size; ++g) {
            auto mono = regtor::exterior::ExteriorElement::basis(*ctx, b.subset).scaled(
                dynamic_cast<const FiltrationModule&>(r).representative(b.module_degree, g));
            auto image = regtor::exterior::koszul_diff(*ctx, mono);
            Vector expected(c.dimension(k - 1, d));
            for (const auto& [subset, coeff] : image.terms()) {
              const KoszulBlock* t = c.find_block(d, subset);
              ASSERT_NE(t, nullptr);
              auto coords = ctx->coordinates(coeff, t->module_degree);
              for (std::size_t i = 0; i < coords.size(); ++i) expected[t->offset + i] = coords[i];
            }
            EXPECT_EQ(c.differential(k, d).apply(unit(c.dimension(k, d), b.offset + g)), expected);
          }
        }
      }
    }
  }
}

TEST(Tor, SpecExamples) {
  ModuleCache cache(variable_instance(2), 6);
  auto tor_s = tor_of(cache.quotient(0, 1));
  for (unsigned k = 0; k <= 2; ++k) {
    const std::size_t expected[] = {1, 2, 1};
    for (unsigned d = 0; d <= 6; ++d) {
      EXPECT_EQ(tor_s->invariants(k, d), (ModuleInvariants{d == k ? expected[k] : 0, {}})) << k << "," << d;
    }
  }
  auto tor_r = tor_of(cache.power(0));
  for (unsigned k = 0; k <= 2; ++k) {
    for (unsigned d = 0; d <= 6; ++d) {
      EXPECT_EQ(tor_r->invariants(k, d), (ModuleInvariants{k == 0 && d == 0 ? 1u : 0u, {}}));
    }
  }
  auto tor_q = tor_of(cache.quotient(1, 2));
  EXPECT_EQ(total_rank(*tor_q, 0), 2u);
  EXPECT_EQ(total_rank(*tor_q, 1), 4u);
  EXPECT_EQ(total_rank(*tor_q, 2), 2u);
  EXPECT_TRUE(tor_q->is_free());
}

TEST(Tor, AgreesWithBruteForceOracle) {
  const std::vector<std::pair<std::shared_ptr<const RingContext>, oracle::MonomialSequence>> cases = {
      {variable_instance(2), {2, {{1, 0}, {0, 1}}}},
      {variable_instance(3), {3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}},
      {x2y3_instance(), {2, {{2, 0}, {0, 3}}}},
      {xx_instance(), {2, {{1, 0}, {1, 0}}}}};
  for (const auto& [ctx, seq] : cases) {
    ModuleCache cache(ctx, 6);
    for (unsigned s = 0; s <= 2; ++s) {
      auto t = tor_of(cache.power(s));
      for (unsigned k = 0; k <= ctx->n(); ++k) {
        for (unsigned d = 0; d <= 6; ++d) {
          auto [free, torsion] = oracle::koszul_homology(seq, s, k, d);
          EXPECT_EQ(t->invariants(k, d).free_rank, free) << "s=" << s << " k=" << k << " d=" << d;
          EXPECT_EQ(t->invariants(k, d).torsion.size(), torsion.size());
        }
      }
    }
  }
}

TEST(Tor, NonRegularSequenceHasHigherHomology) {
  ModuleCache cache(xx_instance(), 4);
  auto t = tor_of(cache.power(0));
  EXPECT_FALSE(t->invariants(1, 1).is_zero());
}

TEST(Tor, BaseChangeKeepsRanks) {
  for (const auto& base : {BaseRing::rationals(), BaseRing::prime_field(2), BaseRing::prime_field(5)}) {
    ModuleCache over_z(variable_instance(2), 5);
    ModuleCache over_field(variable_instance(2, base), 5);
    for (unsigned s = 0; s <= 2; ++s) {
      auto a = tor_of(over_z.quotient(s, s + 1));
      auto b = tor_of(over_field.quotient(s, s + 1));
      for (unsigned k = 0; k <= 2; ++k) {
        for (unsigned d = 0; d <= 5; ++d) EXPECT_EQ(a->invariants(k, d), b->invariants(k, d));
      }
    }
  }
}

TEST(InducedMap, IdentityZeroAndProjection) {
  ModuleCache cache(variable_instance(2), 5);
  auto i1 = cache.power(1);
  auto q = cache.quotient(1, 2);
  auto ti = tor_of(i1);
  auto tq = tor_of(q);
  auto id = induced_map(regtor::modules::ModuleMorphism::identity(i1), *ti, *ti);
  auto zero = induced_map(regtor::modules::ModuleMorphism::zero(i1, q), *ti, *tq);
  auto proj = induced_map(regtor::modules::ModuleMorphism::induced(i1, q, {0}), *ti, *tq);
  for (unsigned k = 0; k <= 2; ++k) {
    for (unsigned d = 0; d <= 5; ++d) {
      EXPECT_EQ(id.at(k, d), identity(ti->generator_count(k, d)));
      EXPECT_TRUE(zero.at(k, d).is_zero());
    }
  }
  EXPECT_EQ(proj.at(0, 1), identity(2));
}

TEST(Connecting, DeltaZeroSendsGeneratorsToMinusSequence) {
  for (auto ctx : {variable_instance(1), variable_instance(2), x2y3_instance()}) {
    ModuleCache cache(ctx, 6);
    auto ses = regtor::modules::build_ses(cache, SesTag::filtration(0));
    auto t = tor_of_ses(ses);
    for (std::size_t j = 0; j < ctx->n(); ++j) {
      const unsigned e = ctx->seq_degree(j);
      const auto& block = *t.right->complex().find_block(e, regtor::exterior::IndexSet::singleton(j));
      Vector chain(t.right->complex().dimension(1, e));
      chain[block.offset] = 1;  // e_j ⊗ 1
      Vector image = t.connecting.at(1, e).apply(t.right->class_of(1, e, chain));
      Vector expected = t.left->class_of(0, e, ses.left().class_of(0, ctx->sequence()[j], e));
      EXPECT_EQ(image, regtor::linalg::scale(kZ, -1, expected));
    }
  }
}

TEST(Connecting, DefiningSequenceDegenerates) {
  ModuleCache cache(variable_instance(3), 6);
  auto ses = regtor::modules::build_ses(cache, SesTag::r_over_i());
  auto t = tor_of_ses(ses);
  for (unsigned k = 2; k <= 3; ++k) {
    for (unsigned d = 0; d <= 6; ++d) {
      const auto& m = t.connecting.at(k, d);
      EXPECT_EQ(m.rows(), m.cols());
      EXPECT_TRUE(m.rows() == 0 || regtor::linalg::spans_everything(m));
    }
  }
}

TEST(Connecting, IndependentOfLift) {
  for (auto ctx : {variable_instance(2), x2y3_instance()}) {
    ModuleCache cache(ctx, 6);
    for (unsigned s = 0; s <= 2; ++s) {
      for (auto tag : {SesTag::defining(s), SesTag::filtration(s)}) {
        auto ses = regtor::modules::build_ses(cache, tag);
        auto natural = tor_of_ses(ses, PivotOrder::kNatural);
        auto reversed = tor_of_ses(ses, PivotOrder::kReversed);
        EXPECT_EQ(natural.connecting.cells, reversed.connecting.cells) << tag.label();
      }
    }
  }
}

TEST(LongExactSequence, HoldsForBuiltSequences) {
  for (auto ctx : {variable_instance(2), x2y3_instance(), xx_instance()}) {
    ModuleCache cache(ctx, 6);
    for (auto tag : {SesTag::defining(0), SesTag::defining(1), SesTag::filtration(0), SesTag::filtration(1),
                     SesTag::singular(2), SesTag::r_over_i()}) {
      auto ses = regtor::modules::build_ses(cache, tag);
      auto t = tor_of_ses(ses);
      auto report = check_long_exact_sequence(*t.left, *t.middle, *t.right, t.inclusion, t.projection, t.connecting);
      EXPECT_TRUE(report.passed()) << tag.label() << ": " << report.detail << " " << report.witness.dump();
    }
  }
}

TEST(LongExactSequence, DetectsBrokenConnectingMap) {
  ModuleCache cache(variable_instance(2), 4);
  auto ses = regtor::modules::build_ses(cache, SesTag::filtration(0));
  auto t = tor_of_ses(ses);
  t.connecting.cells[1][1] = ExactMatrix(kZ, t.connecting.at(1, 1).rows(), t.connecting.at(1, 1).cols());
  EXPECT_EQ(check_long_exact_sequence(*t.left, *t.middle, *t.right, t.inclusion, t.projection, t.connecting).status,
            regtor::CheckStatus::kFail);
}

TEST(TorProduct, ExteriorAlgebraOnTorOfQuotient) {
  ModuleCache cache(variable_instance(3), 6);
  auto s = cache.quotient(0, 1);
  auto t = tor_of(s);
  auto mu = unit_product(s);
  TorClass e1{1, 1, {1, 0, 0}}, e2{1, 1, {0, 1, 0}};
  auto e12 = tor_product(mu, *t, *t, *t, e1, e2);
  auto e21 = tor_product(mu, *t, *t, *t, e2, e1);
  EXPECT_EQ(e12.k, 2u);
  EXPECT_EQ(e12.coordinates, (Vector{1, 0, 0}));
  EXPECT_EQ(e21.coordinates, (Vector{-1, 0, 0}));
  EXPECT_EQ(tor_product(mu, *t, *t, *t, e1, e1).coordinates, (Vector{0, 0, 0}));
  TorClass one{0, 0, {1}};
  EXPECT_EQ(tor_product(mu, *t, *t, *t, one, e2).coordinates, e2.coordinates);
}

TEST(TorProduct, AssociativeUnitalCommutative) {
  for (auto ctx : {variable_instance(3), x2y3_instance()}) {
    const unsigned bound = 6;
    ModuleCache cache(ctx, bound);
    auto s = cache.quotient(0, 1);
    auto t = tor_of(s);
    auto mu = unit_product(s);
    const unsigned n = static_cast<unsigned>(ctx->n());
    std::vector<TorClass> basis;
    for (unsigned k = 0; k <= n; ++k) {
      for (unsigned d = 0; d <= bound; ++d) {
        for (std::size_t g = 0; g < t->generator_count(k, d); ++g) {
          basis.push_back({k, d, unit(t->generator_count(k, d), g)});
        }
      }
    }
    auto mul = [&](const TorClass& a, const TorClass& b) { return tor_product(mu, *t, *t, *t, a, b); };
    for (const auto& a : basis) {
      EXPECT_EQ(mul(TorClass{0, 0, {1}}, a).coordinates, a.coordinates);
      for (const auto& b : basis) {
        if (a.k + b.k > n || a.d + b.d > bound) continue;
        auto ab = mul(a, b);
        auto ba = mul(b, a);
        EXPECT_EQ(ab.coordinates, regtor::linalg::scale(kZ, (a.k * b.k) % 2 ? -1 : 1, ba.coordinates));
        for (const auto& c : basis) {
          if (ab.k + c.k > n || ab.d + c.d > bound) continue;
          EXPECT_EQ(mul(ab, c).coordinates, mul(a, mul(b, c)).coordinates);
        }
      }
    }
  }
}

TEST(Leibniz, HoldsOnSingularExtensions) {
  for (auto base : {BaseRing::integers(), BaseRing::prime_field(2)}) {
    for (auto ctx : {variable_instance(2, base), testing_support::x2y3_instance(base)}) {
      ModuleCache cache(ctx, 6);
      for (auto tag : {SesTag::singular(2), SesTag::filtration(0)}) {
        auto ses = regtor::modules::build_ses(cache, tag);
        auto t = tor_of_ses(ses);
        auto report = verify_leibniz(ses, *t.left, *t.right, t.connecting, 6);
        EXPECT_TRUE(report.passed()) << tag.label() << ": " << report.detail << " " << report.witness.dump();
        EXPECT_GT(report.payload["pairs_checked"].get<std::size_t>(), 0u);
      }
    }
  }
}

TEST(Leibniz, DetectsSignError) {
  ModuleCache cache(variable_instance(2), 4);
  auto ses = regtor::modules::build_ses(cache, SesTag::singular(2));
  auto t = tor_of_ses(ses);
  // Flip the sign of the connecting map on Tor_2 only.
  for (auto& m : t.connecting.cells[2]) m = m.scaled(-1);
  auto report = verify_leibniz(ses, *t.left, *t.right, t.connecting, 4);
  EXPECT_EQ(report.status, regtor::CheckStatus::kFail);
  EXPECT_TRUE(report.witness.contains("alpha"));
}

TEST(Leibniz, SkipsWithoutActions) {
  ModuleCache cache(variable_instance(2), 4);
  auto ses = regtor::modules::build_ses(cache, SesTag::defining(1));
  auto t = tor_of_ses(ses);
  EXPECT_EQ(verify_leibniz(ses, *t.left, *t.right, t.connecting, 4).status, regtor::CheckStatus::kSkipped);
}

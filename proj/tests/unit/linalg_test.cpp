#include <random>

#include <gtest/gtest.h>

#include "regtor/linalg/homology.hpp"
#include "regtor/linalg/normal_form.hpp"
#include "support/convert.hpp"

using namespace regtor::linalg;
using testing_support::draw;
using testing_support::random_matrix;
using testing_support::to_oracle;

namespace {

const BaseRing kZ = BaseRing::integers();
const BaseRing kQ = BaseRing::rationals();

// Square and its columns generate Z^n; uses the echelon code path, which is
// independent of the Smith reduction under test.
bool is_unimodular(const ExactMatrix& m) { return m.rows() == m.cols() && spans_everything(m); }

}  // namespace

TEST(BaseRing, PrimeFieldRejectsComposites) {
  EXPECT_THROW(BaseRing::prime_field(4), std::invalid_argument);
  EXPECT_THROW(BaseRing::prime_field(1), std::invalid_argument);
  EXPECT_NO_THROW(BaseRing::prime_field(2));
  EXPECT_EQ(BaseRing::prime_field(5).name(), "F5");
}

TEST(BaseRing, PrimeFieldArithmeticReduces) {
  BaseRing f5 = BaseRing::prime_field(5);
  EXPECT_EQ(f5.from_int(-1), 4);
  EXPECT_EQ(f5.mul(3, 4), 2);
  EXPECT_EQ(f5.inverse(2), 3);
  EXPECT_EQ(f5.normalize(Scalar(1, 2)), 3);
}

TEST(BaseRing, IntegerDivision) {
  EXPECT_TRUE(kZ.divides(2, 6));
  EXPECT_FALSE(kZ.divides(2, 5));
  EXPECT_THROW(kZ.exact_quotient(5, 2), std::domain_error);
  EXPECT_EQ(kZ.euclid_quotient(-7, 2), -4);
}

TEST(Smith, EmptyMatrix) {
  auto snf = smith_normal_form(ExactMatrix(kZ, 0, 0));
  EXPECT_EQ(snf.U.rows(), 0u);
  EXPECT_EQ(snf.D.rows(), 0u);
  EXPECT_EQ(snf.V.cols(), 0u);
}

TEST(Smith, DiagTwoThree) {
  auto m = ExactMatrix::from_rows(kZ, 2, 2, {2, 0, 0, 3});
  auto snf = smith_normal_form(m);
  EXPECT_EQ(snf.D, ExactMatrix::from_rows(kZ, 2, 2, {1, 0, 0, 6}));
  EXPECT_EQ(snf.U * m * snf.V, snf.D);
  auto ref = oracle::invariant_factors(to_oracle(m));
  ASSERT_EQ(ref.size(), 2u);
  EXPECT_EQ(ref[0], 1);
  EXPECT_EQ(ref[1], 6);
}

TEST(Smith, TwoByTwoDeterminantMinusEight) {
  auto m = ExactMatrix::from_rows(kZ, 2, 2, {2, 4, 6, 8});
  auto snf = smith_normal_form(m);
  EXPECT_EQ(snf.D, ExactMatrix::from_rows(kZ, 2, 2, {2, 0, 0, 4}));
  auto ref = oracle::invariant_factors(to_oracle(m));
  EXPECT_EQ(ref, (std::vector<oracle::Int>{2, 4}));
}

TEST(Smith, RandomMatricesSatisfyContract) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto rows = static_cast<std::size_t>(draw(rng, 0, 30));
    auto cols = static_cast<std::size_t>(draw(rng, 0, 30));
    auto m = random_matrix(rng, kZ, rows, cols, 9, 20);
    auto snf = smith_normal_form(m);
    ASSERT_EQ(snf.U * m * snf.V, snf.D);
    ASSERT_EQ(snf.U * snf.U_inverse, ExactMatrix::identity(kZ, rows));
    ASSERT_TRUE(is_unimodular(snf.U));
    ASSERT_TRUE(is_unimodular(snf.V));
    for (std::size_t c = 0; c < cols; ++c) {
      for (const auto& [r, x] : snf.D.column(c)) {
        ASSERT_EQ(r, c);
        ASSERT_GT(x, 0);
      }
    }
    for (std::size_t i = 0; i + 1 < snf.rank; ++i) ASSERT_TRUE(kZ.divides(snf.diagonal[i], snf.diagonal[i + 1]));
    auto ref = oracle::invariant_factors(to_oracle(m));
    ASSERT_EQ(ref.size(), snf.rank);
    for (std::size_t i = 0; i < snf.rank; ++i) ASSERT_EQ(ref[i].str(), snf.diagonal[i].get_str());
  }
}

TEST(Smith, FieldDiagonalIsOnes) {
  std::mt19937_64 rng(11);
  BaseRing f5 = BaseRing::prime_field(5);
  auto m = random_matrix(rng, f5, 8, 6, 4, 50);
  auto snf = smith_normal_form(m);
  EXPECT_EQ(snf.U * m * snf.V, snf.D);
  for (std::size_t i = 0; i < snf.rank; ++i) EXPECT_EQ(snf.diagonal[i], 1);
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(ExactMatrix::identity(kZ, 3)).cols(), 0u);
  EXPECT_EQ(kernel_basis(ExactMatrix::identity(kZ, 3)).rows(), 3u);
  EXPECT_EQ(kernel_basis(ExactMatrix(kZ, 2, 2)), ExactMatrix::identity(kZ, 2));
  auto k = kernel_basis(ExactMatrix::from_rows(kZ, 1, 2, {1, 1}));
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(k.at(0, 0), -k.at(1, 0));
  EXPECT_EQ(abs(k.at(0, 0)), 1);
}

TEST(Kernel, SaturatedLattice) {
  // ker [2 4] over Z is spanned by (2, -1), not by (4, -2).
  auto k = kernel_basis(ExactMatrix::from_rows(kZ, 1, 2, {2, 4}));
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(abs(k.at(1, 0)), 1);
  EXPECT_EQ(abs(k.at(0, 0)), 2);
}

TEST(Kernel, RandomKernelsAreSaturatedAndAnnihilated) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    auto rows = static_cast<std::size_t>(draw(rng, 1, 10));
    auto cols = static_cast<std::size_t>(draw(rng, 1, 12));
    auto m = random_matrix(rng, kZ, rows, cols, 9, 40);
    auto k = kernel_basis(m);
    ASSERT_TRUE((m * k).is_zero());
    ASSERT_EQ(k.cols(), cols - oracle::rational_rank(to_oracle(m)));
    ASSERT_EQ(rank(k), k.cols());
    // Saturated: the cokernel of K has no torsion.
    ASSERT_TRUE(cokernel_invariants(k).is_free());
  }
}

TEST(Solve, Examples) {
  auto x = solve_in_image(ExactMatrix::identity(kZ, 2), {Scalar(5), Scalar(7)});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Vector{5, 7}));
  EXPECT_FALSE(solve_in_image(ExactMatrix::from_rows(kZ, 1, 1, {2}), {Scalar(1)}));
  auto half = solve_in_image(ExactMatrix::from_rows(kQ, 1, 1, {2}), {Scalar(1)});
  ASSERT_TRUE(half);
  EXPECT_EQ((*half)[0], Scalar(1, 2));
}

TEST(Solve, BothPivotOrdersSolve) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_matrix(rng, kZ, 6, 8, 5, 40);
    Vector y(8);
    for (auto& v : y) v = draw(rng, -3, 3);
    Vector b = m.apply(y);
    for (auto order : {PivotOrder::kNatural, PivotOrder::kReversed}) {
      auto x = solve_in_image(m, b, order);
      ASSERT_TRUE(x);
      ASSERT_EQ(m.apply(*x), b);
    }
  }
}

TEST(Subquotient, ZeroDifferentials) {
  auto h = subquotient_homology(ExactMatrix(kZ, 2, 0), ExactMatrix(kZ, 0, 2));
  EXPECT_EQ(h.invariants().free_rank, 2u);
  EXPECT_TRUE(h.invariants().torsion.empty());
}

TEST(Subquotient, CyclicOfOrderTwo) {
  auto d_in = ExactMatrix::from_rows(kZ, 2, 1, {2, 0});
  auto d_out = ExactMatrix::from_rows(kZ, 1, 2, {0, 3});
  auto h = subquotient_homology(d_in, d_out);
  EXPECT_EQ(h.invariants().free_rank, 0u);
  EXPECT_EQ(h.invariants().torsion, (std::vector<mpz_class>{2}));
  EXPECT_EQ(h.cycle_basis(), ExactMatrix::from_rows(kZ, 2, 1, {1, 0}));
  EXPECT_EQ(h.class_of({Scalar(3), Scalar(0)}), (Vector{1}));
  EXPECT_EQ(h.class_of({Scalar(2), Scalar(0)}), (Vector{0}));
  EXPECT_THROW(h.class_of({Scalar(0), Scalar(1)}), std::invalid_argument);
  auto ref = oracle::homology(to_oracle(d_in), to_oracle(d_out), 2);
  EXPECT_EQ(ref.first, 0u);
  EXPECT_EQ(ref.second, (std::vector<oracle::Int>{2}));
}

TEST(Subquotient, MultiplicationByXIsInjective) {
  // Koszul complex of (x) in internal degree 3: R_2 --x--> R_3 --> 0.
  auto h = subquotient_homology(ExactMatrix(kZ, 1, 0), ExactMatrix::from_rows(kZ, 1, 1, {1}));
  EXPECT_TRUE(h.invariants().is_zero());
}

TEST(Subquotient, RejectsNonComplex) {
  auto d = ExactMatrix::identity(kZ, 1);
  EXPECT_THROW(subquotient_homology(d, d), std::logic_error);
}

TEST(Subquotient, ClassOfBasisAndBoundaries) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = static_cast<std::size_t>(draw(rng, 1, 5));
    auto b = static_cast<std::size_t>(draw(rng, 2, 8));
    auto c = static_cast<std::size_t>(draw(rng, 1, 5));
    auto [d_in, d_out] = testing_support::random_complex(rng, kZ, a, b, c, 4);
    auto h = subquotient_homology(d_in, d_out);
    auto ref = oracle::homology(to_oracle(d_in), to_oracle(d_out), b);
    ASSERT_EQ(h.invariants().free_rank, ref.first);
    ASSERT_EQ(h.invariants().torsion.size(), ref.second.size());
    for (std::size_t i = 0; i < ref.second.size(); ++i) ASSERT_EQ(h.invariants().torsion[i].get_str(), ref.second[i].str());
    for (std::size_t i = 0; i < h.generator_count(); ++i) {
      Vector expected(h.generator_count());
      expected[i] = 1;
      ASSERT_EQ(h.class_of(h.cycle_basis().column_vector(i)), expected);
    }
    Vector w(a);
    for (auto& v : w) v = draw(rng, -3, 3);
    ASSERT_TRUE(is_zero(h.class_of(d_in.apply(w))));
  }
}

TEST(Subquotient, RationalFreeRankMatchesRankNullity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto [d_in, d_out] = testing_support::random_complex(rng, kZ, 4, 7, 3, 3);
    ExactMatrix q_in(kQ, d_in.rows(), d_in.cols());
    ExactMatrix q_out(kQ, d_out.rows(), d_out.cols());
    for (std::size_t c = 0; c < d_in.cols(); ++c)
      for (const auto& [r, x] : d_in.column(c)) q_in.set(r, c, x);
    for (std::size_t c = 0; c < d_out.cols(); ++c)
      for (const auto& [r, x] : d_out.column(c)) q_out.set(r, c, x);
    auto h = subquotient_homology(q_in, q_out);
    ASSERT_TRUE(h.invariants().torsion.empty());
    ASSERT_EQ(h.invariants().free_rank, (7 - rank(q_out)) - rank(q_in));
  }
}

TEST(Presented, InjectiveSurjectiveAndHomology) {
  // Z/4 --(*2)--> Z/8 is injective, not surjective.
  auto f = ExactMatrix::from_rows(kZ, 1, 1, {2});
  auto rel4 = ExactMatrix::from_rows(kZ, 1, 1, {4});
  auto rel8 = ExactMatrix::from_rows(kZ, 1, 1, {8});
  EXPECT_TRUE(presented_injective(f, rel4, rel8));
  EXPECT_FALSE(presented_surjective(f, rel8));
  // Z/8 --(*1)--> Z/4 is surjective with kernel generated by 4.
  auto g = ExactMatrix::from_rows(kZ, 1, 1, {1});
  EXPECT_TRUE(presented_surjective(g, rel4));
  auto w = presented_kernel_witness(g, rel8, rel4);
  ASSERT_TRUE(w);
  EXPECT_EQ((*w)[0], 4);
  // 0 -> Z/4 -> Z/8 -> Z/2 -> 0 is exact in the middle.
  auto p = ExactMatrix::from_rows(kZ, 1, 1, {1});
  auto rel2 = ExactMatrix::from_rows(kZ, 1, 1, {2});
  EXPECT_TRUE(presented_homology(f, p, rel8, rel2).invariants().is_zero());
}

TEST(Presented, CokernelInvariants) {
  auto inv = cokernel_invariants(ExactMatrix::from_rows(kZ, 3, 2, {2, 0, 0, 6, 0, 0}));
  EXPECT_EQ(inv.free_rank, 1u);
  EXPECT_EQ(inv.torsion, (std::vector<mpz_class>{2, 6}));
}

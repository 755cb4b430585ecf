// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "test_support.hpp"

using namespace gencirc;
using gencirc::testing::EigenMatrix;
using gencirc::testing::max_abs_diff;
using gencirc::testing::naive_circulant;
using gencirc::testing::naive_u;
using gencirc::testing::random_coeffs;
using gencirc::testing::random_weights;

namespace {

const Complex kI{0.0, 1.0};

CirculantSpec example_spec() {
  return {GenPermMatrix(3, 1, {-2.0, -3.0, 1.0}), {kI, -1.0, 3.0, -kI / 6.0, 0.5, -0.5}};
}

}  // namespace

TEST(Circulant, FoldOfExampleCollapsesToTwoU) {
  const FoldedSpec f = fold(example_spec());
  ASSERT_EQ(f.coeffs.size(), 3U);
  // 6 * fl(1/6) rounds (tie to even) to exactly 1, so c'_0 cancels exactly.
  EXPECT_EQ(f.coeffs[0], Complex(0.0));
  EXPECT_EQ(f.coeffs[1], Complex(2.0));
  EXPECT_EQ(f.coeffs[2], Complex(0.0));
}

TEST(Circulant, FoldPadsShortCoefficientLists) {
  const CVector c{{1.0, 2.0}, {-0.5, 0.0}};
  const FoldedSpec f = fold(CirculantSpec(GenPermMatrix(5, 2, CVector(5, 1.0)), c));
  EXPECT_EQ(f.coeffs, (CVector{{1.0, 2.0}, {-0.5, 0.0}, 0.0, 0.0, 0.0}));
}

TEST(Circulant, FoldOfSquareOnTwoByTwo) {
  const Complex a{1.5, -0.5}, b{2.0, 3.0};
  const FoldedSpec f = fold(CirculantSpec(GenPermMatrix(2, 1, {a, b}), {0.0, 0.0, 1.0}));
  EXPECT_EQ(f.coeffs, (CVector{a * b, 0.0}));
}

TEST(Circulant, FoldPreservesTheDenseMatrix) {
  std::mt19937_64 rng(41);
  for (std::size_t m = 1; m <= 12; ++m) {
    for (std::size_t s = 0; s < m; ++s) {
      const CVector u = random_weights(m, rng);
      const CVector c = random_coeffs(4 * m + 1, rng);
      const EigenMatrix reference = naive_circulant(m, s, u, c);
      const DenseMatrix folded = to_dense(CirculantSpec(GenPermMatrix(m, s, u), c));
      ASSERT_LE(max_abs_diff(reference, folded) / std::max(reference.norm(), 1.0), 1e-11) << "m=" << m << " s=" << s;
    }
  }
}

TEST(Circulant, FoldStaysAccurateOnRepeatedOrbits) {
  std::mt19937_64 rng(42);
  for (std::size_t m = 12; m <= 24; ++m) {
    for (std::size_t s = 0; s < m; ++s) {
      if (std::gcd(m, s) == 1) continue;
      const CVector u = random_weights(m, rng);
      const CVector c = random_coeffs(4 * m + 1, rng);
      const EigenMatrix reference = naive_circulant(m, s, u, c);
      const DenseMatrix folded = to_dense(CirculantSpec(GenPermMatrix(m, s, u), c));
      ASSERT_LE(max_abs_diff(reference, folded) / std::max(reference.norm(), 1.0), 1e-13) << "m=" << m << " s=" << s;
    }
  }
}

TEST(Circulant, OrbitCoefficientsEqualScalarOnesForOneOrbit) {
  std::mt19937_64 rng(44);
  const CVector u = random_weights(7, rng);
  const FoldedSpec f = fold(CirculantSpec(GenPermMatrix(7, 3, u), random_coeffs(30, rng)));
  ASSERT_EQ(f.orbit_coeffs.size(), 1U);
  EXPECT_EQ(f.orbit_coeffs[0], f.coeffs);
}

TEST(Circulant, NilpotentOrbitKeepsExactDiagonal) {
  // s = 2 on m = 6: orbit {0, 2, 4} holds a zero weight, so U^3 vanishes there.
  std::mt19937_64 rng(45);
  CVector u = random_weights(6, rng);
  u[2] = 0.0;
  const CVector c = random_coeffs(25, rng);
  const FoldedSpec f = fold(CirculantSpec(GenPermMatrix(6, 2, u), c));
  ASSERT_EQ(f.orbit_coeffs.size(), 2U);
  EXPECT_EQ(f.orbit_coeffs[0], (CVector{c[0], c[1], c[2]}));
  const DenseMatrix dense = f.to_dense();
  for (std::size_t i : {0U, 2U, 4U}) EXPECT_EQ(dense(i, i), c[0]);
}

TEST(Circulant, CharacteristicPolynomialAnnihilatesU) {
  std::mt19937_64 rng(43);
  for (std::size_t m = 2; m <= 10; ++m) {
    for (std::size_t s = 0; s < m; ++s) {
      const CVector u = random_weights(m, rng);
      const CVector chi = characteristic_polynomial(GenPermMatrix(m, s, u));
      ASSERT_EQ(chi.size(), m + 1);
      ASSERT_EQ(chi[m], Complex(1.0));
      const EigenMatrix value = naive_circulant(m, s, u, chi);
      ASSERT_LE(value.norm(), 1e-11) << "m=" << m << " s=" << s;
    }
  }
}

TEST(Circulant, ExampleDenseMatrixIsExact) {
  DenseMatrix expected(3, 3);
  expected(0, 1) = -4.0;
  expected(1, 2) = -6.0;
  expected(2, 0) = 2.0;
  EXPECT_EQ(to_dense(example_spec()), expected);
}

TEST(Circulant, ConstantCoefficientGivesScaledIdentity) {
  const Complex c0{2.0, -1.0};
  const DenseMatrix d = to_dense(CirculantSpec(GenPermMatrix(4, 1, CVector(4, 3.0)), {c0}));
  EXPECT_EQ(d, c0 * DenseMatrix::identity(4));
}

TEST(Circulant, LinearCoefficientGivesU) {
  std::mt19937_64 rng(5);
  const GenPermMatrix u(6, 4, random_weights(6, rng));
  EXPECT_EQ(to_dense(CirculantSpec(u, {0.0, 1.0})), u.to_dense());
}

TEST(Circulant, RejectsEmptyCoefficients) {
  EXPECT_THROW(CirculantSpec(GenPermMatrix(2, 1, {1.0, 1.0}), {}), DomainError);
}

TEST(Circulant, MatvecExamples) {
  const CVector y = matvec(example_spec(), {1.0, 0.0, 0.0});
  EXPECT_EQ(y, (CVector{0.0, 0.0, 2.0}));

  const Complex c0{0.5, 0.5};
  const CVector x{1.0, {0.0, 2.0}, -3.0};
  const CVector scaled = matvec(CirculantSpec(GenPermMatrix(3, 1, {4.0, 5.0, 6.0}), {c0}), x);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(scaled[i], c0 * x[i]);

  const Complex a{1.0, 1.0}, b{2.0, 0.0}, c{0.0, -3.0};
  EXPECT_EQ(matvec(CirculantSpec(GenPermMatrix(3, 1, CVector(3, 1.0)), {0.0, 1.0}), {a, b, c}), (CVector{b, c, a}));
}

TEST(Circulant, MatvecRejectsLengthMismatch) {
  EXPECT_THROW((void)matvec(example_spec(), {1.0, 2.0}), DomainError);
}

TEST(Circulant, SparseMatvecMatchesDenseProduct) {
  std::mt19937_64 rng(47);
  for (std::size_t m = 1; m <= 14; ++m) {
    for (std::size_t s = 0; s < m; ++s) {
      const CirculantSpec spec(GenPermMatrix(m, s, random_weights(m, rng)), random_coeffs(2 * m + 3, rng));
      const CVector x = random_coeffs(m, rng);
      const CVector sparse = matvec(spec, x);
      const CVector dense = to_dense(spec) * x;
      double err = 0.0;
      for (std::size_t i = 0; i < m; ++i) err = std::max(err, std::abs(sparse[i] - dense[i]));
      ASSERT_LE(err, 1e-11 * std::max(1.0, to_dense(spec).frobenius_norm()));
    }
  }
}

TEST(Circulant, SparseFrobeniusNormMatchesDense) {
  std::mt19937_64 rng(53);
  for (std::size_t m = 1; m <= 12; ++m) {
    for (std::size_t s = 0; s < m; ++s) {
      const FoldedSpec f = fold(CirculantSpec(GenPermMatrix(m, s, random_weights(m, rng)), random_coeffs(m, rng)));
      const double dense = f.to_dense().frobenius_norm();
      ASSERT_NEAR(f.frobenius_norm(), dense, 1e-12 * dense);
    }
  }
}

TEST(Circulant, TracePowerExamples) {
  EXPECT_EQ(trace_power(example_spec(), 1), Complex(0.0));
  EXPECT_EQ(trace_power(example_spec(), 3), Complex(144.0));

  const Complex c0{1.0, -2.0};
  EXPECT_EQ(trace_power(CirculantSpec(GenPermMatrix(7, 3, CVector(7, 2.0)), {c0}), 1), 7.0 * c0);
}

TEST(Circulant, TracePowerMatchesEigenMatrixPowers) {
  std::mt19937_64 rng(59);
  for (std::size_t m = 1; m <= 9; ++m) {
    for (std::size_t s = 0; s < m; ++s) {
      const CVector u = random_weights(m, rng);
      const CVector c = random_coeffs(m + 2, rng);
      const EigenMatrix reference = naive_circulant(m, s, u, c);
      const CirculantSpec spec(GenPermMatrix(m, s, u), c);
      EigenMatrix power = reference;
      for (int p = 1; p <= 3; ++p) {
        const Complex expected = power.trace();
        ASSERT_LE(std::abs(trace_power(spec, p) - expected), 1e-10 * std::max(1.0, std::abs(expected)));
        power = power * reference;
      }
    }
  }
  EXPECT_THROW((void)trace_power(example_spec(), 4), DomainError);
}

#include <cmath>

#include <gtest/gtest.h>

#include "homcheck/spectral.hpp"

namespace homcheck {
namespace {

Element pauli_x_plus(const Algebra& a) {
  // block 0 = [[0,1],[1,0]], block 1 = [2]
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Element(a, {m, Matrix::Constant(1, 1, 2.0)});
}

TEST(Spectral, EigenvaluesPerBlock) {
  const Algebra a({2, 1});
  const Spectrum s = spectral(pauli_x_plus(a));
  ASSERT_EQ(s.blocks.size(), 2u);
  EXPECT_NEAR(s.blocks[0].values(0), -1.0, 1e-14);
  EXPECT_NEAR(s.blocks[0].values(1), 1.0, 1e-14);
  EXPECT_NEAR(s.min(), -1.0, 1e-14);
  EXPECT_NEAR(s.max(), 2.0, 1e-14);
  EXPECT_EQ(s.values().size(), 3u);
}

TEST(Spectral, RejectsNonHermitian) {
  const Algebra a({2});
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  try {
    spectral(Element(a, {m}), 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
}

TEST(Spectral, SymmetrizationDefectReported) {
  const Algebra a({2});
  Matrix m(2, 2);
  m << 1, 1e-12, 0, 1;
  const Spectrum s = symmetrized_spectrum(Element(a, {m}));
  EXPECT_NEAR(s.symmetrization_defect, std::sqrt(2.0) * 1e-12, 1e-20);
}

TEST(Spectral, FunctionalCalculus) {
  const Algebra a({2, 1});
  const Element x = pauli_x_plus(a);
  const Element sq = apply_function(spectral(x), [](double t) { return t * t; });
  EXPECT_LT(distance(sq, x * x), 1e-14);
  const Element id = apply_function(spectral(x), [](double) { return 1.0; });
  EXPECT_LT(distance(id, Element::identity(a)), 1e-14);
}

TEST(Spectral, DecompositionSumsBack) {
  const Algebra a({2, 1});
  const Element x = pauli_x_plus(a);
  const auto parts = spectral_decomposition(x, 1e-9);
  ASSERT_EQ(parts.size(), 3u);
  Element sum(a);
  for (const auto& [lambda, p] : parts) {
    EXPECT_TRUE(is_projection(p, 1e-12).holds);
    sum += lambda * p;
  }
  EXPECT_LT(distance(sum, x), 1e-13);
}

TEST(Spectral, PositivityAndProjectionDefects) {
  const Algebra a({2});
  const Element half = 0.5 * Element::identity(a);
  EXPECT_TRUE(is_positive(half).holds);
  // ||(1/4 - 1/2) 1_2||_F = sqrt(2)/4
  const Defect d = is_projection(half, 1e-9);
  EXPECT_FALSE(d.holds);
  EXPECT_NEAR(d.defect, std::sqrt(2.0) / 4.0, 1e-15);
  EXPECT_TRUE(is_projection(Element::identity(a)).holds);
  EXPECT_TRUE(is_projection(Element(a)).holds);
  const Defect neg = is_positive(pauli_x_plus(Algebra({2, 1})), 1e-9);
  EXPECT_FALSE(neg);
  EXPECT_NEAR(neg.defect, 1.0, 1e-14);
  EXPECT_NEAR(min_eigenvalue(-1.0 * Element::identity(a)), -1.0, 0.0);
}

}  // namespace
}  // namespace homcheck

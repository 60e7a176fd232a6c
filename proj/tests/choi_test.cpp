#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "homcheck/choi.hpp"
#include "homcheck/randgen.hpp"

namespace homcheck {
namespace {

using testing::depolarizing;
using testing::diagonal_embedding;
using testing::sample_element;

TEST(EProjection, CommutativeTwoPoint) {
  const Element e = e_projection(Algebra({1, 1}));
  ASSERT_EQ(e.algebra(), Algebra({1, 1, 1, 1}));
  Vector expected(4);
  expected << 1, 0, 0, 1;
  EXPECT_EQ((e.coords() - expected).norm(), 0.0);
}

TEST(EProjection, RankOneOnFullMatrixAlgebra) {
  const Element e = e_projection(Algebra({2}));
  const auto values = symmetrized_spectrum(e).values();
  ASSERT_EQ(values.size(), 4u);
  EXPECT_NEAR(values[0], 0.0, 1e-15);
  EXPECT_NEAR(values[2], 0.0, 1e-15);
  EXPECT_NEAR(values[3], 1.0, 1e-15);
}

TEST(EProjection, ProjectionWithAdjustedTraceDim) {
  for (const Algebra& a : {Algebra({2, 3}), Algebra({1, 2, 1}), Algebra({4})}) {
    const Element e = e_projection(a);
    EXPECT_LT(distance(e * e, e), 1e-14);
    EXPECT_LT(distance(e.adjoint(), e), 1e-15);
    EXPECT_NEAR(adjusted_trace(e).real(), a.vec_dim(), 1e-12);
  }
}

/// Product of X (x) Y^op, in storage where the second factor is transposed.
Element op_product(const Element& x, const Element& y) {
  return id_tensor_tau(id_tensor_tau(x) * id_tensor_tau(y));
}

TEST(Delta, TransposeGivesE) {
  EXPECT_EQ(distance(delta_formula(Algebra({1, 1})), e_projection(Algebra({1, 1}))), 0.0);
  for (const Algebra& a : {Algebra({2}), Algebra({2, 3})}) {
    const Element d = delta_formula(a);
    EXPECT_LT(max_abs_difference(id_tensor_tau(d), e_projection(a)), 1e-15);
    EXPECT_LT(distance(op_product(d, d), d), 1e-14);
    EXPECT_GT(distance(d, e_projection(a)), 0.1);
  }
}

TEST(Delta, TracePairing) {
  const Algebra a({2, 3});
  const Element x = sample_element(a, 0.2);
  const Element y = sample_element(a, 1.3);
  const Complex lhs = adjusted_trace(e_projection(a) * tensor_elements(x, op_transpose(y)));
  EXPECT_LT(std::abs(lhs - adjusted_trace(x * y)), 1e-12);
}

TEST(Delta, OrthogonalToComplementaryPairs) {
  const Algebra a({2, 1});
  Rng rng(Seed{4});
  const Element e = e_projection(a);
  for (int t = 0; t < 5; ++t) {
    const Element p = random_projection(a, rng);
    const Element q = Element::identity(a) - p;
    EXPECT_LT(frobenius_norm(e * tensor_elements(p, op_transpose(q))), 1e-13);
  }
}

TEST(Choi, IdentityGivesE) {
  const Algebra a({3});
  EXPECT_LT(distance(adjusted_choi(LinMap::identity(a)), e_projection(a)), 1e-15);
  EXPECT_LT(distance(choi_matrix(LinMap::identity(a)), 3.0 * e_projection(a)), 1e-15);
}

TEST(Choi, DiagonalEmbedding) {
  const Element c = adjusted_choi(diagonal_embedding());
  ASSERT_EQ(c.algebra(), Algebra({2, 2}));
  Matrix first = Matrix::Zero(2, 2), second = Matrix::Zero(2, 2);
  first(0, 0) = 1;
  second(1, 1) = 1;
  EXPECT_EQ(distance(c, Element(c.algebra(), {first, second})), 0.0);
  EXPECT_TRUE(is_projection(c, 1e-12).holds);
}

TEST(Choi, Depolarizing) {
  const Element c = adjusted_choi(depolarizing(2));
  EXPECT_EQ(distance(c, 0.25 * Element::identity(c.algebra())), 0.0);
  const Defect d = projection_criterion(depolarizing(2), 1e-9);
  EXPECT_FALSE(d.holds);
  EXPECT_NEAR(d.defect, 3.0 / 8.0, 1e-15);
}

TEST(Choi, AdjustedChoiIsLiftedE) {
  const LinMap phi = random_ucp(Algebra({2, 1}), Algebra({1, 2}), {1, 2}, Seed{2});
  const Element via_lift = apply_tensor(phi, LinMap::identity(phi.domain()), e_projection(phi.domain()));
  EXPECT_LT(distance(adjusted_choi(phi), via_lift), 1e-13);
}

TEST(Choi, RoundTrip) {
  const Algebra a({2, 1});
  const Algebra b({1, 3});
  Rng rng(Seed{1});
  const LinMap phi = LinMap::from_function(a, b, [&](const Element&) { return random_element(b, rng); });
  const LinMap back = map_from_adjusted_choi(adjusted_choi(phi), a, b);
  EXPECT_LT((back.matrix() - phi.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(map_from_adjusted_choi(adjusted_choi(phi), b, a), Error);
}

TEST(CompletePositivity, TransposeHasNegativeEigenvalue) {
  const LinMap t = transpose_map(Algebra({2}));
  EXPECT_NEAR(min_eigenvalue(adjusted_choi(t)), -0.5, 1e-15);
  EXPECT_FALSE(is_completely_positive(t, 1e-9).holds);
  try {
    projection_criterion(t, 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUCP);
  }
}

TEST(CompletePositivity, IdentityAndRandomUcp) {
  EXPECT_TRUE(is_completely_positive(LinMap::identity(Algebra({2})), 1e-12).holds);
  const LinMap phi = random_ucp(Algebra({2}), Algebra({3}), {2}, Seed{11});
  EXPECT_TRUE(check_ucp(phi, 1e-10).holds());
  EXPECT_TRUE(is_completely_positive(dagger_adjoint(phi), 1e-10).holds);
}

TEST(Swap, ProductsAndInvolution) {
  const Algebra a({2, 1});
  const Algebra b({1, 3});
  const Element x = sample_element(a, 0.1);
  const Element y = sample_element(b, 0.9);
  const Element s = swap_sigma(tensor_elements(x, y));
  EXPECT_LT(distance(s, tensor_elements(y, x)), 1e-14);
  const Element t = sample_element(Algebra::tensor(a, b), 2.0);
  EXPECT_LT(distance(swap_sigma(swap_sigma(t)), t), 1e-15);
  EXPECT_LT(std::abs(adjusted_trace(swap_sigma(t)) - adjusted_trace(t)), 1e-12);
  EXPECT_THROW(swap_sigma(Element::identity(Algebra({2}))), Error);
}

TEST(Criteria, HomomorphismsPassAllFour) {
  for (const LinMap& phi : {LinMap::identity(Algebra({3})), diagonal_embedding(),
                            random_homomorphism(Algebra({1, 2}), Algebra({3, 4}), Seed{7})}) {
    const CriteriaReport r = criteria_report(phi, default_tolerance(phi));
    EXPECT_TRUE(r.agree());
    EXPECT_TRUE(r.verdicts[0]);
    EXPECT_LT(r.max_discrepancy(), 1e-9);
  }
}

TEST(Criteria, DepolarizingFailsAllFourEqually) {
  // Every one of the four matrices is 1/4 on C^4 here.
  const CriteriaReport r = criteria_report(depolarizing(2), 1e-9);
  EXPECT_TRUE(r.agree());
  for (int i = 0; i < 4; ++i) {
    EXPECT_FALSE(r.verdicts[static_cast<std::size_t>(i)]);
    EXPECT_NEAR(r.defects[static_cast<std::size_t>(i)], 3.0 / 8.0, 1e-14);
  }
}

TEST(CjDual, IdentityAndDepolarizing) {
  const CjDualCheck id = cj_dual_check(LinMap::identity(Algebra({2})), 1e-9);
  EXPECT_TRUE(id.projection.holds);
  EXPECT_LT(id.conjugation_residual, 1e-15);
  const CjDualCheck w = cj_dual_check(depolarizing(2), 1e-9);
  EXPECT_FALSE(w.projection.holds);
  EXPECT_LT(w.conjugation_residual, 1e-15);
}

TEST(CjDual, DualOfHomomorphismBetweenDifferentSizes) {
  const LinMap phi = random_homomorphism(Algebra({2}), Algebra({4}), Seed{3});
  const LinMap psi = dagger_adjoint(phi);
  const CjDualCheck c = cj_dual_check(psi, 1e-9);
  EXPECT_TRUE(c.projection.holds);
  EXPECT_LT(c.conjugation_residual, 1e-12);
}

TEST(CjDual, Preconditions) {
  try {
    cj_dual_check(diagonal_embedding(), 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSingleBlock);
  }
  const LinMap phi = random_ucp(Algebra({2}), Algebra({3}), {2}, Seed{1});
  try {
    cj_dual_check(phi, 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotTracePreserving);
  }
}

}  // namespace
}  // namespace homcheck

#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "homcheck/choi.hpp"
#include "homcheck/linmap.hpp"
#include "homcheck/randgen.hpp"

namespace homcheck {
namespace {

using testing::depolarizing;
using testing::diagonal_embedding;
using testing::sample_element;

TEST(LinMap, ApplyIsLinearExtension) {
  const Algebra a({2, 1});
  const LinMap id = LinMap::identity(a);
  const Element x = sample_element(a, 0.3);
  EXPECT_LT(distance(id(x), x), 1e-15);
  EXPECT_THROW(id(Element::identity(Algebra({2}))), Error);
}

TEST(LinMap, DiagonalEmbeddingImages) {
  const LinMap phi = diagonal_embedding();
  const Element first = matrix_unit(phi.domain(), 0, 0, 0);
  EXPECT_EQ(distance(phi(first), matrix_unit(phi.codomain(), 0, 0, 0)), 0.0);
}

TEST(LinMap, DepolarizingKillsOffDiagonal) {
  const LinMap w = depolarizing(2);
  EXPECT_EQ(frobenius_norm(w(matrix_unit(w.domain(), 0, 0, 1))), 0.0);
}

TEST(LinMap, FromImagesValidates) {
  const Algebra a({2});
  std::vector<Element> three(3, Element(a));
  EXPECT_THROW(LinMap::from_images(a, a, three), Error);
  std::vector<Element> wrong(4, Element(Algebra({1})));
  EXPECT_THROW(LinMap::from_images(a, a, wrong), Error);
}

TEST(LinMap, Compose) {
  const LinMap phi = diagonal_embedding();
  const LinMap w = depolarizing(2);
  const LinMap c = compose(w, phi);
  const Element x = sample_element(phi.domain(), 1.1);
  EXPECT_LT(distance(c(x), w(phi(x))), 1e-14);
  EXPECT_EQ((compose(phi, LinMap::identity(phi.domain())).matrix() - phi.matrix()).norm(), 0.0);
  EXPECT_THROW(compose(phi, w), Error);
}

TEST(LinMap, TensorWithIdentityOnProducts) {
  const LinMap phi = diagonal_embedding();
  const Algebra c({2, 1});
  const LinMap lifted = tensor_with_identity(phi, c);
  EXPECT_EQ(lifted.domain(), Algebra::tensor(phi.domain(), c));
  const Element a = sample_element(phi.domain(), 0.4);
  const Element y = sample_element(c, 2.0);
  const Element lhs = lifted(tensor_elements(a, y));
  EXPECT_LT(distance(lhs, tensor_elements(phi(a), y)), 1e-13);
  EXPECT_LT(distance(apply_tensor(phi, LinMap::identity(c), tensor_elements(a, y)), lhs), 1e-13);
  const LinMap ida = tensor_with_identity(LinMap::identity(c), Algebra({2}));
  EXPECT_LT((ida.matrix() - Matrix::Identity(ida.matrix().rows(), ida.matrix().cols())).norm(), 1e-15);
}

TEST(LinMap, ApplyTensorNeedsTensorArgument) {
  const LinMap phi = diagonal_embedding();
  EXPECT_THROW(apply_tensor(phi, phi, Element::identity(Algebra({1, 1, 1, 1}))), Error);
}

TEST(LinMap, DaggerIsTraceAdjoint) {
  Rng rng(Seed{5});
  const LinMap phi = random_ucp(Algebra({2, 1}), Algebra({3}), {2, 1}, Seed{3});
  const LinMap pd = dagger_adjoint(phi);
  for (int t = 0; t < 5; ++t) {
    const Element a = random_element(phi.domain(), rng);
    const Element b = random_element(phi.codomain(), rng);
    EXPECT_LT(std::abs(trace(phi(a).adjoint() * b) - trace(a.adjoint() * pd(b))), 1e-12);
  }
  EXPECT_LT((dagger_adjoint(pd).matrix() - phi.matrix()).norm(), 1e-15);
}

TEST(LinMap, DaggerOfCpMapSatisfiesBilinearIdentity) {
  Rng rng(Seed{9});
  const LinMap phi = random_ucp(Algebra({2}), Algebra({2, 1}), {2}, Seed{4});
  const LinMap pd = dagger_adjoint(phi);
  const Element a = random_element(phi.domain(), rng);
  const Element b = random_element(phi.codomain(), rng);
  EXPECT_LT(std::abs(trace(phi(a) * b) - trace(a * pd(b))), 1e-12);
}

TEST(LinMap, DdaggerIsAdjustedTraceAdjoint) {
  Rng rng(Seed{6});
  const LinMap phi = random_ucp(Algebra({1, 2}), Algebra({2, 2}), {2, 1}, Seed{8});
  const LinMap pdd = ddagger_adjoint(phi);
  for (int t = 0; t < 5; ++t) {
    const Element a = random_element(phi.domain(), rng);
    const Element b = random_element(phi.codomain(), rng);
    EXPECT_LT(std::abs(adjusted_trace(phi(a) * b) - adjusted_trace(a * pdd(b))), 1e-12);
  }
  EXPECT_LT((ddagger_adjoint(pdd).matrix() - phi.matrix()).norm(), 1e-13);
  const LinMap id = LinMap::identity(Algebra({3, 1}));
  EXPECT_EQ((ddagger_adjoint(id).matrix() - id.matrix()).norm(), 0.0);
}

TEST(LinMap, AdjointsOfDiagonalEmbedding) {
  const LinMap phi = diagonal_embedding();
  Matrix m(2, 2);
  m << Complex(1.5, 0), Complex(0.25, -1), Complex(-2, 0.5), Complex(-0.75, 0);
  const Element b(Algebra({2}), {m});
  const Element dag = dagger_adjoint(phi)(b);
  const Element ddag = ddagger_adjoint(phi)(b);
  // tr-adjoint reads the diagonal; the tr~-adjoint carries the factor zeta_B = 2.
  EXPECT_EQ(dag.block(0)(0, 0), m(0, 0));
  EXPECT_EQ(dag.block(1)(0, 0), m(1, 1));
  EXPECT_EQ(ddag.block(0)(0, 0), 2.0 * m(0, 0));
  EXPECT_EQ(ddag.block(1)(0, 0), 2.0 * m(1, 1));
}

TEST(LinMap, DdaggerOfDepolarizingIsItself) {
  const LinMap w = depolarizing(2);
  EXPECT_LT((ddagger_adjoint(w).matrix() - w.matrix()).norm(), 1e-15);
  EXPECT_LT((dagger_adjoint(w).matrix() - w.matrix()).norm(), 1e-15);
}

TEST(LinMap, DdaggerOfDiagonalEmbedding) {
  // Solving tr~(phi(a) b) = tr~(a phi^ddagger(b)) on the basis of C^2 with
  // zeta_{M_2} = 2 and zeta_{C^2} = 1 gives phi^ddagger(b) = (2 b11, 2 b22).
  const LinMap phi = diagonal_embedding();
  Matrix b(2, 2);
  b << Complex(1, 0), Complex(2, 1), Complex(3, -1), Complex(5, 0);
  const Element out = ddagger_adjoint(phi)(Element(phi.codomain(), {b}));
  EXPECT_LT(std::abs(out.block(0)(0, 0) - 2.0), 1e-15);
  EXPECT_LT(std::abs(out.block(1)(0, 0) - 10.0), 1e-15);
}

TEST(LinMap, AdjointsReverseComposition) {
  const LinMap phi = random_ucp(Algebra({2}), Algebra({1, 2}), {2}, Seed{1});
  const LinMap psi = random_ucp(Algebra({1, 1}), Algebra({2}), {1, 1}, Seed{2});
  const LinMap lhs = ddagger_adjoint(compose(phi, psi));
  const LinMap rhs = compose(ddagger_adjoint(psi), ddagger_adjoint(phi));
  EXPECT_LT((lhs.matrix() - rhs.matrix()).norm(), 1e-13);
  const LinMap t = ddagger_adjoint(tensor_maps(phi, psi));
  const LinMap tt = tensor_maps(ddagger_adjoint(phi), ddagger_adjoint(psi));
  EXPECT_LT((t.matrix() - tt.matrix()).norm(), 1e-13);
}

TEST(LinMap, Unitality) {
  EXPECT_TRUE(is_unital(LinMap::identity(Algebra({2})), 1e-12).holds);
  EXPECT_TRUE(is_unital(depolarizing(3), 1e-12).holds);
  const Defect twice = is_unital(2.0 * LinMap::identity(Algebra({2})), 1e-9);
  EXPECT_FALSE(twice.holds);
  EXPECT_NEAR(twice.defect, std::sqrt(2.0), 1e-15);
}

TEST(LinMap, TracePreservation) {
  EXPECT_TRUE(is_trace_preserving(depolarizing(2), 1e-12).holds);
  EXPECT_TRUE(is_trace_preserving(diagonal_embedding(), 1e-12).holds);
  const LinMap phi = random_ucp(Algebra({2}), Algebra({3}), {2}, Seed{1});
  const Defect d = is_trace_preserving(phi, 1e-9);
  EXPECT_FALSE(d.holds);
  // tr(phi(e11)) + tr(phi(e22)) = tr(1_3) = 3, so some diagonal unit is off by >= 1/2.
  EXPECT_GE(d.defect, 0.5 - 1e-12);
}

TEST(LinMap, MultiplicativityDefects) {
  EXPECT_EQ(mult_defect(LinMap::identity(Algebra({2, 3}))).value(), 0.0);
  EXPECT_LT(mult_defect(diagonal_embedding()).value(), 1e-15);
  // Worst pair for the depolarizing map: e12 e21 = e11 maps to 1/2 1, while
  // the images multiply to 0.
  const MultiplicativityDefect d = mult_defect(depolarizing(2));
  EXPECT_GE(d.value(), std::sqrt(2.0) / 4.0);
  EXPECT_NEAR(d.product, std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_EQ(d.star, 0.0);
}

TEST(LinMap, StarDefectSeparate) {
  // The transpose preserves adjoints but reverses products.
  const MultiplicativityDefect d = mult_defect(transpose_map(Algebra({2})));
  EXPECT_EQ(d.star, 0.0);
  EXPECT_GT(d.product, 0.5);
  // a -> i a is multiplicative up to a phase but not *-preserving.
  const MultiplicativityDefect s = mult_defect(Complex(0, 1) * LinMap::identity(Algebra({1})));
  EXPECT_NEAR(s.star, 2.0, 1e-15);
}

TEST(LinMap, DefaultTolerance) {
  EXPECT_DOUBLE_EQ(default_tolerance(depolarizing(2)), 1e-9 * 4.0);
}

}  // namespace
}  // namespace homcheck

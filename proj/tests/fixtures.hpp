#pragma once

#include "homcheck/linmap.hpp"

namespace homcheck::testing {

/// (a1, a2) -> diag(a1, a2), C^2 -> M_2.
inline LinMap diagonal_embedding() {
  const Algebra c2({1, 1});
  const Algebra m2({2});
  return LinMap::from_function(c2, m2, [&](const Element& a) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = a.block(0)(0, 0);
    d(1, 1) = a.block(1)(0, 0);
    return Element(m2, {d});
  });
}

/// a -> tr(a)/n 1 on M_n.
inline LinMap depolarizing(int n) {
  const Algebra mn({n});
  return LinMap::from_function(mn, mn, [&](const Element& a) {
    return (trace(a) / static_cast<double>(n)) * Element::identity(mn);
  });
}

/// Pure state b -> (b11 + b12 + b21 + b22)/2 on M_2, as its density.
inline Element plus_density() {
  return Element(Algebra({2}), {Matrix::Constant(2, 2, 0.5)});
}

inline Matrix rng_free_matrix(int n, double seed) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = Complex(std::sin(seed + 3.1 * i + 1.7 * j), std::cos(seed * 0.7 + i - 2.3 * j));
  return m;
}

/// Deterministic non-special element for algebraic identities.
inline Element sample_element(const Algebra& a, double seed) {
  std::vector<Matrix> blocks;
  for (int k = 0; k < a.num_blocks(); ++k) blocks.push_back(rng_free_matrix(a.block_size(k), seed + k));
  return Element(a, std::move(blocks));
}

}  // namespace homcheck::testing

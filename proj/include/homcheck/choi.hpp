#pragma once

// Choi matrices, the diagonal projection, and the projection criteria for
// homomorphisms.
//
// Storage convention: an operator that lives in X (x) Y^op is always stored as
// its image in X (x) Y under id (x) tau, where tau is the blockwise transpose.
// In particular the diagonal projection of A is stored as
//   e_A = sum_k sum_{i,j} (1/n_k) e_{ijk} (x) e_{ijk}.
// Traces, spectra and projection defects are invariant under id (x) tau, so
// every verdict computed on stored operators is the verdict for the original.

#include <algorithm>
#include <array>
#include <cmath>

#include "homcheck/algebra.hpp"
#include "homcheck/linmap.hpp"
#include "homcheck/spectral.hpp"

namespace homcheck {

/// e_A in A (x) A; the stored form of the diagonal projection.
inline Element e_projection(const Algebra& a) {
  const Algebra t = Algebra::tensor(a, a);
  std::vector<Matrix> blocks;
  const int l = a.num_blocks();
  for (int k = 0; k < l; ++k) {
    for (int r = 0; r < l; ++r) {
      const int n = a.block_size(k);
      const int m = a.block_size(r);
      Matrix b = Matrix::Zero(n * m, n * m);
      if (k == r) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) b(i * n + i, j * n + j) = 1.0 / n;
      }
      blocks.push_back(std::move(b));
    }
  }
  return Element(t, std::move(blocks));
}

/// delta_A = sum_k sum_{i,j} (1/n_k) e_{ijk} (x) e_{jik}, laid out in the
/// vector space A (x) A (before transposing the second factor).
inline Element delta_formula(const Algebra& a) {
  const Algebra t = Algebra::tensor(a, a);
  std::vector<Matrix> blocks;
  const int l = a.num_blocks();
  for (int k = 0; k < l; ++k) {
    for (int r = 0; r < l; ++r) {
      const int n = a.block_size(k);
      const int m = a.block_size(r);
      Matrix b = Matrix::Zero(n * m, n * m);
      if (k == r) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) b(i * n + j, j * n + i) = 1.0 / n;
      }
      blocks.push_back(std::move(b));
    }
  }
  return Element(t, std::move(blocks));
}

/// id (x) tau on a materialized tensor algebra: transposes the second factor.
inline Element id_tensor_tau(const Element& x) {
  const Algebra& t = x.algebra();
  const Algebra& a = t.left_factor();
  const Algebra& b = t.right_factor();
  std::vector<Matrix> blocks;
  for (int k = 0; k < a.num_blocks(); ++k) {
    for (int r = 0; r < b.num_blocks(); ++r) {
      const int n = a.block_size(k);
      const int m = b.block_size(r);
      const Matrix& src = x.block(k * b.num_blocks() + r);
      Matrix dst(n * m, n * m);
      for (int i = 0; i < n; ++i)
        for (int u = 0; u < m; ++u)
          for (int j = 0; j < n; ++j)
            for (int v = 0; v < m; ++v) dst(i * m + u, j * m + v) = src(i * m + v, j * m + u);
      blocks.push_back(std::move(dst));
    }
  }
  return Element(t, std::move(blocks));
}

/// sigma: A (x) B -> B (x) A, the tensor-swap *-isomorphism.
inline Element swap_sigma(const Element& x) {
  const Algebra& t = x.algebra();
  if (!t.is_tensor()) {
    throw Error(ErrorKind::NotATensorAlgebra, t.to_string() + " has no recorded factors");
  }
  const Algebra& a = t.left_factor();
  const Algebra& b = t.right_factor();
  const Algebra swapped = Algebra::tensor(b, a);
  std::vector<Matrix> blocks;
  for (int r = 0; r < b.num_blocks(); ++r) {
    for (int k = 0; k < a.num_blocks(); ++k) {
      const int n = a.block_size(k);
      const int m = b.block_size(r);
      const Matrix& src = x.block(k * b.num_blocks() + r);
      Matrix dst(n * m, n * m);
      for (int i = 0; i < n; ++i)
        for (int u = 0; u < m; ++u)
          for (int j = 0; j < n; ++j)
            for (int v = 0; v < m; ++v) dst(u * n + i, v * n + j) = src(i * m + u, j * m + v);
      blocks.push_back(std::move(dst));
    }
  }
  return Element(swapped, std::move(blocks));
}

namespace detail {
template <class Weight>
Element choi_sum(const LinMap& phi, Weight&& weight) {
  const Algebra& a = phi.domain();
  Element out(Algebra::tensor(phi.codomain(), a));
  for (int u = 0; u < a.vec_dim(); ++u) {
    const auto unit = a.unit(u);
    const double w = weight(a.block_size(unit.block));
    out += w * tensor_elements(phi.image(u), basis_unit(a, u));
  }
  return out;
}
}  // namespace detail

/// c_phi = sum phi(e_{ijk}) (x) e_{ijk} in B (x) A.
inline Element choi_matrix(const LinMap& phi) {
  return detail::choi_sum(phi, [](int) { return 1.0; });
}

/// c~_phi = sum (1/n_k) phi(e_{ijk}) (x) e_{ijk} = (phi (x) id)(e_A).
inline Element adjusted_choi(const LinMap& phi) {
  return detail::choi_sum(phi, [](int n) { return 1.0 / n; });
}

/// Inverse of adjusted_choi: reads phi(e_{ijk}) back out of c~ in B (x) A.
inline LinMap map_from_adjusted_choi(const Element& c, const Algebra& domain,
                                     const Algebra& codomain) {
  const Algebra expected = Algebra::tensor(codomain, domain);
  if (c.algebra() != expected) {
    throw Error(ErrorKind::AlgebraMismatch,
                "adjusted Choi matrix should live in " + expected.to_string());
  }
  const int la = domain.num_blocks();
  return LinMap::from_function(domain, codomain, [&](const Element& e) {
    // e is a single matrix unit; locate it.
    int k = 0;
    int i = 0;
    int j = 0;
    for (int kk = 0; kk < la; ++kk) {
      const Matrix& b = e.block(kk);
      for (int ii = 0; ii < b.rows(); ++ii)
        for (int jj = 0; jj < b.cols(); ++jj)
          if (b(ii, jj) != Complex(0.0)) k = kk, i = ii, j = jj;
    }
    const int n = domain.block_size(k);
    std::vector<Matrix> blocks;
    for (int s = 0; s < codomain.num_blocks(); ++s) {
      const int m = codomain.block_size(s);
      const Matrix& cb = c.block(s * la + k);
      Matrix img(m, m);
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) img(p, q) = static_cast<double>(n) * cb(p * n + i, q * n + j);
      blocks.push_back(std::move(img));
    }
    return Element(codomain, std::move(blocks));
  });
}

/// phi is completely positive iff its adjusted Choi matrix is positive.
inline Defect is_completely_positive(const LinMap& phi, double tol) {
  return is_positive(adjusted_choi(phi), tol);
}

struct UcpCheck {
  Defect unital;
  Defect completely_positive;

  bool holds() const noexcept { return unital.holds && completely_positive.holds; }
};

inline UcpCheck check_ucp(const LinMap& phi, double tol) {
  return {is_unital(phi, tol), is_completely_positive(phi, tol)};
}

inline void require_ucp(const LinMap& phi, double tol) {
  const UcpCheck c = check_ucp(phi, tol);
  if (!c.holds()) {
    throw Error(ErrorKind::NotUCP, "unital defect " + std::to_string(c.unital.defect) +
                                       ", CP defect " +
                                       std::to_string(c.completely_positive.defect));
  }
}

/// A unital CP map is a homomorphism iff c~_phi is a projection. Under the
/// storage convention this also decides whether (phi (x) id)(delta_A) is one.
inline Defect projection_criterion(const LinMap& phi, double tol) {
  require_ucp(phi, tol);
  return is_projection(adjusted_choi(phi), tol);
}

/// The four projection tests for a unital CP map phi: A -> B:
///  [0] (phi (x) id)(delta_A)            = c~_phi, in B (x) A
///  [1] (phi^ddagger (x) id)(delta_B)    in A (x) B
///  [2] (dim B) d~, with d~ the adjusted density of mu o (phi (x) id) and mu
///      the uniform state on delta_B; obtained through (phi (x) id_B)^ddagger
///  [3] (dim B) d (zeta_A (x) zeta_B)^{-1}; obtained through (phi (x) id_B)^dagger
struct CriteriaReport {
  std::array<double, 4> defects{};
  std::array<bool, 4> verdicts{};

  bool agree() const noexcept {
    return std::all_of(verdicts.begin(), verdicts.end(), [&](bool v) { return v == verdicts[0]; });
  }
  double max_discrepancy() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < defects.size(); ++i)
      for (std::size_t j = i + 1; j < defects.size(); ++j)
        worst = std::max(worst, std::abs(defects[i] - defects[j]));
    return worst;
  }
};

struct CriteriaMatrices {
  Element choi;           // [0]
  Element ddagger_delta;  // [1]
  Element scaled_adjusted_density;
  Element rescaled_density;
};

inline CriteriaMatrices criteria_matrices(const LinMap& phi) {
  const Algebra& b = phi.codomain();
  const double dim_b = b.vec_dim();
  const Element e_b = e_projection(b);

  Element choi = adjusted_choi(phi);
  Element dd = apply_tensor(ddagger_adjoint(phi), LinMap::identity(b), e_b);

  // Uniform state on e_B: adjusted density e_B / tr~(e_B), density with zeta.
  const double tr_e = adjusted_trace(e_b).real();
  const Element mu_adjusted = (1.0 / tr_e) * e_b;
  const Element mu_density = scale_blocks(mu_adjusted, [](int n) { return static_cast<double>(n); });

  const LinMap lifted = tensor_with_identity(phi, b);
  Element adjusted = dim_b * ddagger_adjoint(lifted).apply(mu_adjusted);
  const Element density = dagger_adjoint(lifted).apply(mu_density);
  Element rescaled =
      dim_b * scale_blocks(density, [](int n) { return 1.0 / static_cast<double>(n); });
  return {std::move(choi), std::move(dd), std::move(adjusted), std::move(rescaled)};
}

inline CriteriaReport criteria_report(const LinMap& phi, double tol) {
  require_ucp(phi, tol);
  const CriteriaMatrices m = criteria_matrices(phi);
  CriteriaReport r;
  const std::array<const Element*, 4> items{&m.choi, &m.ddagger_delta, &m.scaled_adjusted_density,
                                            &m.rescaled_density};
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Defect d = is_projection(*items[i], tol);
    r.defects[i] = d.defect;
    r.verdicts[i] = d.holds;
  }
  return r;
}

struct CjDualCheck {
  /// Is (m/n) c~_psi a projection, i.e. is psi^dagger a homomorphism.
  Defect projection;
  /// max |c~_{psi^dagger} - conj(sigma((m/n) c~_psi))| entrywise.
  double conjugation_residual = 0.0;
};

/// Channel-state duality check for a trace-preserving CP psi: M_m -> M_n.
inline CjDualCheck cj_dual_check(const LinMap& psi, double tol) {
  if (psi.domain().num_blocks() != 1 || psi.codomain().num_blocks() != 1) {
    throw Error(ErrorKind::NotSingleBlock, "cj_dual_check needs M_m -> M_n");
  }
  const Defect tp = is_trace_preserving(psi, tol);
  if (!tp.holds) {
    throw Error(ErrorKind::NotTracePreserving, "trace defect " + std::to_string(tp.defect));
  }
  const Defect cp = is_completely_positive(psi, tol);
  if (!cp.holds) throw Error(ErrorKind::NotUCP, "map is not completely positive");

  const double m = psi.domain().block_size(0);
  const double n = psi.codomain().block_size(0);
  const Element scaled = (m / n) * adjusted_choi(psi);
  CjDualCheck out;
  out.projection = is_projection(scaled, tol);
  const Element lhs = adjusted_choi(dagger_adjoint(psi));
  out.conjugation_residual = max_abs_difference(lhs, swap_sigma(scaled).conjugate());
  return out;
}

}  // namespace homcheck

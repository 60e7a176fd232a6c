#pragma once

// Hermitian spectral calculus on block-diagonal elements, plus the
// hermitian / positive / projection predicates used by every criterion.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "homcheck/algebra.hpp"

namespace homcheck {

/// Outcome of a tolerance-gated check: the verdict and the measured defect.
struct Defect {
  bool holds = false;
  double defect = 0.0;

  explicit operator bool() const noexcept { return holds; }
};

inline Defect make_defect(double defect, double tol) { return {defect <= tol, defect}; }

inline double hermitian_defect(const Element& x) { return distance(x.adjoint(), x); }

struct BlockSpectrum {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns are eigenvectors
};

struct Spectrum {
  Algebra algebra;
  std::vector<BlockSpectrum> blocks;
  /// Frobenius norm of the anti-Hermitian part discarded before diagonalizing.
  double symmetrization_defect = 0.0;

  double min() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks)
      if (b.values.size()) m = std::min(m, b.values.minCoeff());
    return m;
  }
  double max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& b : blocks)
      if (b.values.size()) m = std::max(m, b.values.maxCoeff());
    return m;
  }
  std::vector<double> values() const {
    std::vector<double> all;
    for (const auto& b : blocks)
      for (Eigen::Index i = 0; i < b.values.size(); ++i) all.push_back(b.values(i));
    std::sort(all.begin(), all.end());
    return all;
  }
};

/// Eigendecomposition of (x + x*)/2 without checking how Hermitian x was.
inline Spectrum symmetrized_spectrum(const Element& x) {
  Spectrum s{x.algebra(), {}, hermitian_defect(x)};
  s.blocks.reserve(static_cast<std::size_t>(x.num_blocks()));
  for (const auto& b : x.blocks()) {
    const Matrix h = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    s.blocks.push_back({solver.eigenvalues(), solver.eigenvectors()});
  }
  return s;
}

/// Spectrum of a Hermitian element; NotHermitian when ||x* - x||_F > tol.
inline Spectrum spectral(const Element& x, double tol) {
  const double defect = hermitian_defect(x);
  if (defect > tol) {
    throw Error(ErrorKind::NotHermitian, "hermitian defect " + std::to_string(defect));
  }
  return symmetrized_spectrum(x);
}

inline Spectrum spectral(const Element& x) { return spectral(x, default_tolerance(x.algebra())); }

/// f applied through the eigendecomposition: sum_i f(lambda_i) P_i.
template <class F>
Element apply_function(const Spectrum& s, F&& f) {
  std::vector<Matrix> out;
  out.reserve(s.blocks.size());
  for (const auto& b : s.blocks) {
    Eigen::VectorXcd fv(b.values.size());
    for (Eigen::Index i = 0; i < b.values.size(); ++i) fv(i) = Complex(f(b.values(i)), 0.0);
    out.push_back(b.vectors * fv.asDiagonal() * b.vectors.adjoint());
  }
  return Element(s.algebra, std::move(out));
}

/// Distinct eigenvalues (clustered within tol) with their spectral projections.
inline std::vector<std::pair<double, Element>> spectral_decomposition(const Element& x, double tol) {
  const Spectrum s = spectral(x, tol);
  std::vector<double> distinct;
  for (double v : s.values()) {
    if (distinct.empty() || v - distinct.back() > tol) distinct.push_back(v);
  }
  std::vector<std::pair<double, Element>> out;
  for (double lambda : distinct) {
    out.emplace_back(lambda, apply_function(s, [&](double t) {
                       return std::abs(t - lambda) <= tol ? 1.0 : 0.0;
                     }));
  }
  return out;
}

inline double min_eigenvalue(const Element& x) { return symmetrized_spectrum(x).min(); }

inline Defect is_hermitian(const Element& x, double tol) {
  return make_defect(hermitian_defect(x), tol);
}

/// defect = max(||x* - x||_F, max(0, -lambda_min)).
inline Defect is_positive(const Element& x, double tol) {
  const Spectrum s = symmetrized_spectrum(x);
  return make_defect(std::max(s.symmetrization_defect, std::max(0.0, -s.min())), tol);
}

/// defect = max(||x^2 - x||_F, ||x* - x||_F).
inline Defect is_projection(const Element& x, double tol) {
  return make_defect(std::max(distance(x * x, x), hermitian_defect(x)), tol);
}

inline Defect is_positive(const Element& x) { return is_positive(x, default_tolerance(x.algebra())); }
inline Defect is_projection(const Element& x) {
  return is_projection(x, default_tolerance(x.algebra()));
}

}  // namespace homcheck

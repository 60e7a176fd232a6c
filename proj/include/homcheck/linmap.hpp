#pragma once

// Linear maps between finite-dimensional C*-algebras, stored as the matrix of
// images of the domain's matrix units (column u = coordinates of phi(e_u)).

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "homcheck/algebra.hpp"
#include "homcheck/spectral.hpp"

namespace homcheck {

class LinMap {
 public:
  LinMap(Algebra domain, Algebra codomain, Matrix matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.vec_dim() || matrix_.cols() != domain_.vec_dim()) {
      throw Error(ErrorKind::AlgebraMismatch,
                  "map matrix must be " + std::to_string(codomain_.vec_dim()) + "x" +
                      std::to_string(domain_.vec_dim()));
    }
  }

  static LinMap from_images(const Algebra& domain, const Algebra& codomain,
                            std::span<const Element> images) {
    if (static_cast<int>(images.size()) != domain.vec_dim()) {
      throw Error(ErrorKind::AlgebraMismatch,
                  "expected " + std::to_string(domain.vec_dim()) + " basis images, got " +
                      std::to_string(images.size()));
    }
    Matrix m(codomain.vec_dim(), domain.vec_dim());
    for (int u = 0; u < domain.vec_dim(); ++u) {
      const Element& img = images[static_cast<std::size_t>(u)];
      if (img.algebra() != codomain) {
        throw Error(ErrorKind::AlgebraMismatch, "image " + std::to_string(u) + " lives in " +
                                                    img.algebra().to_string() + ", expected " +
                                                    codomain.to_string());
      }
      m.col(u) = img.coords();
    }
    return LinMap(domain, codomain, std::move(m));
  }

  /// Linear extension of f evaluated on the domain's matrix units.
  template <class F>
  static LinMap from_function(const Algebra& domain, const Algebra& codomain, F&& f) {
    std::vector<Element> images;
    images.reserve(static_cast<std::size_t>(domain.vec_dim()));
    for (int u = 0; u < domain.vec_dim(); ++u) images.push_back(f(basis_unit(domain, u)));
    return from_images(domain, codomain, images);
  }

  static LinMap identity(const Algebra& a) {
    return LinMap(a, a, Matrix::Identity(a.vec_dim(), a.vec_dim()));
  }

  const Algebra& domain() const noexcept { return domain_; }
  const Algebra& codomain() const noexcept { return codomain_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  Element image(int u) const { return Element::from_coords(codomain_, matrix_.col(u)); }

  std::vector<Element> images() const {
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(domain_.vec_dim()));
    for (int u = 0; u < domain_.vec_dim(); ++u) out.push_back(image(u));
    return out;
  }

  Element apply(const Element& a) const {
    if (a.algebra() != domain_) {
      throw Error(ErrorKind::AlgebraMismatch,
                  "argument in " + a.algebra().to_string() + ", domain is " + domain_.to_string());
    }
    return Element::from_coords(codomain_, matrix_ * a.coords());
  }
  Element operator()(const Element& a) const { return apply(a); }

  friend LinMap operator+(const LinMap& f, const LinMap& g) {
    f.require_same_shape(g);
    return LinMap(f.domain_, f.codomain_, f.matrix_ + g.matrix_);
  }
  friend LinMap operator-(const LinMap& f, const LinMap& g) {
    f.require_same_shape(g);
    return LinMap(f.domain_, f.codomain_, f.matrix_ - g.matrix_);
  }
  friend LinMap operator*(Complex s, const LinMap& f) {
    return LinMap(f.domain_, f.codomain_, s * f.matrix_);
  }
  friend LinMap operator*(double s, const LinMap& f) { return Complex(s) * f; }

 private:
  void require_same_shape(const LinMap& g) const {
    if (domain_ != g.domain_ || codomain_ != g.codomain_) {
      throw Error(ErrorKind::AlgebraMismatch, "maps have different domain or codomain");
    }
  }

  Algebra domain_;
  Algebra codomain_;
  Matrix matrix_;
};

/// phi o psi.
inline LinMap compose(const LinMap& phi, const LinMap& psi) {
  if (psi.codomain() != phi.domain()) {
    throw Error(ErrorKind::AlgebraMismatch, "compose: codomain " + psi.codomain().to_string() +
                                                " does not match domain " +
                                                phi.domain().to_string());
  }
  return LinMap(psi.domain(), phi.codomain(), phi.matrix() * psi.matrix());
}

/// (phi (x) psi)(x) evaluated without materializing the tensor map: every
/// block of x is split as sum_{ijk} e_{ijk} (x) X_{ijk}.
inline Element apply_tensor(const LinMap& phi, const LinMap& psi, const Element& x) {
  const Algebra& t = x.algebra();
  if (!t.is_tensor() || t.left_factor() != phi.domain() || t.right_factor() != psi.domain()) {
    throw Error(ErrorKind::AlgebraMismatch,
                "apply_tensor: argument must live in " + phi.domain().to_string() + " (x) " +
                    psi.domain().to_string());
  }
  const Algebra& a = phi.domain();
  const Algebra& c = psi.domain();
  const Algebra out_alg = Algebra::tensor(phi.codomain(), psi.codomain());
  Element out(out_alg);
  const auto left_images = phi.images();
  const int nc = c.num_blocks();
  for (int k = 0; k < a.num_blocks(); ++k) {
    const int n = a.block_size(k);
    for (int r = 0; r < nc; ++r) {
      const int m = c.block_size(r);
      const Matrix& xb = x.block(k * nc + r);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const Matrix sub = xb.block(i * m, j * m, m, m);
          if (sub.isZero(0.0)) continue;
          const Element right = psi.apply(block_inclusion(c, r, sub));
          out += tensor_elements(left_images[static_cast<std::size_t>(a.index(k, i, j))], right);
        }
      }
    }
  }
  return out;
}

/// phi (x) psi as a materialized map A (x) C -> B (x) D.
inline LinMap tensor_maps(const LinMap& phi, const LinMap& psi) {
  const Algebra dom = Algebra::tensor(phi.domain(), psi.domain());
  const Algebra cod = Algebra::tensor(phi.codomain(), psi.codomain());
  const auto left = phi.images();
  const auto right = psi.images();
  const Algebra& a = phi.domain();
  const Algebra& c = psi.domain();
  Matrix m(cod.vec_dim(), dom.vec_dim());
  for (int u = 0; u < dom.vec_dim(); ++u) {
    const auto unit = dom.unit(u);
    const int k = unit.block / c.num_blocks();
    const int r = unit.block % c.num_blocks();
    const int cm = c.block_size(r);
    const int ia = a.index(k, unit.row / cm, unit.col / cm);
    const int ic = c.index(r, unit.row % cm, unit.col % cm);
    m.col(u) = tensor_elements(left[static_cast<std::size_t>(ia)],
                               right[static_cast<std::size_t>(ic)])
                   .coords();
  }
  return LinMap(dom, cod, std::move(m));
}

inline LinMap tensor_with_identity(const LinMap& phi, const Algebra& c) {
  return tensor_maps(phi, LinMap::identity(c));
}

inline LinMap identity_tensor(const Algebra& c, const LinMap& phi) {
  return tensor_maps(LinMap::identity(c), phi);
}

/// Blockwise transpose A -> A as a linear map.
inline LinMap transpose_map(const Algebra& a) {
  return LinMap::from_function(a, a, [](const Element& e) { return e.transpose(); });
}

/// The same linear map viewed as A^op -> B^op, expressed in transposed
/// storage: x -> phi(x^T)^T.
inline LinMap op_map(const LinMap& phi) {
  return compose(transpose_map(phi.codomain()), compose(phi, transpose_map(phi.domain())));
}

/// phi^dagger: the adjoint for <x|y> = tr(x* y). Matrix units are orthonormal
/// for this inner product, so it is the conjugate transpose of the matrix.
inline LinMap dagger_adjoint(const LinMap& phi) {
  return LinMap(phi.codomain(), phi.domain(), phi.matrix().adjoint());
}

namespace detail {
inline Eigen::VectorXd block_size_weights(const Algebra& a) {
  Eigen::VectorXd w(a.vec_dim());
  for (int k = 0; k < a.num_blocks(); ++k) {
    const int n = a.block_size(k);
    w.segment(a.offset(k), n * n).setConstant(static_cast<double>(n));
  }
  return w;
}
}  // namespace detail

/// phi^ddagger(b) = phi^dagger(b zeta_B) zeta_A^{-1}: the adjoint for the
/// inner product (x|y) = tr~(x* y).
inline LinMap ddagger_adjoint(const LinMap& phi) {
  const Eigen::VectorXd zb = detail::block_size_weights(phi.codomain());
  const Eigen::VectorXd za_inv = detail::block_size_weights(phi.domain()).cwiseInverse();
  Matrix m = za_inv.asDiagonal() * phi.matrix().adjoint() * zb.asDiagonal();
  return LinMap(phi.codomain(), phi.domain(), std::move(m));
}

/// ||phi(1) - 1||_F.
inline Defect is_unital(const LinMap& phi, double tol) {
  return make_defect(
      distance(phi.apply(Element::identity(phi.domain())), Element::identity(phi.codomain())),
      tol);
}

/// max over matrix units of |tr(phi(e)) - tr(e)|.
inline Defect is_trace_preserving(const LinMap& phi, double tol) {
  double worst = 0.0;
  for (int u = 0; u < phi.domain().vec_dim(); ++u) {
    const auto unit = phi.domain().unit(u);
    const double expected = unit.row == unit.col ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(trace(phi.image(u)) - expected));
  }
  return make_defect(worst, tol);
}

struct MultiplicativityDefect {
  double product = 0.0;  // max ||phi(uv) - phi(u)phi(v)||_F over basis pairs
  double star = 0.0;     // max ||phi(u*) - phi(u)*||_F over basis units

  double value() const noexcept { return std::max(product, star); }
};

/// Brute-force homomorphism oracle over all pairs of matrix units.
inline MultiplicativityDefect mult_defect(const LinMap& phi) {
  const Algebra& a = phi.domain();
  const auto images = phi.images();
  const auto img = [&](int u) -> const Element& { return images[static_cast<std::size_t>(u)]; };
  const Element zero(phi.codomain());
  MultiplicativityDefect d;
  for (int u = 0; u < a.vec_dim(); ++u) {
    const auto eu = a.unit(u);
    const Element& pu = img(u);
    d.star = std::max(d.star, distance(img(a.index(eu.block, eu.col, eu.row)), pu.adjoint()));
    for (int v = 0; v < a.vec_dim(); ++v) {
      const auto ev = a.unit(v);
      // e_{ijk} e_{i'j'k'} = [k = k'][j = i'] e_{ij'k}
      const bool nonzero = eu.block == ev.block && eu.col == ev.row;
      const Element& lhs = nonzero ? img(a.index(eu.block, eu.row, ev.col)) : zero;
      d.product = std::max(d.product, distance(lhs, pu * img(v)));
    }
  }
  return d;
}

inline Defect is_homomorphism(const LinMap& phi, double tol) {
  return make_defect(mult_defect(phi).value(), tol);
}

/// Default tolerance for map-level defects: 1e-9 * sqrt(dim A * dim B), i.e.
/// the default for the algebra B (x) A that holds the adjusted Choi matrix.
inline double default_tolerance(const LinMap& phi) {
  return 1e-9 * std::sqrt(static_cast<double>(phi.domain().vec_dim()) *
                          static_cast<double>(phi.codomain().vec_dim()));
}

}  // namespace homcheck

#pragma once

// Finite-dimensional C*-algebras M_{n_1} (+) ... (+) M_{n_l} and their elements.
//
// Indices are zero-based throughout: block k in [0, l), rows/cols in [0, n_k).
// The canonical basis of an algebra is its matrix units e_{ijk}, ordered by
// block ascending and then row-major (i, j); `Algebra::index` maps a unit to
// its position in that order and `Element::coords` flattens in the same order.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "homcheck/error.hpp"

namespace homcheck {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct TensorFactors;

class Algebra {
 public:
  struct Unit {
    int block;
    int row;
    int col;
  };

  explicit Algebra(std::vector<int> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
      throw Error(ErrorKind::InvalidAlgebra, "an algebra needs at least one block");
    }
    offsets_.reserve(blocks_.size());
    for (int n : blocks_) {
      if (n < 1) {
        throw Error(ErrorKind::InvalidAlgebra,
                    "block sizes must be positive, got " + std::to_string(n));
      }
      offsets_.push_back(vec_dim_);
      vec_dim_ += n * n;
      trace_dim_ += n;
    }
  }

  /// A (x) B with blocks n_k * m_r in lexicographic (k, r) order. The result
  /// remembers its two factors.
  static Algebra tensor(const Algebra& left, const Algebra& right);

  const std::vector<int>& blocks() const noexcept { return blocks_; }
  int num_blocks() const noexcept { return static_cast<int>(blocks_.size()); }
  int block_size(int k) const {
    check_block(k);
    return blocks_[static_cast<std::size_t>(k)];
  }
  /// Dimension as a complex vector space, sum of n_k^2.
  int vec_dim() const noexcept { return vec_dim_; }
  /// Rank of the identity, sum of n_k.
  int trace_dim() const noexcept { return trace_dim_; }
  int offset(int k) const {
    check_block(k);
    return offsets_[static_cast<std::size_t>(k)];
  }

  bool is_commutative() const noexcept {
    return std::all_of(blocks_.begin(), blocks_.end(), [](int n) { return n == 1; });
  }

  bool is_tensor() const noexcept { return factors_ != nullptr; }
  const Algebra& left_factor() const;
  const Algebra& right_factor() const;

  int index(int k, int i, int j) const {
    const int n = block_size(k);
    if (i < 0 || i >= n || j < 0 || j >= n) {
      throw Error(ErrorKind::IndexOutOfRange, "matrix unit (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ") outside block of size " +
                                                  std::to_string(n));
    }
    return offsets_[static_cast<std::size_t>(k)] + i * n + j;
  }

  Unit unit(int index) const {
    if (index < 0 || index >= vec_dim_) {
      throw Error(ErrorKind::IndexOutOfRange, "basis index " + std::to_string(index));
    }
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    const int k = static_cast<int>(it - offsets_.begin()) - 1;
    const int n = blocks_[static_cast<std::size_t>(k)];
    const int local = index - offsets_[static_cast<std::size_t>(k)];
    return {k, local / n, local % n};
  }

  /// Structural equality: factor bookkeeping is ignored.
  friend bool operator==(const Algebra& a, const Algebra& b) { return a.blocks_ == b.blocks_; }
  friend bool operator!=(const Algebra& a, const Algebra& b) { return !(a == b); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(blocks_[k]);
    }
    return s + "]";
  }

 private:
  void check_block(int k) const {
    if (k < 0 || k >= num_blocks()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "block " + std::to_string(k) + " of algebra with " +
                      std::to_string(num_blocks()) + " blocks");
    }
  }

  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int vec_dim_ = 0;
  int trace_dim_ = 0;
  std::shared_ptr<const TensorFactors> factors_;
};

struct TensorFactors {
  Algebra left;
  Algebra right;
};

inline Algebra Algebra::tensor(const Algebra& left, const Algebra& right) {
  std::vector<int> blocks;
  blocks.reserve(left.blocks_.size() * right.blocks_.size());
  for (int n : left.blocks_) {
    for (int m : right.blocks_) blocks.push_back(n * m);
  }
  Algebra result(std::move(blocks));
  result.factors_ = std::make_shared<const TensorFactors>(TensorFactors{left, right});
  return result;
}

inline const Algebra& Algebra::left_factor() const {
  if (!factors_) throw Error(ErrorKind::NotATensorAlgebra, to_string() + " has no recorded factors");
  return factors_->left;
}

inline const Algebra& Algebra::right_factor() const {
  if (!factors_) throw Error(ErrorKind::NotATensorAlgebra, to_string() + " has no recorded factors");
  return factors_->right;
}

inline std::ostream& operator<<(std::ostream& os, const Algebra& a) { return os << a.to_string(); }

inline Algebra direct_sum(const Algebra& a, const Algebra& b) {
  std::vector<int> blocks = a.blocks();
  blocks.insert(blocks.end(), b.blocks().begin(), b.blocks().end());
  return Algebra(std::move(blocks));
}

/// Block-diagonal element: one dense n_k x n_k matrix per summand.
class Element {
 public:
  explicit Element(Algebra algebra) : algebra_(std::move(algebra)) {
    blocks_.reserve(static_cast<std::size_t>(algebra_.num_blocks()));
    for (int n : algebra_.blocks()) blocks_.push_back(Matrix::Zero(n, n));
  }

  Element(Algebra algebra, std::vector<Matrix> blocks)
      : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != algebra_.num_blocks()) {
      throw Error(ErrorKind::AlgebraMismatch, "expected " + std::to_string(algebra_.num_blocks()) +
                                                  " blocks, got " + std::to_string(blocks_.size()));
    }
    for (int k = 0; k < algebra_.num_blocks(); ++k) {
      const auto& b = blocks_[static_cast<std::size_t>(k)];
      const int n = algebra_.block_size(k);
      if (b.rows() != n || b.cols() != n) {
        throw Error(ErrorKind::AlgebraMismatch, "block " + std::to_string(k) + " should be " +
                                                    std::to_string(n) + "x" + std::to_string(n));
      }
    }
  }

  static Element zero(const Algebra& a) { return Element(a); }

  static Element identity(const Algebra& a) {
    std::vector<Matrix> blocks;
    for (int n : a.blocks()) blocks.push_back(Matrix::Identity(n, n));
    return Element(a, std::move(blocks));
  }

  static Element from_coords(const Algebra& a, const Vector& coords) {
    if (coords.size() != a.vec_dim()) {
      throw Error(ErrorKind::AlgebraMismatch, "coordinate vector has wrong length");
    }
    std::vector<Matrix> blocks;
    for (int k = 0; k < a.num_blocks(); ++k) {
      const int n = a.block_size(k);
      const int off = a.offset(k);
      Matrix b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = coords(off + i * n + j);
      blocks.push_back(std::move(b));
    }
    return Element(a, std::move(blocks));
  }

  Vector coords() const {
    Vector v(algebra_.vec_dim());
    for (int k = 0; k < algebra_.num_blocks(); ++k) {
      const auto& b = block(k);
      const int n = static_cast<int>(b.rows());
      const int off = algebra_.offset(k);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v(off + i * n + j) = b(i, j);
    }
    return v;
  }

  const Algebra& algebra() const noexcept { return algebra_; }
  int num_blocks() const noexcept { return algebra_.num_blocks(); }
  const Matrix& block(int k) const {
    if (k < 0 || k >= num_blocks()) throw Error(ErrorKind::IndexOutOfRange, "block index");
    return blocks_[static_cast<std::size_t>(k)];
  }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

  Element adjoint() const {
    return map_blocks([](const Matrix& m) -> Matrix { return m.adjoint(); });
  }
  /// Blockwise transpose without conjugation.
  Element transpose() const {
    return map_blocks([](const Matrix& m) -> Matrix { return m.transpose(); });
  }
  /// Entrywise complex conjugate.
  Element conjugate() const {
    return map_blocks([](const Matrix& m) -> Matrix { return m.conjugate(); });
  }

  template <class F>
  Element map_blocks(F&& f) const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(f(b));
    return Element(algebra_, std::move(out));
  }

  Element& operator+=(const Element& y) {
    require_same(y);
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += y.blocks_[k];
    return *this;
  }
  Element& operator-=(const Element& y) {
    require_same(y);
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= y.blocks_[k];
    return *this;
  }
  Element& operator*=(Complex s) {
    for (auto& b : blocks_) b *= s;
    return *this;
  }

  friend Element operator+(Element x, const Element& y) { return x += y; }
  friend Element operator-(Element x, const Element& y) { return x -= y; }
  friend Element operator-(Element x) { return x *= Complex(-1.0); }
  friend Element operator*(Element x, Complex s) { return x *= s; }
  friend Element operator*(Complex s, Element x) { return x *= s; }
  friend Element operator*(double s, Element x) { return x *= Complex(s); }
  friend Element operator*(Element x, double s) { return x *= Complex(s); }

  friend Element operator*(const Element& x, const Element& y) {
    x.require_same(y);
    std::vector<Matrix> out;
    out.reserve(x.blocks_.size());
    for (std::size_t k = 0; k < x.blocks_.size(); ++k) out.push_back(x.blocks_[k] * y.blocks_[k]);
    return Element(x.algebra_, std::move(out));
  }

  void require_same(const Element& y) const {
    if (algebra_ != y.algebra_) {
      throw Error(ErrorKind::AlgebraMismatch,
                  algebra_.to_string() + " vs " + y.algebra_.to_string());
    }
  }

 private:
  Algebra algebra_;
  std::vector<Matrix> blocks_;
};

inline std::ostream& operator<<(std::ostream& os, const Element& x) {
  os << "Element" << x.algebra() << "{";
  for (int k = 0; k < x.num_blocks(); ++k) os << "\n" << x.block(k);
  return os << "}";
}

inline double frobenius_norm(const Element& x) {
  double s = 0.0;
  for (const auto& b : x.blocks()) s += b.squaredNorm();
  return std::sqrt(s);
}

inline double distance(const Element& x, const Element& y) { return frobenius_norm(x - y); }

/// Largest entrywise modulus of x - y.
inline double max_abs_difference(const Element& x, const Element& y) {
  x.require_same(y);
  double worst = 0.0;
  for (int k = 0; k < x.num_blocks(); ++k) {
    if (x.block(k).size() == 0) continue;
    worst = std::max(worst, (x.block(k) - y.block(k)).cwiseAbs().maxCoeff());
  }
  return worst;
}

/// Default projection/positivity tolerance, 1e-9 * sqrt(vec_dim).
inline double default_tolerance(const Algebra& a) {
  return 1e-9 * std::sqrt(static_cast<double>(a.vec_dim()));
}

inline Element matrix_unit(const Algebra& a, int k, int i, int j) {
  a.index(k, i, j);  // bounds check
  Element x(a);
  std::vector<Matrix> blocks = x.blocks();
  blocks[static_cast<std::size_t>(k)](i, j) = 1.0;
  return Element(a, std::move(blocks));
}

inline Element basis_unit(const Algebra& a, int index) {
  const auto u = a.unit(index);
  return matrix_unit(a, u.block, u.row, u.col);
}

/// pi_k: M_{n_k} -> A, the inclusion of block k.
inline Element block_inclusion(const Algebra& a, int k, const Matrix& x) {
  const int n = a.block_size(k);
  if (x.rows() != n || x.cols() != n) {
    throw Error(ErrorKind::AlgebraMismatch, "block_inclusion: wrong matrix size");
  }
  Element z(a);
  std::vector<Matrix> blocks = z.blocks();
  blocks[static_cast<std::size_t>(k)] = x;
  return Element(a, std::move(blocks));
}

inline Complex trace(const Element& x) {
  Complex t = 0.0;
  for (const auto& b : x.blocks()) t += b.trace();
  return t;
}

/// zeta_A = n_1 1 (+) ... (+) n_l 1.
inline Element dimension_operator(const Algebra& a) {
  std::vector<Matrix> blocks;
  for (int n : a.blocks()) blocks.push_back(static_cast<double>(n) * Matrix::Identity(n, n));
  return Element(a, std::move(blocks));
}

/// Multiplies block k by s(n_k); used for products with central functions of zeta.
template <class F>
Element scale_blocks(const Element& x, F&& s) {
  std::vector<Matrix> out;
  for (int k = 0; k < x.num_blocks(); ++k) {
    out.push_back(x.block(k) * s(x.algebra().block_size(k)));
  }
  return Element(x.algebra(), std::move(out));
}

/// tr(x zeta_A); gives each projection p the value dim(Ap).
inline Complex adjusted_trace(const Element& x) {
  Complex t = 0.0;
  for (int k = 0; k < x.num_blocks(); ++k) {
    t += static_cast<double>(x.algebra().block_size(k)) * x.block(k).trace();
  }
  return t;
}

/// The *-isomorphism A^op -> A: blockwise transpose.
inline Element op_transpose(const Element& x) { return x.transpose(); }

inline Element tensor_elements(const Element& x, const Element& y) {
  const Algebra t = Algebra::tensor(x.algebra(), y.algebra());
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(t.num_blocks()));
  for (const auto& a : x.blocks()) {
    for (const auto& b : y.blocks()) {
      Matrix kron(a.rows() * b.rows(), a.cols() * b.cols());
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
          kron.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
      blocks.push_back(std::move(kron));
    }
  }
  return Element(t, std::move(blocks));
}

inline Element direct_sum(const Element& x, const Element& y) {
  std::vector<Matrix> blocks = x.blocks();
  blocks.insert(blocks.end(), y.blocks().begin(), y.blocks().end());
  return Element(direct_sum(x.algebra(), y.algebra()), std::move(blocks));
}

/// The trace-preserving conditional expectation onto the center: block k
/// becomes (tr(a_k)/n_k) 1. This is how the diagonal projection acts when
/// A (x) A^op is represented on A.
inline Element conditional_expectation_center(const Element& a) {
  return a.map_blocks([](const Matrix& b) -> Matrix {
    const auto n = b.rows();
    return (b.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
  });
}

inline bool is_central(const Element& x, double tol) {
  return distance(conditional_expectation_center(x), x) <= tol;
}

}  // namespace homcheck

#pragma once

// Seeded generators for test inputs.
//
// The engine is std::mt19937_64 (whose output sequence is fixed by the
// standard) seeded through splitmix64. Uniforms take the top 53 bits and
// normals use Box-Muller, so no distribution object from <random> is used:
// those are implementation-defined and would break cross-platform
// reproducibility.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "homcheck/algebra.hpp"
#include "homcheck/entropy.hpp"
#include "homcheck/linmap.hpp"

namespace homcheck {

struct Seed {
  std::uint64_t value = 0;
};

class Rng {
 public:
  explicit Rng(Seed seed, std::uint64_t stream = 0)
      : engine_(splitmix64(seed.value ^ splitmix64(stream + 0x6a09e667f3bcc909ULL))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi], by rejection.
  int uniform_int(int lo, int hi) {
    const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return lo + static_cast<int>(x % range);
  }

  double normal() {
    if (spare_) {
      const double s = *spare_;
      spare_.reset();
      return s;
    }
    double u1;
    do u1 = uniform();
    while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    return r * std::cos(theta);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

  Matrix ginibre(int rows, int cols) {
    Matrix g(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) g(i, j) = complex_normal();
    return g;
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) removed.
inline Matrix random_unitary(int n, Rng& rng) {
  const Matrix g = rng.ginibre(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0);
    q.col(j) *= phase;
  }
  return q;
}

inline Matrix random_unitary(int n, Seed seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

/// First m columns of a Haar unitary on C^rows.
inline Matrix random_isometry(int rows, int cols, Rng& rng) {
  return random_unitary(rows, rng).leftCols(cols);
}

inline Element random_element(const Algebra& a, Rng& rng) {
  std::vector<Matrix> blocks;
  for (int n : a.blocks()) blocks.push_back(rng.ginibre(n, n));
  return Element(a, std::move(blocks));
}

inline Element random_hermitian(const Algebra& a, Rng& rng) {
  const Element g = random_element(a, rng);
  return 0.5 * (g + g.adjoint());
}

inline Element random_positive(const Algebra& a, Rng& rng) {
  const Element g = random_element(a, rng);
  return g * g.adjoint();
}

/// Random projection: per block, the span of a random subset of columns of a
/// Haar unitary (rank drawn uniformly in [0, n_k]).
inline Element random_projection(const Algebra& a, Rng& rng) {
  std::vector<Matrix> blocks;
  for (int n : a.blocks()) {
    const int rank = rng.uniform_int(0, n);
    const Matrix v = random_unitary(n, rng).leftCols(rank);
    blocks.push_back(v * v.adjoint());
  }
  return Element(a, std::move(blocks));
}

struct DensityOptions {
  /// Draw each block as G G* with G of random column rank, and occasionally
  /// give a block zero weight; exercises the f(0) = 0 path of the entropies.
  bool rank_deficient = false;
};

/// Positive, unit-trace element: per block G G* with random block weights.
inline Element random_density(const Algebra& a, Rng& rng, DensityOptions options = {}) {
  std::vector<Matrix> blocks;
  std::vector<double> weights;
  for (int n : a.blocks()) {
    const int cols = options.rank_deficient ? rng.uniform_int(1, n) : n;
    const Matrix g = rng.ginibre(n, cols);
    Matrix p = g * g.adjoint();
    p /= p.trace().real();
    blocks.push_back(std::move(p));
    double w = rng.uniform() + 0.05;
    if (options.rank_deficient && a.num_blocks() > 1 && rng.uniform() < 0.25) w = 0.0;
    weights.push_back(w);
  }
  double total = 0.0;
  for (double w : weights) total += w;
  if (total == 0.0) {
    weights[0] = 1.0;
    total = 1.0;
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) blocks[k] *= weights[k] / total;
  return Element(a, std::move(blocks));
}

inline State random_state(const Algebra& a, Rng& rng, DensityOptions options = {}) {
  return State::from_density(random_density(a, rng, options));
}

inline State random_state(const Algebra& a, Seed seed, DensityOptions options = {}) {
  Rng rng(seed);
  return random_state(a, rng, options);
}

/// Random algebra with at most max_blocks blocks of size <= max_block and
/// trace dimension <= max_trace_dim.
inline Algebra random_algebra(Rng& rng, int max_trace_dim, int max_blocks = 3, int max_block = 3) {
  if (max_trace_dim < 1) throw Error(ErrorKind::InvalidArgument, "max_trace_dim must be >= 1");
  for (;;) {
    const int l = rng.uniform_int(1, max_blocks);
    std::vector<int> sizes;
    int total = 0;
    for (int k = 0; k < l; ++k) {
      sizes.push_back(rng.uniform_int(1, max_block));
      total += sizes.back();
    }
    if (total <= max_trace_dim) return Algebra(std::move(sizes));
  }
}

/// pi(a) = (+)_k a_k (x) 1_{mult_k} on C^N with N = sum_k mult_k n_k.
inline Matrix amplify(const Element& a, const std::vector<int>& multiplicities) {
  int dim = 0;
  for (int k = 0; k < a.num_blocks(); ++k) {
    dim += multiplicities[static_cast<std::size_t>(k)] * a.algebra().block_size(k);
  }
  Matrix out = Matrix::Zero(dim, dim);
  int pos = 0;
  for (int k = 0; k < a.num_blocks(); ++k) {
    const int n = a.algebra().block_size(k);
    const int mult = multiplicities[static_cast<std::size_t>(k)];
    const Matrix& b = a.block(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int s = 0; s < mult; ++s) out(pos + i * mult + s, pos + j * mult + s) = b(i, j);
    pos += n * mult;
  }
  return out;
}

inline int representation_dim(const Algebra& a, const std::vector<int>& multiplicities) {
  if (static_cast<int>(multiplicities.size()) != a.num_blocks()) {
    throw Error(ErrorKind::InvalidArgument, "need one multiplicity per block of the domain");
  }
  int dim = 0;
  for (int k = 0; k < a.num_blocks(); ++k) {
    if (multiplicities[static_cast<std::size_t>(k)] < 0) {
      throw Error(ErrorKind::InvalidArgument, "multiplicities must be nonnegative");
    }
    dim += multiplicities[static_cast<std::size_t>(k)] * a.block_size(k);
  }
  return dim;
}

/// a -> pinch_B(V* pi(a) V) for an isometry V: C^{trace_dim B} -> C^N; unital
/// and completely positive whenever V*V = 1.
inline LinMap ucp_from_isometry(const Algebra& a, const Algebra& b,
                                const std::vector<int>& multiplicities, const Matrix& v) {
  const int n = representation_dim(a, multiplicities);
  if (v.rows() != n || v.cols() != b.trace_dim()) {
    throw Error(ErrorKind::InvalidArgument, "isometry has the wrong shape");
  }
  return LinMap::from_function(a, b, [&](const Element& x) {
    const Matrix w = v.adjoint() * amplify(x, multiplicities) * v;
    std::vector<Matrix> blocks;
    int pos = 0;
    for (int m : b.blocks()) {
      blocks.push_back(w.block(pos, pos, m, m));
      pos += m;
    }
    return Element(b, std::move(blocks));
  });
}

/// Random unital CP map in Stinespring form. Requires
/// N = sum_k mult_k n_k >= trace_dim(B).
inline LinMap random_ucp(const Algebra& a, const Algebra& b, const std::vector<int>& multiplicities,
                         Seed seed) {
  const int n = representation_dim(a, multiplicities);
  if (n < b.trace_dim()) {
    throw Error(ErrorKind::MultiplicityTooSmall,
                "representation dimension " + std::to_string(n) + " < " +
                    std::to_string(b.trace_dim()));
  }
  Rng rng(seed);
  return ucp_from_isometry(a, b, multiplicities, random_isometry(n, b.trace_dim(), rng));
}

/// All nonnegative m with sum_k m_k n_k = target (each m_k <= target).
inline std::vector<std::vector<int>> multiplicity_solutions(const Algebra& a, int target) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(a.num_blocks()), 0);
  std::function<void(int, int)> search = [&](int k, int remaining) {
    if (k == a.num_blocks()) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    const int n = a.block_size(k);
    for (int m = 0; m <= target && m * n <= remaining; ++m) {
      current[static_cast<std::size_t>(k)] = m;
      search(k + 1, remaining - m * n);
    }
    current[static_cast<std::size_t>(k)] = 0;
  };
  search(0, target);
  return out;
}

/// Random unital *-homomorphism: block r of B receives
/// U_r* ((+)_k a_k (x) 1_{m_{k,r}}) U_r with Haar U_r. Multiplicities are drawn
/// uniformly among the solutions that use every block of A, when any exist.
inline LinMap random_homomorphism(const Algebra& a, const Algebra& b, Seed seed) {
  Rng rng(seed);
  std::vector<std::vector<int>> chosen;
  for (int m : b.blocks()) {
    const auto all = multiplicity_solutions(a, m);
    if (all.empty()) {
      throw Error(ErrorKind::NoUnitalEmbedding,
                  "no unital embedding of " + a.to_string() + " into M_" + std::to_string(m));
    }
    std::vector<std::vector<int>> full;
    for (const auto& s : all) {
      if (std::all_of(s.begin(), s.end(), [](int x) { return x > 0; })) full.push_back(s);
    }
    const auto& pool = full.empty() ? all : full;
    chosen.push_back(pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(pool.size()) - 1))]);
  }
  std::vector<Matrix> unitaries;
  for (int m : b.blocks()) unitaries.push_back(random_unitary(m, rng));
  return LinMap::from_function(a, b, [&](const Element& x) {
    std::vector<Matrix> blocks;
    for (int r = 0; r < b.num_blocks(); ++r) {
      const Matrix& u = unitaries[static_cast<std::size_t>(r)];
      blocks.push_back(u.adjoint() * amplify(x, chosen[static_cast<std::size_t>(r)]) * u);
    }
    return Element(b, std::move(blocks));
  });
}

/// omega_nu(a) = nu(a) 1_B for the state nu with density d.
inline LinMap scrambling_map(const Element& density, const Algebra& b) {
  const Algebra& a = density.algebra();
  return LinMap::from_function(a, b, [&](const Element& x) {
    return trace(x * density) * Element::identity(b);
  });
}

/// (1 - eps) phi + eps omega_nu for a random full-rank state nu.
inline LinMap perturb_toward_scrambling(const LinMap& phi, double eps, Seed seed) {
  if (eps < 0.0 || eps > 1.0) throw Error(ErrorKind::InvalidArgument, "eps must lie in [0, 1]");
  if (eps == 0.0) return phi;
  Rng rng(seed);
  const Element nu = random_density(phi.domain(), rng);
  return (1.0 - eps) * phi + eps * scrambling_map(nu, phi.codomain());
}

}  // namespace homcheck

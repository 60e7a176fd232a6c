#pragma once

// States, density and adjusted density operators, the entropy S and the
// adjusted entropy S~, and the deterministic entropy criterion for
// homomorphisms.
//
// Conventions:
//   d   density:           mu(a) = tr(a d),   tr(d) = 1
//   d~  adjusted density:  mu(a) = tr~(a d~), d = d~ zeta
//   S(mu)  = -tr(d log d)
//   S~(mu) = -tr~(d~ log d~) = S(mu) + mu(log zeta)
// t log t is read as the continuous function with value 0 at t = 0.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "homcheck/algebra.hpp"
#include "homcheck/choi.hpp"
#include "homcheck/linmap.hpp"
#include "homcheck/spectral.hpp"

namespace homcheck {

/// Eigenvalues below this are treated as exact zeros before t log t.
inline constexpr double kEigenvalueFloor = 1e-14;

class LogBase {
 public:
  static LogBase natural() { return LogBase("e", 1.0); }
  static LogBase base2() { return LogBase("2", std::numbers::ln2); }
  static LogBase base10() { return LogBase("10", std::numbers::ln10); }

  /// Accepts "e", "2" or "10".
  static LogBase parse(const std::string& name) {
    if (name == "e") return natural();
    if (name == "2") return base2();
    if (name == "10") return base10();
    throw Error(ErrorKind::InvalidArgument, "log base must be one of e, 2, 10; got " + name);
  }

  double log(double t) const { return std::log(t) / ln_base_; }
  double ln_base() const noexcept { return ln_base_; }
  const std::string& name() const noexcept { return name_; }

  /// f(t) = t log t with f(t) = 0 for t below the eigenvalue floor.
  double xlogx(double t) const { return t < kEigenvalueFloor ? 0.0 : t * log(t); }

 private:
  LogBase(std::string name, double ln_base) : name_(std::move(name)), ln_base_(ln_base) {}

  std::string name_;
  double ln_base_;
};

/// Entropy tolerance for a problem whose target algebra has vector dimension dim.
inline double default_entropy_tolerance(int dim) { return 1e-8 * static_cast<double>(dim); }

/// A state, held through its density operator.
class State {
 public:
  /// Validates positivity (lambda_min >= -tol) and tr(d) = 1 +- tol.
  static State from_density(Element density, double tol) {
    const Defect pos = is_positive(density, tol);
    if (!pos.holds) {
      throw Error(ErrorKind::NotADensity, "positivity defect " + std::to_string(pos.defect));
    }
    const Complex t = trace(density);
    if (std::abs(t - 1.0) > tol) {
      throw Error(ErrorKind::NotADensity, "trace " + std::to_string(t.real()) + " != 1");
    }
    return State(std::move(density));
  }
  static State from_density(Element density) {
    const double tol = default_tolerance(density.algebra());
    return from_density(std::move(density), tol);
  }

  const Algebra& algebra() const noexcept { return density_.algebra(); }
  const Element& density() const noexcept { return density_; }

  /// d~ = d zeta^{-1}.
  Element adjusted_density() const {
    return scale_blocks(density_, [](int n) { return 1.0 / static_cast<double>(n); });
  }

 private:
  explicit State(Element density) : density_(std::move(density)) {}
  Element density_;
};

inline State state_from_density(const Algebra& a, const Element& d) {
  if (d.algebra() != a) throw Error(ErrorKind::AlgebraMismatch, "density lives elsewhere");
  return State::from_density(d);
}

/// mu(a), evaluated both as tr(a d) and as tr~(a d~); the two must agree.
inline Complex evaluate(const State& mu, const Element& a) {
  const Complex plain = trace(a * mu.density());
  const Complex adjusted = adjusted_trace(a * mu.adjusted_density());
  const double scale = 1.0 + frobenius_norm(a);
  if (std::abs(plain - adjusted) > 1e-10 * scale) {
    throw Error(ErrorKind::InternalInconsistency, "tr(a d) and tr~(a d~) disagree");
  }
  return plain;
}

inline Element adjusted_density(const State& mu) { return mu.adjusted_density(); }

/// Uniform state on a nonzero projection p: a -> tr~(a p)/tr~(p), with
/// density p zeta / tr~(p).
inline State uniform_state_on_projection(const Algebra& a, const Element& p, double tol) {
  if (p.algebra() != a) throw Error(ErrorKind::AlgebraMismatch, "projection lives elsewhere");
  const Defect proj = is_projection(p, tol);
  if (!proj.holds) {
    throw Error(ErrorKind::NotAProjection, "projection defect " + std::to_string(proj.defect));
  }
  const double tr = adjusted_trace(p).real();
  if (tr < 0.5) throw Error(ErrorKind::ZeroProjection, "uniform state on the zero projection");
  const Element d = (1.0 / tr) * scale_blocks(p, [](int n) { return static_cast<double>(n); });
  return State::from_density(d, tol);
}

inline State uniform_state_on_projection(const Algebra& a, const Element& p) {
  return uniform_state_on_projection(a, p, default_tolerance(a));
}

inline State uniform_state(const Algebra& a) {
  return uniform_state_on_projection(a, Element::identity(a));
}

namespace detail {
/// -sum_k w(n_k) sum_lambda f(lambda) over the spectrum of x.
template <class Weight>
double weighted_entropy_sum(const Element& x, const LogBase& base, Weight&& weight) {
  const Spectrum s = symmetrized_spectrum(x);
  double total = 0.0;
  for (int k = 0; k < x.num_blocks(); ++k) {
    const auto& values = s.blocks[static_cast<std::size_t>(k)].values;
    double block = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) block += base.xlogx(values(i));
    total -= weight(x.algebra().block_size(k)) * block;
  }
  return total;
}
}  // namespace detail

/// S(mu) = -tr(d log d).
inline double entropy(const State& mu, const LogBase& base = LogBase::natural()) {
  return detail::weighted_entropy_sum(mu.density(), base, [](int) { return 1.0; });
}

/// mu(log zeta) = sum_k tr(d_k) log n_k.
inline double expected_log_dimension(const State& mu, const LogBase& base) {
  double s = 0.0;
  for (int k = 0; k < mu.algebra().num_blocks(); ++k) {
    const int n = mu.algebra().block_size(k);
    s += mu.density().block(k).trace().real() * base.log(static_cast<double>(n));
  }
  return s;
}

/// S~(mu) = -tr~(d~ log d~) from the spectrum of d~. Cross-checked against
/// S(mu) + mu(log zeta); a disagreement above 100 * tol is an internal error.
inline double adjusted_entropy(const State& mu, const LogBase& base, double tol) {
  const double spectral_form = detail::weighted_entropy_sum(
      mu.adjusted_density(), base, [](int n) { return static_cast<double>(n); });
  const double relation_form = entropy(mu, base) + expected_log_dimension(mu, base);
  if (std::abs(spectral_form - relation_form) > 100.0 * tol) {
    throw Error(ErrorKind::InternalSpectralError,
                "adjusted entropy routes disagree: " + std::to_string(spectral_form) + " vs " +
                    std::to_string(relation_form));
  }
  return spectral_form;
}

inline double adjusted_entropy(const State& mu, const LogBase& base = LogBase::natural()) {
  return adjusted_entropy(mu, base, default_entropy_tolerance(mu.algebra().vec_dim()));
}

/// |S~(mu) - S(mu) - mu(log zeta)|.
inline double entropy_relation_residual(const State& mu, const LogBase& base = LogBase::natural()) {
  const double spectral_form = detail::weighted_entropy_sum(
      mu.adjusted_density(), base, [](int n) { return static_cast<double>(n); });
  return std::abs(spectral_form - entropy(mu, base) - expected_log_dimension(mu, base));
}

/// mu o phi for a unital CP phi, with density phi^dagger(d).
inline State pullback(const State& mu, const LinMap& phi, double tol) {
  if (mu.algebra() != phi.codomain()) {
    throw Error(ErrorKind::AlgebraMismatch, "state must live on the codomain of the map");
  }
  require_ucp(phi, tol);
  return State::from_density(dagger_adjoint(phi).apply(mu.density()), tol);
}

inline State pullback(const State& mu, const LinMap& phi) {
  return pullback(mu, phi, default_tolerance(phi));
}

struct EntropyCriterion {
  bool homomorphism = false;
  /// S~(mu o (phi (x) id)) - log(dim B) for mu uniform on delta_B.
  double gap = 0.0;
  double adjusted_entropy = 0.0;
  /// Unadjusted entropy of the same pulled-back state.
  double entropy = 0.0;
  double log_dim_b = 0.0;
  std::string base;
};

/// Pulls the uniform state on delta_B back along phi (x) id and compares its
/// adjusted entropy with log(dim B). The adjusted density of the pullback is
/// X / dim B with X = (phi^ddagger (x) id)(delta_B), so
///   gap = -(dim B)^{-1} tr~(X log X),
/// which is >= 0 because ||X|| <= 1; gap = 0 exactly for homomorphisms.
inline EntropyCriterion entropy_criterion(const LinMap& phi, double tol, double entropy_tol,
                                          const LogBase& base = LogBase::natural()) {
  require_ucp(phi, tol);
  const Algebra& b = phi.codomain();
  const double dim_b = b.vec_dim();
  const Element e_b = e_projection(b);
  const State mu = uniform_state_on_projection(e_b.algebra(), e_b, tol);

  const Element pulled_adjusted =
      apply_tensor(ddagger_adjoint(phi), LinMap::identity(b), mu.adjusted_density());
  const Element x = dim_b * pulled_adjusted;
  const double gap = detail::weighted_entropy_sum(
                         x, base, [](int n) { return static_cast<double>(n); }) /
                     dim_b;

  EntropyCriterion out;
  out.base = base.name();
  out.log_dim_b = base.log(dim_b);
  out.gap = gap;
  out.adjusted_entropy = gap + out.log_dim_b;
  if (gap < -10.0 * entropy_tol) {
    throw Error(ErrorKind::InternalSpectralError,
                "entropy gap " + std::to_string(gap) + " is significantly negative");
  }

  const State pulled = State::from_density(
      scale_blocks(pulled_adjusted, [](int n) { return static_cast<double>(n); }), tol);
  out.entropy = entropy(pulled, base);
  const double via_state = adjusted_entropy(pulled, base, entropy_tol);
  if (std::abs(via_state - out.adjusted_entropy) > 100.0 * entropy_tol) {
    throw Error(ErrorKind::InternalSpectralError, "entropy criterion routes disagree");
  }
  out.homomorphism = gap <= entropy_tol;
  return out;
}

inline EntropyCriterion entropy_criterion(const LinMap& phi,
                                          const LogBase& base = LogBase::natural()) {
  return entropy_criterion(phi, default_tolerance(phi),
                           default_entropy_tolerance(phi.codomain().vec_dim()), base);
}

}  // namespace homcheck

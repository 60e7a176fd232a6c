#pragma once

// Randomized search for a violation of complete entropy-monotonicity:
// a pair (k, mu) with mu a state on B (x) M_k such that
//   S~(mu o (phi (x) id)) > S~(mu) + tol.
// A hit proves phi is not a homomorphism; a miss proves nothing.

#include <optional>

#include "homcheck/entropy.hpp"
#include "homcheck/linmap.hpp"
#include "homcheck/randgen.hpp"

namespace homcheck {

struct Counterexample {
  int trial = 0;
  int k = 0;
  Element density;
  double adjusted_entropy_state = 0.0;
  double adjusted_entropy_pullback = 0.0;
};

struct RefuterOptions {
  int trials = 50;
  int k_max = 2;
  Seed seed{};
  std::optional<double> tol;          // UCP check; default_tolerance(phi)
  std::optional<double> entropy_tol;  // default 1e-8 * dim B
  LogBase base = LogBase::natural();
};

/// Evaluates one trial. Trial t draws from its own stream of the seed, so the
/// outcome depends only on (seed, t).
inline std::optional<Counterexample> refuter_trial(const LinMap& phi, int trial,
                                                   const RefuterOptions& options,
                                                   const LinMap& phi_dagger, double tol,
                                                   double entropy_tol) {
  Rng rng(options.seed, static_cast<std::uint64_t>(trial));
  const int k = rng.uniform_int(1, options.k_max);
  const Algebra c({k});
  const Algebra bc = Algebra::tensor(phi.codomain(), c);
  DensityOptions density_options;
  density_options.rank_deficient = trial % 2 == 1;
  const State mu = random_state(bc, rng, density_options);
  const State pulled =
      State::from_density(apply_tensor(phi_dagger, LinMap::identity(c), mu.density()), tol);
  const double before = adjusted_entropy(mu, options.base, entropy_tol);
  const double after = adjusted_entropy(pulled, options.base, entropy_tol);
  if (after > before + entropy_tol) {
    return Counterexample{trial, k, mu.density(), before, after};
  }
  return std::nullopt;
}

/// First counterexample by trial index, or nullopt.
inline std::optional<Counterexample> monotonicity_refuter(const LinMap& phi,
                                                          const RefuterOptions& options) {
  if (options.k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 1");
  const double tol = options.tol.value_or(default_tolerance(phi));
  const double entropy_tol =
      options.entropy_tol.value_or(default_entropy_tolerance(phi.codomain().vec_dim()));
  require_ucp(phi, tol);
  const LinMap phi_dagger = dagger_adjoint(phi);
  for (int t = 0; t < options.trials; ++t) {
    if (auto hit = refuter_trial(phi, t, options, phi_dagger, tol, entropy_tol)) return hit;
  }
  return std::nullopt;
}

}  // namespace homcheck

#pragma once

// Randomized property suites. Each property runs once per seed on inputs drawn
// from its own stream of that seed, so results depend only on (seed, options).

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homcheck/choi.hpp"
#include "homcheck/entropy.hpp"
#include "homcheck/linmap.hpp"
#include "homcheck/randgen.hpp"
#include "homcheck/refuter.hpp"

namespace homcheck {

enum class MapKind { Homomorphism, Ucp, Perturbed };

inline const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::Homomorphism: return "hom";
    case MapKind::Ucp: return "ucp";
    case MapKind::Perturbed: return "perturbed";
  }
  return "?";
}

struct MapSample {
  LinMap phi;
  MapKind kind;
  double eps = 0.0;

  /// True when the construction guarantees a homomorphism.
  bool known_homomorphism() const {
    return kind == MapKind::Homomorphism || (kind == MapKind::Perturbed && eps == 0.0);
  }
};

/// (A, B) with trace_dim(B) <= max_dim and a unital embedding A -> B. With
/// nontrivial_domain, A != C (every unital map out of C is a homomorphism).
inline std::pair<Algebra, Algebra> random_embeddable_pair(Rng& rng, int max_dim,
                                                          bool nontrivial_domain = false) {
  if (nontrivial_domain && max_dim < 2) {
    throw Error(ErrorKind::InvalidArgument, "a nontrivial domain needs max_dim >= 2");
  }
  const int domain_dim = std::max(nontrivial_domain ? 2 : 1, max_dim / 2);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Algebra a = random_algebra(rng, domain_dim);
    if (nontrivial_domain && a.vec_dim() < 2) continue;
    const int l = rng.uniform_int(1, 2);
    std::vector<int> sizes;
    int total = 0;
    for (int r = 0; r < l; ++r) {
      int m = 0;
      for (int n : a.blocks()) m += rng.uniform_int(0, 2) * n;
      if (m == 0) m = a.trace_dim();
      sizes.push_back(m);
      total += m;
    }
    if (total <= max_dim) return {a, Algebra(std::move(sizes))};
  }
  if (nontrivial_domain) return {Algebra({1, 1}), Algebra({2})};
  return {Algebra({1}), Algebra({std::max(1, max_dim)})};
}

/// Multiplicities for a Stinespring dilation with N >= trace_dim(B) + 1, so
/// that the isometry is generic.
inline std::vector<int> generic_multiplicities(const Algebra& a, const Algebra& b, Rng& rng) {
  std::vector<int> mult;
  for (int k = 0; k < a.num_blocks(); ++k) mult.push_back(rng.uniform_int(1, 2));
  while (representation_dim(a, mult) < b.trace_dim() + 1) {
    ++mult[static_cast<std::size_t>(rng.uniform_int(0, a.num_blocks() - 1))];
  }
  return mult;
}

inline MapSample random_map_sample(Rng& rng, int max_dim, MapKind kind, double eps = 0.0) {
  if (kind == MapKind::Ucp) {
    if (max_dim < 2) throw Error(ErrorKind::InvalidArgument, "generic ucp maps need max_dim >= 2");
    Algebra a({1});
    while (a.vec_dim() < 2) a = random_algebra(rng, std::max(2, max_dim / 2));
    const Algebra b = random_algebra(rng, max_dim);
    const auto mult = generic_multiplicities(a, b, rng);
    return {random_ucp(a, b, mult, Seed{rng.next()}), kind, 0.0};
  }
  const auto [a, b] = random_embeddable_pair(rng, max_dim, kind == MapKind::Perturbed);
  LinMap phi = random_homomorphism(a, b, Seed{rng.next()});
  if (kind == MapKind::Perturbed) phi = perturb_toward_scrambling(phi, eps, Seed{rng.next()});
  return {std::move(phi), kind, eps};
}

/// Cycles through homomorphisms, generic UCP maps and perturbations.
inline MapSample mixed_map_sample(Rng& rng, int max_dim, std::uint64_t index) {
  switch (index % 4) {
    case 0: return random_map_sample(rng, max_dim, MapKind::Homomorphism);
    case 1: return random_map_sample(rng, max_dim, MapKind::Ucp);
    case 2: return random_map_sample(rng, max_dim, MapKind::Perturbed, 1e-3);
    default: return random_map_sample(rng, max_dim, MapKind::Perturbed, 0.1);
  }
}

struct VerifyOptions {
  int seeds = 100;
  std::uint64_t first_seed = 0;
  /// Bound on the trace dimension of generated algebras.
  int max_dim = 6;
  /// Refuter trials per map.
  int trials = 20;
  /// Empty means every property.
  std::vector<std::string> properties;
  /// Negates phi^ddagger inside the dual_diagonal property.
  bool poison = false;
};

struct PropertyCase {
  bool pass = false;
  double residual = 0.0;
};

struct PropertyResult {
  std::string name;
  int passed = 0;
  int total = 0;
  double worst = 0.0;
  double threshold = 0.0;
  std::optional<std::uint64_t> first_failing_seed;

  bool ok() const noexcept { return passed == total; }
};

struct Property {
  const char* name;
  const char* description;
  double threshold;
  std::function<PropertyCase(Rng&, const VerifyOptions&, double)> run;
};

namespace detail {

inline PropertyCase within(double residual, double threshold) {
  return {residual <= threshold, residual};
}

inline LinMap random_cp(Rng& rng, int max_dim) {
  const Algebra a = random_algebra(rng, std::max(1, max_dim / 2));
  const Algebra b = random_algebra(rng, max_dim);
  const auto mult = generic_multiplicities(a, b, rng);
  const double scale = 0.5 + 1.5 * rng.uniform();
  return scale * random_ucp(a, b, mult, Seed{rng.next()});
}

inline PropertyCase trace_pairing(Rng& rng, const VerifyOptions& o, double threshold) {
  const Algebra a = random_algebra(rng, o.max_dim);
  const Element x = random_element(a, rng);
  const Element y = random_element(a, rng);
  const Complex lhs = adjusted_trace(e_projection(a) * tensor_elements(x, op_transpose(y)));
  return within(std::abs(lhs - adjusted_trace(x * y)), threshold);
}

inline PropertyCase diagonal_transpose(Rng& rng, const VerifyOptions& o, double threshold) {
  const Algebra a = random_algebra(rng, o.max_dim);
  return within(max_abs_difference(id_tensor_tau(delta_formula(a)), e_projection(a)), threshold);
}

inline PropertyCase diagonal_orthogonality(Rng& rng, const VerifyOptions& o, double threshold) {
  const Algebra a = random_algebra(rng, o.max_dim);
  const Element e = e_projection(a);
  const Element one = Element::identity(a);
  double worst = 0.0;
  // A random projection and every spectral projection of a random Hermitian.
  std::vector<Element> projections{random_projection(a, rng)};
  const Element h = random_hermitian(a, rng);
  for (auto& [lambda, p] : spectral_decomposition(h, default_tolerance(a))) {
    projections.push_back(std::move(p));
  }
  for (const Element& p : projections) {
    worst = std::max(worst, frobenius_norm(e * tensor_elements(p, op_transpose(one - p))));
  }
  return within(worst, threshold);
}

inline PropertyCase center_range(Rng& rng, const VerifyOptions& o, double threshold) {
  const Algebra a = random_algebra(rng, o.max_dim);
  const Element x = random_element(a, rng);
  const Element ex = conditional_expectation_center(x);
  const Element y = random_element(a, rng);
  double r = distance(conditional_expectation_center(ex), ex);
  r = std::max(r, distance(ex * y, y * ex));
  return within(r, threshold);
}

inline PropertyCase dual_diagonal(Rng& rng, const VerifyOptions& o, double threshold) {
  const LinMap phi = random_cp(rng, o.max_dim);
  const Algebra& a = phi.domain();
  const Algebra& b = phi.codomain();
  LinMap dd = ddagger_adjoint(phi);
  if (o.poison) dd = -1.0 * dd;
  const Element lhs = apply_tensor(dd, LinMap::identity(b), e_projection(b));
  const Element rhs = apply_tensor(LinMap::identity(a), op_map(phi), e_projection(a));
  return within(max_abs_difference(lhs, rhs), threshold);
}

inline PropertyCase dual_dominates(Rng& rng, const VerifyOptions& o, double threshold) {
  const auto [a, b] = random_embeddable_pair(rng, o.max_dim);
  const LinMap phi = random_homomorphism(a, b, Seed{rng.next()});
  const Element y = random_positive(b, rng);
  const double lambda = min_eigenvalue(phi(ddagger_adjoint(phi)(y)) - y);
  return {lambda >= -threshold, std::max(0.0, -lambda)};
}

inline PropertyCase entropy_relation(Rng& rng, const VerifyOptions& o, double threshold) {
  const Algebra a = random_algebra(rng, o.max_dim);
  DensityOptions d;
  d.rank_deficient = rng.uniform() < 0.5;
  return within(entropy_relation_residual(random_state(a, rng, d)), threshold);
}

inline PropertyCase projection_equivalence(Rng& rng, const VerifyOptions& o, double) {
  const MapSample s = mixed_map_sample(rng, o.max_dim, rng.next());
  const double tol = default_tolerance(s.phi);
  const Defect proj = projection_criterion(s.phi, tol);
  const Defect mult = is_homomorphism(s.phi, tol);
  const bool pass = proj.holds == mult.holds && mult.holds == s.known_homomorphism();
  return {pass, s.known_homomorphism() ? std::max(proj.defect, mult.defect) : 0.0};
}

inline PropertyCase criteria_agreement(Rng& rng, const VerifyOptions& o, double threshold) {
  const MapSample s = mixed_map_sample(rng, o.max_dim, rng.next());
  const CriteriaReport r = criteria_report(s.phi, default_tolerance(s.phi));
  const bool homomorphism = s.known_homomorphism();
  const double discrepancy = homomorphism ? r.max_discrepancy() : 0.0;
  const bool pass = r.agree() && r.verdicts[0] == homomorphism && discrepancy <= threshold;
  return {pass, discrepancy};
}

inline PropertyCase entropy_gap_sign(Rng& rng, const VerifyOptions& o, double threshold) {
  const MapSample s = mixed_map_sample(rng, o.max_dim, rng.next());
  const EntropyCriterion c = entropy_criterion(s.phi);
  const bool pass = c.gap >= -threshold && c.homomorphism == s.known_homomorphism();
  return {pass, std::max(0.0, -c.gap)};
}

/// [2,2] inside M_4 as block-diagonal matrices.
inline LinMap block_diagonal_embedding(const Algebra& c, int k) {
  return LinMap::from_function(c, Algebra({k}), [k](const Element& x) {
    Matrix m = Matrix::Zero(k, k);
    int pos = 0;
    for (const auto& b : x.blocks()) {
      m.block(pos, pos, b.rows(), b.cols()) = b;
      pos += static_cast<int>(b.rows());
    }
    return Element(Algebra({k}), {m});
  });
}

inline PropertyCase refuter_soundness(Rng& rng, const VerifyOptions& o, double threshold) {
  const auto [a, b] = random_embeddable_pair(rng, std::min(o.max_dim, 4));
  const LinMap phi = random_homomorphism(a, b, Seed{rng.next()});
  RefuterOptions ro;
  ro.trials = o.trials;
  ro.seed = Seed{rng.next()};
  const bool silent = !monotonicity_refuter(phi, ro).has_value();

  // A state on B (x) [2,2] and its extension to B (x) M_4 have equal slack
  // S~(mu) - S~(mu o (phi (x) id)).
  const Algebra c({2, 2});
  const LinMap iota = block_diagonal_embedding(c, 4);
  const LinMap dagger = dagger_adjoint(phi);
  const State mu = random_state(Algebra::tensor(b, c), rng);
  const State ext = State::from_density(apply_tensor(LinMap::identity(b), iota, mu.density()));
  const auto slack = [&](const State& s, const Algebra& right) {
    const State pulled =
        State::from_density(apply_tensor(dagger, LinMap::identity(right), s.density()));
    return adjusted_entropy(s) - adjusted_entropy(pulled);
  };
  const double s_small = slack(mu, c);
  const double s_large = slack(ext, Algebra({4}));
  const double entropy_tol = default_entropy_tolerance(b.vec_dim());
  const double r = std::abs(s_small - s_large);
  return {silent && r <= threshold && s_small >= -entropy_tol, r};
}

inline PropertyCase cj_duality(Rng& rng, const VerifyOptions& o, double threshold) {
  const int cap = std::max(1, std::min(o.max_dim, 4));
  // psi = phi^dagger for a unital CP phi: M_n -> M_m is trace-preserving CP.
  LinMap phi = LinMap::identity(Algebra({1}));
  if (rng.uniform() < 0.5) {
    const int n = rng.uniform_int(1, cap);
    const int m = rng.uniform_int(1, cap);
    const Algebra an({n}), am({m});
    phi = random_ucp(an, am, generic_multiplicities(an, am, rng), Seed{rng.next()});
  } else {
    const int n = rng.uniform_int(1, std::max(1, cap / 2));
    const int m = n * rng.uniform_int(1, cap / n);
    phi = random_homomorphism(Algebra({n}), Algebra({m}), Seed{rng.next()});
  }
  const LinMap psi = dagger_adjoint(phi);
  const double tol = default_tolerance(psi);
  const CjDualCheck c = cj_dual_check(psi, tol);
  const bool dual_hom = is_homomorphism(phi, tol).holds;
  return {c.conjugation_residual <= threshold && c.projection.holds == dual_hom,
          c.conjugation_residual};
}

}  // namespace detail

inline const std::vector<Property>& all_properties() {
  static const std::vector<Property> props{
      {"trace_pairing", "tr~(e (a (x) b^T)) = tr~(ab)", 1e-10, detail::trace_pairing},
      {"diagonal_transpose", "(id (x) tau)(delta) = e", 1e-12, detail::diagonal_transpose},
      {"diagonal_orthogonality", "e (p (x) (1-p)^T) = 0 for projections p", 1e-10,
       detail::diagonal_orthogonality},
      {"center_range", "delta acts as the conditional expectation onto the center", 1e-10,
       detail::center_range},
      {"dual_diagonal", "(phi^ddagger (x) id)(delta_B) = (id (x) phi)(delta_A)", 1e-9,
       detail::dual_diagonal},
      {"dual_dominates", "phi(phi^ddagger(b)) >= b for homomorphisms and b >= 0", 1e-9,
       detail::dual_dominates},
      {"entropy_relation", "S~ = S + mu(log zeta)", 1e-10, detail::entropy_relation},
      {"projection_equivalence", "adjusted Choi is a projection iff multiplicative", 0.0,
       detail::projection_equivalence},
      {"criteria_agreement", "the four projection tests agree", 1e-9,
       detail::criteria_agreement},
      {"entropy_gap_sign", "gap >= 0, zero exactly for homomorphisms", 1e-7,
       detail::entropy_gap_sign},
      {"refuter_soundness", "no refutation of a homomorphism; M_k reduction", 1e-9,
       detail::refuter_soundness},
      {"cj_duality", "c~_{psi^dagger} = conj(sigma((m/n) c~_psi))", 1e-10, detail::cj_duality},
  };
  return props;
}

inline const Property& find_property(const std::string& name) {
  for (const auto& p : all_properties()) {
    if (name == p.name) return p;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown property " + name);
}

inline PropertyResult run_property(const Property& p, std::size_t stream,
                                   const VerifyOptions& options) {
  PropertyResult r;
  r.name = p.name;
  r.threshold = p.threshold;
  for (int s = 0; s < options.seeds; ++s) {
    const std::uint64_t seed = options.first_seed + static_cast<std::uint64_t>(s);
    Rng rng(Seed{seed}, stream);
    PropertyCase c;
    try {
      c = p.run(rng, options, p.threshold);
    } catch (const Error&) {
      c = {false, 0.0};
    }
    ++r.total;
    if (c.pass) {
      ++r.passed;
    } else if (!r.first_failing_seed) {
      r.first_failing_seed = seed;
    }
    r.worst = std::max(r.worst, c.residual);
  }
  return r;
}

/// Runs the selected properties in catalogue order.
inline std::vector<PropertyResult> verify(const VerifyOptions& options) {
  for (const auto& name : options.properties) find_property(name);
  std::vector<PropertyResult> out;
  const auto& props = all_properties();
  for (std::size_t i = 0; i < props.size(); ++i) {
    const bool selected =
        options.properties.empty() ||
        std::find(options.properties.begin(), options.properties.end(), props[i].name) !=
            options.properties.end();
    if (selected) out.push_back(run_property(props[i], i + 1, options));
  }
  return out;
}

}  // namespace homcheck

#pragma once

// Aggregated analysis of a map: UCP defects, the three homomorphism detectors
// (multiplicativity, adjusted-Choi idempotence, entropy gap), the four
// equivalent projection tests, and an optional refuter run.
//
// Verdict rule, with each detector classified against its own tolerance as
// pass (<= tol), band (tol, 10 tol) or fail (>= 10 tol):
//   any detector in band            -> indeterminate
//   all pass                        -> homomorphism
//   all fail                        -> not
//   pass and fail mixed, no band    -> internal inconsistency

#include <optional>
#include <string>

#include "homcheck/choi.hpp"
#include "homcheck/entropy.hpp"
#include "homcheck/io.hpp"
#include "homcheck/linmap.hpp"
#include "homcheck/refuter.hpp"

namespace homcheck {

enum class Verdict { Homomorphism, NotHomomorphism, Indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Homomorphism: return "homomorphism";
    case Verdict::NotHomomorphism: return "not";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

enum class Band { Pass, Straddle, Fail };

inline Band classify(double defect, double tol) {
  if (defect <= tol) return Band::Pass;
  if (defect < 10.0 * tol) return Band::Straddle;
  return Band::Fail;
}

struct AnalyzeOptions {
  std::optional<double> tol;
  std::optional<double> entropy_tol;
  LogBase base = LogBase::natural();
  std::uint64_t seed = 0;
  int trials = 50;
  int k_max = 2;
  std::string source;
};

struct DetectorResults {
  MultiplicativityDefect mult;
  double projection_defect = 0.0;
  CriteriaReport projections;
  EntropyCriterion entropy;
  std::optional<Counterexample> counterexample;
};

struct AnalysisReport {
  Algebra domain{std::vector<int>{1}};
  Algebra codomain{std::vector<int>{1}};
  std::string source;
  double tol = 0.0;
  double entropy_tol = 0.0;
  std::string log_base;
  std::uint64_t seed = 0;
  int trials = 0;
  int k_max = 0;

  UcpCheck ucp;
  /// Empty when the map is not unital CP.
  std::optional<DetectorResults> detectors;
  Verdict verdict = Verdict::Indeterminate;
  bool consistent = true;
  std::string inconsistency;

  int exit_code() const {
    if (!detectors) return 3;
    if (!consistent) return 5;
    switch (verdict) {
      case Verdict::Homomorphism: return 0;
      case Verdict::NotHomomorphism: return 1;
      case Verdict::Indeterminate: return 2;
    }
    return 5;
  }
};

namespace detail {

inline void decide(AnalysisReport& r) {
  const DetectorResults& d = *r.detectors;
  const Band bands[3] = {classify(d.mult.value(), r.tol), classify(d.projection_defect, r.tol),
                         classify(d.entropy.gap, r.entropy_tol)};
  bool any_band = false, all_pass = true, all_fail = true;
  for (Band b : bands) {
    any_band = any_band || b == Band::Straddle;
    all_pass = all_pass && b == Band::Pass;
    all_fail = all_fail && b == Band::Fail;
  }
  if (any_band) {
    r.verdict = Verdict::Indeterminate;
  } else if (all_pass) {
    r.verdict = Verdict::Homomorphism;
  } else if (all_fail) {
    r.verdict = Verdict::NotHomomorphism;
  } else {
    r.verdict = Verdict::Indeterminate;
    r.consistent = false;
    r.inconsistency = "detectors disagree outside the indeterminate band";
    return;
  }
  if (r.verdict == Verdict::Indeterminate) return;

  for (double defect : d.projections.defects) {
    const Band b = classify(defect, r.tol);
    if (b == Band::Straddle) continue;
    if ((b == Band::Pass) != (r.verdict == Verdict::Homomorphism)) {
      r.consistent = false;
      r.inconsistency = "equivalent projection tests disagree with the detectors";
      return;
    }
  }
  if (d.counterexample && r.verdict == Verdict::Homomorphism) {
    r.consistent = false;
    r.inconsistency = "refuter found a counterexample for a homomorphism";
  }
}

}  // namespace detail

inline AnalysisReport analyze(const LinMap& phi, const AnalyzeOptions& options = {}) {
  AnalysisReport r;
  r.domain = phi.domain();
  r.codomain = phi.codomain();
  r.source = options.source;
  r.tol = options.tol.value_or(default_tolerance(phi));
  r.entropy_tol =
      options.entropy_tol.value_or(default_entropy_tolerance(phi.codomain().vec_dim()));
  r.log_base = options.base.name();
  r.seed = options.seed;
  r.trials = options.trials;
  r.k_max = options.k_max;

  r.ucp = check_ucp(phi, r.tol);
  if (!r.ucp.holds()) return r;

  try {
    DetectorResults d;
    d.mult = mult_defect(phi);
    d.projection_defect = projection_criterion(phi, r.tol).defect;
    d.projections = criteria_report(phi, r.tol);
    d.entropy = entropy_criterion(phi, r.tol, r.entropy_tol, options.base);
    if (options.trials > 0) {
      RefuterOptions ro;
      ro.trials = options.trials;
      ro.k_max = options.k_max;
      ro.seed = Seed{options.seed};
      ro.tol = r.tol;
      ro.entropy_tol = r.entropy_tol;
      ro.base = options.base;
      d.counterexample = monotonicity_refuter(phi, ro);
    }
    r.detectors = std::move(d);
    detail::decide(r);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InternalSpectralError &&
        e.kind() != ErrorKind::InternalInconsistency && e.kind() != ErrorKind::NotADensity) {
      throw;
    }
    if (!r.detectors) r.detectors = DetectorResults{};
    r.verdict = Verdict::Indeterminate;
    r.consistent = false;
    r.inconsistency = e.what();
  }
  return r;
}

inline Json to_json(const AnalysisReport& r) {
  Json j;
  Json map;
  map["domain"] = r.domain.blocks();
  map["codomain"] = r.codomain.blocks();
  map["source"] = r.source;
  j["map"] = std::move(map);

  Json tolerances;
  tolerances["tol"] = r.tol;
  tolerances["entropy_tol"] = r.entropy_tol;
  tolerances["log_base"] = r.log_base;
  j["tolerances"] = std::move(tolerances);

  Json ucp;
  ucp["unital_defect"] = format_defect(r.ucp.unital.defect);
  ucp["cp_defect"] = format_defect(r.ucp.completely_positive.defect);
  ucp["holds"] = r.ucp.holds();
  j["ucp"] = std::move(ucp);

  if (!r.detectors) {
    j["error"] = to_string(ErrorKind::NotUCP);
    return j;
  }
  const DetectorResults& d = *r.detectors;
  Json criteria;
  criteria["mult_defect"] = format_defect(d.mult.value());
  criteria["mult_product_defect"] = format_defect(d.mult.product);
  criteria["mult_star_defect"] = format_defect(d.mult.star);
  criteria["projection_defect"] = format_defect(d.projection_defect);
  Json equivalent;
  static constexpr const char* kNames[4] = {"adjusted_choi", "dual_diagonal",
                                            "scaled_adjusted_density", "rescaled_density"};
  for (std::size_t i = 0; i < 4; ++i) equivalent[kNames[i]] = format_defect(d.projections.defects[i]);
  criteria["equivalent_projection_defects"] = std::move(equivalent);

  Json entropy;
  entropy["base"] = d.entropy.base;
  entropy["S"] = d.entropy.entropy;
  entropy["S_adjusted"] = d.entropy.adjusted_entropy;
  entropy["log_dim_codomain"] = d.entropy.log_dim_b;
  entropy["gap"] = format_defect(d.entropy.gap);
  criteria["entropy"] = std::move(entropy);

  Json refuter;
  refuter["seed"] = r.seed;
  refuter["trials"] = r.trials;
  refuter["k_max"] = r.k_max;
  if (d.counterexample) {
    Json c;
    c["trial"] = d.counterexample->trial;
    c["k"] = d.counterexample->k;
    c["S_adjusted_state"] = d.counterexample->adjusted_entropy_state;
    c["S_adjusted_pullback"] = d.counterexample->adjusted_entropy_pullback;
    c["density"] = to_json(d.counterexample->density);
    refuter["counterexample"] = std::move(c);
  } else {
    refuter["counterexample"] = nullptr;
  }
  criteria["refuter"] = std::move(refuter);
  j["criteria"] = std::move(criteria);

  j["verdict"] = to_string(r.verdict);
  j["consistent"] = r.consistent;
  if (!r.consistent) j["inconsistency"] = r.inconsistency;
  return j;
}

}  // namespace homcheck

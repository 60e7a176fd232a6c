// Build a map by its action, then run the detectors on it.
#include <cstdio>

#include "homcheck/homcheck.hpp"

using namespace homcheck;

int main() {
  const Algebra c2({1, 1});
  const Algebra m2({2});

  // (a1, a2) -> diag(a1, a2)
  const LinMap embed = LinMap::from_function(c2, m2, [&](const Element& a) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = a.block(0)(0, 0);
    d(1, 1) = a.block(1)(0, 0);
    return Element(m2, {d});
  });

  // a -> tr(a)/2 * 1
  const LinMap depolarize = LinMap::from_function(m2, m2, [&](const Element& a) {
    return (trace(a) / 2.0) * Element::identity(m2);
  });

  for (const LinMap* phi : {&embed, &depolarize}) {
    const AnalysisReport r = analyze(*phi);
    std::printf("%s -> %s: mult %s, projection %s, gap %s => %s\n",
                phi->domain().to_string().c_str(), phi->codomain().to_string().c_str(),
                format_defect(r.detectors->mult.value()).c_str(),
                format_defect(r.detectors->projection_defect).c_str(),
                format_defect(r.detectors->entropy.gap).c_str(), to_string(r.verdict));
  }
}

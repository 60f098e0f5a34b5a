#include "pseig/exclusion.hpp"

#include <algorithm>
#include <string>

#include "pseig/kernel.hpp"
#include "pseig/solver.hpp"

namespace pseig {

ExclusionDisk safe_disk(const ComplexMatrix& a, Complex z, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("safe_disk: epsilon must be >= 0");
  const double sigma = sigma_min(shift(a, z));
  const double radius = sigma - epsilon;
  if (radius <= 0.0)
    throw InsideLevelSetError("safe_disk: point lies inside the epsilon level set");
  return {z, radius, DiskKind::safe, epsilon, "point"};
}

ExclusionDisk heuristic_disk(const ComplexMatrix& a, Complex z, double pss_cap,
                             double gap_rel_min) {
  const PssEval e = pss_at(a, z, gap_rel_min);
  if (e.degenerate)
    throw DegeneratePointError("heuristic_disk: gap test failed at this point");
  const double radius = e.sigma_min() * std::min(e.pss, pss_cap);
  if (radius <= 0.0)
    throw InsideLevelSetError("heuristic_disk: zero radius at an eigenvalue");
  return {z, radius, DiskKind::heuristic, 0.0, "point"};
}

bool covers(const ExclusionSet& set, Complex p) {
  return std::any_of(set.disks.begin(), set.disks.end(),
                     [p](const ExclusionDisk& d) { return d.contains(p); });
}

ExclusionSet from_trace(const SolveResult& result) {
  ExclusionSet set;
  set.matrix_id = result.matrix_id;
  for (size_t i = 0; i < result.trace.size(); ++i) {
    const IterationRecord& r = result.trace[i];
    if (r.sigma_min <= 0.0) continue;
    const std::string src = std::to_string(i);
    set.disks.push_back({r.z, r.sigma_min, DiskKind::safe, 0.0, src});
    // step_size is already sigma_min * min(pss, cap).
    if (r.step_size > 0.0)
      set.disks.push_back({r.z, r.step_size, DiskKind::heuristic, 0.0, src});
  }
  return set;
}

}  // namespace pseig

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pseig/types.hpp"

namespace pseig {

struct SolveResult;

enum class DiskKind { safe, heuristic };

// An open disk known (safe) or claimed (heuristic) to be free of the
// epsilon-pseudospectrum. Safe radii are sigma_min(center) - epsilon;
// heuristic radii scale that by the sensitivity and are reported data,
// never trusted by the solver.
struct ExclusionDisk {
  Complex center;
  double radius = 0.0;
  DiskKind kind = DiskKind::safe;
  double epsilon = 0.0;
  std::string source = "point";  // iterate index or "grid"/"point"

  bool contains(Complex p) const { return std::abs(p - center) < radius; }
};

struct ExclusionSet {
  std::vector<ExclusionDisk> disks;
  std::uint64_t matrix_id = 0;
};

// Disk of radius sigma_min(shift(a,z)) - epsilon about z. Throws
// InsideLevelSetError when that radius would be <= 0.
ExclusionDisk safe_disk(const ComplexMatrix& a, Complex z, double epsilon = 0.0);

// Disk of radius sigma_min * min(pss, pss_cap). Throws DegeneratePointError
// when the gap test fails at z.
ExclusionDisk heuristic_disk(const ComplexMatrix& a, Complex z,
                             double pss_cap = 1e6,
                             double gap_rel_min = 1e-10);

// True if p lies strictly inside any disk of the set.
bool covers(const ExclusionSet& set, Complex p);

// One safe and one heuristic disk per solver iterate with sigma_min > 0.
ExclusionSet from_trace(const SolveResult& result);

}  // namespace pseig

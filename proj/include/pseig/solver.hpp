#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pseig/exclusion.hpp"
#include "pseig/kernel.hpp"
#include "pseig/types.hpp"

namespace pseig {

struct SolverConfig {
  // Stop when sigma_min <= tol_sigma * ||A||_F.
  double tol_sigma = 1e-15;
  // Budget of accepted descent steps.
  int max_iter = 100;
  // Degeneracy threshold on (sigma_{n-1} - sigma_n) / sigma_1.
  double gap_rel_min = 1e-10;
  // Step uses min(pss, pss_cap); guards the blow-up near sigma ties.
  double pss_cap = 1e6;
  // Stop at the first increase of sigma_min (the paper-style exit).
  bool stop_on_increase = true;
  // Experimental: instead of stopping at an increase, retreat and halve the
  // step (up to max_halvings in total). Off by default.
  bool halve_on_increase = false;
  int max_halvings = 40;
};

// Sensitivity evaluation at a point: pss = 1 / |v^H u| for the minimum
// singular triplet of shift(A, z). `degenerate` is set when the relative gap
// is below the threshold, in which case the value is not trustworthy.
struct PssEval {
  double pss = 0.0;
  SingularTriplet triplet;
  double gap = 0.0;
  double sigma1 = 0.0;
  bool degenerate = false;

  double sigma_min() const { return triplet.sigma; }
};

PssEval pss_at(const ComplexMatrix& a, Complex z, double gap_rel_min = 1e-10,
               SvdMethod method = SvdMethod::precise);

// Gradient of g(x,y) = sigma_min(shift(A, x+iy)) as the complex number
// g_x + i*g_y = v^H u. Its magnitude is 1/pss. Throws DegeneratePointError on
// a failed gap test and AtEigenvalueError where sigma_min vanishes.
Complex gradient_at(const ComplexMatrix& a, Complex z,
                    double gap_rel_min = 1e-10);

struct IterationRecord {
  Complex z;
  double sigma_min = 0.0;
  double gap = 0.0;
  double pss = 0.0;
  Complex direction;       // unit step direction v^H u / |v^H u|
  double step_size = 0.0;  // sigma_min * min(pss, pss_cap) for sdeig
  bool capped = false;     // pss exceeded pss_cap
};

enum class SolveStatus { converged_tol, stopped_on_increase, max_iter, degenerate_point };

const char* to_string(SolveStatus s);

struct SolveResult {
  Complex eigenvalue_estimate;   // trace point with minimal sigma_min
  double final_sigma = 0.0;
  SolveStatus status = SolveStatus::max_iter;
  std::vector<IterationRecord> trace;
  std::vector<ExclusionDisk> disks;
  std::uint64_t matrix_id = 0;
  int evaluations = 0;  // total sigma_min evaluations spent

  // Accepted descent steps to the best iterate (index of the minimum
  // sigma_min in the trace).
  int iterations() const;
};

// Steepest descent on sigma_min(shift(A, z)) with step sigma_min * pss.
SolveResult sdeig(const ComplexMatrix& a, Complex z0,
                  const SolverConfig& config = {});

// One two-sided inverse-iteration update of the O'Leary-Stewart Rayleigh
// quotient variant: v <- (A - tau I)^{-1} v, w <- (A - tau I)^{-H} w, both
// renormalized, and tau <- w^H A v / w^H v.
struct OsIterate {
  ComplexVector v;
  ComplexVector w;
  Complex tau;
};

OsIterate os_step(const ComplexMatrix& a, const ComplexVector& v,
                  const ComplexVector& w, Complex tau);

// Iterates os_step from the minimum singular triplet at z0, with
// sigma_min(shift(A, tau)) as the convergence functional and the same
// stopping rules as sdeig. Trace step/direction fields describe the tau
// moves.
SolveResult os_solve(const ComplexMatrix& a, Complex z0,
                     const SolverConfig& config = {});

}  // namespace pseig

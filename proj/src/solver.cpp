#include "pseig/solver.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

namespace pseig {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged_tol: return "converged_tol";
    case SolveStatus::stopped_on_increase: return "stopped_on_increase";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::degenerate_point: return "degenerate_point";
  }
  return "?";
}

PssEval pss_at(const ComplexMatrix& a, Complex z, double gap_rel_min,
               SvdMethod method) {
  const SvdDecomposition d = svd_full(shift(a, z), method);
  PssEval e;
  e.triplet = d.min_triplet();
  e.gap = d.min_gap();
  e.sigma1 = d.sigma(0);
  const Complex vhu = Complex(e.triplet.v.adjoint() * e.triplet.u);
  const double overlap = std::abs(vhu);
  e.pss = overlap > 0.0 ? 1.0 / overlap : std::numeric_limits<double>::infinity();
  if (d.order() > 1) {
    const double rel_gap = e.sigma1 > 0.0 ? e.gap / e.sigma1 : 0.0;
    e.degenerate = rel_gap < gap_rel_min;
  }
  return e;
}

Complex gradient_at(const ComplexMatrix& a, Complex z, double gap_rel_min) {
  const PssEval e = pss_at(a, z, gap_rel_min);
  if (e.degenerate)
    throw DegeneratePointError("gradient_at: sigma_min not simple at this point");
  if (e.sigma_min() <= 1e-15 * a.norm())
    throw AtEigenvalueError("gradient_at: sigma_min vanishes, gradient undefined");
  return Complex(e.triplet.v.adjoint() * e.triplet.u);
}

int SolveResult::iterations() const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(trace.size()); ++i)
    if (trace[i].sigma_min < trace[best].sigma_min) best = i;
  return best;
}

namespace {

IterationRecord make_record(Complex z, const PssEval& e, double pss_cap) {
  IterationRecord r;
  r.z = z;
  r.sigma_min = e.sigma_min();
  r.gap = e.gap;
  r.pss = e.pss;
  r.capped = e.pss > pss_cap;
  const Complex vhu = Complex(e.triplet.v.adjoint() * e.triplet.u);
  const double mag = std::abs(vhu);
  r.direction = mag > 0.0 ? vhu / mag : Complex(1.0, 0.0);
  r.step_size = r.sigma_min * std::min(e.pss, pss_cap);
  return r;
}

void finish(SolveResult& res, SolveStatus status) {
  res.status = status;
  const int best = res.iterations();
  res.eigenvalue_estimate = res.trace[best].z;
  res.final_sigma = res.trace[best].sigma_min;
  res.disks = from_trace(res).disks;
}

}  // namespace

SolveResult sdeig(const ComplexMatrix& a, Complex z0, const SolverConfig& config) {
  require_square(a, "sdeig");
  require_finite(a, "sdeig");
  require_finite(z0, "sdeig");

  const double norm_f = a.norm();
  const double tol = config.tol_sigma * norm_f;

  SolveResult res;
  res.matrix_id = matrix_hash(a);

  Complex z = z0;
  PssEval cur = pss_at(a, z, config.gap_rel_min);
  res.evaluations = 1;

  // Degenerate start: hop off the (measure-zero) tie locus once, then give up.
  if (cur.degenerate && cur.sigma_min() > tol) {
    z += 1e-8 * (1.0 + std::abs(z0));
    cur = pss_at(a, z, config.gap_rel_min);
    ++res.evaluations;
    if (cur.degenerate) {
      res.trace.push_back(make_record(z, cur, config.pss_cap));
      finish(res, SolveStatus::degenerate_point);
      return res;
    }
  }
  res.trace.push_back(make_record(z, cur, config.pss_cap));

  // The gradient sign convention is re-derived once per solve: probe both
  // orientations with a small step and keep the descending one.
  double sign = 0.0;

  int halvings = 0;
  double scale = 1.0;
  int accepted = 0;
  SolveStatus status = SolveStatus::max_iter;
  while (true) {
    if (cur.sigma_min() <= tol) {
      status = SolveStatus::converged_tol;
      break;
    }
    if (cur.degenerate) {
      status = SolveStatus::degenerate_point;
      break;
    }
    if (accepted >= config.max_iter) {
      status = SolveStatus::max_iter;
      break;
    }

    const IterationRecord& rec = res.trace.back();
    if (sign == 0.0) {
      const double h = rec.step_size * 1e-3;
      const double fwd = sigma_min(shift(a, z - h * rec.direction));
      const double bwd = sigma_min(shift(a, z + h * rec.direction));
      res.evaluations += 2;
      sign = fwd <= bwd ? 1.0 : -1.0;
    }

    const Complex zn = z - sign * scale * rec.step_size * rec.direction;
    PssEval next = pss_at(a, zn, config.gap_rel_min);
    ++res.evaluations;

    if (next.sigma_min() > cur.sigma_min()) {
      if (config.halve_on_increase && ++halvings <= config.max_halvings) {
        scale *= 0.5;
        continue;
      }
      if (config.stop_on_increase) {
        res.trace.push_back(make_record(zn, next, config.pss_cap));
        status = SolveStatus::stopped_on_increase;
        break;
      }
    }
    scale = 1.0;
    z = zn;
    cur = next;
    ++accepted;
    res.trace.push_back(make_record(z, cur, config.pss_cap));
  }

  finish(res, status);
  return res;
}

OsIterate os_step(const ComplexMatrix& a, const ComplexVector& v,
                  const ComplexVector& w, Complex tau) {
  require_square(a, "os_step");
  if (v.size() != a.rows() || w.size() != a.rows())
    throw std::invalid_argument("os_step: vector size mismatch");
  if (v.norm() == 0.0 || w.norm() == 0.0)
    throw std::invalid_argument("os_step: zero vector");

  ComplexMatrix m = a;
  m.diagonal().array() -= tau;
  Eigen::PartialPivLU<ComplexMatrix> lu(m);

  ComplexVector vn = lu.solve(v);
  ComplexVector wn = lu.adjoint().solve(w);
  if (!vn.allFinite() || !wn.allFinite())
    throw AtEigenvalueError("os_step: shift is an eigenvalue to working precision");
  vn.normalize();
  wn.normalize();

  const Complex denom = Complex(wn.adjoint() * vn);
  if (std::abs(denom) < 1e-14)
    throw DegeneratePointError("os_step: w^H v breakdown");
  const Complex num = Complex(wn.adjoint() * (a * vn));
  return {vn, wn, num / denom};
}

SolveResult os_solve(const ComplexMatrix& a, Complex z0,
                     const SolverConfig& config) {
  require_square(a, "os_solve");
  require_finite(a, "os_solve");
  require_finite(z0, "os_solve");

  const double norm_f = a.norm();
  const double tol = config.tol_sigma * norm_f;

  SolveResult res;
  res.matrix_id = matrix_hash(a);

  Complex tau = z0;
  PssEval cur = pss_at(a, tau, config.gap_rel_min);
  res.evaluations = 1;
  // Singular vectors at z0 seed the eigenvector approximations.
  ComplexVector v = cur.triplet.v;
  ComplexVector w = cur.triplet.u;

  auto record_tau_move = [&](IterationRecord rec, Complex from, Complex to) {
    const Complex move = to - from;
    const double mag = std::abs(move);
    rec.step_size = mag;
    rec.direction = mag > 0.0 ? move / mag : Complex(1.0, 0.0);
    rec.capped = false;
    return rec;
  };

  res.trace.push_back(make_record(tau, cur, config.pss_cap));
  int accepted = 0;
  SolveStatus status = SolveStatus::max_iter;
  while (true) {
    if (cur.sigma_min() <= tol) {
      status = SolveStatus::converged_tol;
      break;
    }
    if (accepted >= config.max_iter) {
      status = SolveStatus::max_iter;
      break;
    }
    OsIterate nextit;
    try {
      nextit = os_step(a, v, w, tau);
    } catch (const AtEigenvalueError&) {
      // Singular shift: tau is already an eigenvalue to working precision.
      status = SolveStatus::converged_tol;
      break;
    } catch (const DegeneratePointError&) {
      status = SolveStatus::degenerate_point;
      break;
    }
    PssEval next = pss_at(a, nextit.tau, config.gap_rel_min);
    ++res.evaluations;
    if (next.sigma_min() > cur.sigma_min() && config.stop_on_increase &&
        !config.halve_on_increase) {
      res.trace.push_back(record_tau_move(make_record(nextit.tau, next, config.pss_cap),
                                          tau, nextit.tau));
      status = SolveStatus::stopped_on_increase;
      break;
    }
    res.trace.push_back(record_tau_move(make_record(nextit.tau, next, config.pss_cap),
                                        tau, nextit.tau));
    tau = nextit.tau;
    v = nextit.v;
    w = nextit.w;
    cur = next;
    ++accepted;
  }

  finish(res, status);
  return res;
}

}  // namespace pseig

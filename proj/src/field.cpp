#include "pseig/field.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "pseig/solver.hpp"

namespace pseig {

void GridSpec::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max))
    throw std::invalid_argument("grid: box must have positive extent");
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid: need nx, ny >= 2");
}

const char* to_string(FieldQuantity q) {
  switch (q) {
    case FieldQuantity::sigma_min: return "sigma_min";
    case FieldQuantity::pss: return "pss";
    case FieldQuantity::hessian_det: return "hessian_det";
  }
  return "?";
}

GridSpec gershgorin_box(const ComplexMatrix& a, int nx, int ny,
                        double pad_fraction, double pad_absolute) {
  require_square(a, "gershgorin_box");
  double x_lo = std::numeric_limits<double>::max(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double radius = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) radius += std::abs(a(i, j));
    const Complex c = a(i, i);
    x_lo = std::min(x_lo, c.real() - radius);
    x_hi = std::max(x_hi, c.real() + radius);
    y_lo = std::min(y_lo, c.imag() - radius);
    y_hi = std::max(y_hi, c.imag() + radius);
  }
  const double side = std::max(x_hi - x_lo, y_hi - y_lo);
  const double pad = std::max(pad_fraction * std::max(side, 1e-6), pad_absolute);
  GridSpec g{x_lo - pad, x_hi + pad, y_lo - pad, y_hi + pad, nx, ny};
  g.validate();
  return g;
}

HessianWorkspace hessian_at(const ComplexMatrix& a, Complex z,
                            double gap_rel_min, SvdMethod method) {
  const SvdDecomposition d = svd_full(shift(a, z), method);
  const Eigen::Index n = d.order();
  const double sn = d.sigma(n - 1);
  if (sn <= 0.0)
    throw AtEigenvalueError("hessian_at: sigma_min vanishes");
  if (n > 1) {
    const double rel_gap = d.sigma(0) > 0.0 ? d.min_gap() / d.sigma(0) : 0.0;
    if (rel_gap < gap_rel_min)
      throw DegeneratePointError("hessian_at: sigma_min not simple");
  }

  HessianWorkspace w;
  const ComplexVector un = d.U.col(n - 1);
  const ComplexVector vn = d.V.col(n - 1);
  w.Phi.resize(n - 1);
  w.Psi.resize(n - 1);
  w.r = d.U.leftCols(n - 1).adjoint() * vn;
  w.l = d.V.leftCols(n - 1).adjoint() * un;
  Complex r_phi_r = 0.0, l_phi_l = 0.0, l_psi_r = 0.0;
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    const double denom = sn * sn - d.sigma(i) * d.sigma(i);
    w.Phi(i) = sn / denom;
    w.Psi(i) = d.sigma(i) / denom;
    r_phi_r += std::conj(w.r(i)) * w.Phi(i) * w.r(i);
    l_phi_l += std::conj(w.l(i)) * w.Phi(i) * w.l(i);
    l_psi_r += std::conj(w.l(i)) * w.Psi(i) * w.r(i);
  }
  const Complex uhv = Complex(un.adjoint() * vn);
  w.g_xx = std::real(r_phi_r + l_phi_l + 2.0 * l_psi_r) +
           std::imag(uhv) * std::imag(uhv) / sn;
  w.g_xy = -std::imag(2.0 * l_psi_r) + std::imag(uhv) * std::real(uhv) / sn;
  w.g_yy = std::real(r_phi_r + l_phi_l - 2.0 * l_psi_r) +
           std::real(uhv) * std::real(uhv) / sn;
  return w;
}

ScalarField eval_field(const ComplexMatrix& a, const GridSpec& grid,
                       FieldQuantity quantity, double gap_rel_min,
                       SvdMethod method) {
  require_square(a, "eval_field");
  require_finite(a, "eval_field");
  grid.validate();

  ScalarField f;
  f.grid = grid;
  f.quantity = quantity;
  f.values.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
  f.masked.assign(grid.size(), false);

  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Complex z = grid.node(i, j);
      const int idx = grid.index(i, j);
      switch (quantity) {
        case FieldQuantity::sigma_min:
          f.values[idx] = sigma_min(shift(a, z), method);
          break;
        case FieldQuantity::pss: {
          const PssEval e = pss_at(a, z, gap_rel_min, method);
          if (e.degenerate) {
            f.masked[idx] = true;
          } else {
            f.values[idx] = e.pss;
          }
          break;
        }
        case FieldQuantity::hessian_det: {
          try {
            f.values[idx] = hessian_at(a, z, gap_rel_min, method).det();
          } catch (const DegeneratePointError&) {
            f.masked[idx] = true;
          } catch (const AtEigenvalueError&) {
            f.masked[idx] = true;
          }
          break;
        }
      }
    }
  }
  return f;
}

AreaCurve area_curve(const ScalarField& sigma_field,
                     const std::vector<double>& epsilons) {
  if (sigma_field.quantity != FieldQuantity::sigma_min)
    throw std::invalid_argument("area_curve: needs a sigma_min field");
  for (size_t i = 0; i + 1 < epsilons.size(); ++i)
    if (!(epsilons[i] < epsilons[i + 1]))
      throw std::invalid_argument("area_curve: epsilons must be increasing");
  if (!epsilons.empty() && epsilons.front() <= 0.0)
    throw std::invalid_argument("area_curve: epsilons must be positive");

  const GridSpec& g = sigma_field.grid;
  AreaCurve curve;
  curve.grid = g;
  curve.epsilons = epsilons;
  curve.areas.reserve(epsilons.size());
  const double cell = g.cell_area();
  for (double eps : epsilons) {
    long count = 0;
    for (double v : sigma_field.values)
      if (v <= eps) ++count;
    curve.areas.push_back(static_cast<double>(count) * cell);
  }
  if (!epsilons.empty()) {
    const double top = epsilons.back();
    for (int i = 0; i < g.nx && !curve.grid_too_small; ++i)
      if (sigma_field.at(i, 0) <= top || sigma_field.at(i, g.ny - 1) <= top)
        curve.grid_too_small = true;
    for (int j = 0; j < g.ny && !curve.grid_too_small; ++j)
      if (sigma_field.at(0, j) <= top || sigma_field.at(g.nx - 1, j) <= top)
        curve.grid_too_small = true;
  }
  return curve;
}

AreaCurve area_curve(const ComplexMatrix& a, const GridSpec& grid,
                     const std::vector<double>& epsilons, SvdMethod method) {
  const ScalarField f = eval_field(a, grid, FieldQuantity::sigma_min, 1e-10, method);
  return area_curve(f, epsilons);
}

namespace {

struct Crossing {
  Complex point;
  double pss = 0.0;
};

// Linear interpolation of the sigma = eps crossing on an edge.
Complex edge_crossing(Complex p0, Complex p1, double s0, double s1, double eps) {
  const double t = (eps - s0) / (s1 - s0);
  return p0 + t * (p1 - p0);
}

}  // namespace

double level_set_pss_integral(const ComplexMatrix& a,
                              const ScalarField& sigma_field, double eps,
                              SvdMethod method) {
  if (sigma_field.quantity != FieldQuantity::sigma_min)
    throw std::invalid_argument("level_set_pss_integral: needs a sigma_min field");
  const GridSpec& g = sigma_field.grid;

  auto inside = [&](int i, int j) { return sigma_field.at(i, j) <= eps; };

  // Crossings on horizontal and vertical edges, computed once per edge.
  // hcross[j*(nx-1)+i] is the edge (i,j)-(i+1,j); vcross[j*nx+i] is
  // (i,j)-(i,j+1). Index -1 means no crossing.
  std::vector<int> hcross(static_cast<size_t>(g.ny) * (g.nx - 1), -1);
  std::vector<int> vcross(static_cast<size_t>(g.nx) * (g.ny - 1), -1);
  std::vector<Crossing> crossings;

  auto add_crossing = [&](Complex p0, Complex p1, double s0, double s1) {
    Crossing c;
    c.point = edge_crossing(p0, p1, s0, s1, eps);
    const PssEval e = pss_at(a, c.point, 1e-10, method);
    c.pss = e.degenerate ? std::numeric_limits<double>::quiet_NaN() : e.pss;
    crossings.push_back(c);
    return static_cast<int>(crossings.size()) - 1;
  };

  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i)
      if (inside(i, j) != inside(i + 1, j))
        hcross[static_cast<size_t>(j) * (g.nx - 1) + i] =
            add_crossing(g.node(i, j), g.node(i + 1, j), sigma_field.at(i, j),
                         sigma_field.at(i + 1, j));
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (inside(i, j) != inside(i, j + 1))
        vcross[static_cast<size_t>(j) * g.nx + i] =
            add_crossing(g.node(i, j), g.node(i, j + 1), sigma_field.at(i, j),
                         sigma_field.at(i, j + 1));

  double integral = 0.0;
  for (int j = 0; j + 1 < g.ny; ++j) {
    for (int i = 0; i + 1 < g.nx; ++i) {
      int ids[4];
      int count = 0;
      const int bottom = hcross[static_cast<size_t>(j) * (g.nx - 1) + i];
      const int top = hcross[static_cast<size_t>(j + 1) * (g.nx - 1) + i];
      const int left = vcross[static_cast<size_t>(j) * g.nx + i];
      const int right = vcross[static_cast<size_t>(j) * g.nx + i + 1];
      for (int id : {bottom, right, top, left})
        if (id >= 0) ids[count++] = id;
      if (count == 0) continue;

      auto segment = [&](int u, int w) {
        const Crossing& cu = crossings[u];
        const Crossing& cw = crossings[w];
        if (std::isnan(cu.pss) || std::isnan(cw.pss)) return;
        integral += std::abs(cw.point - cu.point) * 0.5 * (cu.pss + cw.pss);
      };

      if (count == 2) {
        segment(ids[0], ids[1]);
      } else if (count == 4) {
        // Saddle cell: resolve by the corner average, the marching-squares
        // midpoint rule.
        const double avg = 0.25 * (sigma_field.at(i, j) + sigma_field.at(i + 1, j) +
                                   sigma_field.at(i, j + 1) + sigma_field.at(i + 1, j + 1));
        const bool corner = inside(i, j);
        // ids order is bottom, right, top, left here (all present).
        if ((avg <= eps) == corner) {
          segment(bottom, right);
          segment(top, left);
        } else {
          segment(bottom, left);
          segment(top, right);
        }
      }
      // Odd counts only occur when a node sits exactly on the level; the
      // neighbouring cells still account for the curve to grid accuracy.
    }
  }
  return integral;
}

MaxPrincipleReport maximum_principle_check(const ScalarField& field, double tol) {
  const GridSpec& g = field.grid;
  if (tol < 0.0) {
    double scale = 0.0;
    for (size_t k = 0; k < field.values.size(); ++k)
      if (!field.masked[k] && std::isfinite(field.values[k]))
        scale = std::max(scale, std::abs(field.values[k]));
    tol = 1e-9 * std::max(1.0, scale);
  }

  MaxPrincipleReport report;
  std::vector<int> component(g.size(), -1);
  auto usable = [&](int i, int j) {
    return !field.is_masked(i, j) && std::isfinite(field.at(i, j));
  };

  for (int j0 = 0; j0 < g.ny; ++j0) {
    for (int i0 = 0; i0 < g.nx; ++i0) {
      if (!usable(i0, j0) || component[g.index(i0, j0)] >= 0) continue;
      const int comp = report.components++;
      std::deque<std::pair<int, int>> queue{{i0, j0}};
      component[g.index(i0, j0)] = comp;
      std::vector<std::pair<int, int>> nodes;
      while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        nodes.emplace_back(i, j);
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int ni = i + di[d], nj = j + dj[d];
          if (ni < 0 || nj < 0 || ni >= g.nx || nj >= g.ny) continue;
          if (!usable(ni, nj) || component[g.index(ni, nj)] >= 0) continue;
          component[g.index(ni, nj)] = comp;
          queue.emplace_back(ni, nj);
        }
      }
      // Boundary of the component: grid border or next to a masked node.
      double boundary_max = -std::numeric_limits<double>::infinity();
      std::vector<std::pair<int, int>> interior;
      for (auto [i, j] : nodes) {
        bool on_boundary = (i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1);
        if (!on_boundary) {
          const int di[4] = {1, -1, 0, 0};
          const int dj[4] = {0, 0, 1, -1};
          for (int d = 0; d < 4 && !on_boundary; ++d)
            if (!usable(i + di[d], j + dj[d])) on_boundary = true;
        }
        if (on_boundary)
          boundary_max = std::max(boundary_max, field.at(i, j));
        else
          interior.emplace_back(i, j);
      }
      report.interior_nodes += static_cast<int>(interior.size());
      for (auto [i, j] : interior)
        if (field.at(i, j) > boundary_max + tol)
          report.violations.push_back({i, j, field.at(i, j), boundary_max});
    }
  }
  return report;
}

}  // namespace pseig

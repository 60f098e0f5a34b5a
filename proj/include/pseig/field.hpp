#pragma once

#include <vector>

#include "pseig/kernel.hpp"
#include "pseig/types.hpp"

namespace pseig {

// Rectangular grid with nodes at the nx*ny points of a closed box,
// endpoints included.
struct GridSpec {
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;
  int nx = 2, ny = 2;

  void validate() const;
  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dy() const { return (y_max - y_min) / (ny - 1); }
  double cell_area() const { return dx() * dy(); }
  double x(int i) const { return x_min + i * dx(); }
  double y(int j) const { return y_min + j * dy(); }
  Complex node(int i, int j) const { return {x(i), y(j)}; }
  int size() const { return nx * ny; }
  int index(int i, int j) const { return j * nx + i; }
};

enum class FieldQuantity { sigma_min, pss, hessian_det };

const char* to_string(FieldQuantity q);

// Grid samples of one scalar quantity of z. Nodes where the quantity is
// undefined (degenerate gap, or sigma_min = 0 for curvature) are masked,
// never interpolated.
struct ScalarField {
  GridSpec grid;
  FieldQuantity quantity = FieldQuantity::sigma_min;
  std::vector<double> values;  // row-major over y rows, index = j*nx + i
  std::vector<bool> masked;

  double at(int i, int j) const { return values[grid.index(i, j)]; }
  bool is_masked(int i, int j) const { return masked[grid.index(i, j)]; }
};

// Second-order data of sigma_min at a point: the diagonal weights and
// projection vectors of the perturbation expansion plus the assembled
// second partials.
struct HessianWorkspace {
  RealVector Phi;  // sigma_n (sigma_n^2 I - Sigma~^2)^{-1}, diagonal
  RealVector Psi;  // Sigma~ (sigma_n^2 I - Sigma~^2)^{-1}, diagonal
  ComplexVector r;  // U~^H v_n
  ComplexVector l;  // V~^H u_n
  double g_xx = 0.0;
  double g_xy = 0.0;
  double g_yy = 0.0;

  double det() const { return g_xx * g_yy - g_xy * g_xy; }
  double trace() const { return g_xx + g_yy; }
};

// Pseudospectrum area as a function of epsilon, measured by counting grid
// nodes with sigma_min <= epsilon.
struct AreaCurve {
  GridSpec grid;
  std::vector<double> epsilons;
  std::vector<double> areas;
  // Set when some boundary node has sigma_min <= max epsilon, i.e. the grid
  // may clip the level set.
  bool grid_too_small = false;
};

struct MaxPrincipleViolation {
  int i = 0, j = 0;
  double value = 0.0;
  double boundary_max = 0.0;
};

struct MaxPrincipleReport {
  int components = 0;
  int interior_nodes = 0;
  std::vector<MaxPrincipleViolation> violations;
};

// Union of Gershgorin row disks, padded by `pad_fraction` of the larger box
// side (at least `pad_absolute`).
GridSpec gershgorin_box(const ComplexMatrix& a, int nx, int ny,
                        double pad_fraction = 0.1, double pad_absolute = 0.0);

ScalarField eval_field(const ComplexMatrix& a, const GridSpec& grid,
                       FieldQuantity quantity,
                       double gap_rel_min = 1e-10,
                       SvdMethod method = SvdMethod::fast);

// Second partials of sigma_min at z. Requires a simple, nonzero sigma_min.
HessianWorkspace hessian_at(const ComplexMatrix& a, Complex z,
                            double gap_rel_min = 1e-10,
                            SvdMethod method = SvdMethod::precise);

AreaCurve area_curve(const ComplexMatrix& a, const GridSpec& grid,
                     const std::vector<double>& epsilons,
                     SvdMethod method = SvdMethod::fast);

// Same, reusing an existing sigma_min field.
AreaCurve area_curve(const ScalarField& sigma_field,
                     const std::vector<double>& epsilons);

// Contour integral of pss over the sigma_min = eps level curve, estimated by
// linear edge-crossing interpolation on the grid cells of a sigma_min field.
// This is the area-derivative estimator dual to node counting.
double level_set_pss_integral(const ComplexMatrix& a,
                              const ScalarField& sigma_field, double eps,
                              SvdMethod method = SvdMethod::fast);

// Reports unmasked interior nodes whose value exceeds the maximum over their
// connected component's boundary by more than tol. tol < 0 selects a default
// proportional to the field scale.
MaxPrincipleReport maximum_principle_check(const ScalarField& field,
                                           double tol = -1.0);

}  // namespace pseig

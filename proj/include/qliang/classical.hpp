#pragma once

#include <functional>

#include "qliang/core.hpp"

namespace qliang {

struct Box2D {
  double x1_min = -1.0, x1_max = 1.0;
  double x2_min = -1.0, x2_max = 1.0;
};

/// Autonomous 2-D vector field on a box. Partial derivatives may be given
/// analytically; otherwise they are taken by central finite difference.
struct VectorField2D {
  std::function<double(double, double)> f1;
  std::function<double(double, double)> f2;
  Box2D domain;
  std::function<double(double, double)> d_f1_d_x1;  // optional
  std::function<double(double, double)> d_f2_d_x2;  // optional
};

/// Cell-centered nonnegative density on a uniform grid, integrating to 1.
struct DensityGrid {
  Box2D domain;
  int n1 = 0, n2 = 0;
  Eigen::MatrixXd values;  // n1 x n2

  double dx1() const { return (domain.x1_max - domain.x1_min) / n1; }
  double dx2() const { return (domain.x2_max - domain.x2_min) / n2; }
  double x1_center(int i) const { return domain.x1_min + (i + 0.5) * dx1(); }
  double x2_center(int j) const { return domain.x2_min + (j + 0.5) * dx2(); }
  double mass() const { return values.sum() * dx1() * dx2(); }
};

/// Normalized Gaussian density with covariance [[s11, s12], [s12, s22]].
DensityGrid gaussian_density(const Box2D& domain, int n1, int n2, double mean1, double mean2,
                             double s11, double s12, double s22);

/// First-order upwind finite-volume advection of the continuity equation
/// d rho/dt = -div(rho F) with zero-flux boundaries (mass-conserving,
/// positivity-preserving under the CFL bound max|F| dt/dx < 0.5, enforced).
DensityGrid evolve_density(const DensityGrid& rho, const VectorField2D& field, double dt,
                           int steps);

enum class FlowDirection { X2ToX1, X1ToX2 };

/// Liang bivariate flow rate in bits per unit time:
/// T_{2->1} = -Int rho [ (F1/rho_1) d rho_1/d x1 + d F1/d x1 ],
/// where rho_1 is the grid marginal. Cells where the marginal is below
/// 1e-14 are skipped; requires boundary mass below 1e-6.
double classical_flow_rate(const DensityGrid& rho, const VectorField2D& field,
                           FlowDirection direction = FlowDirection::X2ToX1);

/// Differential entropy of one marginal in bits: -Sum p log2 p * dx over the
/// cell-averaged marginal (grid-constant convention; only differences and
/// rates are meaningful across grids).
double marginal_entropy(const DensityGrid& rho, int axis);

/// Joint differential entropy in bits under the same convention.
double grid_entropy(const DensityGrid& rho);

}  // namespace qliang

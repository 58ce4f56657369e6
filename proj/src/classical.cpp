#include "qliang/classical.hpp"

#include <cmath>
#include <numbers>

namespace qliang {

namespace {

constexpr double kMarginalFloor = 1e-14;
constexpr double kBoundaryMassTol = 1e-6;
constexpr double kDensityFloor = 1e-300;

double boundary_mass(const DensityGrid& rho) {
  double m = 0.0;
  for (int i = 0; i < rho.n1; ++i) {
    m += rho.values(i, 0) + rho.values(i, rho.n2 - 1);
  }
  for (int j = 1; j + 1 < rho.n2; ++j) {
    m += rho.values(0, j) + rho.values(rho.n1 - 1, j);
  }
  return m * rho.dx1() * rho.dx2();
}

double fd_partial(const std::function<double(double, double)>& f, double x, double y,
                  bool along_x1) {
  const double h = 1e-5;
  if (along_x1) return (f(x + h, y) - f(x - h, y)) / (2.0 * h);
  return (f(x, y + h) - f(x, y - h)) / (2.0 * h);
}

}  // namespace

DensityGrid gaussian_density(const Box2D& domain, int n1, int n2, double mean1, double mean2,
                             double s11, double s12, double s22) {
  const double det = s11 * s22 - s12 * s12;
  if (det <= 0.0 || s11 <= 0.0) {
    throw std::invalid_argument("gaussian_density: covariance not positive definite");
  }
  DensityGrid rho{domain, n1, n2, Eigen::MatrixXd::Zero(n1, n2)};
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
  for (int i = 0; i < n1; ++i) {
    const double u = rho.x1_center(i) - mean1;
    for (int j = 0; j < n2; ++j) {
      const double v = rho.x2_center(j) - mean2;
      const double q = (s22 * u * u - 2.0 * s12 * u * v + s11 * v * v) / det;
      rho.values(i, j) = norm * std::exp(-0.5 * q);
    }
  }
  rho.values /= rho.mass();
  return rho;
}

DensityGrid evolve_density(const DensityGrid& rho0, const VectorField2D& field, double dt,
                           int steps) {
  if (dt <= 0.0 || steps < 0) throw std::invalid_argument("evolve_density: bad dt/steps");
  const int n1 = rho0.n1, n2 = rho0.n2;
  const double dx1 = rho0.dx1(), dx2 = rho0.dx2();

  // Face velocities are precomputed once; the field is autonomous.
  Eigen::MatrixXd u_face(n1 + 1, n2);  // F1 at x1-faces
  Eigen::MatrixXd v_face(n1, n2 + 1);  // F2 at x2-faces
  double max_c1 = 0.0, max_c2 = 0.0;
  for (int i = 0; i <= n1; ++i) {
    const double x = rho0.domain.x1_min + i * dx1;
    for (int j = 0; j < n2; ++j) {
      u_face(i, j) = field.f1(x, rho0.x2_center(j));
      max_c1 = std::max(max_c1, std::abs(u_face(i, j)));
    }
  }
  for (int i = 0; i < n1; ++i) {
    const double x = rho0.x1_center(i);
    for (int j = 0; j <= n2; ++j) {
      v_face(i, j) = field.f2(x, rho0.domain.x2_min + j * dx2);
      max_c2 = std::max(max_c2, std::abs(v_face(i, j)));
    }
  }
  if (max_c1 * dt / dx1 >= 0.5 || max_c2 * dt / dx2 >= 0.5) {
    throw std::runtime_error("evolve_density: CFL bound max|F| dt/dx < 0.5 violated");
  }

  DensityGrid rho = rho0;
  Eigen::MatrixXd next(n1, n2);
  Eigen::MatrixXd flux1(n1 + 1, n2);
  Eigen::MatrixXd flux2(n1, n2 + 1);
  for (int step = 0; step < steps; ++step) {
    flux1.setZero();
    flux2.setZero();
    for (int i = 1; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        const double u = u_face(i, j);
        flux1(i, j) = u > 0.0 ? u * rho.values(i - 1, j) : u * rho.values(i, j);
      }
    }
    for (int i = 0; i < n1; ++i) {
      for (int j = 1; j < n2; ++j) {
        const double v = v_face(i, j);
        flux2(i, j) = v > 0.0 ? v * rho.values(i, j - 1) : v * rho.values(i, j);
      }
    }
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        next(i, j) = rho.values(i, j) - dt / dx1 * (flux1(i + 1, j) - flux1(i, j)) -
                     dt / dx2 * (flux2(i, j + 1) - flux2(i, j));
      }
    }
    rho.values.swap(next);
  }
  return rho;
}

double classical_flow_rate(const DensityGrid& rho, const VectorField2D& field,
                           FlowDirection direction) {
  if (boundary_mass(rho) > kBoundaryMassTol) {
    throw std::runtime_error("classical_flow_rate: boundary mass above 1e-6");
  }
  const bool to_x1 = direction == FlowDirection::X2ToX1;
  const int n_along = to_x1 ? rho.n1 : rho.n2;   // axis of the receiving variable
  const int n_other = to_x1 ? rho.n2 : rho.n1;
  const double dxa = to_x1 ? rho.dx1() : rho.dx2();
  const double dxo = to_x1 ? rho.dx2() : rho.dx1();

  auto value = [&](int a, int o) { return to_x1 ? rho.values(a, o) : rho.values(o, a); };
  auto coord_a = [&](int a) { return to_x1 ? rho.x1_center(a) : rho.x2_center(a); };
  auto coord_o = [&](int o) { return to_x1 ? rho.x2_center(o) : rho.x1_center(o); };
  const auto& force = to_x1 ? field.f1 : field.f2;
  const auto& d_force = to_x1 ? field.d_f1_d_x1 : field.d_f2_d_x2;

  // Marginal of the receiving variable and its central-difference gradient.
  Eigen::VectorXd marginal = Eigen::VectorXd::Zero(n_along);
  for (int a = 0; a < n_along; ++a) {
    for (int o = 0; o < n_other; ++o) marginal[a] += value(a, o);
    marginal[a] *= dxo;
  }
  Eigen::VectorXd d_marginal = Eigen::VectorXd::Zero(n_along);
  for (int a = 1; a + 1 < n_along; ++a) {
    d_marginal[a] = (marginal[a + 1] - marginal[a - 1]) / (2.0 * dxa);
  }
  d_marginal[0] = (marginal[1] - marginal[0]) / dxa;
  d_marginal[n_along - 1] = (marginal[n_along - 1] - marginal[n_along - 2]) / dxa;

  double integral = 0.0;
  for (int a = 0; a < n_along; ++a) {
    const double xa = coord_a(a);
    const double quotient = marginal[a] > kMarginalFloor ? d_marginal[a] / marginal[a] : 0.0;
    for (int o = 0; o < n_other; ++o) {
      const double p = value(a, o);
      if (p <= 0.0) continue;
      const double xo = coord_o(o);
      const double x = to_x1 ? xa : xo;
      const double y = to_x1 ? xo : xa;
      const double f = force(x, y);
      const double df = d_force ? d_force(x, y) : fd_partial(force, x, y, to_x1);
      integral += p * (f * quotient + df);
    }
  }
  integral *= dxa * dxo;
  return -integral / std::numbers::ln2;
}

double marginal_entropy(const DensityGrid& rho, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("marginal_entropy: axis must be 1 or 2");
  const bool along_x1 = axis == 1;
  const int n = along_x1 ? rho.n1 : rho.n2;
  const int m = along_x1 ? rho.n2 : rho.n1;
  const double dx = along_x1 ? rho.dx1() : rho.dx2();
  const double dy = along_x1 ? rho.dx2() : rho.dx1();
  double s = 0.0;
  for (int a = 0; a < n; ++a) {
    double p = 0.0;
    for (int o = 0; o < m; ++o) p += along_x1 ? rho.values(a, o) : rho.values(o, a);
    p *= dy;
    if (p > kDensityFloor) s -= p * std::log2(p) * dx;
  }
  return s;
}

double grid_entropy(const DensityGrid& rho) {
  const double da = rho.dx1() * rho.dx2();
  double s = 0.0;
  for (int i = 0; i < rho.n1; ++i) {
    for (int j = 0; j < rho.n2; ++j) {
      const double p = rho.values(i, j);
      if (p > kDensityFloor) s -= p * std::log2(p) * da;
    }
  }
  return s;
}

}  // namespace qliang

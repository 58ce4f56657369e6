#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qliang/classical.hpp"

using namespace qliang;

namespace {

constexpr double kLn2 = std::numbers::ln2;

VectorField2D rotation() {
  VectorField2D f;
  f.f1 = [](double, double y) { return -y; };
  f.f2 = [](double x, double) { return x; };
  f.domain = Box2D{-7, 7, -7, 7};
  return f;
}

VectorField2D damping() {
  VectorField2D f;
  f.f1 = [](double x, double) { return -x; };
  f.f2 = [](double, double y) { return -y; };
  f.domain = Box2D{-7, 7, -7, 7};
  f.d_f1_d_x1 = [](double, double) { return -1.0; };
  f.d_f2_d_x2 = [](double, double) { return -1.0; };
  return f;
}

VectorField2D shear() {
  VectorField2D f;
  f.f1 = [](double x, double) { return -x; };
  f.f2 = [](double x, double y) { return x - y; };
  f.domain = Box2D{-7, 7, -7, 7};
  return f;
}

DensityGrid correlated_gaussian(int n) {
  return gaussian_density(Box2D{-7, 7, -7, 7}, n, n, 0.0, 0.0, 1.0, 0.4, 1.2);
}

}  // namespace

TEST_CASE("gaussian grid basics") {
  const DensityGrid rho = correlated_gaussian(200);
  CHECK(rho.mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.values.minCoeff() >= 0.0);
  CHECK_THROWS_AS(gaussian_density(Box2D{-7, 7, -7, 7}, 32, 32, 0, 0, 1.0, 2.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("marginal entropy closed forms") {
  SUBCASE("standard Gaussian") {
    const DensityGrid rho = gaussian_density(Box2D{-8, 8, -8, 8}, 320, 320, 0, 0, 1.0, 0.0, 1.0);
    const double expected = 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e);
    CHECK(std::abs(marginal_entropy(rho, 1) - expected) < 1e-3);
    CHECK(marginal_entropy(rho, 1) == doctest::Approx(marginal_entropy(rho, 2)).epsilon(1e-12));
  }

  SUBCASE("uniform density marginal") {
    DensityGrid rho{Box2D{0, 4, 0, 4}, 64, 64, Eigen::MatrixXd::Constant(64, 64, 1.0 / 16.0)};
    CHECK(marginal_entropy(rho, 1) == doctest::Approx(2.0).epsilon(1e-12));  // log2(4)
  }

  SUBCASE("axis validation") {
    CHECK_THROWS_AS(marginal_entropy(correlated_gaussian(32), 3), std::invalid_argument);
  }
}

TEST_CASE("finite volume advection") {
  SUBCASE("zero field leaves the density untouched") {
    VectorField2D f;
    f.f1 = [](double, double) { return 0.0; };
    f.f2 = [](double, double) { return 0.0; };
    f.domain = Box2D{-7, 7, -7, 7};
    const DensityGrid rho = correlated_gaussian(100);
    const DensityGrid out = evolve_density(rho, f, 0.01, 20);
    CHECK((out.values - rho.values).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("mass is conserved and positivity preserved") {
    const DensityGrid rho = gaussian_density(Box2D{-7, 7, -7, 7}, 160, 160, 0.5, -0.3, 0.8, 0.0, 1.1);
    const DensityGrid out = evolve_density(rho, rotation(), 0.002, 150);
    CHECK(out.mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(out.values.minCoeff() >= 0.0);
  }

  SUBCASE("CFL violation is rejected") {
    const DensityGrid rho = correlated_gaussian(100);  // dx = 0.14, max|F| = 7
    CHECK_THROWS_AS(evolve_density(rho, rotation(), 0.02, 1), std::runtime_error);
  }

  SUBCASE("rigid rotation keeps the joint entropy nearly constant") {
    const DensityGrid rho = gaussian_density(Box2D{-7, 7, -7, 7}, 240, 240, 0, 0, 0.8, 0.0, 1.3);
    const double s0 = grid_entropy(rho);
    const DensityGrid out = evolve_density(rho, rotation(), 0.002, 100);  // t = 0.2
    CHECK(std::abs(grid_entropy(out) - s0) < 0.02);
  }

  SUBCASE("linear damping contracts entropy at the analytic rate") {
    // exact solution: S(t) = S(0) - 2 t / ln 2 bits
    const DensityGrid rho = gaussian_density(Box2D{-7, 7, -7, 7}, 320, 320, 0, 0, 1.0, 0.0, 1.0);
    const double dt = 0.0015;
    const int steps = 80;
    const DensityGrid out = evolve_density(rho, damping(), dt, steps);
    const double rate = (grid_entropy(out) - grid_entropy(rho)) / (dt * steps);
    CHECK(std::abs(rate - (-2.0 / kLn2)) < 0.15);
  }
}

TEST_CASE("classical flow rate") {
  SUBCASE("nil causality when F1 ignores x2") {
    CHECK(std::abs(classical_flow_rate(correlated_gaussian(400), shear())) < 1e-3);
  }

  SUBCASE("divergence-free correspondence with the analytic Gaussian oracle") {
    // Rotating a correlated Gaussian: dS1/dt = -S12/(S11 ln 2).
    const double analytic = -0.4 / (1.0 * kLn2);
    const double t21 = classical_flow_rate(correlated_gaussian(400), rotation());
    CHECK(std::abs(t21 - analytic) < 1e-3);
  }

  SUBCASE("asymmetry: one direction silent, the other active") {
    const DensityGrid rho = correlated_gaussian(400);
    CHECK(std::abs(classical_flow_rate(rho, shear(), FlowDirection::X2ToX1)) < 1e-3);
    CHECK(classical_flow_rate(rho, shear(), FlowDirection::X1ToX2) > 0.05);
  }

  SUBCASE("boundary mass violation is rejected") {
    const DensityGrid wide = gaussian_density(Box2D{-2, 2, -2, 2}, 64, 64, 0, 0, 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(classical_flow_rate(wide, rotation()), std::runtime_error);
  }
}

TEST_CASE("flow rate matches Monte-Carlo marginal-entropy differencing") {
  // Rotate 10^6 Gaussian samples exactly by +-delta and difference the
  // histogram marginal entropy; common samples keep the noise correlated.
  const double s11 = 1.0, s12 = 0.4, s22 = 1.2;
  const DensityGrid rho = correlated_gaussian(400);
  const double t21 = classical_flow_rate(rho, rotation());

  std::mt19937_64 rng(97);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double chol11 = std::sqrt(s11);
  const double chol21 = s12 / chol11;
  const double chol22 = std::sqrt(s22 - chol21 * chol21);

  const int n_samples = 1'000'000;
  const double delta = 0.05;
  const int bins = 400;
  const double lo = -8.0, hi = 8.0;
  const double bin_w = (hi - lo) / bins;
  std::vector<double> hist_plus(bins, 0.0), hist_minus(bins, 0.0);
  const double c = std::cos(delta), s = std::sin(delta);
  for (int k = 0; k < n_samples; ++k) {
    const double z1 = gauss(rng), z2 = gauss(rng);
    const double x = chol11 * z1;
    const double y = chol21 * z1 + chol22 * z2;
    const double xp = c * x - s * y;  // exact rotation by +delta
    const double xm = c * x + s * y;  // and by -delta
    const int bp = static_cast<int>((xp - lo) / bin_w);
    const int bm = static_cast<int>((xm - lo) / bin_w);
    if (bp >= 0 && bp < bins) hist_plus[bp] += 1.0;
    if (bm >= 0 && bm < bins) hist_minus[bm] += 1.0;
  }
  auto entropy_bits = [&](const std::vector<double>& hist) {
    double s_bits = 0.0;
    for (double count : hist) {
      if (count <= 0.0) continue;
      const double p = count / (n_samples * bin_w);
      s_bits -= p * std::log2(p) * bin_w;
    }
    return s_bits;
  };
  const double mc_rate = (entropy_bits(hist_plus) - entropy_bits(hist_minus)) / (2.0 * delta);
  CHECK(std::abs(t21 - mc_rate) < 5e-3);
}

#include <doctest.h>

#include <cmath>

#include "qliang/presets.hpp"

using namespace qliang;

TEST_CASE("lorentzian discretization") {
  SUBCASE("zero collective strength decouples every mode") {
    const ReservoirSpec res = discretize_lorentzian(1.0, 0.0, 0.0, 64, 12.0);
    CHECK(res.coupling_norm_squared() == 0.0);
  }

  SUBCASE("sum rule approaches the squared Rabi frequency") {
    const ReservoirSpec res = discretize_lorentzian(1.0, 10.0, 0.0, 401, 40.0);
    CHECK(std::abs(res.coupling_norm_squared() - 100.0) / 100.0 < 0.02);
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(discretize_lorentzian(1.0, 10.0, 0.0, 4, 40.0), std::invalid_argument);
    CHECK_THROWS_AS(discretize_lorentzian(1.0, 10.0, 0.0, 64, 5.0), std::invalid_argument);
    // 16 modes over an 80-wide window cannot resolve a unit line width
    CHECK_THROWS_AS(discretize_lorentzian(1.0, 10.0, 0.0, 16, 40.0), std::runtime_error);
    // window must cover the Rabi doublet
    CHECK_THROWS_AS(discretize_lorentzian(1.0, 30.0, 0.0, 801, 40.0), std::runtime_error);
  }

  SUBCASE("doubling the mode count barely changes the qubit population") {
    const BathStudy coarse = default_bath_study(401);
    const BathStudy fine = default_bath_study(802);
    const Propagator pa(sector_hamiltonian(coarse.reservoir, coarse.alpha_a, coarse.alpha_b));
    const Propagator pb(sector_hamiltonian(fine.reservoir, fine.alpha_a, fine.alpha_b));
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double t = 0.2 * k;
      worst = std::max(worst, std::abs(std::norm(evolve_sector(coarse.psi0, pa, t).c_a) -
                                       std::norm(evolve_sector(fine.psi0, pb, t).c_a)));
    }
    CHECK(worst < 1e-3);
  }
}

TEST_CASE("sector Hamiltonian structure") {
  const ReservoirSpec res = discretize_lorentzian(1.0, 2.0, 0.5, 64, 10.0);

  SUBCASE("decoupled B row") {
    const HermitianOperator h = sector_hamiltonian(res, 1.0, 0.0);
    for (int k = 0; k < 64; ++k) {
      CHECK(h.entries(1, k + 2) == Complex(0.0, 0.0));
    }
    CHECK(h.entries(0, 0) == Complex(0.5, 0.0));
  }

  SUBCASE("symmetric couplings give an A<->B symmetric matrix") {
    const HermitianOperator h = sector_hamiltonian(res, 0.6, 0.6);
    for (int k = 0; k < 64; ++k) {
      CHECK(h.entries(0, k + 2) == h.entries(1, k + 2));
    }
  }

  SUBCASE("arrow structure: modes couple only to the qubits") {
    const HermitianOperator h = sector_hamiltonian(res, 0.8, 0.6);
    for (int j = 2; j < 66; ++j) {
      for (int k = 2; k < 66; ++k) {
        if (j != k) CHECK(h.entries(j, k) == Complex(0.0, 0.0));
      }
    }
    CHECK(h.entries(0, 1) == Complex(0.0, 0.0));  // no direct qubit-qubit term
  }

  SUBCASE("ratio normalization") {
    const auto [alpha_a, alpha_b] = normalized_couplings(10.0, 1.0);
    CHECK(alpha_a == doctest::Approx(10.0 / std::sqrt(101.0)).epsilon(1e-15));
    CHECK(alpha_a * alpha_a + alpha_b * alpha_b == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("sector evolution") {
  const BathStudy study = default_bath_study(201);
  const Propagator prop(sector_hamiltonian(study.reservoir, study.alpha_a, study.alpha_b));

  SUBCASE("identity at t=0 and norm conservation") {
    const SingleExcitationState s0 = evolve_sector(study.psi0, prop, 0.0);
    CHECK(s0.c_a == study.psi0.c_a);
    for (double t : {0.4, 1.0, 2.0}) {
      CHECK(std::abs(evolve_sector(study.psi0, prop, t).norm() - 1.0) < 1e-10);
    }
  }

  SUBCASE("decoupled qubit amplitude only rotates in phase") {
    const Propagator decoupled(sector_hamiltonian(study.reservoir, study.alpha_a, 0.0));
    for (double t : {0.5, 1.7}) {
      const SingleExcitationState s = evolve_sector(study.psi0, decoupled, t);
      CHECK(std::abs(std::abs(s.c_b) - std::abs(study.psi0.c_b)) < 1e-12);
    }
  }

  SUBCASE("strong coupling population is non-monotonic (revivals)") {
    double prev = std::norm(study.psi0.c_a);
    bool fell = false, rose_after_fall = false;
    for (int k = 1; k <= 100; ++k) {
      const double p = std::norm(evolve_sector(study.psi0, prop, 0.02 * k).c_a);
      if (p < prev - 1e-3) fell = true;
      if (fell && p > prev + 1e-3) rose_after_fall = true;
      prev = p;
    }
    CHECK(fell);
    CHECK(rose_after_fall);
  }
}

TEST_CASE("bath flow") {
  const TimeGrid grid{2.0, 81};

  SUBCASE("decoupled source gives identically zero flow both ways") {
    const BathStudy study = default_bath_study(201);
    const FlowSeries ba = bath_flow(study.psi0, study.reservoir, study.alpha_a, 0.0, BathQubit::B,
                                    BathQubit::A, grid);
    const FlowSeries ab = bath_flow(study.psi0, study.reservoir, study.alpha_a, 0.0, BathQubit::A,
                                    BathQubit::B, grid);
    CHECK(ba.cumulative.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(ab.cumulative.cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("swap symmetry transposes the directed series") {
    const BathStudy study = default_bath_study(201);
    const FlowSeries ba = bath_flow(study.psi0, study.reservoir, study.alpha_a, study.alpha_b,
                                    BathQubit::B, BathQubit::A, grid);
    SingleExcitationState swapped = study.psi0;
    std::swap(swapped.c_a, swapped.c_b);
    const FlowSeries ab = bath_flow(swapped, study.reservoir, study.alpha_b, study.alpha_a,
                                    BathQubit::A, BathQubit::B, grid);
    CHECK((ba.cumulative - ab.cumulative).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("validation") {
    const BathStudy study = default_bath_study(201);
    CHECK_THROWS_AS(bath_flow(study.psi0, study.reservoir, study.alpha_a, study.alpha_b,
                              BathQubit::A, BathQubit::A, grid),
                    std::invalid_argument);
    SingleExcitationState unnormalized = study.psi0;
    unnormalized.c_a *= 2.0;
    CHECK_THROWS_AS(bath_flow(unnormalized, study.reservoir, study.alpha_a, study.alpha_b,
                              BathQubit::B, BathQubit::A, grid),
                    std::invalid_argument);
    // mode count mismatch between the state and the reservoir
    const BathStudy other = default_bath_study(256);
    CHECK_THROWS_AS(bath_flow(study.psi0, other.reservoir, study.alpha_a, study.alpha_b,
                              BathQubit::B, BathQubit::A, grid),
                    std::invalid_argument);
  }
}

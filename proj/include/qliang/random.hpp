#pragma once

#include <random>

#include "qliang/core.hpp"

namespace qliang {

using Rng = std::mt19937_64;

/// Gaussian complex matrix; building block for the generators below.
Matrix random_complex_matrix(Rng& rng, int dim);

/// (A + A^dagger)/2 of a Gaussian complex matrix.
Matrix random_hermitian(Rng& rng, int dim);

/// Haar-ish random normalized ket.
Vector random_ket(Rng& rng, int dim);

/// Full-rank random density matrix G G^dagger / Tr.
Matrix random_density(Rng& rng, int dim);

}  // namespace qliang

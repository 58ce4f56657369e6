#include "qliang/random.hpp"

namespace qliang {

Matrix random_complex_matrix(Rng& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return m;
}

Matrix random_hermitian(Rng& rng, int dim) {
  const Matrix a = random_complex_matrix(rng, dim);
  return (a + a.adjoint()) / 2.0;
}

Vector random_ket(Rng& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

Matrix random_density(Rng& rng, int dim) {
  const Matrix g = random_complex_matrix(rng, dim);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace qliang

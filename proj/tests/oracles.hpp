#pragma once

// Brute-force reference implementations used as independent oracles. These
// deliberately avoid the library's stride arithmetic: everything is composed
// from explicit Kronecker products of small matrices.

#include <vector>

#include "qliang/core.hpp"

namespace oracles {

using qliang::Complex;
using qliang::Matrix;

// Rectangular Kronecker product, plain quadruple loop.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

// Full-space operator from one matrix per site, in registry order.
inline Matrix chain_kron(const std::vector<Matrix>& per_site) {
  Matrix acc = Matrix::Identity(1, 1);
  for (const Matrix& m : per_site) acc = kron(acc, m);
  return acc;
}

// Partial trace over the sites flagged `traced`, via explicit basis bras:
// Tr_T(rho) = sum_m B_m rho B_m^dagger with B_m a Kronecker product of
// identities (kept sites) and <m_k| rows (traced sites).
inline Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                            const std::vector<bool>& traced) {
  std::vector<int> traced_sites;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (traced[k]) traced_sites.push_back(static_cast<int>(k));
  }
  std::size_t traced_dim = 1;
  for (int k : traced_sites) traced_dim *= static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]);

  Matrix out;
  bool first = true;
  for (std::size_t m = 0; m < traced_dim; ++m) {
    // digits of m over the traced sites, most significant first
    std::vector<int> digit(traced_sites.size(), 0);
    std::size_t rem = m;
    for (std::size_t pos = traced_sites.size(); pos-- > 0;) {
      const int d = dims[static_cast<std::size_t>(traced_sites[pos])];
      digit[pos] = static_cast<int>(rem % static_cast<std::size_t>(d));
      rem /= static_cast<std::size_t>(d);
    }
    std::vector<Matrix> factors;
    std::size_t which = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (traced[k]) {
        Matrix bra = Matrix::Zero(1, dims[k]);
        bra(0, digit[which++]) = 1.0;
        factors.push_back(bra);
      } else {
        factors.push_back(Matrix::Identity(dims[k], dims[k]));
      }
    }
    const Matrix b = chain_kron(factors);
    const Matrix term = b * rho * b.adjoint();
    if (first) {
      out = term;
      first = false;
    } else {
      out += term;
    }
  }
  return out;
}

}  // namespace oracles

#pragma once

#include <random>

#include "sqc/qcore.hpp"

namespace sqc::testing {

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed);
  return gen;
}

inline CVec random_state(int dim) {
  std::normal_distribution<double> d(0.0, 1.0);
  CVec v(dim);
  for (int k = 0; k < dim; ++k) v[k] = Cx(d(rng()), d(rng()));
  v /= v.norm();
  return v;
}

inline CMat random_hermitian(int dim, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  CMat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Cx(d(rng()), d(rng()));
  return 0.5 * (m + CMat(m.adjoint()));
}

inline CMat random_density(int dim) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  CMat rho = CMat::Zero(dim, dim);
  for (int k = 0; k < std::max(2, dim / 2); ++k) {
    const CVec psi = random_state(dim);
    rho += u(rng()) * (psi * psi.adjoint());
  }
  return rho / rho.trace().real();
}

}  // namespace sqc::testing

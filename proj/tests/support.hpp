#pragma once

#include <algorithm>
#include <random>

#include "biham/common.hpp"
#include "biham/poly.hpp"

namespace testing {

using biham::ComplexMatrix;
using biham::ComplexVector;
using biham::cplx;
using biham::PhasePolynomial;
using biham::RealMatrix;

inline RealMatrix rand_real(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> d;
  RealMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline ComplexMatrix rand_complex(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> d;
  ComplexMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cplx(d(rng), d(rng));
  return m;
}

inline ComplexVector rand_cvec(std::mt19937_64& rng, int n) { return rand_complex(rng, n, 1).col(0); }

inline ComplexVector rand_unit(std::mt19937_64& rng, int n) {
  ComplexVector v = rand_cvec(rng, n);
  return v / v.norm();
}

inline ComplexMatrix rand_hermitian(std::mt19937_64& rng, int n) {
  ComplexMatrix a = rand_complex(rng, n, n);
  return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix rand_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(rand_complex(rng, n, n));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

inline RealMatrix rand_symmetric(std::mt19937_64& rng, int n) {
  RealMatrix a = rand_real(rng, n, n);
  return 0.5 * (a + a.transpose());
}

// Skew and comfortably invertible (n even).
inline RealMatrix rand_skew_invertible(std::mt19937_64& rng, int n) {
  for (;;) {
    RealMatrix a = rand_real(rng, n, n);
    RealMatrix s = a - a.transpose();
    Eigen::JacobiSVD<RealMatrix> svd(s);
    if (svd.singularValues()(n - 1) > 0.2) return s;
  }
}

inline RealMatrix darboux(int n) {
  RealMatrix w = RealMatrix::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  w.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return w;
}

// Random polynomial in nvars variables, total degree <= deg, small integer coefficients.
inline PhasePolynomial rand_poly(std::mt19937_64& rng, int nvars, int deg, int terms) {
  std::uniform_int_distribution<int> c(-3, 3);
  PhasePolynomial f = PhasePolynomial::over_vars(nvars);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> ex(static_cast<size_t>(nvars), 0);
    int left = deg;
    for (int v = 0; v < nvars && left > 0; ++v) {
      int k = std::uniform_int_distribution<int>(0, left)(rng);
      ex[static_cast<size_t>(v)] = k;
      left -= k;
    }
    std::shuffle(ex.begin(), ex.end(), rng);
    int cc = c(rng);
    if (cc != 0) f += PhasePolynomial::monomial(nvars, ex, 0, cc);
  }
  return f;
}

}  // namespace testing

#include <cmath>

#include "biham/recursion.hpp"

namespace biham {

TensorField11 TensorField11::constant(const RealMatrix& T) {
  require_square(T, "T");
  TensorField11 r;
  r.n = static_cast<int>(T.rows());
  r.comps.reserve(static_cast<size_t>(r.n * r.n));
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) r.comps.push_back(PhasePolynomial::constant_vars(r.n, T(i, j)));
  return r;
}

TensorField11 TensorField11::from_components(int n, std::vector<PhasePolynomial> comps) {
  if (n < 1 || static_cast<int>(comps.size()) != n * n)
    fail(ErrorKind::Dimension, "tensor field needs n*n components");
  for (const auto& c : comps)
    if (c.nvars() != n) fail(ErrorKind::Dimension, "component polynomial must have n variables");
  TensorField11 r;
  r.n = n;
  r.comps = std::move(comps);
  return r;
}

bool TensorField11::is_constant() const {
  for (const auto& c : comps)
    if (c.degree() > 0) return false;
  return true;
}

RealMatrix TensorField11::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n) fail(ErrorKind::Dimension, "point has wrong dimension");
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = at(i, j).evaluate(x).real();
  return m;
}

std::vector<double> TorsionTensor::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n) fail(ErrorKind::Dimension, "point has wrong dimension");
  std::vector<double> out(comps.size());
  for (size_t i = 0; i < comps.size(); ++i) out[i] = comps[i].evaluate(x).real();
  return out;
}

bool TorsionTensor::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

TorsionTensor nijenhuis_torsion(const TensorField11& T) {
  const int n = T.n;
  // dT[(i*n+k)*n+j] = d_j T^i_k
  std::vector<PhasePolynomial> dT;
  dT.reserve(static_cast<size_t>(n * n * n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) dT.push_back(T.at(i, k).derivative(j));
  auto d = [&](int i, int k, int j) -> const PhasePolynomial& { return dT[static_cast<size_t>((i * n + k) * n + j)]; };

  TorsionTensor N;
  N.n = n;
  N.comps.assign(static_cast<size_t>(n * n * n), PhasePolynomial::over_vars(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int m = k + 1; m < n; ++m) {
        PhasePolynomial acc = PhasePolynomial::over_vars(n);
        for (int j = 0; j < n; ++j) {
          acc += d(i, k, j) * T.at(j, m);
          acc += T.at(i, j) * d(j, m, k);
          acc -= d(i, m, j) * T.at(j, k);
          acc -= T.at(i, j) * d(j, k, m);
        }
        N.comps[static_cast<size_t>((i * n + k) * n + m)] = acc;
        N.comps[static_cast<size_t>((i * n + m) * n + k)] = -acc;
      }
  return N;
}

std::vector<double> nijenhuis_torsion(const TensorField11& T, const std::vector<double>& x) {
  return nijenhuis_torsion(T).evaluate(x);
}

TensorField11 lie_derivative_linear(const RealMatrix& C, const TensorField11& T) {
  require_square(C, "C");
  if (C.rows() != T.n) fail(ErrorKind::Dimension, "field and tensor dimensions differ");
  const int n = T.n;
  // X^k = C^k_l x^l
  std::vector<PhasePolynomial> X;
  for (int k = 0; k < n; ++k) {
    PhasePolynomial xk = PhasePolynomial::over_vars(n);
    for (int l = 0; l < n; ++l)
      if (C(k, l) != 0.0) xk += PhasePolynomial::var(n, l) * cplx(C(k, l));
    X.push_back(xk);
  }
  TensorField11 r = T;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PhasePolynomial acc = PhasePolynomial::over_vars(n);
      for (int k = 0; k < n; ++k) {
        acc += X[static_cast<size_t>(k)] * T.at(i, j).derivative(k);
        acc -= T.at(k, j) * cplx(C(i, k));
        acc += T.at(i, k) * cplx(C(k, j));
      }
      r.at(i, j) = acc;
    }
  return r;
}

}  // namespace biham

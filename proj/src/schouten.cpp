#include <algorithm>

#include "biham/recursion.hpp"

namespace biham {

PolyBivector PolyBivector::zero(int n) {
  if (n < 1) fail(ErrorKind::Dimension, "bivector needs n >= 1");
  PolyBivector b;
  b.n = n;
  b.comps.assign(static_cast<size_t>(n * n), PhasePolynomial::over_vars(n));
  return b;
}

PolyBivector PolyBivector::constant(const RealMatrix& L) {
  require_square(L, "Lambda");
  PolyBivector b = zero(static_cast<int>(L.rows()));
  for (int i = 0; i < b.n; ++i)
    for (int j = 0; j < b.n; ++j)
      if (L(i, j) != 0.0) b.at(i, j) = PhasePolynomial::constant_vars(b.n, L(i, j));
  if (!b.is_antisymmetric()) fail(ErrorKind::Domain, "bivector must be antisymmetric");
  return b;
}

PolyBivector PolyBivector::scaled(const PhasePolynomial& k) const {
  PolyBivector r = *this;
  for (auto& c : r.comps) c = c * k;
  return r;
}

bool PolyBivector::is_antisymmetric() const {
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (!approx_equal(at(i, j), -at(j, i), 1e-14)) return false;
  return true;
}

PhasePolynomial PolyBivector::bracket(const PhasePolynomial& f, const PhasePolynomial& g) const {
  PhasePolynomial r = PhasePolynomial::over_vars(n);
  for (int i = 0; i < n; ++i) {
    const auto fi = f.derivative(i);
    if (fi.is_zero()) continue;
    for (int j = 0; j < n; ++j)
      if (!at(i, j).is_zero()) r += at(i, j) * fi * g.derivative(j);
  }
  return r;
}

bool PolyTrivector::is_zero() const {
  return std::all_of(comps.begin(), comps.end(), [](const PhasePolynomial& c) { return c.is_zero(); });
}

static PolyTrivector empty_trivector(int n) {
  PolyTrivector t;
  t.n = n;
  t.comps.assign(static_cast<size_t>(n * n * n), PhasePolynomial::over_vars(n));
  return t;
}

PolyTrivector schouten_bracket(const PolyBivector& A, const PolyBivector& B) {
  if (A.n != B.n) fail(ErrorKind::Dimension, "bivectors live on different spaces");
  const int n = A.n;
  // f(i;jk) = sum_l A^{il} d_l B^{jk} + B^{il} d_l A^{jk}
  auto f = [&](int i, int j, int k) {
    PhasePolynomial acc = PhasePolynomial::over_vars(n);
    for (int l = 0; l < n; ++l) {
      if (!A.at(i, l).is_zero()) acc += A.at(i, l) * B.at(j, k).derivative(l);
      if (!B.at(i, l).is_zero()) acc += B.at(i, l) * A.at(j, k).derivative(l);
    }
    return acc;
  };
  PolyTrivector t = empty_trivector(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const PhasePolynomial c = f(i, j, k) + f(j, k, i) + f(k, i, j);
        // fill all permutations with sign
        t.at(i, j, k) = c;
        t.at(j, k, i) = c;
        t.at(k, i, j) = c;
        t.at(j, i, k) = -c;
        t.at(i, k, j) = -c;
        t.at(k, j, i) = -c;
      }
  return t;
}

std::vector<PhasePolynomial> hamiltonian_field(const PolyBivector& L, const PhasePolynomial& k) {
  std::vector<PhasePolynomial> X(static_cast<size_t>(L.n), PhasePolynomial::over_vars(L.n));
  for (int a = 0; a < L.n; ++a) {
    const auto dk = k.derivative(a);
    if (dk.is_zero()) continue;
    for (int b = 0; b < L.n; ++b)
      if (!L.at(a, b).is_zero()) X[static_cast<size_t>(b)] += L.at(a, b) * dk;
  }
  return X;
}

PolyTrivector wedge(const std::vector<PhasePolynomial>& X, const PolyBivector& P) {
  if (static_cast<int>(X.size()) != P.n) fail(ErrorKind::Dimension, "vector field and bivector sizes differ");
  const int n = P.n;
  PolyTrivector t = empty_trivector(n);
  auto x = [&](int i) -> const PhasePolynomial& { return X[static_cast<size_t>(i)]; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const PhasePolynomial c = x(i) * P.at(j, k) + x(j) * P.at(k, i) + x(k) * P.at(i, j);
        t.at(i, j, k) = c;
        t.at(j, k, i) = c;
        t.at(k, i, j) = c;
        t.at(j, i, k) = -c;
        t.at(i, k, j) = -c;
        t.at(k, j, i) = -c;
      }
  return t;
}

double trivector_distance(const PolyTrivector& a, const PolyTrivector& b) {
  if (a.n != b.n) fail(ErrorKind::Dimension, "trivectors live on different spaces");
  double d = 0.0;
  for (size_t i = 0; i < a.comps.size(); ++i) d = std::max(d, coeff_distance(a.comps[i], b.comps[i]));
  return d;
}

}  // namespace biham

#include <cmath>

#include "biham/wwm.hpp"

namespace biham {

namespace {

// Sum over multi-indices (a, b) of (i hbar/2)^{|a|+|b|} (-1)^{|b|} / (a! b!)
// (d_q^a d_p^b f)(d_p^a d_q^b g); `v` walks the 2n variables.
void moyal_terms(int v, int n, int budget, const PhasePolynomial& f, const PhasePolynomial& g, int total, int nb,
                 double invfact, PhasePolynomial& acc) {
  if (f.is_zero() || g.is_zero()) return;
  if (v == 2 * n) {
    if (total == 0) {
      acc += f * g;
      return;
    }
    // (i/2)^total (-1)^nb / (a! b!)
    cplx c = std::pow(cplx(0.0, 0.5), total) * invfact;
    if (nb % 2 != 0) c = -c;
    acc += ((f * g) * c).shift_hbar(total);
    return;
  }
  const int partner = v < n ? v + n : v - n;
  PhasePolynomial df = f, dg = g;
  double fact = 1.0;
  for (int e = 0; e <= budget; ++e) {
    if (e > 0) {
      df = df.derivative(v);
      dg = dg.derivative(partner);
      fact *= e;
      if (df.is_zero() || dg.is_zero()) break;
    }
    moyal_terms(v + 1, n, budget - e, df, dg, total + e, v < n ? nb : nb + e, invfact / fact, acc);
  }
}

void check_pair(const PhasePolynomial& f, const PhasePolynomial& g) {
  if (f.nvars() != g.nvars()) fail(ErrorKind::Dimension, "Moyal product of polynomials with different n_dof");
  (void)f.n_dof();
}

void check_deformation(const PhasePolynomial& k) {
  if (k.is_zero()) fail(ErrorKind::Deformation, "deformation element must be nonzero");
}

void check_deformation(const GridFunction& k) {
  const double top = k.sup_norm();
  const double re_min = k.samples.real().minCoeff();
  if (!(re_min > 0) || k.max_imag() > 1e-12 * std::max(1.0, top))
    fail(ErrorKind::Deformation, "deformation element must be strictly positive on the grid", re_min);
}

void same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.grid.N != b.grid.N || a.grid.Lq != b.grid.Lq || a.grid.Lp != b.grid.Lp)
    fail(ErrorKind::Grid, "grid functions live on different grids");
}

// 1 / (i hbar) with hbar formal: multiply by -i, lower the hbar power
PhasePolynomial over_i_hbar(const PhasePolynomial& x) { return (x * cplx(0.0, -1.0)).shift_hbar(-1); }

}  // namespace

PhasePolynomial moyal_product(const PhasePolynomial& f, const PhasePolynomial& g) {
  check_pair(f, g);
  const int n = f.n_dof();
  PhasePolynomial acc = PhasePolynomial::over_vars(f.nvars());
  moyal_terms(0, n, std::min(f.degree(), g.degree()), f, g, 0, 0, 1.0, acc);
  return acc;
}

PhasePolynomial moyal_product(const PhasePolynomial& f, const PhasePolynomial& g, const PhasePolynomial& k) {
  check_deformation(k);
  return moyal_product(moyal_product(f, k), g);
}

PhasePolynomial moyal_bracket(const PhasePolynomial& f, const PhasePolynomial& g) {
  return over_i_hbar(moyal_product(f, g) - moyal_product(g, f));
}

PhasePolynomial moyal_bracket(const PhasePolynomial& f, const PhasePolynomial& g, const PhasePolynomial& k) {
  return over_i_hbar(moyal_product(f, g, k) - moyal_product(g, f, k));
}

GridFunction moyal_product(const GridFunction& f, const GridFunction& g, const TransformOptions& opt) {
  same_grid(f, g);
  const KernelOperator F = weyl_map(f, opt), G = weyl_map(g, opt);
  const KernelOperator prod = opt.sign == MomentumSign::Weyl ? G * F : F * G;
  return wigner_transform(prod, opt);
}

GridFunction moyal_product(const GridFunction& f, const GridFunction& g, const GridFunction& k,
                           const TransformOptions& opt) {
  same_grid(f, g);
  same_grid(f, k);
  check_deformation(k);
  const KernelOperator F = weyl_map(f, opt), G = weyl_map(g, opt), K = weyl_map(k, opt);
  const KernelOperator prod = opt.sign == MomentumSign::Weyl ? G * K * F : F * K * G;
  return wigner_transform(prod, opt);
}

GridFunction moyal_bracket(const GridFunction& f, const GridFunction& g, const TransformOptions& opt) {
  GridFunction a = moyal_product(f, g, opt), b = moyal_product(g, f, opt);
  a.samples = (a.samples - b.samples) / cplx(0.0, f.grid.hbar());
  return a;
}

GridFunction moyal_bracket(const GridFunction& f, const GridFunction& g, const GridFunction& k,
                           const TransformOptions& opt) {
  GridFunction a = moyal_product(f, g, k, opt), b = moyal_product(g, f, k, opt);
  a.samples = (a.samples - b.samples) / cplx(0.0, f.grid.hbar());
  return a;
}

PhasePolynomial classical_deformed_bracket(const PhasePolynomial& f, const PhasePolynomial& g,
                                           const PhasePolynomial& k) {
  check_pair(f, g);
  check_pair(f, k);
  return k * poisson_bracket_poly(f, g) + f * poisson_bracket_poly(k, g) - g * poisson_bracket_poly(k, f);
}

FourierSeries FourierSeries::mode(int n, long long coeff) {
  FourierSeries s;
  if (coeff != 0) s.c[n] = coeff;
  return s;
}

FourierSeries FourierSeries::operator*(const FourierSeries& o) const {
  FourierSeries r;
  for (const auto& [n, a] : c)
    for (const auto& [m, b] : o.c) r.c[n + m] += a * b;
  std::erase_if(r.c, [](const auto& kv) { return kv.second == 0; });
  return r;
}

FourierSeries FourierSeries::operator+(const FourierSeries& o) const {
  FourierSeries r = *this;
  for (const auto& [n, b] : o.c) r.c[n] += b;
  std::erase_if(r.c, [](const auto& kv) { return kv.second == 0; });
  return r;
}

FourierSeries FourierSeries::operator-(const FourierSeries& o) const {
  FourierSeries r = *this;
  for (const auto& [n, b] : o.c) r.c[n] -= b;
  std::erase_if(r.c, [](const auto& kv) { return kv.second == 0; });
  return r;
}

FourierSeries FourierSeries::conformal_field() const {
  // i d/dphi e^{in phi} = -n e^{in phi}
  FourierSeries r;
  for (const auto& [n, a] : c)
    if (n != 0) r.c[n] = -static_cast<long long>(n) * a;
  return r;
}

FourierSeries circle_bracket(const FourierSeries& f, const FourierSeries& g) {
  return f * g.conformal_field() - g * f.conformal_field();
}

}  // namespace biham

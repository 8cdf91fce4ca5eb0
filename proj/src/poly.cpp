#include "biham/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "biham/matrix_io.hpp"

namespace biham {

int Monomial::degree() const {
  int d = 0;
  for (int e : exps) d += e;
  return d;
}

PhasePolynomial PhasePolynomial::over_vars(int nvars) {
  if (nvars < 1) fail(ErrorKind::Dimension, "polynomial needs at least one variable");
  return PhasePolynomial(VarsTag{}, nvars);
}

PhasePolynomial PhasePolynomial::constant_vars(int nvars, cplx c) {
  PhasePolynomial r = over_vars(nvars);
  r.add_term(Monomial{std::vector<int>(static_cast<size_t>(nvars), 0), 0}, c);
  return r;
}

PhasePolynomial PhasePolynomial::constant(int n_dof, cplx c) { return constant_vars(2 * n_dof, c); }

PhasePolynomial PhasePolynomial::var(int nvars, int i) {
  if (i < 0 || i >= nvars) fail(ErrorKind::Dimension, "variable index out of range");
  std::vector<int> e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(i)] = 1;
  return monomial(nvars, std::move(e), 0, 1.0);
}

PhasePolynomial PhasePolynomial::q(int n_dof, int i) {
  if (i < 0 || i >= n_dof) fail(ErrorKind::Dimension, "q index out of range");
  return var(2 * n_dof, i);
}

PhasePolynomial PhasePolynomial::p(int n_dof, int i) {
  if (i < 0 || i >= n_dof) fail(ErrorKind::Dimension, "p index out of range");
  return var(2 * n_dof, n_dof + i);
}

PhasePolynomial PhasePolynomial::hbar(int n_dof) {
  return monomial(2 * n_dof, std::vector<int>(static_cast<size_t>(2 * n_dof), 0), 1, 1.0);
}

PhasePolynomial PhasePolynomial::monomial(int nvars, std::vector<int> exps, int hbar_power, cplx coeff) {
  if (static_cast<int>(exps.size()) != nvars) fail(ErrorKind::Dimension, "exponent vector length mismatch");
  for (int e : exps)
    if (e < 0) fail(ErrorKind::Domain, "negative exponent");
  if (hbar_power < 0) fail(ErrorKind::Domain, "negative hbar power");
  PhasePolynomial r = over_vars(nvars);
  r.add_term(Monomial{std::move(exps), hbar_power}, coeff);
  return r;
}

int PhasePolynomial::n_dof() const {
  if (nvars_ % 2 != 0) fail(ErrorKind::Dimension, "odd variable count has no phase-space split");
  return nvars_ / 2;
}

int PhasePolynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int PhasePolynomial::max_hbar() const {
  int h = 0;
  for (const auto& [m, c] : terms_) h = std::max(h, m.hbar);
  return h;
}

cplx PhasePolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx{} : it->second;
}

void PhasePolynomial::add_term(const Monomial& m, cplx c) {
  if (static_cast<int>(m.exps.size()) != nvars_) fail(ErrorKind::Dimension, "monomial arity mismatch");
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

void PhasePolynomial::check_compatible(const PhasePolynomial& o) const {
  if (o.nvars_ != nvars_) fail(ErrorKind::Dimension, "polynomials live in different variable sets");
}

PhasePolynomial& PhasePolynomial::operator+=(const PhasePolynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator-=(const PhasePolynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second == cplx{}) it = terms_.erase(it);
    else ++it;
  }
  return *this;
}

PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b) {
  a.check_compatible(b);
  PhasePolynomial r = PhasePolynomial::over_vars(a.nvars_);
  Monomial m;
  m.exps.resize(static_cast<size_t>(a.nvars_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (size_t i = 0; i < m.exps.size(); ++i) m.exps[i] = ma.exps[i] + mb.exps[i];
      m.hbar = ma.hbar + mb.hbar;
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

PhasePolynomial PhasePolynomial::operator-() const {
  PhasePolynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

PhasePolynomial PhasePolynomial::derivative(int var) const {
  if (var < 0 || var >= nvars_) fail(ErrorKind::Dimension, "derivative index out of range");
  PhasePolynomial r = over_vars(nvars_);
  const auto v = static_cast<size_t>(var);
  for (const auto& [m, c] : terms_) {
    if (m.exps[v] == 0) continue;
    Monomial d = m;
    d.exps[v] -= 1;
    r.add_term(d, c * static_cast<double>(m.exps[v]));
  }
  return r;
}

PhasePolynomial PhasePolynomial::hbar_part(int k) const {
  PhasePolynomial r = over_vars(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.hbar != k) continue;
    Monomial d = m;
    d.hbar = 0;
    r.add_term(d, c);
  }
  return r;
}

PhasePolynomial PhasePolynomial::shift_hbar(int d) const {
  PhasePolynomial r = over_vars(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial s = m;
    s.hbar += d;
    if (s.hbar < 0) fail(ErrorKind::Domain, "hbar power would become negative");
    r.add_term(s, c);
  }
  return r;
}

PhasePolynomial PhasePolynomial::chopped(double tol) const {
  PhasePolynomial r = over_vars(nvars_);
  for (const auto& [m, c] : terms_)
    if (std::abs(c) > tol) r.terms_.emplace(m, c);
  return r;
}

PhasePolynomial PhasePolynomial::conj() const {
  PhasePolynomial r = *this;
  for (auto& [m, c] : r.terms_) c = std::conj(c);
  return r;
}

cplx PhasePolynomial::evaluate(const double* x, double hbar_value) const {
  cplx sum{};
  for (const auto& [m, c] : terms_) {
    double v = 1.0;
    for (size_t i = 0; i < m.exps.size(); ++i)
      for (int k = 0; k < m.exps[i]; ++k) v *= x[i];
    for (int k = 0; k < m.hbar; ++k) v *= hbar_value;
    sum += c * v;
  }
  return sum;
}

nlohmann::json PhasePolynomial::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : terms_)
    out.push_back({{"exponents", m.exps}, {"hbar_power", m.hbar}, {"coeff", biham::to_json(c)}});
  return out;
}

PhasePolynomial PhasePolynomial::from_json(const nlohmann::json& j, int nvars) {
  PhasePolynomial r = over_vars(nvars);
  if (j.is_number()) {
    r.add_term(Monomial{std::vector<int>(static_cast<size_t>(nvars), 0), 0}, j.get<double>());
    return r;
  }
  if (!j.is_array()) fail(ErrorKind::Spec, "polynomial must be a list of {exponents, hbar_power, coeff}");
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exponents") || !t.contains("coeff"))
      fail(ErrorKind::Spec, "polynomial term needs 'exponents' and 'coeff'");
    auto e = t.at("exponents").get<std::vector<int>>();
    if (static_cast<int>(e.size()) != nvars)
      fail(ErrorKind::Spec, "exponent vector has length " + std::to_string(e.size()) + ", expected " +
                                std::to_string(nvars));
    for (int x : e)
      if (x < 0) fail(ErrorKind::Spec, "negative exponent");
    const int h = t.value("hbar_power", 0);
    if (h < 0) fail(ErrorKind::Spec, "negative hbar_power");
    r.add_term(Monomial{std::move(e), h}, complex_from_json(t.at("coeff")));
  }
  return r;
}

std::string PhasePolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const bool phase = nvars_ % 2 == 0;
  const int n = nvars_ / 2;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    os << ")";
    for (int i = 0; i < nvars_; ++i) {
      const int e = m.exps[static_cast<size_t>(i)];
      if (e == 0) continue;
      if (phase) os << (i < n ? "q" : "p") << (i % n) + 1;
      else os << "x" << i + 1;
      if (e > 1) os << "^" << e;
    }
    if (m.hbar) os << "h^" << m.hbar;
  }
  return os.str();
}

double max_coeff(const PhasePolynomial& f) {
  double m = 0.0;
  for (const auto& [k, c] : f.terms()) m = std::max(m, std::abs(c));
  return m;
}

double coeff_distance(const PhasePolynomial& a, const PhasePolynomial& b) {
  return max_coeff(a - b);
}

bool approx_equal(const PhasePolynomial& a, const PhasePolynomial& b, double tol) {
  const double scale = std::max({1.0, max_coeff(a), max_coeff(b)});
  return coeff_distance(a, b) <= tol * scale;
}

PhasePolynomial poisson_bracket_poly(const PhasePolynomial& f, const PhasePolynomial& g) {
  if (f.nvars() != g.nvars()) fail(ErrorKind::Dimension, "poisson bracket of polynomials with different n_dof");
  const int n = f.n_dof();
  PhasePolynomial r = PhasePolynomial::over_vars(f.nvars());
  for (int i = 0; i < n; ++i) {
    r += f.derivative(i) * g.derivative(n + i);
    r -= f.derivative(n + i) * g.derivative(i);
  }
  return r;
}

}  // namespace biham

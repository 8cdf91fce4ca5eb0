#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "biham/common.hpp"

namespace biham {

// Exponents of the variables plus a formal power of hbar.
struct Monomial {
  std::vector<int> exps;
  int hbar = 0;

  int degree() const;
  auto operator<=>(const Monomial&) const = default;
};

// Sparse polynomial with complex coefficients. For phase-space use the
// variables are ordered q_1..q_n, p_1..p_n; the same type also serves as a
// plain polynomial in coordinates x^1..x^m (tensor-field components).
class PhasePolynomial {
 public:
  using TermMap = std::map<Monomial, cplx>;

  explicit PhasePolynomial(int n_dof = 1) : nvars_(2 * n_dof) {
    if (n_dof < 1) fail(ErrorKind::Dimension, "n_dof must be positive");
  }
  static PhasePolynomial over_vars(int nvars);

  static PhasePolynomial constant(int n_dof, cplx c);
  static PhasePolynomial q(int n_dof, int i = 0);
  static PhasePolynomial p(int n_dof, int i = 0);
  static PhasePolynomial hbar(int n_dof);
  // Coordinate variable x^i in a polynomial ring with nvars variables.
  static PhasePolynomial var(int nvars, int i);
  static PhasePolynomial constant_vars(int nvars, cplx c);
  static PhasePolynomial monomial(int nvars, std::vector<int> exps, int hbar_power, cplx coeff);

  int nvars() const { return nvars_; }
  int n_dof() const;
  const TermMap& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  int max_hbar() const;
  cplx coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, cplx c);

  PhasePolynomial& operator+=(const PhasePolynomial& o);
  PhasePolynomial& operator-=(const PhasePolynomial& o);
  PhasePolynomial& operator*=(cplx s);
  friend PhasePolynomial operator+(PhasePolynomial a, const PhasePolynomial& b) { return a += b; }
  friend PhasePolynomial operator-(PhasePolynomial a, const PhasePolynomial& b) { return a -= b; }
  friend PhasePolynomial operator*(PhasePolynomial a, cplx s) { return a *= s; }
  friend PhasePolynomial operator*(cplx s, PhasePolynomial a) { return a *= s; }
  friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b);
  PhasePolynomial operator-() const;

  PhasePolynomial derivative(int var) const;
  // Coefficient polynomial of hbar^k (returned with hbar power 0).
  PhasePolynomial hbar_part(int k) const;
  // Multiply every term by hbar^d; negative d requires all powers >= -d.
  PhasePolynomial shift_hbar(int d) const;
  // Drop terms with |c| <= tol.
  PhasePolynomial chopped(double tol) const;
  PhasePolynomial conj() const;

  cplx evaluate(const double* x, double hbar_value) const;
  cplx evaluate(const std::vector<double>& x, double hbar_value = 0.0) const {
    return evaluate(x.data(), hbar_value);
  }

  nlohmann::json to_json() const;
  static PhasePolynomial from_json(const nlohmann::json& j, int nvars);
  std::string str() const;

 private:
  struct VarsTag {};
  PhasePolynomial(VarsTag, int nvars) : nvars_(nvars) {}
  void check_compatible(const PhasePolynomial& o) const;

  int nvars_;
  TermMap terms_;
};

// Largest coefficient magnitude.
double max_coeff(const PhasePolynomial& f);
// Term-by-term comparison: |a_m - b_m| <= tol * max(1, max_coeff(a), max_coeff(b)).
bool approx_equal(const PhasePolynomial& a, const PhasePolynomial& b, double tol = 1e-12);
double coeff_distance(const PhasePolynomial& a, const PhasePolynomial& b);

// {f,g} = sum_i (d_qi f d_pi g - d_pi f d_qi g), so {q,p} = 1.
PhasePolynomial poisson_bracket_poly(const PhasePolynomial& f, const PhasePolynomial& g);

}  // namespace biham

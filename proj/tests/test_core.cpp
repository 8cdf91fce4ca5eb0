#include <doctest.h>

#include "biham/poly.hpp"
#include "biham/spectral.hpp"
#include "support.hpp"

using namespace biham;
using namespace testing;

TEST_SUITE("core") {

TEST_CASE("poisson bracket basics") {
  auto q = PhasePolynomial::q(1), p = PhasePolynomial::p(1);
  CHECK(approx_equal(poisson_bracket_poly(q, p), PhasePolynomial::constant(1, 1.0)));
  CHECK(poisson_bracket_poly(q * q, q).is_zero());
  auto f = q * q * 0.5, g = p * p * 0.5;
  CHECK(approx_equal(poisson_bracket_poly(f, g), q * p));
}

TEST_CASE("poisson bracket is a Lie bracket and a derivation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int nvars = (trial % 2 == 0) ? 2 : 4;
    auto f = rand_poly(rng, nvars, 4, 5), g = rand_poly(rng, nvars, 4, 5), h = rand_poly(rng, nvars, 4, 5);
    auto fg = poisson_bracket_poly(f, g);
    CHECK(approx_equal(fg, -poisson_bracket_poly(g, f)));
    auto jac = poisson_bracket_poly(f, poisson_bracket_poly(g, h)) + poisson_bracket_poly(g, poisson_bracket_poly(h, f)) +
               poisson_bracket_poly(h, fg);
    CHECK(jac.chopped(1e-12).is_zero());
    CHECK(approx_equal(poisson_bracket_poly(f, g * h), fg * h + g * poisson_bracket_poly(f, h)));
    CHECK(approx_equal(poisson_bracket_poly(f * 2.0 + h, g), fg * 2.0 + poisson_bracket_poly(h, g)));
  }
}

TEST_CASE("moyal-style hbar bookkeeping survives products") {
  auto h = PhasePolynomial::hbar(1);
  auto q = PhasePolynomial::q(1);
  auto f = h * q * h;
  CHECK(f.max_hbar() == 2);
  CHECK(approx_equal(f.hbar_part(2), q));
  CHECK(f.shift_hbar(-2).max_hbar() == 0);
  CHECK_THROWS_AS(q.shift_hbar(-1), Error);
}

TEST_CASE("spectral decomposition examples") {
  auto s = spectral_decompose(RealMatrix(RealMatrix::Identity(2, 2)));
  CHECK(s.clusters.size() == 1);
  CHECK(std::abs(s.cluster_value(0) - 1.0) < 1e-12);

  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 3;
  s = spectral_decompose(d);
  REQUIRE(s.clusters.size() == 2);
  std::vector<double> vals{s.cluster_value(0).real(), s.cluster_value(1).real()};
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == doctest::Approx(1.0));
  CHECK(vals[1] == doctest::Approx(3.0));

  RealMatrix r(2, 2);
  r << 0, 1, -1, 0;
  s = spectral_decompose(r);
  std::vector<double> im{s.eigenvalues(0).imag(), s.eigenvalues(1).imag()};
  std::sort(im.begin(), im.end());
  CHECK(std::abs(s.eigenvalues(0).real()) < 1e-14);
  CHECK(im[0] == doctest::Approx(-1.0));
  CHECK(im[1] == doctest::Approx(1.0));
}

TEST_CASE("spectral residuals are small on random matrices") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 6; ++n) {
    ComplexMatrix m = rand_complex(rng, n, n);
    auto s = spectral_decompose(m);
    for (int k = 0; k < n; ++k) {
      ComplexVector v = s.eigenvectors.col(k);
      CHECK((m * v - s.eigenvalues(k) * v).norm() <= 1e-8 * opnorm(m) * v.norm());
    }
  }
}

TEST_CASE("defective matrices produce Jordan chains") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = m(1, 1) = 2.0;
  m(0, 1) = 1.0;
  m(2, 2) = -1.0;
  auto s = spectral_decompose(m);
  CHECK(s.defective);
  REQUIRE(s.chains.size() == 1);
  const auto& c = s.chains[0];
  CHECK(c.vectors.cols() == 2);
  ComplexMatrix shifted = m - c.eigenvalue * ComplexMatrix::Identity(3, 3);
  CHECK((shifted * c.vectors.col(0)).norm() < 1e-10);
  CHECK((shifted * c.vectors.col(1) - c.vectors.col(0)).norm() < 1e-10);
}

TEST_CASE("commutant basis examples") {
  CHECK(commutant_basis(RealMatrix(RealMatrix::Identity(3, 3))).size() == 9);
  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  auto b = commutant_basis(d);
  CHECK(b.size() == 2);
  for (const auto& t : b) CHECK(std::abs(t(0, 1)) + std::abs(t(1, 0)) < 1e-12);

  RealMatrix r(2, 2);
  r << 0, 1, -1, 0;
  b = commutant_basis(r);
  REQUIRE(b.size() == 2);
  // each member lies in span{I, r}: a I + b r has t00 = t11, t01 = -t10
  for (const auto& t : b) {
    CHECK(std::abs(t(0, 0) - t(1, 1)) < 1e-12);
    CHECK(std::abs(t(0, 1) + t(1, 0)) < 1e-12);
  }
}

TEST_CASE("commutant members commute") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + trial % 4;
    RealMatrix g = rand_real(rng, n, n);
    if (trial % 3 == 0) g = g * g.transpose();  // symmetric: still generic
    for (const auto& t : commutant_basis(g))
      CHECK((g * t - t * g).norm() <= 1e-12 * std::max(1.0, g.norm() * t.norm()));
  }
}

TEST_CASE("numeric rank and nullspace") {
  RealMatrix m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
  CHECK(numeric_rank(m) == 2);
  RealMatrix k = nullspace(m);
  REQUIRE(k.cols() == 1);
  CHECK((m * k).norm() < 1e-12);
}

}  // TEST_SUITE

#include <doctest.h>

#include "biham/gqm.hpp"
#include "support.hpp"

using namespace biham;
using namespace testing;

namespace {

Eigen::Vector3d random_xi(std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::Vector3d v(d(rng), d(rng), d(rng));
  return 0.5 * v.normalized();
}

ComplexMatrix pauli_combo(std::mt19937_64& rng, bool hermitian = true) {
  std::normal_distribution<double> d;
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  for (int k = 0; k < 4; ++k) m += (hermitian ? cplx(d(rng), 0) : cplx(d(rng), d(rng))) * pauli()[k];
  return m;
}

}  // namespace

TEST_SUITE("gqm") {

TEST_CASE("pauli algebra") {
  const auto& s = pauli();
  const cplx i(0, 1);
  auto eps = [](int a, int b, int c) { return static_cast<double>((a - b) * (b - c) * (c - a)) / 2.0; };
  for (int h = 1; h <= 3; ++h)
    for (int k = 1; k <= 3; ++k) {
      ComplexMatrix rhs = (h == k ? 1.0 : 0.0) * s[0];
      for (int l = 1; l <= 3; ++l) rhs += i * eps(h, k, l) * s[l];
      CHECK((s[h] * s[k] - rhs).norm() == 0.0);
    }
}

TEST_CASE("bloch parametrization") {
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const double th = M_PI * a / 8, ph = 2 * M_PI * b / 8;
      auto y = UStarElement::from_matrix(bloch_state(th, ph).rho);
      CHECK(std::abs(y.y0 - 0.5) < 1e-14);
      CHECK(std::abs(y.y.norm() - 0.5) < 1e-14);
    }
}

TEST_CASE("transition probabilities") {
  std::mt19937_64 rng(2);
  auto a = PureState::from_vector(rand_cvec(rng, 3));
  CHECK(transition_probability(a, a) == doctest::Approx(1.0));
  ComplexVector e0 = ComplexVector::Zero(3), e1 = ComplexVector::Zero(3);
  e0(0) = 1;
  e1(1) = 1;
  CHECK(transition_probability(PureState::from_vector(e0), PureState::from_vector(e1)) == 0.0);
  std::uniform_real_distribution<double> u(0, M_PI);
  for (int t = 0; t < 20; ++t) {
    double t1 = u(rng), p1 = 2 * u(rng), t2 = u(rng), p2 = 2 * u(rng);
    double expect = 0.5 * (1 + std::sin(t1) * std::sin(t2) * std::cos(p1 - p2) + std::cos(t1) * std::cos(t2));
    CHECK(std::abs(transition_probability(bloch_state(t1, p1), bloch_state(t2, p2)) - expect) < 1e-14);
  }
}

TEST_CASE("superposition of pure states") {
  std::mt19937_64 rng(7);
  ComplexMatrix Q = rand_unitary(rng, 3);
  auto r1 = PureState::from_vector(Q.col(0)), r2 = PureState::from_vector(Q.col(1));
  auto r0 = PureState::from_vector(rand_cvec(rng, 3));

  auto same = superpose(r1, r2, r0, 1.0, 0.0);
  CHECK((same.rho - r1.rho).norm() < 1e-12);

  const double s = 1 / std::sqrt(2.0);
  auto out = superpose(r1, r2, r0, s, s);
  CHECK(PureState::defect(out.rho) < 1e-10);
  const cplx phase = std::polar(1.0, 0.7);
  auto rot = superpose(r1, r2, r0, phase * s, phase * s);
  CHECK((rot.rho - out.rho).norm() < 1e-12);

  cplx c1(0.6, 0.0), c2 = std::polar(0.8, 1.1);
  auto mix = superpose(r1, r2, r0, c1, c2);
  CHECK(transition_probability(mix, r1) == doctest::Approx(0.36).epsilon(1e-10));
  CHECK(transition_probability(mix, r2) == doctest::Approx(0.64).epsilon(1e-10));
}

TEST_CASE("superposition errors") {
  std::mt19937_64 rng(8);
  ComplexMatrix Q = rand_unitary(rng, 3);
  auto r1 = PureState::from_vector(Q.col(0)), r2 = PureState::from_vector(Q.col(1));
  auto r3 = PureState::from_vector(Q.col(2));
  auto r0 = PureState::from_vector(rand_cvec(rng, 3));
  try {
    superpose(r1, r1, r0, 0.6, 0.8);
    FAIL("expected Domain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  CHECK_THROWS_AS(superpose(r1, r2, r0, 1.0, 1.0), Error);
  try {
    superpose(r1, r2, r3, 0.6, 0.8);
    FAIL("expected DegenerateFiducial");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateFiducial);
  }
  ComplexMatrix notproj = ComplexMatrix::Identity(2, 2);
  try {
    PureState::from_matrix(notproj);
    FAIL("expected NotAState");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAState);
  }
}

TEST_CASE("momentum map") {
  ComplexVector e = ComplexVector::Zero(3);
  e(0) = 1;
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 1;
  CHECK((momentum_map(e) - d).norm() == 0.0);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 4;
    ComplexVector x = rand_cvec(rng, n);
    ComplexMatrix U = rand_unitary(rng, n);
    CHECK((momentum_map(U * x) - U * momentum_map(x) * U.adjoint()).norm() <= 1e-12 * std::max(1.0, x.squaredNorm()));
    CHECK(PureState::defect(momentum_map(x / x.norm())) < 1e-12);
  }
}

TEST_CASE("bloch tensors") {
  auto t = bloch_geometry(Eigen::Vector3d(0, 0, 0.5));
  UStarElement a, b;
  a.y = Eigen::Vector3d::UnitX();
  b.y = Eigen::Vector3d::UnitY();
  CHECK(t.poisson(a, b) == doctest::Approx(1.0));
  CHECK(t.poisson(b, a) == doctest::Approx(-1.0));
  CHECK(t.sigma_of(Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY()) == 0.0);
  CHECK(t.sigma_of(Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitX()) == 1.0);
  CHECK_THROWS_AS(bloch_geometry(Eigen::Vector3d(0, 0, 1)), Error);

  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector3d xi = random_xi(rng);
    auto g = bloch_geometry(xi);
    for (int c = 0; c < 2; ++c) {
      Eigen::Vector3d u = g.tangent.col(c);
      CHECK((g.apply_j(g.apply_j(g.apply_j(u))) + g.apply_j(u)).norm() < 1e-12);
      CHECK((g.apply_j(g.apply_j(u)) + u).norm() < 1e-12);
    }
    CHECK((g.j * g.j + Eigen::Matrix2d::Identity()).norm() < 1e-12);
    Eigen::Vector3d u = g.tangent.col(0), v = g.tangent.col(1);
    double ref = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double eps = static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
          ref += 2.0 * eps * xi(i) * u(j) * v(k);
        }
    CHECK(std::abs(g.eta(0, 1) - ref) < 1e-12);
    CHECK(std::abs(std::abs(g.eta(0, 1)) - 1.0) < 1e-12);
    CHECK((g.sigma - Eigen::Matrix2d::Identity()).norm() < 1e-12);
  }
}

TEST_CASE("kahler functions on pauli matrices") {
  const auto& s = pauli();
  std::mt19937_64 rng(11);
  std::vector<ComplexVector> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(rand_cvec(rng, 2));
  const cplx i(0, 1);
  for (const auto& x : xs) {
    CHECK(std::abs(symplectic_bracket(s[1], s[2], x) - kahler_function(2.0 * s[3], x)) < 1e-12);
    CHECK(std::abs(symplectic_bracket(s[0], s[0], x)) < 1e-12);
    CHECK(std::abs(kahler_star(s[0], s[0], x) - 1.0) < 1e-12);
    const cplx f123 = kahler_function(s[1] * s[2] * s[3], x);
    CHECK(std::abs(f123 - i) < 1e-12);
    CHECK(std::abs(kahler_star(s[1] * s[2], s[3], x) - f123) < 1e-12);
    CHECK(std::abs(kahler_star(s[1], s[2] * s[3], x) - f123) < 1e-12);
  }
  for (int t = 0; t < 20; ++t) {
    auto r = quadratic_bracket_check(pauli_combo(rng), pauli_combo(rng), xs);
    CHECK(r.max() <= 1e-10);
  }
  // higher dimension, non-Hermitian operators
  std::vector<ComplexVector> ys;
  for (int k = 0; k < 5; ++k) ys.push_back(rand_cvec(rng, 4));
  auto r = quadratic_bracket_check(rand_complex(rng, 4, 4), rand_complex(rng, 4, 4), ys);
  CHECK(r.max() <= 1e-10);
}

TEST_CASE("gns construction") {
  std::mt19937_64 rng(12);
  ComplexVector e = rand_unit(rng, 2);
  auto pure = gns_construct(e * e.adjoint());
  CHECK(pure.dimension() == 2);
  CHECK(pure.irreducible());

  auto mixed = gns_construct(ComplexMatrix::Identity(3, 3) / 3.0);
  CHECK(mixed.dimension() == 9);
  CHECK_FALSE(mixed.irreducible());

  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= n; ++m) {
      ComplexMatrix U = rand_unitary(rng, n);
      RealVector w = RealVector::Zero(m);
      for (int k = 0; k < m; ++k) w(k) = 1.0 + k;
      w /= w.sum();
      ComplexMatrix omega = ComplexMatrix::Zero(n, n);
      for (int k = 0; k < m; ++k) omega += w(k) * U.col(k) * U.col(k).adjoint();
      auto g = gns_construct(omega);
      CHECK(g.m == m);
      ComplexMatrix A = rand_complex(rng, n, n), B = rand_complex(rng, n, n);
      CHECK((g.pi(A * B) - g.pi(A) * g.pi(B)).norm() <= 1e-12 * std::max(1.0, A.norm() * B.norm()));
      ComplexMatrix ref = ComplexMatrix::Zero(n * m, n * m);
      for (int k = 0; k < m; ++k) ref.block(k * n, k * n, n, n) = A;
      // pi(A) is I_m (x) A in the support basis, which is unitarily equivalent
      CHECK((g.pi(A) - ref).norm() < 1e-12 * A.norm());
      ComplexVector v = g.cyclic_vector();
      CHECK(std::abs(v.dot(g.pi(A) * v) - (omega * A).trace()) <= 1e-12 * std::max(1.0, A.norm()));
      CHECK((g.pi(A) * v - g.vector_of(A)).norm() <= 1e-12 * std::max(1.0, A.norm()));

      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g.pairing_gram());
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
      int null = 0;
      for (int k = 0; k < n * n; ++k) null += es.eigenvalues()(k) < 1e-10;
      CHECK(null == n * (n - m));
      if (m < n) {
        ComplexMatrix perp = U.col(m) * U.col(m).adjoint();
        ComplexMatrix G = rand_complex(rng, n, n) * perp;
        CHECK(g.in_gelfand_ideal(G));
        CHECK(g.vector_of(G).norm() < 1e-12 * G.norm());
      }
      CHECK_FALSE(g.in_gelfand_ideal(ComplexMatrix::Identity(n, n)));
    }
  CHECK_THROWS_AS(gns_construct(ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))), Error);
}

TEST_CASE("K-deformed brackets") {
  std::mt19937_64 rng(13);
  ComplexMatrix H = rand_hermitian(rng, 3), A = rand_complex(rng, 3, 3), B = rand_complex(rng, 3, 3);
  auto same = k_deformed_algebra(ComplexMatrix::Identity(3, 3), H, A, B);
  CHECK(same.bracket_residual < 1e-12);
  CHECK(same.derivation_residual < 1e-12);

  ComplexMatrix h = ComplexMatrix::Zero(2, 2), k = ComplexMatrix::Zero(2, 2);
  h.diagonal() << 1, 2;
  k.diagonal() << 2, 3;
  auto r = k_deformed_algebra(k, h, pauli()[1], pauli()[2]);
  CHECK(r.bracket_residual < 1e-12);
  CHECK(r.derivation_residual < 1e-12);

  ComplexMatrix s1 = pauli()[1];
  try {
    k_deformed_algebra(ComplexMatrix(s1 + 2.0 * ComplexMatrix::Identity(2, 2)), h, s1, s1);
    FAIL("expected NotInvariant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInvariant);
  }
  CHECK_THROWS_AS(k_deformed_algebra(ComplexMatrix(-k), h, s1, s1), Error);
}

TEST_CASE("deformed fock spaces") {
  auto one = deformed_fock([](int) { return 1.0; }, 10);
  CHECK((one.A - one.a).norm() == 0.0);
  CHECK(one.commutator_residual < 1e-12);

  auto sq = deformed_fock([](int n) { return std::sqrt(n + 1.0); }, 20);
  CHECK(sq.commutator_residual <= 1e-12);

  for (auto f : {std::function<double(int)>([](int n) { return std::sqrt(n + 1.0); }),
                 std::function<double(int)>([](int n) { return 1.0 / (1.0 + n); })}) {
    auto d = deformed_fock(f, 30, 1.0);
    CHECK(d.commutator_residual <= 1e-12);
    CHECK(d.partition_residual <= 1e-12);
    CHECK(std::abs(d.Z1 - d.Z2) <= 1e-12 * d.Z1);
  }
  CHECK_THROWS_AS(deformed_fock([](int) { return -1.0; }, 5), Error);
}

}  // TEST_SUITE

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "biham/wwm.hpp"
#include "support.hpp"

using namespace biham;
using namespace testing;

namespace {

ModelConstants beta_consts(double beta) {
  ModelConstants c;
  c.beta = beta;
  return c;
}

PhaseGrid small_grid(int N = 64, double beta = 1.0) {
  return PhaseGrid::aligned(N, std::sqrt(M_PI * N / 4.0), beta_consts(beta));
}

KernelOperator random_band_kernel(std::mt19937_64& rng, const PhaseGrid& g) {
  KernelOperator k{g, rand_hermitian(rng, g.N)};
  return band_project(k);
}

double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

PhasePolynomial qp(int a, int b, cplx c = 1.0) { return PhasePolynomial::monomial(2, {a, b}, 0, c); }

}  // namespace

TEST_SUITE("wwm") {

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(PhaseGrid(7, 1, 1), Error);
  CHECK_THROWS_AS(PhaseGrid(2, 1, 1), Error);
  CHECK_THROWS_AS(PhaseGrid(8, -1, 1), Error);
  CHECK(PhaseGrid::aligned(64, 3.0).is_aligned());
  CHECK_FALSE(PhaseGrid(64, 3.0, 3.0).is_aligned());
  ModelConstants bad;
  bad.hbar = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("moyal anchors on polynomials") {
  auto q = PhasePolynomial::q(1), p = PhasePolynomial::p(1), h = PhasePolynomial::hbar(1);
  const cplx i(0, 1);
  CHECK(approx_equal(moyal_product(q, p), q * p + h * (i / 2.0)));
  CHECK(approx_equal(moyal_product(p, q), q * p - h * (i / 2.0)));
  auto one = PhasePolynomial::constant(1, 1.0);
  std::mt19937_64 rng(1);
  auto g = rand_poly(rng, 2, 4, 6);
  CHECK(approx_equal(moyal_product(one, g), g));
  CHECK(approx_equal(moyal_product(g, one), g));
  CHECK(approx_equal(moyal_bracket(q, p), one));
}

TEST_CASE("moyal bracket of quadratics is the poisson bracket") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    auto f = rand_poly(rng, 2, 2, 4), g = rand_poly(rng, 2, 2, 4);
    CHECK(approx_equal(moyal_bracket(f, g), poisson_bracket_poly(f, g)));
  }
}

TEST_CASE("moyal bracket of cubics carries the hbar^2 term") {
  auto f = qp(3, 0), g = qp(0, 3);
  // P^3 (q^3, p^3) = 36; sine series gives -hbar^2/24 * 36
  auto expect = qp(2, 2, 9.0) + PhasePolynomial::monomial(2, {0, 0}, 2, -1.5);
  CHECK(approx_equal(moyal_bracket(f, g), expect));
}

TEST_CASE("moyal product properties") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 8; ++t) {
    auto f = rand_poly(rng, 2, 4, 4), g = rand_poly(rng, 2, 4, 4), k = rand_poly(rng, 2, 3, 3);
    auto fg = moyal_product(f, g), gf = moyal_product(g, f);
    CHECK(approx_equal(moyal_product(fg, k), moyal_product(f, moyal_product(g, k))));
    for (int e = 0; e <= fg.max_hbar(); ++e) {
      if (e % 2 == 0)
        CHECK(approx_equal(fg.hbar_part(e), gf.hbar_part(e)));
      else
        CHECK(approx_equal(fg.hbar_part(e), -gf.hbar_part(e)));
    }
    CHECK(approx_equal(fg.hbar_part(0), f * g));
  }
}

TEST_CASE("deformed brackets satisfy jacobi") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    auto f = rand_poly(rng, 2, 3, 3), g = rand_poly(rng, 2, 3, 3), h = rand_poly(rng, 2, 3, 3);
    auto k = rand_poly(rng, 2, 2, 2) + PhasePolynomial::constant(1, 2.0);
    auto br = [&](const PhasePolynomial& a, const PhasePolynomial& b) { return moyal_bracket(a, b, k); };
    auto jac = br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g));
    CHECK(jac.chopped(1e-9 * std::max(1.0, max_coeff(jac))).is_zero());
    CHECK(approx_equal(br(f, g).hbar_part(0), classical_deformed_bracket(f, g, k)));

    auto cb = [&](const PhasePolynomial& a, const PhasePolynomial& b) { return classical_deformed_bracket(a, b, k); };
    auto cj = cb(f, cb(g, h)) + cb(g, cb(h, f)) + cb(h, cb(f, g));
    CHECK(cj.chopped(1e-9 * std::max(1.0, max_coeff(cj))).is_zero());

    auto pj = moyal_bracket(f, moyal_bracket(g, h)) + moyal_bracket(g, moyal_bracket(h, f)) +
              moyal_bracket(h, moyal_bracket(f, g));
    CHECK(pj.chopped(1e-9 * std::max(1.0, max_coeff(pj))).is_zero());
  }
  auto one = PhasePolynomial::constant(1, 1.0);
  std::mt19937_64 r2(5);
  auto f = rand_poly(r2, 2, 3, 4), g = rand_poly(r2, 2, 3, 4);
  CHECK(approx_equal(classical_deformed_bracket(f, g, one), poisson_bracket_poly(f, g)));
  CHECK_THROWS_AS(moyal_product(f, g, PhasePolynomial(1)), Error);
}

TEST_CASE("circle model conformal algebra") {
  for (int n = -5; n <= 5; ++n)
    for (int m = -5; m <= 5; ++m)
      CHECK(circle_bracket(FourierSeries::mode(n), FourierSeries::mode(m)) == FourierSeries::mode(n + m, n - m));
}

TEST_CASE("symplectic fourier transform") {
  // wide in p as well; the aligned box would clip the Gaussian at e^{-20}
  PhaseGrid g(64, 8.0, 8.0);
  auto f = GridFunction::sample(g, [](double q, double p) { return std::exp(-(q * q + p * p) / 2.0); });
  auto F = symplectic_fourier(f);
  const PhaseGrid d = g.dual();
  CHECK(F.grid.N == d.N);
  CHECK(F.grid.Lq == doctest::Approx(d.Lq));
  auto same = GridFunction::sample(F.grid, [](double a, double b) { return std::exp(-(a * a + b * b) / 2.0); });
  CHECK(rel_diff(F.samples, same.samples) < 1e-10);

  // direct quadrature at a handful of points
  std::mt19937_64 rng(6);
  auto h = GridFunction::sample(g, [](double q, double p) { return cplx(std::exp(-(q - 0.3) * (q - 0.3) - p * p / 3), q * std::exp(-q * q - (p + 0.2) * (p + 0.2))); });
  auto H = symplectic_fourier(h);
  std::uniform_int_distribution<int> idx(0, g.N - 1);
  for (int s = 0; s < 16; ++s) {
    int a = idx(rng), b = idx(rng);
    const double eta = H.grid.q(a), xi = H.grid.p(b);
    cplx acc = 0;
    for (int i = 0; i < g.N; ++i)
      for (int j = 0; j < g.N; ++j)
        acc += h.samples(i, j) * std::exp(cplx(0, -(g.q(i) * eta - g.p(j) * xi)));
    acc *= g.dq() * g.dp() / (2 * M_PI);
    CHECK(std::abs(acc - H.samples(a, b)) < 1e-12);
  }

  auto back = symplectic_fourier(H, true);
  CHECK(rel_diff(back.samples, h.samples) < 1e-10);

  auto k = GridFunction::sample(g, [](double q, double p) { return cplx(std::exp(-q * q - p * p), 0.5); });
  GridFunction lin = h;
  lin.samples = 2.0 * h.samples + cplx(0, 1) * k.samples;
  auto L = symplectic_fourier(lin);
  CHECK(rel_diff(L.samples, 2.0 * H.samples + cplx(0, 1) * symplectic_fourier(k).samples) < 1e-12);

  auto syn = plane_wave_synthesis(F, g);
  CHECK(rel_diff(syn.samples, f.samples) < 1e-10);
}

TEST_CASE("identity and oscillator wigner functions") {
  auto g = small_grid(64);
  auto W1 = wigner_transform(KernelOperator::band_identity(g));
  CHECK((W1.samples.array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK(W1.max_imag() < 1e-12);

  auto ground = wigner_transform(KernelOperator::projector(g, oscillator_ground_state(g)));
  CHECK(std::abs(ground.samples(g.N / 2, g.N / 2).real() - 2.0) < 1e-4);
  CHECK(ground.sup_norm() <= 2.0 + 1e-6);

  for (double beta : {0.5, 1.0, 2.0}) {
    auto gb = PhaseGrid::aligned(128, std::sqrt(M_PI * 128 / 4.0), beta_consts(beta));
    auto W = wigner_transform(oscillator_gibbs_kernel(gb));
    auto ref = oscillator_gibbs_wigner(gb);
    CHECK(rel_diff(W.samples, ref.samples) <= 1e-6);
    const double Z = oscillator_partition_function(gb.constants);
    CHECK(std::abs(W.phase_trace().real() - Z) <= 1e-6 * Z);
  }
  auto g2 = PhaseGrid::aligned(64, 6.0, beta_consts(2.0));
  CHECK(oscillator_gibbs_wigner(g2).samples(32, 32).real() == doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-12));
  CHECK(oscillator_partition_function(beta_consts(2.0)) == doctest::Approx(0.425459).epsilon(1e-6));
  auto hot = oscillator_gibbs_wigner(PhaseGrid::aligned(64, 6.0, beta_consts(1e-9)));
  CHECK(std::abs(hot.samples(32, 32) - 1.0) < 1e-9);
}

TEST_CASE("direct and fft routes agree") {
  auto g = small_grid(64);
  std::mt19937_64 rng(7);
  auto K = random_band_kernel(rng, g);
  TransformOptions direct;
  direct.force_direct = true;
  auto a = wigner_transform(K), b = wigner_transform(K, direct);
  CHECK(rel_diff(a.samples, b.samples) < 1e-12);

  auto f = GridFunction::sample(g, [](double q, double p) { return std::exp(-(q * q + 2 * p * p) / 3) * cplx(1, q); });
  CHECK(rel_diff(weyl_map(f).kernel, weyl_map(f, direct).kernel) < 1e-12);

  // off-lattice grids only have the direct route
  PhaseGrid un(64, 7.0, 6.0);
  auto Ku = KernelOperator::projector(un, oscillator_ground_state(un));
  auto Wu = wigner_transform(Ku);
  CHECK(std::abs(Wu.samples(32, 32).real() - 2.0) < 1e-4);
}

TEST_CASE("transform pair on band-limited kernels") {
  auto g = small_grid(64);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    auto K = random_band_kernel(rng, g);
    auto W = wigner_transform(K);
    CHECK(W.max_imag() <= 1e-10 * W.sup_norm());
    auto back = weyl_map(W);
    CHECK(rel_diff(back.kernel, K.kernel) <= 1e-8);
    const double lhs = W.samples.cwiseAbs2().sum() * g.cell();
    CHECK(std::abs(lhs - K.hs_norm2()) <= 1e-8 * K.hs_norm2());

    KernelOperator C{g, rand_complex(rng, g.N, g.N)};
    C = band_project(C);
    auto Wc = wigner_transform(C), Wa = wigner_transform(C.adjoint());
    CHECK((Wa.samples - Wc.samples.conjugate()).cwiseAbs().maxCoeff() <= 1e-12 * Wc.sup_norm());
  }
}

TEST_CASE("weyl map of simple symbols") {
  auto g = small_grid(64);
  auto one = weyl_map(GridFunction::sample(g, [](double, double) { return cplx(1.0); }));
  CHECK(rel_diff(one.kernel, KernelOperator::band_identity(g).kernel) < 1e-12);

  // q acts by multiplication on a wavefunction well inside the box and the band
  auto X = weyl_map(GridFunction::sample(g, [](double q, double) { return cplx(q); }));
  ComplexVector psi(g.N), xpsi(g.N);
  for (int i = 0; i < g.N; ++i) {
    psi(i) = std::exp(-0.5 * (g.x(i) - 0.4) * (g.x(i) - 0.4));
    xpsi(i) = g.x(i) * psi(i);
  }
  ComplexVector got = X.kernel * psi * g.dx();
  CHECK((got - xpsi).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("phase point frame") {
  auto g = small_grid(16);
  auto frame = phase_point_frame(g);
  std::mt19937_64 rng(9);
  auto K = random_band_kernel(rng, g);
  auto coeff = frame.coefficients(K);
  auto W = wigner_transform(K);
  CHECK(rel_diff(coeff.samples, W.samples) < 1e-9);
  for (int c = 0; c < g.N; c += 3)
    for (int k = 0; k < g.N; k += 5) CHECK(std::abs(frame.element(c, k).trace() - 1.0) < 1e-12);
  // reproducing property on band-limited symbols
  auto f = wigner_transform(random_band_kernel(rng, g));
  auto again = frame.coefficients(frame.expand(f));
  CHECK(rel_diff(again.samples, f.samples) < 1e-9);
  // expansion of the constant symbol is the identity
  auto id = frame.expand(GridFunction::sample(g, [](double, double) { return cplx(1.0); }));
  CHECK(rel_diff(id.kernel, KernelOperator::band_identity(g).kernel) < 1e-12);
}

TEST_CASE("grid moyal product") {
  auto g = small_grid(128);
  const double hb = g.hbar();
  auto G = [](double q, double p) { return std::exp(-(q * q + p * p) / 2.0); };
  auto f = GridFunction::from_poly(g, qp(2, 0));
  auto h = GridFunction::sample(g, [&](double q, double p) { return p * p * G(q, p); });
  auto prod = moyal_product(f, h);
  // (q + i hbar/2 d_p)^2 acting on p^2 G
  auto exact = GridFunction::sample(g, [&](double q, double p) {
    const double gg = G(q, p);
    const double d1 = (2 * p - p * p * p) * gg;
    const double d2 = (2 - 5 * p * p + p * p * p * p) * gg;
    return cplx(q * q * p * p * gg - hb * hb / 4 * d2, hb * q * d1);
  });
  CHECK(rel_diff(prod.samples, exact.samples) <= 1e-6);

  auto q = GridFunction::from_poly(g, qp(1, 0)), pg = GridFunction::sample(g, [&](double q, double p) { return p * G(q, p); });
  auto one = GridFunction::sample(g, [](double, double) { return cplx(1.0); });
  CHECK(rel_diff(moyal_product(one, pg).samples, pg.samples) < 1e-9);

  // quadratic Hamiltonians generate the classical flow
  auto H = GridFunction::sample(g, [](double q, double p) { return cplx(0.5 * (q * q + p * p)); });
  auto w = GridFunction::sample(g, [&](double q, double p) { return q * p * p * G(q, p); });
  auto br = moyal_bracket(w, H);
  auto flow = GridFunction::sample(g, [&](double q, double p) {
    // {w, H} = d_q w * p - d_p w * q
    const double gg = G(q, p);
    const double wq = (p * p - q * q * p * p) * gg, wp = (2 * q * p - q * p * p * p) * gg;
    return cplx(wq * p - wp * q);
  });
  CHECK(rel_diff(br.samples, flow.samples) <= 1e-7);

  TransformOptions standard;
  standard.sign = MomentumSign::Standard;
  auto qs = moyal_product(q, pg, standard), qw = moyal_product(q, pg);
  CHECK(rel_diff(qs.samples, qw.samples) < 1e-9);

  auto neg = GridFunction::sample(g, [](double q, double) { return cplx(q); });
  CHECK_THROWS_AS(moyal_product(q, pg, neg), Error);
}

TEST_CASE("projectors are idempotent in phase space") {
  auto g = small_grid(64);
  auto W = wigner_transform(KernelOperator::projector(g, oscillator_ground_state(g)));
  CHECK(std::abs(W.phase_trace() - 1.0) < 1e-10);
  auto WW = moyal_product(W, W);
  CHECK(rel_diff(WW.samples, W.samples) < 1e-9);
}

TEST_CASE("uniform bound on random states") {
  auto g = small_grid(64);
  std::mt19937_64 rng(10);
  for (int t = 0; t < 10; ++t) {
    auto W = wigner_transform(KernelOperator::projector(g, rand_cvec(rng, g.N)));
    CHECK(W.sup_norm() <= 2.0 + 1e-6);
    CHECK(std::abs(W.phase_trace() - 1.0) < 1e-10);
  }
}

TEST_CASE("classical KMS condition") {
  PhaseGrid grid(256, 10.0, 10.0);
  auto H = qp(2, 0, 0.5) + qp(0, 2, 0.5);
  auto r = classical_kms_check(H, qp(1, 0), qp(0, 1), 1.0, grid);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.residual <= 1e-6);
  auto z = classical_kms_check(H, qp(1, 0), qp(0, 0), 1.0, grid);
  CHECK(std::abs(z.lhs) < 1e-12);
  CHECK(std::abs(z.rhs) < 1e-12);
  auto tight = classical_kms_check(H, qp(1, 0), qp(0, 1), 1.0, PhaseGrid(64, 2.0, 2.0));
  CHECK(tight.accuracy_warning);
}

TEST_CASE("grid function io") {
  auto g = small_grid(16);
  std::mt19937_64 rng(11);
  GridFunction f{g, rand_complex(rng, g.N, g.N)};
  auto dir = std::filesystem::temp_directory_path() / "biham_io_test";
  std::filesystem::create_directories(dir);
  write_binary(f, (dir / "f.bin").string());
  auto back = read_binary((dir / "f.bin").string());
  CHECK(back.grid.N == g.N);
  CHECK(back.grid.Lp == g.Lp);
  CHECK((back.samples - f.samples).norm() == 0.0);
  write_csv(f, (dir / "f.csv").string());
  std::ifstream in(dir / "f.csv");
  int lines = 0;
  for (std::string s; std::getline(in, s);) ++lines;
  CHECK(lines == g.N * g.N + 1);
  std::ofstream junk(dir / "bad.bin");
  junk << "nope";
  junk.close();
  CHECK_THROWS_AS(read_binary((dir / "bad.bin").string()), Error);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE

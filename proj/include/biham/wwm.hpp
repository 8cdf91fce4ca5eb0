#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biham/common.hpp"
#include "biham/kernels.hpp"
#include "biham/poly.hpp"
#include "biham/spectral.hpp"

namespace biham {

// Weyl: the phase convention in which Omega(p) = -P (symbol phase e^{+ip xi/hbar}).
// Standard: the usual Fourier choice, Omega(p) = P.
enum class MomentumSign { Weyl, Standard };

inline int sign_factor(MomentumSign s) { return s == MomentumSign::Weyl ? 1 : -1; }

// N x N phase-space lattice, q_i = -L_q + i dq, p_j = -L_p + j dp. The kernel
// position grid coincides with the q grid.
struct PhaseGrid {
  int N = 0;
  double Lq = 0.0, Lp = 0.0;
  ModelConstants constants;

  PhaseGrid() = default;
  PhaseGrid(int n, double lq, double lp, ModelConstants c = {});
  // L_p chosen so that dp * 2 dx / hbar = 2 pi / N; transforms then run on FFTs.
  static PhaseGrid aligned(int n, double lq, ModelConstants c = {});

  double dq() const { return 2.0 * Lq / N; }
  double dp() const { return 2.0 * Lp / N; }
  double dx() const { return dq(); }
  double q(int i) const { return -Lq + i * dq(); }
  double p(int j) const { return -Lp + j * dp(); }
  double x(int i) const { return q(i); }
  double hbar() const { return constants.hbar; }
  // dq dp / (2 pi hbar)
  double cell() const;
  bool is_aligned(double tol = 1e-12) const;
  // Grid of the symplectic Fourier variables (eta, xi).
  PhaseGrid dual() const;
};

struct GridFunction {
  PhaseGrid grid;
  ComplexMatrix samples;  // samples(i, j) = f(q_i, p_j)

  static GridFunction zeros(const PhaseGrid& g);
  static GridFunction sample(const PhaseGrid& g, const std::function<cplx(double, double)>& f);
  // One degree of freedom; hbar powers evaluated at the grid's hbar.
  static GridFunction from_poly(const PhaseGrid& g, const PhasePolynomial& f);

  double sup_norm() const { return samples.cwiseAbs().maxCoeff(); }
  double max_imag() const { return samples.imag().cwiseAbs().maxCoeff(); }
  // sum f dq dp / (2 pi hbar)
  cplx phase_trace() const;
};

struct WignerFunction : GridFunction {
  double leakage = 0.0;           // boundary mass of the kernel, relative
  bool accuracy_warning = false;  // leakage above threshold
};

struct KernelOperator {
  PhaseGrid grid;
  ComplexMatrix kernel;  // <x_i|O|x_j>; products and traces carry dx weights

  static KernelOperator zeros(const PhaseGrid& g);
  static KernelOperator lattice_identity(const PhaseGrid& g);  // delta_ij / dx
  // Band-limited identity: projector onto the N/2 lowest lattice modes.
  static KernelOperator band_identity(const PhaseGrid& g);
  // |psi><psi| with psi normalized to sum |psi|^2 dx = 1.
  static KernelOperator projector(const PhaseGrid& g, const ComplexVector& psi);
  static KernelOperator from_function(const PhaseGrid& g, const std::function<cplx(double, double)>& k);

  cplx trace() const;
  double hs_norm2() const;  // Tr(O^dag O)
  KernelOperator adjoint() const;
  KernelOperator operator*(const KernelOperator& o) const;
  KernelOperator operator+(const KernelOperator& o) const;
  KernelOperator operator-(const KernelOperator& o) const;
  KernelOperator operator*(cplx s) const;
  bool is_hermitian(double tol = 1e-12) const;
  // max |kernel| on the outer two rows/columns over max |kernel|
  double boundary_leakage() const;
};

// P O P with P the band projector.
KernelOperator band_project(const KernelOperator& o);
// Low-pass along the columns of a kernel (P K dx).
ComplexMatrix band_project_columns(const ComplexMatrix& K);

struct TransformOptions {
  MomentumSign sign = MomentumSign::Weyl;
  bool force_direct = false;                  // skip the FFT route on aligned grids
  const simd::KernelTable* kernels = nullptr;  // nullptr = active table
  double leakage_threshold = 1e-8;
};

// W(q,p) = sum_xi dx e^{i p xi/hbar} <q + xi/2|O|q - xi/2>
WignerFunction wigner_transform(const KernelOperator& o, const TransformOptions& opt = {});
// <x|O|x'> = sum_p (dp/2 pi hbar) e^{-i p (x - x')/hbar} f((x + x')/2, p), restricted to the band.
KernelOperator weyl_map(const GridFunction& f, const TransformOptions& opt = {});

// F(eta, xi) = sum (dq dp / 2 pi) f e^{-i(q eta - p xi)} on the dual grid.
GridFunction symplectic_fourier(const GridFunction& f, bool inverse = false);
// S(F)(q, p) = sum (d eta d xi / 2 pi) F e^{i(q eta + p xi)}, back on the primal grid.
GridFunction plane_wave_synthesis(const GridFunction& F, const PhaseGrid& primal);

class PhasePointFrame {
 public:
  PhasePointFrame(const PhaseGrid& g, MomentumSign sign = MomentumSign::Weyl, const simd::KernelTable* k = nullptr);

  const PhaseGrid& grid() const { return grid_; }
  // (2/dx) delta_{a+b,2c} e^{-s i p_k (x_a - x_b)/hbar}
  KernelOperator raw_element(int c, int k) const;
  KernelOperator element(int c, int k) const { return band_project(raw_element(c, k)); }
  // Tr(O A(q_c, p_k)) for all grid points
  GridFunction coefficients(const KernelOperator& o) const;
  // sum f(z) A(z) dq dp / 2 pi hbar
  KernelOperator expand(const GridFunction& f) const;

 private:
  PhaseGrid grid_;
  MomentumSign sign_;
  const simd::KernelTable* kern_;
};

PhasePointFrame phase_point_frame(const PhaseGrid& g, MomentumSign sign = MomentumSign::Weyl);

// Mehler kernel of exp(-beta H), H = p^2/2m + m w^2 x^2/2.
KernelOperator oscillator_gibbs_kernel(const PhaseGrid& g);
// (1/cosh(b/2)) exp(-tanh(b/2) (m w q^2/hbar + p^2/(m hbar w))), b = beta hbar w
GridFunction oscillator_gibbs_wigner(const PhaseGrid& g);
double oscillator_partition_function(const ModelConstants& c);
// Normalized ground-state wavefunction sampled on the x grid.
ComplexVector oscillator_ground_state(const PhaseGrid& g);

// Exact series product; terminates on polynomials.
PhasePolynomial moyal_product(const PhasePolynomial& f, const PhasePolynomial& g);
PhasePolynomial moyal_product(const PhasePolynomial& f, const PhasePolynomial& g, const PhasePolynomial& k);
PhasePolynomial moyal_bracket(const PhasePolynomial& f, const PhasePolynomial& g);
PhasePolynomial moyal_bracket(const PhasePolynomial& f, const PhasePolynomial& g, const PhasePolynomial& k);

// Grid backend: composition through the Weyl map.
GridFunction moyal_product(const GridFunction& f, const GridFunction& g, const TransformOptions& opt = {});
GridFunction moyal_product(const GridFunction& f, const GridFunction& g, const GridFunction& k,
                           const TransformOptions& opt = {});
GridFunction moyal_bracket(const GridFunction& f, const GridFunction& g, const TransformOptions& opt = {});
GridFunction moyal_bracket(const GridFunction& f, const GridFunction& g, const GridFunction& k,
                           const TransformOptions& opt = {});

// k{f,g} + f{k,g} - g{k,f}
PhasePolynomial classical_deformed_bracket(const PhasePolynomial& f, const PhasePolynomial& g,
                                           const PhasePolynomial& k);

// Trigonometric polynomial sum c_n e^{i n phi} with integer coefficients.
struct FourierSeries {
  std::map<int, long long> c;
  static FourierSeries mode(int n, long long coeff = 1);
  FourierSeries operator*(const FourierSeries& o) const;
  FourierSeries operator+(const FourierSeries& o) const;
  FourierSeries operator-(const FourierSeries& o) const;
  bool operator==(const FourierSeries& o) const { return c == o.c; }
  // i d/dphi
  FourierSeries conformal_field() const;
};
// f X g - g X f with X = i d/dphi
FourierSeries circle_bracket(const FourierSeries& f, const FourierSeries& g);

struct KmsResult {
  double lhs = 0.0, rhs = 0.0;
  double residual = 0.0;
  double quadrature_error = 0.0;  // full grid vs every other point
  double boundary_weight = 0.0;   // max Gibbs weight on the box edge, relative
  bool accuracy_warning = false;
};

KmsResult classical_kms_check(const PhasePolynomial& H, const PhasePolynomial& f, const PhasePolynomial& g,
                              double beta, const PhaseGrid& grid, const simd::KernelTable* k = nullptr);

void write_csv(const GridFunction& f, const std::string& path);
void write_binary(const GridFunction& f, const std::string& path);
GridFunction read_binary(const std::string& path);
void write_kernel_csv(const KernelOperator& o, const std::string& path);

}  // namespace biham

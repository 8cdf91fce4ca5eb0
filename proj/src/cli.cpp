#include "biham/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "biham/chart.hpp"
#include "biham/gqm.hpp"
#include "biham/linear_dynamics.hpp"
#include "biham/matrix_io.hpp"
#include "biham/recursion.hpp"
#include "biham/report.hpp"
#include "biham/structures.hpp"
#include "biham/wwm.hpp"

namespace biham::cli {

using nlohmann::json;

namespace {

struct Context {
  std::string out_dir;
  std::string format = "json";
  std::string emit;
  std::string spec_path;
  unsigned long long seed = 0;
  MomentumSign sign = MomentumSign::Weyl;
};

// Errors that mean "the input is not a valid problem" rather than "a check failed".
bool is_spec_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::Spec:
    case ErrorKind::Dimension:
    case ErrorKind::Domain:
    case ErrorKind::Singular:
    case ErrorKind::Grid:
    case ErrorKind::NotAState:
    case ErrorKind::NotAHermitianForm:
    case ErrorKind::Deformation:
      return true;
    default:
      return false;
  }
}

const json& need(const json& s, const char* key) {
  if (!s.is_object() || !s.contains(key)) fail(ErrorKind::Spec, std::string("missing field '") + key + "'");
  return s.at(key);
}

template <class T>
T get_or(const json& s, const char* key, T fallback) {
  if (!s.contains(key)) return fallback;
  try {
    return s.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::Spec, std::string("field '") + key + "' has the wrong type");
  }
}

double tol_of(const json& s, const char* key, double fallback) {
  if (s.contains("tolerances") && s["tolerances"].contains(key)) return s["tolerances"][key].get<double>();
  return fallback;
}

std::string artifact_path(const Context& ctx, const std::string& name) {
  const std::filesystem::path dir = ctx.out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(ctx.out_dir);
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

json spectrum_json(const ComplexVector& ev) {
  json a = json::array();
  for (Eigen::Index i = 0; i < ev.size(); ++i) a.push_back({ev(i).real(), ev(i).imag()});
  return a;
}

ComplexMatrix random_complex(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = cplx(d(rng), d(rng));
  return m;
}

// ---------------------------------------------------------------- commands

void analyze_linear(const json& s, const Context&, Report& r) {
  const LinearVectorField field(real_matrix_from_json(need(s, "G")));
  const int n = static_cast<int>(field.dim());
  const int kmax = get_or<int>(s, "kmax", n);
  Tolerances tol;
  tol.trace = tol_of(s, "trace", tol.trace);
  tol.cluster = tol_of(s, "cluster", tol.cluster);
  tol.symmetry = tol_of(s, "symmetry", tol.symmetry);
  tol.involution = tol_of(s, "involution", tol.involution);
  tol.rank = tol_of(s, "rank", tol.rank);
  r.config["kmax"] = kmax;

  const auto v = hamiltonicity_test(field, kmax, tol);
  r.note("hamiltonian", v.hamiltonian());
  r.note("trace_ok", v.trace_ok);
  r.note("eigen_pairing_ok", v.eigen_pairing_ok);
  r.note("jordan_ok", v.jordan_ok);
  if (s.contains("expect_hamiltonian")) r.check("matches_expectation", v.hamiltonian() == s["expect_hamiltonian"].get<bool>());
  r.data["odd_traces"] = v.odd_traces;
  r.data["spectrum"] = spectrum_json(v.spectrum.eigenvalues);
  r.data["defective"] = v.spectrum.defective;

  if (!s.contains("Omega")) return;
  const auto omega = ConstantSymplectic::from_omega(real_matrix_from_json(s["Omega"]));
  try {
    const auto H = factorize(field, omega, tol);
    r.check("factorizable", true);
    r.data["H"] = to_json(H.H);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotHamiltonianForThisStructure) throw;
    r.check("factorizable", false);
    r.residuals["factorization_asymmetry"] = e.residual();
    return;
  }
  const auto hier = hierarchy(field, omega, kmax, tol);
  json pairs = json::array();
  for (const auto& p : hier.pairs) pairs.push_back({p.k, p.l, p.involution, p.commutator});
  r.data["involution_pairs"] = pairs;
  r.residual("max_involution", hier.max_involution(), tol.involution);
  r.residual("max_commutator", hier.max_commutator(), tol_of(s, "commutator", 1e-12));

  if (s.contains("T")) {
    const auto d = commutant_deformation(field, omega, real_matrix_from_json(s["T"]), tol);
    r.data["deformed_Lambda"] = to_json(d.Lambda);
    r.data["deformed_H"] = to_json(d.H.H);
    r.note("deformation_canonical", d.is_canonical);
    r.residual("deformation_reproduction", d.reproduction_residual, tol_of(s, "reproduction", 1e-10));
  }
}

std::optional<RealMatrix> opt_matrix(const json& s, const char* key) {
  if (!s.contains(key)) return std::nullopt;
  return real_matrix_from_json(s[key]);
}

void triple(const json& s, const Context&, Report& r) {
  const double tol = tol_of(s, "admissible", 1e-10);
  const auto t = complete_triple(opt_matrix(s, "g"), opt_matrix(s, "J"), opt_matrix(s, "omega"), tol);
  r.data["g"] = to_json(t.g);
  r.data["J"] = to_json(t.J);
  r.data["omega"] = to_json(t.omega);
  r.data["h"] = to_json(t.hermitian());
  r.note("pseudo_kahler", t.pseudo_kahler);
  r.residual("j_squared", t.residuals.j_squared, tol);
  r.residual("compat", t.residuals.compat, tol);
  r.residual("omega_gj", t.residuals.omega_gj, tol);
  r.residual("g_symmetry", t.residuals.g_symmetry, tol);
  r.residual("omega_skew", t.residuals.omega_skew, tol);
  r.note("min_eig_g", t.residuals.min_eig_g);
}

void compat(const json& s, const Context& ctx, Report& r) {
  if (s.contains("h1")) {
    const HermitianForm h1(complex_matrix_from_json(s["h1"])), h2(complex_matrix_from_json(need(s, "h2")));
    const double tol = tol_of(s, "compat", 1e-9);
    const auto c = compatibility_analysis(h1, h2, tol);
    r.note("generic", c.generic);
    r.note("distinct_eigenvalues", c.distinct_eigenvalues);
    r.note("commutant_dimension", c.commutant_dimension);
    r.data["F"] = to_json(c.F);
    json blocks = json::array();
    double worst = 0.0;
    for (const auto& b : c.blocks) {
      blocks.push_back({{"lambda", b.lambda}, {"sign", b.sign}});
      worst = std::max({worst, b.metric_residual, b.symplectic_residual});
    }
    r.data["blocks"] = blocks;
    r.residual("block_residual", worst, tol);
    r.residual("deff_residual", c.deff_residual, tol);
    r.residual("commute_residual", c.commute_residual, tol);
  } else if (s.contains("H")) {
    const double tol = tol_of(s, "metric", 1e-9);
    const auto p = pseudo_hermitian_metric(complex_matrix_from_json(s["H"]), tol);
    r.data["eta"] = to_json(p.eta);
    r.data["eigenvalues"] = to_json(p.eigenvalues);
    r.check("eta_positive", p.min_eig_eta > 0);
    r.residual("intertwining", p.intertwining_residual, tol);
    r.residual("biorthonormal", p.biorthonormal_residual, tol);
  } else if (s.contains("lambda")) {
    const NonlinearChart chart(need(s, "lambda").get<double>());
    const double tol = tol_of(s, "round_trip", 1e-10);
    json pts = json::array();
    double worst = 0.0;
    const json& list = need(s, "points");
    if (!list.is_array()) fail(ErrorKind::Spec, "'points' must be an array of [q, p]");
    std::vector<Point2> points;
    for (const auto& p : list) {
      if (!p.is_array() || p.size() != 2) fail(ErrorKind::Spec, "each point must be [q, p]");
      points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    for (const auto& u : points) {
      const Point2 QP = chart.backward(u);
      const Point2 back = chart.forward(QP);
      worst = std::max({worst, std::abs(back[0] - u[0]), std::abs(back[1] - u[1])});
      pts.push_back({{"q", u[0]}, {"p", u[1]}, {"Q", QP[0]}, {"P", QP[1]}, {"K", chart.K(std::hypot(u[0], u[1]))}});
    }
    for (size_t i = 0; i + 1 < points.size(); ++i) {
      const Point2 w = chart.deformed_add(points[i], points[i + 1]);
      // phi^{-1}(u +_phi v) = phi^{-1} u + phi^{-1} v
      const Point2 lhs = chart.backward(w), a = chart.backward(points[i]), b = chart.backward(points[i + 1]);
      worst = std::max({worst, std::abs(lhs[0] - a[0] - b[0]), std::abs(lhs[1] - a[1] - b[1])});
    }
    r.data["points"] = pts;
    r.residual("round_trip", worst, tol);
  } else if (s.contains("G")) {
    const LinearVectorField field(real_matrix_from_json(s["G"]));
    const double tol = tol_of(s, "pencil", 1e-9);
    const auto p = pencil_fields(field, real_matrix_from_json(need(s, "T")), tol);
    json fields = json::array();
    for (const auto& f : p.fields) fields.push_back(to_json(f.G));
    r.data["fields"] = fields;
    r.note("rank", p.rank);
    r.check("independent", p.independent);
    r.residual("max_commutator", p.max_commutator, tol);
  } else {
    fail(ErrorKind::Spec, "compat needs one of {h1,h2}, {H}, {lambda,points}, {G,T}");
  }
  (void)ctx;
}

void recursion(const json& s, const Context&, Report& r) {
  const double tol = tol_of(s, "recursion", 1e-10);
  const RealMatrix w1 = real_matrix_from_json(need(s, "omega1"));
  const auto rec = recursion_from_pair(w1, real_matrix_from_json(need(s, "omega2")), tol);
  r.data["T"] = to_json(rec.T);
  r.data["T_squared"] = to_json(RealMatrix(rec.T * rec.T));
  r.note("kernel_dimension", rec.kernel_dimension);
  r.residual("compatibility", rec.compat_residual, tol);
  r.check("strong", rec.strong());
  if (s.contains("H")) {
    const QuadraticHamiltonian H(real_matrix_from_json(s["H"]));
    const int kmax = get_or<int>(s, "kmax", static_cast<int>(w1.rows()));
    const auto c = invariant_chain(rec.T, w1, H, kmax, tol);
    json hs = json::array();
    for (const auto& h : c.H) hs.push_back(to_json(h.H));
    r.data["chain"] = hs;
    r.note("independent", c.independent);
    r.note("stops_at", c.stops_at);
    r.check("exact", c.exact);
    r.residual("chain_involution", c.max_involution, tol);
  }
  if (s.contains("tensor")) {
    const json& t = s["tensor"];
    const int n = need(t, "n").get<int>();
    const json& comps = need(t, "components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != n)
      fail(ErrorKind::Spec, "tensor components must be an n x n array of polynomials");
    std::vector<PhasePolynomial> c;
    for (const auto& row : comps) {
      if (!row.is_array() || static_cast<int>(row.size()) != n) fail(ErrorKind::Spec, "tensor row has wrong length");
      for (const auto& e : row) c.push_back(PhasePolynomial::from_json(e, n));
    }
    const auto T = TensorField11::from_components(n, std::move(c));
    const auto N = nijenhuis_torsion(T);
    std::vector<double> point(static_cast<size_t>(n), 0.0);
    if (s.contains("point")) point = s["point"].get<std::vector<double>>();
    if (static_cast<int>(point.size()) != n) fail(ErrorKind::Spec, "point has wrong dimension");
    json nz = json::array();
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int m = k + 1; m < n; ++m)
          if (!N.at(i, k, m).is_zero()) nz.push_back({{"i", i}, {"k", k}, {"m", m}, {"poly", N.at(i, k, m).str()}});
    r.data["torsion"] = nz;
    r.data["torsion_at_point"] = N.evaluate(point);
    r.note("nijenhuis", N.is_zero());
  }
}

std::function<double(int)> fock_function(const json& f) {
  if (f.is_array()) {
    auto vals = f.get<std::vector<double>>();
    return [vals](int k) { return k < static_cast<int>(vals.size()) ? vals[static_cast<size_t>(k)] : 0.0; };
  }
  const auto name = f.get<std::string>();
  if (name == "one") return [](int) { return 1.0; };
  if (name == "sqrt") return [](int k) { return std::sqrt(k + 1.0); };
  if (name == "inverse") return [](int k) { return 1.0 / (1.0 + k); };
  fail(ErrorKind::Spec, "unknown Fock function '" + name + "' (one, sqrt, inverse or a list)");
}

PureState state_from(const json& s) {
  if (s.is_array() && !s.empty() && s[0].is_array() && !s[0].empty() && s[0][0].is_array())
    return PureState::from_matrix(complex_matrix_from_json(s));
  // a list of amplitudes; matrices of plain numbers are treated as matrices
  if (s.is_array() && !s.empty() && s[0].is_array() && s[0].size() != 2)
    return PureState::from_matrix(complex_matrix_from_json(s));
  return PureState::from_vector(complex_vector_from_json(s));
}

void gqm(const json& s, const Context& ctx, Report& r) {
  std::mt19937_64 rng(ctx.seed);
  bool any = false;
  if (s.contains("superpose")) {
    any = true;
    const json& t = s["superpose"];
    const auto out = superpose(state_from(need(t, "rho1")), state_from(need(t, "rho2")), state_from(need(t, "rho0")),
                               complex_from_json(need(t, "c1")), complex_from_json(need(t, "c2")),
                               tol_of(s, "orthogonality", 1e-8));
    r.data["superposition"] = to_json(out.rho);
    r.residual("superposition_defect", PureState::defect(out.rho), tol_of(s, "pure", 1e-10));
  }
  if (s.contains("bloch")) {
    any = true;
    const json& t = s["bloch"];
    Eigen::Vector3d xi;
    if (t.contains("xi")) {
      xi = real_vector_from_json(t["xi"]);
    } else {
      const auto e = UStarElement::from_matrix(bloch_state(need(t, "theta").get<double>(), need(t, "phi").get<double>()).rho);
      xi = e.y;
    }
    const auto b = bloch_geometry(xi);
    r.data["R"] = to_json(RealMatrix(b.R));
    r.data["I"] = to_json(RealMatrix(b.I));
    r.data["eta"] = to_json(RealMatrix(b.eta));
    r.data["sigma"] = to_json(RealMatrix(b.sigma));
    r.data["j"] = to_json(RealMatrix(b.j));
    const double tol = tol_of(s, "bloch", 1e-12);
    r.residual("j_squared", (b.j * b.j + Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), tol);
    const Eigen::Matrix3d j3 = b.j_ambient * b.j_ambient * b.j_ambient + b.j_ambient;
    r.residual("j_cubed", j3.cwiseAbs().maxCoeff(), tol);
    r.residual("eta_j_sigma", (b.eta * b.j - b.sigma).cwiseAbs().maxCoeff(), tol);
  }
  if (s.contains("gns")) {
    any = true;
    const auto g = gns_construct(complex_matrix_from_json(need(s["gns"], "omega")));
    r.note("gns_dimension", g.dimension());
    r.note("gns_rank", g.m);
    r.note("irreducible", g.irreducible());
    const ComplexMatrix A = random_complex(rng, g.n), B = random_complex(rng, g.n);
    const double hom = (g.pi(A * B) - g.pi(A) * g.pi(B)).cwiseAbs().maxCoeff();
    const ComplexVector psi = g.cyclic_vector();
    const double expv = std::abs(psi.dot(g.pi(A) * psi) - (g.omega * A).trace());
    const double tol = tol_of(s, "gns", 1e-12);
    r.residual("homomorphism", hom / std::max(1.0, (A * B).cwiseAbs().maxCoeff()), tol);
    r.residual("expectation", expv / std::max(1.0, A.cwiseAbs().maxCoeff()), tol);
  }
  if (s.contains("fock")) {
    any = true;
    const json& t = s["fock"];
    const auto d = deformed_fock(fock_function(need(t, "f")), get_or<int>(t, "N", 30), get_or<double>(t, "beta", 1.0));
    r.note("Z1", d.Z1);
    r.note("Z2", d.Z2);
    const double tol = tol_of(s, "fock", 1e-12);
    r.residual("fock_commutator", d.commutator_residual, tol);
    r.residual("partition", d.partition_residual / std::max(1.0, d.Z1), tol);
  }
  if (s.contains("quadratic")) {
    any = true;
    const json& t = s["quadratic"];
    const ComplexMatrix A = complex_matrix_from_json(need(t, "A")), B = complex_matrix_from_json(need(t, "B"));
    const int samples = get_or<int>(t, "samples", 16);
    std::normal_distribution<double> nd;
    std::vector<ComplexVector> xs;
    for (int i = 0; i < samples; ++i) {
      ComplexVector x(A.rows());
      for (auto& v : x) v = cplx(nd(rng), nd(rng));
      xs.push_back(x);
    }
    const auto q = quadratic_bracket_check(A, B, xs);
    const double tol = tol_of(s, "quadratic", 1e-10);
    r.residual("jordan_bracket", q.jordan, tol);
    r.residual("symplectic_bracket", q.symplectic, tol);
    r.residual("star_product", q.star, tol);
  }
  if (s.contains("k_deformed")) {
    any = true;
    const json& t = s["k_deformed"];
    const ComplexMatrix A = complex_matrix_from_json(need(t, "A"));
    const ComplexMatrix B = t.contains("B") ? complex_matrix_from_json(t["B"]) : ComplexMatrix(A.adjoint());
    const double tol = tol_of(s, "k_deformed", 1e-12);
    try {
      const auto k = k_deformed_algebra(complex_matrix_from_json(need(t, "K")), complex_matrix_from_json(need(t, "H")),
                                        A, B, get_or<double>(t, "hbar", 1.0));
      r.data["H_prime"] = to_json(k.H_prime);
      r.check("invariant", true);
      r.residual("k_bracket", k.bracket_residual, tol);
      r.residual("k_derivation", k.derivation_residual, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotInvariant) throw;
      r.check("invariant", false);
      r.residuals["k_commutator"] = e.residual();
    }
  }
  if (!any) fail(ErrorKind::Spec, "gqm needs at least one of superpose, bloch, gns, fock, quadratic, k_deformed");
}

PhaseGrid grid_from(const json& s) {
  ModelConstants c;
  c.hbar = get_or<double>(s, "hbar", 1.0);
  c.mass = get_or<double>(s, "mass", 1.0);
  c.omega = get_or<double>(s, "omega", 1.0);
  c.beta = get_or<double>(s, "beta", 1.0);
  c.validate();
  const int N = get_or<int>(s, "N", 256);
  if (get_or<bool>(s, "aligned", false) || !s.contains("L_p")) {
    const double L = s.contains("L_q") ? s["L_q"].get<double>() : std::sqrt(std::numbers::pi * c.hbar * N / 4.0);
    return PhaseGrid::aligned(N, L, c);
  }
  return PhaseGrid(N, need(s, "L_q").get<double>(), s["L_p"].get<double>(), c);
}

void wigner(const json& s, const Context& ctx, Report& r) {
  const PhaseGrid g = grid_from(s);
  r.config["N"] = g.N;
  r.config["L_q"] = g.Lq;
  r.config["L_p"] = g.Lp;
  r.config["aligned"] = g.is_aligned();
  TransformOptions opt;
  opt.sign = ctx.sign;
  const std::string state = get_or<std::string>(s, "state", "gibbs");
  KernelOperator K;
  GridFunction oracle;
  if (state == "gibbs") {
    K = oscillator_gibbs_kernel(g);
    oracle = oscillator_gibbs_wigner(g);
  } else if (state == "ground") {
    K = KernelOperator::projector(g, oscillator_ground_state(g));
    // zero-temperature limit of the normalized Gibbs function
    oracle = GridFunction::sample(g, [&](double q, double p) {
      const auto& c = g.constants;
      return cplx(2.0 * std::exp(-(c.mass * c.omega * q * q / c.hbar + p * p / (c.mass * c.hbar * c.omega))), 0.0);
    });
  } else {
    fail(ErrorKind::Spec, "state must be 'gibbs' or 'ground'");
  }
  const WignerFunction W = wigner_transform(K, opt);
  if (W.accuracy_warning) r.warnings.push_back("kernel not negligible at the box boundary");
  const double err = (W.samples - oracle.samples).cwiseAbs().maxCoeff() / oracle.sup_norm();
  r.residual("max_relative_error", err, tol_of(s, "wigner", 1e-6));
  r.residual("max_imag", W.max_imag(), tol_of(s, "imag", 1e-10));
  r.note("center_value", W.samples(g.N / 2, g.N / 2).real());
  r.note("leakage", W.leakage);
  const double tr = W.phase_trace().real();
  r.note("phase_space_trace", tr);
  if (state == "gibbs") {
    const double Z = oscillator_partition_function(g.constants);
    r.note("partition_function", Z);
    r.residual("trace_relative_error", std::abs(tr - Z) / Z, tol_of(s, "trace", 1e-6));
  }
  if (ctx.format == "csv" || ctx.emit == "wigner") {
    const std::string path = artifact_path(ctx, "wigner.csv");
    write_csv(W, path);
    r.artifacts.push_back(path);
  }
  if (get_or<bool>(s, "binary", false)) {
    const std::string path = artifact_path(ctx, "wigner.bin");
    write_binary(W, path);
    r.artifacts.push_back(path);
  }
}

void moyal(const json& s, const Context&, Report& r) {
  const int n = get_or<int>(s, "n_dof", 1);
  if (n < 1) fail(ErrorKind::Spec, "n_dof must be positive");
  const PhasePolynomial f = PhasePolynomial::from_json(need(s, "f"), 2 * n);
  const PhasePolynomial g = PhasePolynomial::from_json(need(s, "g"), 2 * n);
  const double tol = tol_of(s, "moyal", 1e-12);
  const auto fg = moyal_product(f, g);
  const auto br = moyal_bracket(f, g);
  r.data["product"] = fg.to_json();
  r.data["bracket"] = br.to_json();
  r.data["product_str"] = fg.str();
  r.data["bracket_str"] = br.str();
  // classical limit: hbar^0 part of the bracket is the Poisson bracket
  const auto pb = poisson_bracket_poly(f.hbar_part(0), g.hbar_part(0));
  r.residual("classical_limit", coeff_distance(br.hbar_part(0), pb), tol * std::max(1.0, max_coeff(pb)));
  if (s.contains("k")) {
    const PhasePolynomial k = PhasePolynomial::from_json(s["k"], 2 * n);
    const auto bk = moyal_bracket(f, g, k);
    const auto ck = classical_deformed_bracket(f.hbar_part(0), g.hbar_part(0), k.hbar_part(0));
    r.data["deformed_bracket"] = bk.to_json();
    r.data["jacobi_bracket"] = ck.to_json();
    r.data["deformed_bracket_str"] = bk.str();
    r.residual("deformed_classical_limit", coeff_distance(bk.hbar_part(0), ck), tol * std::max(1.0, max_coeff(ck)));
  }
}

void kms(const json& s, const Context&, Report& r) {
  const PhasePolynomial H = PhasePolynomial::from_json(need(s, "H"), 2);
  const PhasePolynomial f = PhasePolynomial::from_json(need(s, "f"), 2);
  const PhasePolynomial g = PhasePolynomial::from_json(need(s, "g"), 2);
  const double beta = need(s, "beta").get<double>();
  const int N = get_or<int>(s, "N", 512);
  const double L = get_or<double>(s, "L", 10.0);
  const PhaseGrid grid(N, L, L);
  const auto k = classical_kms_check(H, f, g, beta, grid);
  r.note("lhs", k.lhs);
  r.note("rhs", k.rhs);
  r.note("quadrature_error", k.quadrature_error);
  r.note("boundary_weight", k.boundary_weight);
  if (k.accuracy_warning) r.warnings.push_back("Gibbs weight not negligible at the box boundary");
  r.residual("kms", k.residual, tol_of(s, "kms", 1e-6));
}

using Handler = void (*)(const json&, const Context&, Report&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"analyze-linear", analyze_linear}, {"triple", triple}, {"compat", compat}, {"recursion", recursion},
      {"gqm", gqm},                       {"wigner", wigner}, {"moyal", moyal},   {"kms", kms}};
  return h;
}

std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void emit(const Report& r, const Context& ctx, std::vector<std::string>& artifacts) {
  if (ctx.emit.empty() || ctx.emit == "wigner") return;  // wigner CSV is written by the command
  if (ctx.emit == "spectrum") {
    const std::string path = artifact_path(ctx, "spectrum.csv");
    std::ofstream out(path);
    out << "re,im\n";
    char buf[64];
    for (const auto& e : r.data["spectrum"]) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", e[0].get<double>(), e[1].get<double>());
      out << buf;
    }
    artifacts.push_back(path);
  } else if (ctx.emit == "involution-residuals") {
    const std::string path = artifact_path(ctx, "involution_residuals.csv");
    std::ofstream out(path);
    out << "k,l,residual\n";
    char buf[64];
    for (const auto& e : r.data["involution_pairs"]) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
      out << buf;
    }
    artifacts.push_back(path);
  }
}

bool emit_available(const std::string& sel, const std::string& command) {
  if (sel == "wigner") return command == "wigner";
  if (sel == "spectrum") return command == "analyze-linear";
  if (sel == "involution-residuals") return command == "analyze-linear";
  return false;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"biham: bi-Hamiltonian structures, geometric QM and phase-space quantization checks"};
  std::string command, spec_path, out_dir, format = "json", emit_sel, sign = "weyl";
  unsigned long long seed = 0;
  bool seed_given = false;
  app.add_option("command", command, "analyze-linear | triple | compat | recursion | gqm | wigner | moyal | kms")
      ->required();
  app.add_option("--spec", spec_path, "problem specification (JSON)")->required();
  app.add_option("--out", out_dir, "directory for report.json and artifacts");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--emit", emit_sel, "plot data: wigner | spectrum | involution-residuals");
  auto* seed_opt = app.add_option("--seed", seed, "seed for sampled checks (default 0)");
  app.add_option("--momentum-sign", sign, "weyl | standard")->check(CLI::IsMember({"weyl", "standard"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  seed_given = seed_opt->count() > 0;

  if (!handlers().count(command)) {
    err << "error: unknown command '" << command << "'\n";
    return 2;
  }
  if (!emit_sel.empty() && emit_sel != "wigner" && emit_sel != "spectrum" && emit_sel != "involution-residuals") {
    err << "error: unknown --emit selector '" << emit_sel << "'\n";
    return 2;
  }
  if (!emit_sel.empty() && !emit_available(emit_sel, command)) {
    err << "error: selector '" << emit_sel << "' is not produced by " << command << "\n";
    return 2;
  }

  std::ifstream in(spec_path);
  if (!in) {
    err << "error: cannot read spec " << spec_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    err << spec_path << ":" << line << ":" << col << ": parse error: " << e.what() << "\n";
    return 2;
  }
  if (!spec.is_object()) {
    err << spec_path << ": spec must be a JSON object\n";
    return 2;
  }
  if (spec.contains("command") && spec["command"] != command) {
    err << "error: spec is for '" << spec["command"].dump() << "', not '" << command << "'\n";
    return 2;
  }

  Context ctx;
  ctx.out_dir = out_dir;
  ctx.format = format;
  ctx.emit = emit_sel;
  ctx.spec_path = spec_path;
  ctx.sign = sign == "standard" ? MomentumSign::Standard : MomentumSign::Weyl;
  ctx.seed = seed_given ? seed : (spec.contains("seed") ? spec["seed"].get<unsigned long long>() : 0ULL);

  Report report;
  report.command = command;
  report.config = {{"seed", ctx.seed}, {"momentum_sign", sign}, {"format", format}};
  try {
    handlers().at(command)(spec, ctx, report);
  } catch (const Error& e) {
    if (is_spec_error(e.kind())) {
      err << spec_path << ": " << e.what() << "\n";
      return 2;
    }
    report.passed = false;
    report.verdicts["error"] = e.what();
    report.residuals["error_residual"] = e.residual();
  } catch (const json::exception& e) {
    err << spec_path << ": SpecError: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    emit(report, ctx, report.artifacts);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string text_out = dump_json(report.to_json()) + "\n";
  out << text_out;
  if (!out_dir.empty()) {
    std::ofstream rep(artifact_path(ctx, "report.json"));
    rep << text_out;
  }
  return report.passed ? 0 : 1;
}

}  // namespace biham::cli

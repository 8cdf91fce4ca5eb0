#include "biham/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace biham {

void ModelConstants::validate() const {
  if (!(hbar > 0) || !(mass > 0) || !(omega > 0) || !(beta > 0))
    fail(ErrorKind::Domain, "model constants hbar, mass, omega, beta must be strictly positive");
}

cplx Spectrum::cluster_value(size_t c) const {
  cplx s{};
  for (int i : clusters.at(c)) s += eigenvalues(i);
  return s / static_cast<double>(clusters[c].size());
}

std::vector<std::vector<int>> cluster_values(const ComplexVector& vals, double tol) {
  const int n = static_cast<int>(vals.size());
  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(vals(i)));
  const double eps = tol * scale;
  // Single-linkage grouping through a union-find over all pairs.
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<size_t>(i)] != i) i = parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (std::abs(vals(i) - vals(k)) <= eps) parent[static_cast<size_t>(find(i))] = find(k);
  std::vector<std::vector<int>> out;
  std::vector<int> slot(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (slot[static_cast<size_t>(r)] < 0) {
      slot[static_cast<size_t>(r)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<size_t>(slot[static_cast<size_t>(r)])].push_back(i);
  }
  return out;
}

template <class Mat>
static int rank_impl(const Mat& M, double rel_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(M);
  const auto& s = svd.singularValues();
  const double thr = rel_tol * std::max(1.0, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return r;
}

int numeric_rank(const ComplexMatrix& M, double rel_tol) { return rank_impl(M, rel_tol); }
int numeric_rank(const RealMatrix& M, double rel_tol) { return rank_impl(M, rel_tol); }

template <class Mat>
static Mat null_impl(const Mat& M, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double thr = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

ComplexMatrix nullspace(const ComplexMatrix& M, double rel_tol) { return null_impl(M, rel_tol); }
RealMatrix nullspace(const RealMatrix& M, double rel_tol) { return null_impl(M, rel_tol); }

std::vector<int> rank_sequence(const ComplexMatrix& M, cplx lambda, int jmax, double rel_tol) {
  const Eigen::Index n = M.rows();
  const ComplexMatrix A = M - lambda * ComplexMatrix::Identity(n, n);
  ComplexMatrix P = A;
  std::vector<int> out;
  for (int j = 1; j <= jmax; ++j) {
    out.push_back(numeric_rank(P, rel_tol));
    P = P * A;
  }
  return out;
}

// Chains for one defective cluster, built top-down from nested kernels.
static std::vector<JordanChain> chains_for(const ComplexMatrix& M, cplx lambda, int alg_mult) {
  const Eigen::Index n = M.rows();
  const double tol = 1e-6;
  const ComplexMatrix A = M - lambda * ComplexMatrix::Identity(n, n);
  std::vector<ComplexMatrix> K{ComplexMatrix(n, 0)};
  ComplexMatrix P = A;
  for (int j = 1; j <= alg_mult; ++j) {
    K.push_back(nullspace(P, tol));
    P = P * A;
  }
  const int top = alg_mult;
  std::vector<JordanChain> chains;
  std::vector<std::pair<ComplexVector, int>> tops;  // (top vector, chain length)
  for (int j = top; j >= 1; --j) {
    const int want = static_cast<int>(K[j].cols() - K[j - 1].cols());
    ComplexMatrix W = K[j - 1];
    int have = 0;
    for (const auto& [v, len] : tops) {
      ComplexVector w = v;
      for (int s = 0; s < len - j; ++s) w = A * w;
      W.conservativeResize(n, W.cols() + 1);
      W.col(W.cols() - 1) = w;
      ++have;
    }
    int rank = numeric_rank(W, tol);
    for (Eigen::Index c = 0; c < K[j].cols() && have < want; ++c) {
      ComplexMatrix trial(n, W.cols() + 1);
      trial << W, K[j].col(c);
      const int r = numeric_rank(trial, tol);
      if (r > rank) {
        W = trial;
        rank = r;
        tops.emplace_back(K[j].col(c), j);
        ++have;
      }
    }
  }
  for (const auto& [v, len] : tops) {
    JordanChain ch;
    ch.eigenvalue = lambda;
    ch.vectors.resize(n, len);
    ComplexVector w = v;
    for (int s = len - 1; s >= 0; --s) {
      ch.vectors.col(s) = w;
      w = A * w;
    }
    chains.push_back(std::move(ch));
  }
  return chains;
}

Spectrum spectral_decompose(const ComplexMatrix& M, double cluster_tol) {
  require_square(M, "M");
  Eigen::ComplexEigenSolver<ComplexMatrix> es(M, true);
  if (es.info() != Eigen::Success) fail(ErrorKind::Numerical, "eigen-solver did not converge");
  Spectrum s;
  s.cluster_tol = cluster_tol;
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  const double nm = std::max(opnorm(M), 1e-300);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    const double r = (M * s.eigenvectors.col(i) - s.eigenvalues(i) * s.eigenvectors.col(i)).norm() /
                     std::max(s.eigenvectors.col(i).norm(), 1e-300);
    s.max_residual = std::max(s.max_residual, r);
  }
  if (s.max_residual > 1e-8 * nm)
    fail(ErrorKind::Numerical, "eigenpair residual " + std::to_string(s.max_residual) + " exceeds 1e-8*|M|",
         s.max_residual);
  s.clusters = cluster_values(s.eigenvalues, cluster_tol);
  for (size_t c = 0; c < s.clusters.size(); ++c) {
    const int m = static_cast<int>(s.clusters[c].size());
    if (m < 2) continue;
    const cplx lam = s.cluster_value(c);
    const int geo = static_cast<int>(M.rows()) -
                    numeric_rank(ComplexMatrix(M - lam * ComplexMatrix::Identity(M.rows(), M.rows())), 1e-6);
    if (geo < m) {
      s.defective = true;
      auto ch = chains_for(M, lam, m);
      s.chains.insert(s.chains.end(), ch.begin(), ch.end());
    }
  }
  return s;
}

Spectrum spectral_decompose(const RealMatrix& M, double cluster_tol) {
  return spectral_decompose(ComplexMatrix(M.cast<cplx>()), cluster_tol);
}

template <class Mat>
static std::vector<Mat> commutant_impl(const Mat& G, double rel_tol) {
  const Eigen::Index n = G.rows();
  using Scalar = typename Mat::Scalar;
  const Mat I = Mat::Identity(n, n);
  // vec(G T - T G) = (I (x) G - G^T (x) I) vec(T), column-major vec.
  Mat L = Mat::Zero(n * n, n * n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index d = 0; d < n; ++d) {
          Scalar v = I(a, b) * G(c, d) - G(b, a) * I(c, d);
          if (v != Scalar(0)) L(a * n + c, b * n + d) = v;
        }
  const Mat N = null_impl(L, rel_tol);
  std::vector<Mat> out;
  for (Eigen::Index k = 0; k < N.cols(); ++k) {
    Mat T(n, n);
    for (Eigen::Index col = 0; col < n; ++col)
      for (Eigen::Index row = 0; row < n; ++row) {
        Scalar v = N(col * n + row, k);
        T(row, col) = std::abs(v) < 1e-15 ? Scalar(0) : v;
      }
    out.push_back(T);
  }
  return out;
}

std::vector<RealMatrix> commutant_basis(const RealMatrix& G, double rel_tol) {
  require_square(G, "G");
  return commutant_impl(G, rel_tol);
}

std::vector<ComplexMatrix> commutant_basis(const ComplexMatrix& G, double rel_tol) {
  require_square(G, "G");
  return commutant_impl(G, rel_tol);
}

std::vector<ComplexMatrix> joint_commutant_basis(const std::vector<ComplexMatrix>& family, double rel_tol) {
  if (family.empty()) fail(ErrorKind::Dimension, "empty family");
  const Eigen::Index n = family[0].rows();
  ComplexMatrix L(0, n * n);
  for (const auto& G : family) {
    require_square(G, "family member");
    ComplexMatrix block = ComplexMatrix::Zero(n * n, n * n);
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index d = 0; d < n; ++d) {
          block(b * n + c, b * n + d) += G(c, d);
          block(b * n + c, d * n + c) -= G(d, b);
        }
    ComplexMatrix stacked(L.rows() + block.rows(), n * n);
    stacked << L, block;
    L = stacked;
  }
  const ComplexMatrix N = null_impl(L, rel_tol);
  std::vector<ComplexMatrix> out;
  for (Eigen::Index k = 0; k < N.cols(); ++k)
    out.push_back(Eigen::Map<const ComplexMatrix>(N.col(k).data(), n, n));
  return out;
}

bool is_symmetric(const RealMatrix& M, double rel_tol) {
  return (M - M.transpose()).norm() <= rel_tol * std::max(1.0, M.norm());
}
bool is_skew(const RealMatrix& M, double rel_tol) {
  return (M + M.transpose()).norm() <= rel_tol * std::max(1.0, M.norm());
}
bool is_hermitian(const ComplexMatrix& M, double rel_tol) {
  return (M - M.adjoint()).norm() <= rel_tol * std::max(1.0, M.norm());
}

}  // namespace biham

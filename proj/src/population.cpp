#include "drsc/population.hpp"

#include <cmath>

#include "drsc/diagnostics.hpp"
#include "drsc/error.hpp"

namespace drsc {
namespace {

std::size_t block(const LabelVector& z, std::size_t i) { return static_cast<std::size_t>(z[i] - 1); }

// One level of the block form: the matrix being regularized is
// diag(w) Z B Z' diag(w) with row sums script_d.
PopulationFactorization factor_level(int level, const Matrix& B, const Vector& w, const Vector& script_d,
                                     double tau, const LabelVector& z) {
  const std::size_t n = w.size();
  const std::size_t K = B.rows();
  PopulationFactorization f;
  f.level = level;
  f.script_D = script_d;
  f.Q = Matrix(K, n);
  for (std::size_t a = 0; a < K; ++a)
    for (std::size_t j = 0; j < n; ++j) f.Q(a, j) = B(a, block(z, j)) * w[j];
  f.D_P = f.Q.row_sums();
  for (std::size_t a = 0; a < K; ++a)
    if (!(f.D_P[a] > 0.0)) throw DomainError("community " + std::to_string(a + 1) + " has zero expected degree");

  f.P_tilde = Matrix(K, K);
  for (std::size_t a = 0; a < K; ++a)
    for (std::size_t b = 0; b < K; ++b) f.P_tilde(a, b) = B(a, b) / std::sqrt(f.D_P[a] * f.D_P[b]);

  f.theta_tau.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.theta_tau[i] = w[i] * script_d[i] / (script_d[i] + tau);
  return f;
}

}  // namespace

PopulationLaplacians population_laplacians(const DcsbmParams& p, double tau1, double tau2) {
  p.validate(false);
  PopulationLaplacians out;
  out.first = regularized_laplacian(build_omega(p), tau1);
  out.second = regularized_laplacian(out.first.matrix, tau2);
  return out;
}

Matrix reconstruct(const PopulationFactorization& f, const LabelVector& z) {
  const std::size_t n = f.theta_tau.size();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = std::sqrt(f.theta_tau[i] * f.theta_tau[j]) * f.P_tilde(block(z, i), block(z, j));
  return out;
}

FactorizationCheck verify_factorization(const DcsbmParams& p, double tau1, double tau2) {
  const PopulationLaplacians pop = population_laplacians(p, tau1, tau2);
  FactorizationCheck out;
  // First level regularizes Omega: weights theta, block matrix P.
  out.f1 = factor_level(1, p.P, p.theta, build_omega(p).row_sums(), tau1, p.z);
  Vector w1(p.n);
  for (std::size_t i = 0; i < p.n; ++i) w1[i] = std::sqrt(out.f1.theta_tau[i]);
  // Second level regularizes the first: weights theta_tau1^{1/2}, block matrix P_tilde1.
  out.f2 = factor_level(2, out.f1.P_tilde, w1, pop.first.row_sums, tau2, p.z);
  out.residual1 = frobenius_norm(pop.first.matrix - reconstruct(out.f1, p.z));
  out.residual2 = frobenius_norm(pop.second.matrix - reconstruct(out.f2, p.z));
  return out;
}

PopulationEigen population_eigvectors(const DcsbmParams& p, double tau1, double tau2, const Tolerances& tol) {
  const FactorizationCheck fc = verify_factorization(p, tau1, tau2);
  const PopulationFactorization& f = fc.f2;
  const std::size_t n = p.n;
  const auto K = static_cast<std::size_t>(p.K);

  PopulationEigen out;
  out.theta_tilde.resize(n);
  Vector block_norm(K, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.theta_tilde[i] = std::sqrt(f.theta_tau[i]);
    block_norm[block(p.z, i)] += f.theta_tau[i];
    total += f.theta_tau[i];
  }
  for (double& b : block_norm) b = std::sqrt(b);
  total = std::sqrt(total);

  Matrix core(K, K);
  for (std::size_t a = 0; a < K; ++a)
    for (std::size_t b = 0; b < K; ++b)
      core(a, b) = block_norm[a] / total * f.P_tilde(a, b) * block_norm[b] / total;
  const EigenPairs small = sym_eig(core, tol);

  out.pairs.source_dim = n;
  out.pairs.values.resize(K);
  out.pairs.vectors = Matrix(n, K);
  Vector v(n);
  for (std::size_t k = 0; k < K; ++k) {
    out.pairs.values[k] = total * total * small.values[k];
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t g = block(p.z, i);
      v[i] = small.vectors(g, k) / block_norm[g] * out.theta_tilde[i];
    }
    orient_eigenvector(v, tol.sign_tie);
    for (std::size_t i = 0; i < n; ++i) out.pairs.vectors(i, k) = v[i];
  }

  for (std::size_t k = 0; k + 1 < K; ++k)
    if (std::abs(out.pairs.values[k] - out.pairs.values[k + 1]) <= tol.eigen_gap) out.simple = false;
  if (!out.simple) warn("population block eigenvalues are not simple; eigenvectors are determined only up to rotation");
  return out;
}

double max_block_ratio_variance(const Vector& v, const Vector& w, const LabelVector& z) {
  if (v.size() != w.size() || v.size() != z.size()) throw InvalidArgument("length mismatch");
  const auto K = static_cast<std::size_t>(z.K);
  Vector sum(K, 0.0), sq(K, 0.0);
  std::vector<std::size_t> count(K, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = v[i] / w[i];
    const std::size_t g = block(z, i);
    sum[g] += r;
    ++count[g];
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t g = block(z, i);
    const double d = v[i] / w[i] - sum[g] / static_cast<double>(count[g]);
    sq[g] += d * d;
  }
  double worst = 0.0;
  for (std::size_t g = 0; g < K; ++g)
    if (count[g] > 0) worst = std::max(worst, sq[g] / static_cast<double>(count[g]));
  return worst;
}

}  // namespace drsc

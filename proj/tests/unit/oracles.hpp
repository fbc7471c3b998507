#pragma once

// Independent reference computations used to cross-check the library. Each
// one takes a different route from the production code.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "drsc/graph.hpp"
#include "drsc/labels.hpp"
#include "drsc/matrix.hpp"
#include "drsc/random.hpp"

namespace oracle {

using drsc::Matrix;
using drsc::Vector;

inline Matrix random_symmetric(std::size_t n, drsc::Rng& rng) {
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = 2.0 * rng.uniform() - 1.0;
  return s;
}

inline drsc::Graph random_graph(std::size_t n, double p, drsc::Rng& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return drsc::Graph::from_edges(n, edges);
}

// Eigenvalues of S below x, by counting negative pivots of the LDL'
// factorization of S - xI (Sylvester's law of inertia).
inline std::size_t count_below(const Matrix& s, double x) {
  const std::size_t n = s.rows();
  Matrix a = s;
  for (std::size_t i = 0; i < n; ++i) a(i, i) -= x;
  std::size_t neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double piv = a(k, k);
    if (piv == 0.0) piv = 1e-300;
    if (piv < 0.0) ++neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / piv;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return neg;
}

// All eigenvalues in ascending order by bisection on the inertia count.
inline Vector bisection_eigenvalues(const Matrix& s) {
  const std::size_t n = s.rows();
  double r = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(s(i, j));
    r = std::max(r, row);
  }
  Vector out;
  for (std::size_t k = 0; k < n; ++k) {
    double lo = -r - 1.0, hi = r + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(s, mid) > k) hi = mid;
      else lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

// Spectral norm of a symmetric matrix by power iteration on S^2.
inline double power_norm(const Matrix& s, int iters = 5000) {
  const std::size_t n = s.rows();
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i);
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    Vector w = s * v;
    w = s * w;
    const double nw = drsc::norm2(w);
    if (nw == 0.0) return 0.0;
    for (auto& x : w) x /= nw;
    lambda = std::sqrt(nw / drsc::norm2(v));
    v = w;
  }
  return lambda;
}

// sum_{k < terms} B^k.
inline Matrix neumann(const Matrix& b, int terms) {
  const std::size_t n = b.rows();
  Matrix sum = Matrix::identity(n), term = Matrix::identity(n);
  for (int k = 1; k < terms; ++k) {
    term = term * b;
    sum += term;
  }
  return sum;
}

// S(i,j) / sqrt((r_i + tau)(r_j + tau)) written out directly.
inline Matrix naive_laplacian(const Matrix& s, double tau) {
  const std::size_t n = s.rows();
  Vector r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i] += s(i, j);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = s(i, j) / std::sqrt((r[i] + tau) * (r[j] + tau));
  return out;
}

// Minimum over all label permutations of the disagreement count.
inline std::size_t brute_force_mismatches(const drsc::LabelVector& est, const drsc::LabelVector& truth) {
  const int K = std::max(est.K, truth.K);
  std::vector<int> perm(static_cast<std::size_t>(K));
  std::iota(perm.begin(), perm.end(), 1);
  std::size_t best = est.size();
  do {
    std::size_t miss = 0;
    for (std::size_t i = 0; i < est.size(); ++i)
      if (perm[static_cast<std::size_t>(est[i] - 1)] != truth[i]) ++miss;
    best = std::min(best, miss);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Two disjoint cliques of size m joined by one edge; truth is the clique.
inline drsc::LabeledGraph two_cliques(std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) edges.emplace_back(b * m + i, b * m + j);
  edges.emplace_back(m - 1, m);
  drsc::LabeledGraph out;
  out.graph = drsc::Graph::from_edges(2 * m, edges);
  out.truth.K = 2;
  for (std::size_t i = 0; i < 2 * m; ++i) out.truth.labels.push_back(i < m ? 1 : 2);
  out.K = 2;
  return out;
}

}  // namespace oracle

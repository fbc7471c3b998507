#include "drsc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "drsc/error.hpp"
#include "drsc/random.hpp"

namespace drsc {
namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

struct Restart {
  std::vector<int> assign;
  double objective = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::vector<double> trace;
};

Matrix seed_centers(const Matrix& x, std::size_t K, Rng& rng) {
  const std::size_t n = x.rows();
  Matrix centers(K, x.cols());
  std::size_t first = rng.below(n);
  std::copy(x.row(first).begin(), x.row(first).end(), centers.row(0).begin());
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(x.row(i), centers.row(0));

  for (std::size_t c = 1; c < K; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = 0;
    if (total <= 0.0) {
      pick = rng.below(n);
    } else {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        acc += d2[i];
        pick = i;
        if (acc > target) break;
      }
    }
    std::copy(x.row(pick).begin(), x.row(pick).end(), centers.row(c).begin());
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(x.row(i), centers.row(c)));
  }
  return centers;
}

Restart lloyd(const Matrix& x, std::size_t K, const KMeansConfig& cfg, Rng& rng) {
  const std::size_t n = x.rows(), d = x.cols();
  Matrix centers = seed_centers(x, K, rng);
  Restart r;
  r.assign.assign(n, -1);
  std::vector<std::size_t> sizes(K);
  double previous = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    bool changed = false;
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = sq_dist(x.row(i), centers.row(0));
      for (std::size_t c = 1; c < K; ++c) {
        const double dist = sq_dist(x.row(i), centers.row(c));
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      changed |= r.assign[i] != static_cast<int>(best);
      r.assign[i] = static_cast<int>(best);
      ++sizes[best];
    }

    // Empty clusters take the point farthest from its center.
    for (std::size_t c = 0; c < K; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto owner = static_cast<std::size_t>(r.assign[i]);
        if (sizes[owner] < 2) continue;
        const double dist = sq_dist(x.row(i), centers.row(owner));
        if (dist > far_d) {
          far_d = dist;
          far = i;
        }
      }
      if (far == n) throw Error("k-means could not repair an empty cluster");
      --sizes[static_cast<std::size_t>(r.assign[far])];
      r.assign[far] = static_cast<int>(c);
      sizes[c] = 1;
      changed = true;
    }

    centers = Matrix(K, d);
    for (std::size_t i = 0; i < n; ++i) {
      auto crow = centers.row(static_cast<std::size_t>(r.assign[i]));
      const auto xrow = x.row(i);
      for (std::size_t k = 0; k < d; ++k) crow[k] += xrow[k];
    }
    for (std::size_t c = 0; c < K; ++c)
      for (double& v : centers.row(c)) v /= static_cast<double>(sizes[c]);

    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      objective += sq_dist(x.row(i), centers.row(static_cast<std::size_t>(r.assign[i])));
    r.trace.push_back(objective);
    r.objective = objective;
    r.iterations = iter;

    if (!changed) break;
    if (std::isfinite(previous) && previous - objective <= cfg.rel_tol * previous) break;
    previous = objective;
  }
  return r;
}

LabelVector first_appearance_labels(const std::vector<int>& assign, int K) {
  std::vector<int> remap(static_cast<std::size_t>(K), 0);
  int next = 1;
  LabelVector out;
  out.K = K;
  out.labels.reserve(assign.size());
  for (int a : assign) {
    int& slot = remap[static_cast<std::size_t>(a)];
    if (slot == 0) slot = next++;
    out.labels.push_back(slot);
  }
  return out;
}

}  // namespace

void KMeansConfig::validate() const {
  if (restarts < 1) throw InvalidArgument("k-means restarts must be >= 1");
  if (max_iters < 1) throw InvalidArgument("k-means max_iters must be >= 1");
  if (!(rel_tol > 0.0)) throw InvalidArgument("k-means rel_tol must be > 0");
}

KMeansResult kmeans_fit(const Matrix& points, int K, const KMeansConfig& cfg) {
  cfg.validate();
  if (K < 1) throw InvalidArgument("K must be >= 1");
  if (static_cast<std::size_t>(K) > points.rows())
    throw InvalidArgument("K = " + std::to_string(K) + " exceeds the number of points " +
                          std::to_string(points.rows()));
  if (!all_finite(points)) throw InvalidArgument("k-means input has non-finite entries");

  Restart best;
  int best_index = -1;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(r)}));
    Restart candidate = lloyd(points, static_cast<std::size_t>(K), cfg, rng);
    if (best_index < 0 || candidate.objective < best.objective) {
      best = std::move(candidate);
      best_index = r;
    }
  }

  KMeansResult out;
  out.labels = first_appearance_labels(best.assign, K);
  out.objective = best.objective;
  out.best_restart = best_index;
  out.iterations = best.iterations;
  out.restarts = cfg.restarts;
  out.objective_trace = std::move(best.trace);
  return out;
}

LabelVector kmeans(const Matrix& points, int K, const KMeansConfig& cfg) {
  return kmeans_fit(points, K, cfg).labels;
}

std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<double>>& weight) {
  const std::size_t n = weight.size();
  for (const auto& row : weight)
    if (row.size() != n) throw InvalidArgument("assignment needs a square weight matrix");
  if (n == 0) return {};

  // Shortest augmenting path Hungarian method on cost = -weight, 1-based.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of_row(n);
  for (std::size_t j = 1; j <= n; ++j) col_of_row[p[j] - 1] = j - 1;
  return col_of_row;
}

AlignmentResult align_and_count(const LabelVector& est, const LabelVector& truth) {
  if (est.size() != truth.size())
    throw InvalidArgument("label vectors differ in length: " + std::to_string(est.size()) + " vs " +
                          std::to_string(truth.size()));
  est.validate();
  truth.validate();
  const auto K = static_cast<std::size_t>(std::max(est.K, truth.K));
  std::vector<std::vector<double>> confusion(K, std::vector<double>(K, 0.0));
  for (std::size_t i = 0; i < est.size(); ++i)
    confusion[static_cast<std::size_t>(est[i] - 1)][static_cast<std::size_t>(truth[i] - 1)] += 1.0;

  const auto match = max_weight_assignment(confusion);
  AlignmentResult out;
  std::size_t agree = 0;
  out.permutation.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    out.permutation[k] = static_cast<int>(match[k]) + 1;
    agree += static_cast<std::size_t>(confusion[k][match[k]]);
  }
  out.mismatches = est.size() - agree;
  out.error_rate = est.size() ? static_cast<double>(out.mismatches) / static_cast<double>(est.size()) : 0.0;
  return out;
}

double hamming_rate(const LabelVector& est, const LabelVector& truth) {
  return align_and_count(est, truth).error_rate;
}

}  // namespace drsc

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "drsc/clustering.hpp"
#include "drsc/error.hpp"
#include "oracles.hpp"

using namespace drsc;

namespace {

LabelVector labels(std::vector<int> l, int K) { return LabelVector{std::move(l), K}; }

LabelVector random_labels(std::size_t n, int K, Rng& rng) {
  LabelVector out;
  out.K = K;
  for (std::size_t i = 0; i < n; ++i) out.labels.push_back(1 + static_cast<int>(rng.below(static_cast<std::size_t>(K))));
  return out;
}

Matrix two_clouds(Rng& rng) {
  Matrix x(40, 2);
  for (std::size_t i = 0; i < 40; ++i) {
    const double c = i < 20 ? 0.0 : 10.0;
    x(i, 0) = c + 0.02 * (rng.uniform() - 0.5);
    x(i, 1) = c + 0.02 * (rng.uniform() - 0.5);
  }
  return x;
}

}  // namespace

TEST_CASE("kmeans separates two clouds") {
  Rng rng(1);
  const Matrix x = two_clouds(rng);
  const LabelVector l = kmeans(x, 2);
  for (std::size_t i = 0; i < 40; ++i) CHECK(l[i] == (i < 20 ? 1 : 2));
}

TEST_CASE("kmeans degenerate K") {
  Rng rng(2);
  const Matrix x = two_clouds(rng);
  const KMeansResult one = kmeans_fit(x, 1);
  for (int v : one.labels.labels) CHECK(v == 1);
  Matrix small{{0, 0}, {1, 0}, {0, 5}, {3, 3}};
  const KMeansResult all = kmeans_fit(small, 4);
  CHECK(all.objective == doctest::Approx(0.0));
  std::vector<int> l = all.labels.labels;
  std::sort(l.begin(), l.end());
  CHECK(l == std::vector<int>{1, 2, 3, 4});
  CHECK_THROWS_AS(kmeans_fit(small, 5), InvalidArgument);
  small(0, 0) = std::nan("");
  CHECK_THROWS_AS(kmeans_fit(small, 2), Error);
}

TEST_CASE("kmeans config validation") {
  KMeansConfig c;
  c.restarts = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.max_iters = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.rel_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("kmeans objective is non-increasing and deterministic") {
  Rng rng(4);
  Matrix x(120, 3);
  for (double& v : x.data()) v = rng.uniform();
  KMeansConfig cfg;
  cfg.restarts = 5;
  cfg.seed = 99;
  const KMeansResult a = kmeans_fit(x, 4, cfg);
  const KMeansResult b = kmeans_fit(x, 4, cfg);
  CHECK(a.labels == b.labels);
  CHECK(a.objective == b.objective);
  REQUIRE_FALSE(a.objective_trace.empty());
  for (std::size_t i = 1; i < a.objective_trace.size(); ++i)
    CHECK(a.objective_trace[i] <= a.objective_trace[i - 1] + 1e-12);
  CHECK(a.objective == doctest::Approx(a.objective_trace.back()));
  // Labels are numbered by first appearance.
  int next = 1;
  for (int v : a.labels.labels) {
    CHECK(v <= next);
    if (v == next) ++next;
  }
}

TEST_CASE("kmeans is invariant under a coordinate sign flip") {
  Rng rng(6);
  Matrix x(80, 3);
  for (std::size_t i = 0; i < 80; ++i)
    for (std::size_t j = 0; j < 3; ++j) x(i, j) = static_cast<double>(i % 3) * 2.0 + rng.uniform();
  Matrix y = x;
  for (std::size_t i = 0; i < 80; ++i) y(i, 1) = -y(i, 1);
  const KMeansResult a = kmeans_fit(x, 3);
  const KMeansResult b = kmeans_fit(y, 3);
  CHECK(std::abs(a.objective - b.objective) <= 1e-10);
  CHECK(align_and_count(a.labels, b.labels).mismatches == 0);
}

TEST_CASE("align_and_count small cases") {
  const AlignmentResult swap = align_and_count(labels({1, 1, 2, 2}, 2), labels({2, 2, 1, 1}, 2));
  CHECK(swap.mismatches == 0);
  CHECK(swap.permutation == std::vector<int>{2, 1});
  CHECK(align_and_count(labels({1, 2, 2}, 2), labels({1, 1, 2}, 2)).mismatches == 1);
  CHECK_THROWS_AS(align_and_count(labels({1, 2}, 2), labels({1, 2, 2}, 2)), InvalidArgument);
}

TEST_CASE("hamming rate") {
  CHECK(hamming_rate(labels({1, 2, 3}, 3), labels({3, 1, 2}, 3)) == 0.0);
  LabelVector ones, truth;
  ones.K = 2;
  truth.K = 2;
  for (int i = 0; i < 100; ++i) {
    ones.labels.push_back(1);
    truth.labels.push_back(i < 50 ? 1 : 2);
  }
  CHECK(hamming_rate(ones, truth) == doctest::Approx(0.5));
}

TEST_CASE("Hungarian alignment equals the brute-force minimum") {
  Rng rng(8);
  for (int t = 0; t < 1000; ++t) {
    const int K = 1 + static_cast<int>(rng.below(6));
    const std::size_t n = 1 + rng.below(60);
    const LabelVector truth = random_labels(n, K, rng);
    LabelVector est = truth;
    for (auto& v : est.labels)
      if (rng.bernoulli(0.4)) v = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(K)));
    const AlignmentResult r = align_and_count(est, truth);
    CHECK(r.mismatches == oracle::brute_force_mismatches(est, truth));
    CHECK(r.error_rate == doctest::Approx(static_cast<double>(r.mismatches) / static_cast<double>(n)));
    std::vector<int> p = r.permutation;
    std::sort(p.begin(), p.end());
    std::vector<int> id(static_cast<std::size_t>(K));
    std::iota(id.begin(), id.end(), 1);
    CHECK(p == id);
  }
}

TEST_CASE("alignment is invariant under relabeling the estimate") {
  Rng rng(10);
  const LabelVector truth = random_labels(60, 5, rng);
  const LabelVector est = random_labels(60, 5, rng);
  std::vector<int> perm{3, 5, 1, 2, 4};
  LabelVector relabeled = est;
  for (auto& v : relabeled.labels) v = perm[static_cast<std::size_t>(v - 1)];
  CHECK(align_and_count(est, truth).mismatches == align_and_count(relabeled, truth).mismatches);
}

TEST_CASE("max weight assignment") {
  const std::vector<std::vector<double>> w{{1, 5, 0}, {4, 1, 0}, {0, 0, 2}};
  CHECK(max_weight_assignment(w) == std::vector<std::size_t>{1, 0, 2});
}

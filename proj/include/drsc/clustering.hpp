#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "drsc/labels.hpp"
#include "drsc/matrix.hpp"

namespace drsc {

struct KMeansConfig {
  int restarts = 50;
  int max_iters = 300;
  double rel_tol = 1e-10;
  std::uint64_t seed = 20240229;

  void validate() const;
};

struct KMeansResult {
  LabelVector labels;
  double objective = 0.0;   // within-cluster sum of squares of the kept restart
  int best_restart = 0;
  int iterations = 0;       // Lloyd iterations of the kept restart
  int restarts = 0;
  std::vector<double> objective_trace;  // per-iteration objective of the kept restart
};

// Lloyd's algorithm with k-means++ seeding and independent restarts; keeps the
// restart with the lowest objective (ties to the lowest restart index). An
// empty cluster is reseeded with the point farthest from its current center.
// Labels are numbered by first appearance.
KMeansResult kmeans_fit(const Matrix& points, int K, const KMeansConfig& cfg = {});
LabelVector kmeans(const Matrix& points, int K, const KMeansConfig& cfg = {});

struct AlignmentResult {
  std::size_t mismatches = 0;
  // permutation[k-1] is the truth label assigned to estimated label k.
  std::vector<int> permutation;
  double error_rate = 0.0;
};

// Minimum over label permutations of the number of disagreeing nodes,
// computed exactly by max-weight assignment on the confusion matrix.
AlignmentResult align_and_count(const LabelVector& est, const LabelVector& truth);
double hamming_rate(const LabelVector& est, const LabelVector& truth);

// Kuhn-Munkres on a square weight matrix; returns col[row] maximizing the
// total weight.
std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<double>>& weight);

}  // namespace drsc

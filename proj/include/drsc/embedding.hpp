#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drsc/clustering.hpp"
#include "drsc/graph.hpp"
#include "drsc/laplacian.hpp"
#include "drsc/linalg.hpp"

namespace drsc {

// Leading eigenvectors scaled by their eigenvalues: column k of X is
// values[k] times the k-th unit eigenvector.
struct SpectralEmbedding {
  Matrix X;
  Vector values;
};

int default_K0(Family family);

struct MethodSpec {
  Family family = Family::SC;
  int M = 2;                      // regularization depth
  std::optional<int> K0;          // extra eigenvectors; family default when unset
  double gamma = 0.25;            // SLIM only
  RegularizerSchedule schedule;   // Defaults, or explicit taus of length M
  KMeansConfig kmeans;

  int k0() const { return K0.value_or(default_K0(family)); }
  void validate() const;

  static MethodSpec dual(Family family);
  static MethodSpec multiple(Family family, int M);
};

// Canonical names: DRSC, DRSCORE, DRSLIM for depth 2, "<M>RSC" otherwise, with
// a "_K+<K0>" suffix when K0 differs from the family default.
std::string method_name(const MethodSpec& spec);
// Accepts the canonical names case-insensitively, plus MRSC/MRSCORE/MRSLIM
// (depth taken from `mr_depth`).
MethodSpec parse_method(std::string_view name, int mr_depth = 2);

SpectralEmbedding embed_sc(const Matrix& s, int K, int K0);
SpectralEmbedding embed_sc(const RegularizedLaplacian& l, int K, int K0);

struct RowNormalized {
  Matrix X;
  std::vector<std::size_t> zero_rows;  // rows left at zero
};
RowNormalized row_normalize(const Matrix& x, double zero_tol = kDefaultTolerances.zero_row);

// R(i,k) = X(i,k+1) / X(i,1). Throws DomainError naming the first node with
// |X(i,1)| <= denom_tol.
Matrix ratio_matrix(const Matrix& x, double denom_tol = kDefaultTolerances.ratio_denominator);

// (W + W')/2 with zero diagonal, W = (I - exp(-gamma) D^{-1} L)^{-1}, where
// D is the regularized degree diagonal L was built with.
Matrix slim_similarity(const RegularizedLaplacian& l, double gamma);

struct MethodResult {
  LabelVector labels;
  SpectralEmbedding embedding;
  Matrix features;                     // the matrix handed to k-means
  std::vector<double> taus;            // resolved regularizers
  KMeansResult kmeans;
  std::vector<std::size_t> zero_rows;
  bool connected = true;
};

// Full pipeline on a symmetric nonnegative matrix S (an adjacency matrix or a
// population expectation matrix).
MethodResult run_on_matrix(const Matrix& s, int K, const MethodSpec& spec);

MethodResult run_method_detailed(const Graph& g, int K, const MethodSpec& spec);
LabelVector run_method(const Graph& g, int K, const MethodSpec& spec);

// The same pipeline with the expectation matrix in place of A.
MethodResult run_ideal_detailed(const Matrix& omega, int K, const MethodSpec& spec);
LabelVector run_ideal(const Matrix& omega, int K, const MethodSpec& spec);

}  // namespace drsc

#pragma once

#include <span>
#include <string>
#include <vector>

#include "drsc/graph.hpp"
#include "drsc/matrix.hpp"

namespace drsc {

// D_tau^{-1/2} S D_tau^{-1/2} where D_tau = diag(row sums of S) + tau I.
struct RegularizedLaplacian {
  Matrix matrix;
  double tau = 0.0;
  // Row sums of `matrix`; the degree diagonal of the next regularization stage.
  Vector row_sums;
  // Row sums of the source matrix plus tau: the D_tau this stage was built with.
  Vector regularized_degree;
};

// Spectral pipeline family.
enum class Family { SC, SCORE, SLIM };

// Named methods with fixed depth (DR*: M = 2) or caller-chosen depth (MR*).
enum class Method { DRSC, DRSCORE, DRSLIM, MRSC, MRSCORE, MRSLIM };

Family family_of(Method m);
std::string to_string(Family f);

struct RegularizerSchedule {
  enum class Policy { Explicit, Defaults };

  std::vector<double> taus;
  Policy policy = Policy::Defaults;

  static RegularizerSchedule explicit_values(std::vector<double> taus);
  static RegularizerSchedule defaults() { return {}; }
  std::size_t depth() const noexcept { return taus.size(); }
};

RegularizedLaplacian regularized_laplacian(const Matrix& s, double tau);

// Folds regularized_laplacian over the taus starting from S (S = A gives
// L_{tau_1}, ..., L_{tau_M}).
RegularizedLaplacian multiple_laplacian(const Matrix& s, std::span<const double> taus);
// The schedule must carry explicit taus.
RegularizedLaplacian multiple_laplacian(const Graph& g, const RegularizerSchedule& schedule);

// Per-family default regularizers for an M-fold Laplacian of S:
//   SC, SLIM: tau_m = sum(L_{m-1}) / n
//   SCORE:    tau_m = sum(L_{m-1}) for m < M, tau_M = sum(L_{M-1}) / (n K)
// with L_0 = S.
RegularizerSchedule default_taus(Family family, const Matrix& s, int K, int M);
// DR* methods ignore M and use depth 2.
RegularizerSchedule default_taus(Method method, const Graph& g, int K, int M = 2);

}  // namespace drsc

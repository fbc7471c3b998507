#pragma once

#include "drsc/dcsbm.hpp"
#include "drsc/laplacian.hpp"
#include "drsc/linalg.hpp"

namespace drsc {

// Population counterparts of L_tau1 and L_tau2, built from Omega exactly as
// the sample versions are built from A.
struct PopulationLaplacians {
  RegularizedLaplacian first;   // from Omega
  RegularizedLaplacian second;  // from first.matrix
};
PopulationLaplacians population_laplacians(const DcsbmParams& p, double tau1, double tau2);

// Block form Theta_tau^{1/2} Z P_tilde Z' Theta_tau^{1/2} of one population
// Laplacian level.
struct PopulationFactorization {
  int level = 1;
  Vector theta_tau;   // length n
  Matrix P_tilde;     // K x K
  Matrix Q;           // K x n
  Vector D_P;         // K diagonal entries, row sums of Q
  Vector script_D;    // length n: row sums of the matrix this level regularizes
};

Matrix reconstruct(const PopulationFactorization& f, const LabelVector& z);

struct FactorizationCheck {
  double residual1 = 0.0;  // Frobenius distance for the first level
  double residual2 = 0.0;
  PopulationFactorization f1;
  PopulationFactorization f2;
};
FactorizationCheck verify_factorization(const DcsbmParams& p, double tau1, double tau2);

// The K nonzero eigenpairs of the second-level population Laplacian from the
// K x K block problem. Vectors follow the sym_eig sign convention. Warns when
// the block eigenvalues are not simple.
struct PopulationEigen {
  EigenPairs pairs;
  Vector theta_tilde;      // sqrt(theta_tau2)
  bool simple = true;      // block eigenvalues separated by more than the gap tolerance
};
PopulationEigen population_eigvectors(const DcsbmParams& p, double tau1, double tau2,
                                      const Tolerances& tol = kDefaultTolerances);

// Largest within-community variance of v(i) / w(i).
double max_block_ratio_variance(const Vector& v, const Vector& w, const LabelVector& z);

}  // namespace drsc

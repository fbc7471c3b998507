#pragma once

#include <cstddef>
#include <span>

#include "drsc/matrix.hpp"

namespace drsc {

// Numerical thresholds shared by the dense kernels and the pipelines built on
// top of them.
struct Tolerances {
  double symmetry = 1e-10;             // max |S(i,j) - S(j,i)| accepted as symmetric
  double singular_pivot = 1e-12;       // LU pivot floor, relative to max |S(i,j)|
  double zero_row = 1e-14;             // row norm below which a row counts as zero
  double ratio_denominator = 1e-14;    // |X(i,1)| floor for eigen-ratios
  double sign_tie = 1e-12;             // relative tie window for the sign convention
  double eigen_gap = 1e-9;             // eigenvalues closer than this are degenerate
};

inline constexpr Tolerances kDefaultTolerances{};

// Eigenpairs ordered by descending |value|. Column k of `vectors` is the unit
// eigenvector for values[k].
struct EigenPairs {
  Vector values;
  Matrix vectors;
  std::size_t source_dim = 0;

  std::size_t size() const noexcept { return values.size(); }
  Vector vector(std::size_t k) const { return vectors.column(k); }
};

// Full spectrum of a symmetric matrix via Householder tridiagonalization and
// implicit-shift QL. The input is symmetrized as (S + S')/2. Each eigenvector
// is signed so that its largest-magnitude coordinate is positive (lowest index
// wins a tie).
EigenPairs sym_eig(const Matrix& s, const Tolerances& tol = kDefaultTolerances);

// Eigenvalues only, ordered by descending magnitude. Cheaper than sym_eig.
Vector sym_eigenvalues(const Matrix& s, const Tolerances& tol = kDefaultTolerances);

// The m largest-magnitude eigenpairs. A first eigenvector whose entries all
// share one sign is oriented entrywise nonnegative.
EigenPairs leading_eigs(const Matrix& s, std::size_t m, const Tolerances& tol = kDefaultTolerances);

// Dense inverse by LU with partial pivoting. Throws SingularMatrix when a
// pivot falls below tol.singular_pivot * max|S(i,j)|.
Matrix invert(const Matrix& s, const Tolerances& tol = kDefaultTolerances);

double spectral_norm(const Matrix& s);

// Flips v so that its largest-magnitude entry is positive; entries within a
// relative `tie` of the peak count as ties and the lowest index decides.
void orient_eigenvector(std::span<double> v, double tie = kDefaultTolerances.sign_tie);

}  // namespace drsc

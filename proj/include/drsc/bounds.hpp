#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "drsc/dcsbm.hpp"
#include "drsc/graph.hpp"

namespace drsc {

// Inputs of the error-bound calculators. delta_* are extremes of the
// population degrees (row sums of Omega); Delta_* are extremes of the sample
// degrees (row sums of A).
struct BoundInputs {
  std::size_t n = 0;
  int K = 0;
  double epsilon = 0.05;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double gamma = 0.25;
  double delta_min = 0.0, delta_max = 0.0;
  double Delta_min = 0.0, Delta_max = 0.0;
  double lambda_K = 0.0;       // K-th population eigenvalue of the second-level Laplacian
  double lambda_hat_K1 = 0.0;  // (K+1)-th sample eigenvalue of L_tau2
  double m_a = 0.0;            // shortest row over the sample and population SC embeddings
  double m_b = 0.0;            // shortest row over the sample and population SLIM embeddings
  double slim_lambda1 = 0.0;   // leading population SLIM eigenvalue
  double slim_gap = 0.0;       // gap between population SLIM eigenvalues K+2 and K+3

  void validate() const;
};

struct Varpi {
  double a = 0.0;
  double b = 0.0;
};
Varpi varpi(const BoundInputs& b);

// Concentration radius for ||L_tau2 - population L_tau2||. Warns when
// assumption (a) fails.
double err_n(const BoundInputs& b);

// SLIM perturbation radius. Throws DomainError when exp(-gamma) violates the
// invertibility condition, naming the sample or population side.
double Err_n(const BoundInputs& b);

bool assumption_a(const BoundInputs& b);                    // tau1 + delta_min > 3 log(4n/eps)
bool assumption_b(const BoundInputs& b, double err);        // err <= lambda_K / 2
struct AssumptionC {
  bool holds = false;
  double sample_limit = 0.0;      // bound from the sample degree extremes
  double population_limit = 0.0;  // bound from the population degree extremes
};
AssumptionC assumption_c(const BoundInputs& b);

enum class BoundMethod { DRSC, DRSLIM };

// Frobenius bound on the distance between the sample and population
// embeddings (before row normalization).
double embedding_bound(BoundMethod method, const BoundInputs& b);
// Bound on the Hamming error rate.
double hamming_bound(BoundMethod method, const BoundInputs& b);
// DRSC Hamming bound with err_n replaced by its largest admissible value.
double drsc_hamming_ceiling(const BoundInputs& b);
// Sign-aligned eigenvector perturbation radius 8 err sqrt(K) / lambda_K.
double eigenvector_bound(const BoundInputs& b, double err);
double slim_eigenvector_bound(const BoundInputs& b, double slim_err);

// Measures the data-dependent inputs (degree extremes, spectra, embedding
// row lengths) for one sampled graph.
BoundInputs measure_bound_inputs(const DcsbmParams& p, const Graph& g, double tau1, double tau2,
                                 double epsilon = 0.05, double gamma = 0.25);

struct ConcentrationRow {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double mean_dev = 0.0;    // mean spectral-norm deviation over reps
  double err_n = 0.0;       // mean err_n over reps (Delta varies per sample)
  double weyl_max = 0.0;    // max over reps and k <= K of |lambda_hat_k - lambda_k|
  double coverage = 0.0;    // fraction of reps with deviation <= err_n
  // Diagnostics.
  std::size_t reps = 0;
  std::size_t weyl_violations = 0;     // reps where some eigenvalue moved more than the deviation
  bool assumption_a = false;
  std::size_t eigvec_checked = 0;      // reps where (a) and (b) hold
  std::size_t eigvec_covered = 0;      // of those, reps within the eigenvector bound
  std::size_t eigvec_projector = 0;    // reps measured by projector distance
  std::vector<double> deviations;      // per-rep deviations
};

// Samples `reps` graphs from p (one per rep, shared across the tau grid) and
// compares each sample L_tau2 with its population counterpart.
std::vector<ConcentrationRow> concentration_experiment(const DcsbmParams& p,
                                                       const std::vector<std::pair<double, double>>& tau_grid,
                                                       std::size_t reps, std::uint64_t seed, double epsilon = 0.05);

void write_concentration_csv(std::ostream& out, const std::vector<ConcentrationRow>& rows);

// Centered moving average; the window shrinks at the ends.
std::vector<double> moving_average(const std::vector<double>& values, std::size_t window);

}  // namespace drsc

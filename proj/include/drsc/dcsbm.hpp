#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "drsc/embedding.hpp"
#include "drsc/graph.hpp"
#include "drsc/labels.hpp"
#include "drsc/matrix.hpp"

namespace drsc {

// Degree-corrected blockmodel: P(A_ij = 1) = theta_i theta_j P(z_i, z_j).
struct DcsbmParams {
  std::size_t n = 0;
  int K = 0;
  Matrix P;       // K x K, symmetric, entries in [0,1]
  Vector theta;   // length n, entries in (0,1]
  LabelVector z;  // memberships in {1..K}

  // Throws InvalidArgument on any violated invariant. Full rank means
  // min |eigenvalue(P)| > 1e-12.
  void validate(bool require_full_rank = true) const;
};

// Omega = Theta Z P Z' Theta, diagonal included. Throws DomainError
// "invalid probability" when an entry exceeds 1.
Matrix build_omega(const DcsbmParams& p);

// Independent Bernoulli(Omega(i,j)) edges for i < j.
Graph sample_adjacency(const Matrix& omega, std::uint64_t seed);

// Membership draw: i.i.d. categorical with the given probabilities, redrawn
// until every community is nonempty.
struct MembershipDraw {
  LabelVector z;
  std::size_t rejections = 0;
};
MembershipDraw draw_memberships(std::size_t n, const std::vector<double>& probabilities, std::uint64_t seed);

// Simulation studies.
struct ExperimentGrid {
  std::string id;         // 1a, 1b, 2a..2f, 3a, 3b
  std::string parameter;  // n, a0, b0, c0, d0, alpha, beta
  std::vector<double> values;
};

const std::vector<std::string>& experiment_ids();
ExperimentGrid experiment_grid(std::string_view id);

struct ExperimentDraw {
  DcsbmParams params;
  std::size_t rejections = 0;
};
// Parameters of one network of the given study at one grid point. Random
// memberships come from `seed`; grid_point must be one of the grid values.
ExperimentDraw experiment_draw(std::string_view id, double grid_point, std::uint64_t seed);
DcsbmParams experiment_params(std::string_view id, double grid_point, std::uint64_t seed);

// Two equal-probability blocks, theta 0.3 / 0.7, P = [[0.1, 0.05], [0.05, 0.1]].
// The setting of the concentration studies.
DcsbmParams sparse_two_block_params(std::size_t n, std::uint64_t seed);

// Random instance: P with entries in [0.05, 1] redrawn until full rank and
// K distinct rows, theta uniform in [theta_lo, 1], nonempty communities.
DcsbmParams random_params(std::size_t n, int K, std::uint64_t seed, double theta_lo = 0.2);

struct ExperimentConfig {
  std::string id;
  std::string parameter;
  std::vector<double> grid;
  int reps = 50;
  std::vector<MethodSpec> methods;
  std::uint64_t seed = 20240229;

  void validate() const;
};

// Methods compared in the simulation studies: DRSC, DRSCORE, DRSLIM and the
// single-regularization baselines 1RSC, 1RSCORE, 1RSLIM.
std::vector<MethodSpec> default_methods();

// reps defaults to 20 with every `grid_stride`-th grid point kept (the ends of
// the grid are always kept); paper_scale restores 50 reps and the full grid.
ExperimentConfig make_experiment_config(std::string_view id, bool paper_scale = false, int grid_stride = 1);

std::string to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(std::string_view text);

}  // namespace drsc

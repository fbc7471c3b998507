#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drsc/dcsbm.hpp"
#include "drsc/embedding.hpp"
#include "drsc/graph.hpp"

namespace drsc {

struct RunRecord {
  std::string source;                 // experiment id or dataset name
  std::string parameter;              // grid parameter name, empty for datasets
  std::optional<double> grid_point;
  int rep = 0;
  std::string method;
  std::size_t mismatches = 0;
  std::size_t n = 0;
  double error_rate = 0.0;
  double elapsed_ms = 0.0;
  std::uint64_t seed = 0;             // seed of this record's random streams
  double objective = 0.0;             // k-means objective of the kept restart
  int restarts = 0;
  std::vector<double> taus;
  std::size_t rejections = 0;         // membership redraws (simulations)
  bool failed = false;
  std::string note;                   // failure message or collected warnings

  std::string count_text() const;     // "mismatches/n"
};

struct MeanRow {
  std::string source;
  std::string parameter;
  std::optional<double> grid_point;
  std::string method;
  double mean_error = 0.0;            // over successful reps
  std::size_t reps = 0;               // successful reps
  std::size_t failures = 0;
};

// The seed of repetition `rep` at grid index `grid_index` of an experiment.
std::uint64_t record_seed(std::uint64_t top, std::string_view source, std::size_t grid_index, std::size_t rep);

// One record per (grid point, rep, method), ordered in that nesting. Each
// (grid point, rep) draws one network shared by all methods.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

// Means over successful reps per (source, grid point, method), in first-seen order.
std::vector<MeanRow> aggregate_means(const std::vector<RunRecord>& records);

// Runs each method once on a labeled network with k-means seeded by `seed`.
std::vector<RunRecord> run_dataset(const std::string& name, const LabeledGraph& data,
                                   const std::vector<MethodSpec>& methods, std::uint64_t seed);

std::vector<std::pair<double, double>> line_grid(const std::vector<double>& taus);
std::vector<std::pair<double, double>> product_grid(const std::vector<double>& tau1s, const std::vector<double>& tau2s);

struct SweepRow {
  double tau1 = 0.0;
  double tau2 = 0.0;
  RunRecord record;
};
// Mismatch count of one method at each (tau1, tau2); `base` must have M = 2.
std::vector<SweepRow> sweep_regularizers(const std::string& name, const LabeledGraph& data, const MethodSpec& base,
                                         const std::vector<std::pair<double, double>>& grid, std::uint64_t seed);

// One record per depth M with default regularizers.
std::vector<RunRecord> run_mrsc_table(const std::string& name, const LabeledGraph& data, Family family,
                                      const std::vector<int>& depths, std::uint64_t seed);

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_means_csv(std::ostream& out, const std::vector<MeanRow>& rows);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace drsc

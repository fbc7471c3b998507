#include "drsc/harness.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <tuple>

#include "drsc/csv.hpp"
#include "drsc/diagnostics.hpp"
#include "drsc/error.hpp"
#include "drsc/random.hpp"

namespace drsc {
namespace {

std::string join_taus(const std::vector<double>& taus) {
  std::string out;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    if (k) out += ';';
    out += format_double(taus[k]);
  }
  return out;
}

// Runs one method and fills the outcome fields of `rec`.
void run_into(RunRecord& rec, const Graph& g, const LabelVector& truth, int K, const MethodSpec& spec) {
  std::vector<std::string> warnings;
  ScopedWarningSink sink([&](const std::string& m) { warnings.push_back(m); });
  const auto start = std::chrono::steady_clock::now();
  rec.method = method_name(spec);
  rec.n = g.n();
  rec.restarts = spec.kmeans.restarts;
  try {
    const MethodResult res = run_method_detailed(g, K, spec);
    const AlignmentResult al = align_and_count(res.labels, truth);
    rec.mismatches = al.mismatches;
    rec.error_rate = al.error_rate;
    rec.objective = res.kmeans.objective;
    rec.taus = res.taus;
  } catch (const Error& e) {
    rec.failed = true;
    rec.mismatches = 0;
    rec.error_rate = std::nan("");
    warnings.insert(warnings.begin(), e.what());
  }
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  for (const auto& w : warnings) {
    if (!rec.note.empty()) rec.note += "; ";
    rec.note += w;
  }
}

std::string grid_text(const std::optional<double>& g) { return g ? format_double(*g) : std::string(); }

}  // namespace

std::string RunRecord::count_text() const {
  if (failed) return "failed";
  return std::to_string(mismatches) + "/" + std::to_string(n);
}

std::uint64_t record_seed(std::uint64_t top, std::string_view source, std::size_t grid_index, std::size_t rep) {
  return derive_seed(top, {tag_hash(source), static_cast<std::uint64_t>(grid_index), static_cast<std::uint64_t>(rep)});
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<RunRecord> out;
  out.reserve(cfg.grid.size() * static_cast<std::size_t>(cfg.reps) * cfg.methods.size());
  for (std::size_t gi = 0; gi < cfg.grid.size(); ++gi) {
    for (int rep = 0; rep < cfg.reps; ++rep) {
      const std::uint64_t seed = record_seed(cfg.seed, cfg.id, gi, static_cast<std::size_t>(rep));
      RunRecord base;
      base.source = cfg.id;
      base.parameter = cfg.parameter;
      base.grid_point = cfg.grid[gi];
      base.rep = rep;
      base.seed = seed;

      Graph g;
      LabelVector truth;
      int K = 0;
      std::string draw_error;
      try {
        const ExperimentDraw draw = experiment_draw(cfg.id, cfg.grid[gi], derive_seed(seed, {0}));
        base.rejections = draw.rejections;
        g = sample_adjacency(build_omega(draw.params), derive_seed(seed, {1}));
        truth = draw.params.z;
        K = draw.params.K;
      } catch (const Error& e) {
        draw_error = e.what();
      }

      for (const MethodSpec& m : cfg.methods) {
        RunRecord rec = base;
        if (!draw_error.empty()) {
          rec.method = method_name(m);
          rec.failed = true;
          rec.error_rate = std::nan("");
          rec.note = draw_error;
          out.push_back(std::move(rec));
          continue;
        }
        MethodSpec spec = m;
        spec.kmeans.seed = derive_seed(seed, {2});
        run_into(rec, g, truth, K, spec);
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<MeanRow> aggregate_means(const std::vector<RunRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::size_t> index;
  std::vector<MeanRow> rows;
  for (const auto& r : records) {
    const Key key{r.source, grid_text(r.grid_point), r.method};
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      MeanRow row;
      row.source = r.source;
      row.parameter = r.parameter;
      row.grid_point = r.grid_point;
      row.method = r.method;
      rows.push_back(row);
    }
    MeanRow& row = rows[it->second];
    if (r.failed) {
      ++row.failures;
    } else {
      row.mean_error += r.error_rate;
      ++row.reps;
    }
  }
  for (auto& row : rows) row.mean_error = row.reps ? row.mean_error / static_cast<double>(row.reps) : std::nan("");
  return rows;
}

std::vector<RunRecord> run_dataset(const std::string& name, const LabeledGraph& data,
                                   const std::vector<MethodSpec>& methods, std::uint64_t seed) {
  std::vector<RunRecord> out;
  for (const MethodSpec& m : methods) {
    RunRecord rec;
    rec.source = name;
    rec.seed = seed;
    MethodSpec spec = m;
    spec.kmeans.seed = seed;
    run_into(rec, data.graph, data.truth, data.K, spec);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<std::pair<double, double>> line_grid(const std::vector<double>& taus) {
  std::vector<std::pair<double, double>> out;
  for (double t : taus) out.emplace_back(t, t);
  return out;
}

std::vector<std::pair<double, double>> product_grid(const std::vector<double>& tau1s, const std::vector<double>& tau2s) {
  std::vector<std::pair<double, double>> out;
  for (double a : tau1s)
    for (double b : tau2s) out.emplace_back(a, b);
  return out;
}

std::vector<SweepRow> sweep_regularizers(const std::string& name, const LabeledGraph& data, const MethodSpec& base,
                                         const std::vector<std::pair<double, double>>& grid, std::uint64_t seed) {
  if (base.M != 2) throw InvalidArgument("regularizer sweeps use depth-2 methods");
  std::vector<SweepRow> out;
  for (const auto& [t1, t2] : grid) {
    MethodSpec spec = base;
    spec.schedule = RegularizerSchedule::explicit_values({t1, t2});
    SweepRow row;
    row.tau1 = t1;
    row.tau2 = t2;
    row.record = run_dataset(name, data, {spec}, seed).front();
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<RunRecord> run_mrsc_table(const std::string& name, const LabeledGraph& data, Family family,
                                      const std::vector<int>& depths, std::uint64_t seed) {
  std::vector<MethodSpec> methods;
  for (int M : depths) methods.push_back(MethodSpec::multiple(family, M));
  return run_dataset(name, data, methods, seed);
}

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  write_csv_row(out, {"source", "parameter", "grid_point", "rep", "method", "mismatches", "n", "error_rate",
                      "elapsed_ms", "seed", "objective", "restarts", "taus", "rejections", "failed", "note"});
  for (const auto& r : records)
    write_csv_row(out, {r.source, r.parameter, grid_text(r.grid_point), std::to_string(r.rep), r.method,
                        r.failed ? "" : std::to_string(r.mismatches), std::to_string(r.n),
                        r.failed ? "" : format_double(r.error_rate), format_double(r.elapsed_ms),
                        std::to_string(r.seed), r.failed ? "" : format_double(r.objective),
                        std::to_string(r.restarts), join_taus(r.taus), std::to_string(r.rejections),
                        r.failed ? "1" : "0", r.note});
}

void write_means_csv(std::ostream& out, const std::vector<MeanRow>& rows) {
  write_csv_row(out, {"source", "parameter", "grid_point", "method", "mean_error", "reps", "failures"});
  for (const auto& r : rows)
    write_csv_row(out, {r.source, r.parameter, grid_text(r.grid_point), r.method,
                        r.reps ? format_double(r.mean_error) : "", std::to_string(r.reps),
                        std::to_string(r.failures)});
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  write_csv_row(out, {"dataset", "method", "tau1", "tau2", "mismatches", "n", "error_rate", "failed", "note"});
  for (const auto& s : rows) {
    const RunRecord& r = s.record;
    write_csv_row(out, {r.source, r.method, format_double(s.tau1), format_double(s.tau2),
                        r.failed ? "" : std::to_string(r.mismatches), std::to_string(r.n),
                        r.failed ? "" : format_double(r.error_rate), r.failed ? "1" : "0", r.note});
  }
}

}  // namespace drsc

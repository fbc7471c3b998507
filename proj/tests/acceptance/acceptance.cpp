// Acceptance suite: one PASS/FAIL line per criterion, SKIP when optional data
// is absent. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "drsc/bounds.hpp"
#include "drsc/clustering.hpp"
#include "drsc/dcsbm.hpp"
#include "drsc/diagnostics.hpp"
#include "drsc/embedding.hpp"
#include "drsc/error.hpp"
#include "drsc/graph.hpp"
#include "drsc/harness.hpp"
#include "drsc/linalg.hpp"
#include "drsc/population.hpp"
#include "drsc/random.hpp"
#include "oracles.hpp"

using namespace drsc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240229;

// Pinned tolerances and limits.
constexpr double kKarateSeconds = 5.0;
constexpr double kIdealSeconds = 60.0;
constexpr double kFactorizationResidual = 1e-10;
constexpr double kRatioVariance = 1e-12;
constexpr double kRankTail = 1e-10;
constexpr double kConcentrationSeconds = 300.0;
constexpr double kCoverage = 0.95;
constexpr double kTrendRatio = 0.25;
constexpr double kExp1aSeconds = 600.0;
constexpr double kEigenResidual = 1e-8;
constexpr double kNeumann = 1e-8;
constexpr std::size_t kTableTolerance = 2;

enum class Outcome { Pass, Fail, Skip };

struct Line {
  std::string id;
  Outcome outcome;
  std::string detail;
};

std::vector<Line> g_lines;

void report(const std::string& id, Outcome o, const std::string& detail) {
  const char* tag = o == Outcome::Pass ? "PASS" : o == Outcome::Fail ? "FAIL" : "SKIP";
  std::cout << tag << "  " << id << ": " << detail << std::endl;
  g_lines.push_back({id, o, detail});
}

void report(const std::string& id, bool ok, const std::string& detail) {
  report(id, ok ? Outcome::Pass : Outcome::Fail, detail);
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

void karate() {
  Timer t;
  const LabeledGraph k = karate_club();
  std::vector<MethodSpec> methods{MethodSpec::dual(Family::SC), MethodSpec::dual(Family::SCORE),
                                  MethodSpec::dual(Family::SLIM)};
  const auto recs = run_dataset("karate", k, methods, kSeed);
  bool ok = true;
  std::string detail;
  for (const auto& r : recs) {
    ok = ok && !r.failed && r.mismatches == 0;
    detail += r.method + " " + r.count_text() + ", ";
  }
  const double s = t.seconds();
  ok = ok && s < kKarateSeconds;
  report("karate", ok, detail + fmt(s) + " s");
}

void ideal() {
  Timer t;
  Rng rng(derive_seed(kSeed, {tag_hash("ideal")}));
  std::size_t bad_sc = 0, bad_score = 0;
  const std::size_t instances = 200;
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = 20 + rng.below(181);
    const int K = 2 + static_cast<int>(rng.below(3));
    const DcsbmParams p = random_params(n, K, derive_seed(kSeed, {tag_hash("ideal"), i}));
    const Matrix omega = build_omega(p);
    const MethodSpec sc = MethodSpec::dual(Family::SC), score = MethodSpec::dual(Family::SCORE);
    if (align_and_count(run_ideal(omega, K, sc), p.z).mismatches) ++bad_sc;
    if (align_and_count(run_ideal(omega, K, score), p.z).mismatches) ++bad_score;
  }
  const double s = t.seconds();
  report("ideal-pipelines", bad_sc == 0 && bad_score == 0 && s < kIdealSeconds,
         std::to_string(instances) + " instances; Ideal DRSC nonzero on " + std::to_string(bad_sc) +
             ", Ideal DRSCORE nonzero on " + std::to_string(bad_score) + ", " + fmt(s) + " s");
}

void identities() {
  double worst_res = 0.0, worst_var = 0.0, worst_tail = 0.0;
  Rng rng(derive_seed(kSeed, {tag_hash("identities")}));
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t n = 10 + rng.below(91);
    const int K = 1 + static_cast<int>(rng.below(4));
    const DcsbmParams p = random_params(n, K, derive_seed(kSeed, {tag_hash("identities"), i}));
    const double t1 = 0.1 + 20.0 * rng.uniform(), t2 = 0.05 + 2.0 * rng.uniform();
    const FactorizationCheck f = verify_factorization(p, t1, t2);
    worst_res = std::max({worst_res, f.residual1, f.residual2});
    const PopulationEigen e = population_eigvectors(p, t1, t2);
    for (std::size_t k = 0; k < static_cast<std::size_t>(K); ++k)
      worst_var = std::max(worst_var, max_block_ratio_variance(e.pairs.vector(k), e.theta_tilde, p.z));
    const Vector ev = sym_eigenvalues(population_laplacians(p, t1, t2).second.matrix);
    worst_tail = std::max(worst_tail, std::abs(ev[static_cast<std::size_t>(K)]));
  }
  report("population-identities",
         worst_res <= kFactorizationResidual && worst_var <= kRatioVariance && worst_tail <= kRankTail,
         "100 instances; max residual " + fmt(worst_res, 3) + ", max ratio variance " + fmt(worst_var, 3) +
             ", max |lambda_{K+1}| " + fmt(worst_tail, 3));
}

DcsbmParams concentration_model() {
  return sparse_two_block_params(400, derive_seed(kSeed, {tag_hash("memberships")}));
}

std::string premise_note;

void concentration() {
  Timer t;
  const DcsbmParams p = concentration_model();
  std::vector<std::string> warnings;
  std::vector<ConcentrationRow> rows;
  {
    ScopedWarningSink sink([&](const std::string& m) { warnings.push_back(m); });
    rows = concentration_experiment(p, line_grid({5, 20, 50}), 100, kSeed, 0.05);
  }
  const double s = t.seconds();
  bool ok = s < kConcentrationSeconds;
  std::string detail;
  std::vector<std::string> premise_fails;
  for (const auto& r : rows) {
    ok = ok && r.coverage >= kCoverage && r.weyl_violations == 0;
    detail += "tau=" + fmt(r.tau1) + " coverage " + fmt(r.coverage) + " weyl violations " +
              std::to_string(r.weyl_violations) + "; ";
    if (!r.assumption_a) premise_fails.push_back(fmt(r.tau1));
  }
  report("concentration", ok, detail + fmt(s) + " s");
  if (!premise_fails.empty()) {
    const Vector deg = build_omega(p).row_sums();
    const double dmin = *std::min_element(deg.begin(), deg.end());
    std::string list;
    for (const auto& x : premise_fails) list += (list.empty() ? "" : ", ") + x;
    premise_note = "assumption (a) does not hold at tau = " + list + " (needs tau1 + delta_min > " +
                   fmt(3.0 * std::log(4.0 * 400 / 0.05)) + ", delta_min = " + fmt(dmin) +
                   "); coverage there is measured but not covered by the probability guarantee";
    std::cout << "NOTE  concentration: " << premise_note << std::endl;
  }
}

void trend() {
  const DcsbmParams p = concentration_model();
  const std::vector<double> taus{0.5, 1, 2, 5, 10, 20, 50};
  std::vector<ConcentrationRow> rows;
  {
    ScopedWarningSink quiet([](const std::string&) {});
    rows = concentration_experiment(p, line_grid(taus), 20, derive_seed(kSeed, {tag_hash("trend")}), 0.05);
  }
  std::vector<double> dev;
  for (const auto& r : rows) dev.push_back(r.mean_dev);
  const std::vector<double> smooth = moving_average(dev, 5);
  bool mono = true;
  for (std::size_t i = 1; i < smooth.size(); ++i) mono = mono && smooth[i] <= smooth[i - 1];
  const double ratio = dev.back() / dev.front();
  std::string curve;
  for (double d : dev) curve += (curve.empty() ? "" : " ") + fmt(d, 3);
  report("deviation-trend", mono && ratio < kTrendRatio,
         "mean deviations [" + curve + "], ratio tau=50 / tau=0.5 = " + fmt(ratio, 3) +
             (mono ? ", smoothed non-increasing" : ", smoothed curve increases"));
}

void experiment_1a() {
  Timer t;
  ExperimentConfig c = make_experiment_config("1a");
  c.grid = {50, 500};
  c.reps = 20;
  c.seed = kSeed;
  c.methods = {MethodSpec::dual(Family::SC), MethodSpec::dual(Family::SCORE), MethodSpec::dual(Family::SLIM),
               MethodSpec::multiple(Family::SCORE, 1)};
  const auto means = aggregate_means(run_experiment(c));
  std::map<std::pair<double, std::string>, double> m;
  std::size_t failures = 0;
  for (const auto& row : means) {
    m[{*row.grid_point, row.method}] = row.mean_error;
    failures += row.failures;
  }
  const double base = m[{500, "1RSCORE"}];
  bool ok = m[{500, "DRSC"}] < m[{50, "DRSC"}];
  for (const char* name : {"DRSC", "DRSCORE", "DRSLIM"}) ok = ok && m[{500, name}] <= base;
  const double s = t.seconds();
  ok = ok && s < kExp1aSeconds;
  report("experiment-1a", ok,
         "DRSC n=50 " + fmt(m[{50, "DRSC"}]) + " -> n=500 " + fmt(m[{500, "DRSC"}]) + "; n=500 DRSCORE " +
             fmt(m[{500, "DRSCORE"}]) + ", DRSLIM " + fmt(m[{500, "DRSLIM"}]) + ", 1RSCORE " + fmt(base) +
             ", failed reps (excluded from means) " + std::to_string(failures) + ", " + fmt(s) + " s");
}

void oracle_equivalences() {
  Rng rng(derive_seed(kSeed, {tag_hash("oracles")}));
  std::size_t hungarian_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const int K = 1 + static_cast<int>(rng.below(6));
    const std::size_t n = 1 + rng.below(80);
    LabelVector truth, est;
    truth.K = est.K = K;
    for (std::size_t i = 0; i < n; ++i) {
      truth.labels.push_back(1 + static_cast<int>(rng.below(static_cast<std::size_t>(K))));
      est.labels.push_back(rng.bernoulli(0.5) ? truth.labels.back()
                                              : 1 + static_cast<int>(rng.below(static_cast<std::size_t>(K))));
    }
    if (align_and_count(est, truth).mismatches != oracle::brute_force_mismatches(est, truth)) ++hungarian_bad;
  }

  double worst_res = 0.0, worst_recon = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(50);
    const Matrix s = oracle::random_symmetric(n, rng);
    const EigenPairs e = sym_eig(s);
    const double sn = std::max(spectral_norm(s), 1e-300);
    Matrix recon(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const Vector v = e.vector(k);
      Vector r = s * v;
      for (std::size_t i = 0; i < n; ++i) r[i] -= e.values[k] * v[i];
      worst_res = std::max(worst_res, norm2(r) / sn);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) recon(i, j) += e.values[k] * v[i] * v[j];
    }
    worst_recon = std::max(worst_recon, frobenius_norm(s - recon) / frobenius_norm(s));
  }

  double worst_neumann = 0.0;
  int graphs = 0;
  while (graphs < 20) {
    const Graph g = oracle::random_graph(10, 0.4, rng);
    const Vector deg = g.adjacency().row_sums();
    if (std::find(deg.begin(), deg.end(), 0.0) != deg.end()) continue;
    const double taus[] = {1.0, 0.5};
    const RegularizedLaplacian l = multiple_laplacian(g.adjacency(), taus);
    Matrix b = l.matrix;
    const double vs = std::exp(-0.25);
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = 0; j < 10; ++j) b(i, j) *= vs / l.regularized_degree[i];
    const Matrix w = oracle::neumann(b, 200);
    Matrix ref = (w + w.transpose()) * 0.5;
    for (std::size_t i = 0; i < 10; ++i) ref(i, i) = 0.0;
    worst_neumann = std::max(worst_neumann, max_abs(slim_similarity(l, 0.25) - ref));
    ++graphs;
  }
  report("oracle-equivalences",
         hungarian_bad == 0 && worst_res <= kEigenResidual && worst_recon <= kEigenResidual &&
             worst_neumann <= kNeumann,
         "Hungarian vs brute force disagreements " + std::to_string(hungarian_bad) +
             "/1000; eigen max residual/||S|| " + fmt(worst_res, 3) + ", reconstruction/||S||_F " +
             fmt(worst_recon, 3) + "; SLIM vs Neumann max diff " + fmt(worst_neumann, 3));
}

void mrsc() {
  const LabeledGraph k = karate_club();
  const LabelVector d = run_method(k.graph, 2, MethodSpec::dual(Family::SC));
  const LabelVector m = run_method(k.graph, 2, parse_method("MRSC", 2));
  const auto one = run_mrsc_table("karate", k, Family::SC, {1}, kSeed);
  report("mrsc-consistency", d == m && one[0].mismatches == 0 && !one[0].failed,
         std::string("MRSC(M=2) labels ") + (d == m ? "identical to" : "differ from") + " DRSC; 1RSC karate " +
             one[0].count_text());
}

struct TableRow {
  std::string name;
  std::size_t n;
  std::vector<std::size_t> counts;  // DRSC, DRSC_K+2, DRSCORE, DRSCORE_K+2, DRSLIM_K+1, DRSLIM
};

void real_networks() {
  const std::vector<TableRow> rows{
      {"dolphins", 62, {1, 0, 4, 6, 1, 0}},       {"football", 110, {5, 3, 6, 3, 3, 3}},
      {"polbooks", 92, {3, 2, 4, 26, 2, 2}},      {"ukfaculty", 79, {2, 2, 3, 3, 2, 2}},
      {"polblogs", 1222, {63, 63, 65, 336, 58, 59}}, {"simmons", 1137, {124, 121, 117, 271, 186, 115}},
      {"caltech", 590, {95, 98, 99, 105, 92, 98}}};
  const char* dir = std::getenv("DRSC_DATA_DIR");
  const std::vector<std::string> names{"DRSC", "DRSC_K+2", "DRSCORE", "DRSCORE_K+2", "DRSLIM_K+1", "DRSLIM"};
  std::vector<MethodSpec> methods;
  for (const auto& n : names) methods.push_back(parse_method(n));
  for (const auto& row : rows) {
    const std::string id = "real-network-" + row.name;
    const fs::path e = dir ? fs::path(dir) / (row.name + ".edges") : fs::path();
    const fs::path l = dir ? fs::path(dir) / (row.name + ".labels") : fs::path();
    if (!dir || !fs::exists(e) || !fs::exists(l)) {
      report(id, Outcome::Skip,
             std::string("dataset files not supplied (set DRSC_DATA_DIR to a directory holding ") + row.name +
                 ".edges and " + row.name + ".labels)");
      continue;
    }
    std::ifstream es(e), ls(l);
    LabeledGraph data;
    try {
      data = load_labeled_graph(es, ls);
    } catch (const Error& err) {
      report(id, false, std::string("cannot load: ") + err.what());
      continue;
    }
    ScopedWarningSink quiet([](const std::string&) {});
    const auto recs = run_dataset(row.name, data, methods, kSeed);
    bool ok = data.graph.n() == row.n;
    std::string detail = "n=" + std::to_string(data.graph.n()) + "; ";
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& r = recs[i];
      const std::size_t ref = row.counts[i];
      const bool within = !r.failed && (r.mismatches > ref ? r.mismatches - ref : ref - r.mismatches) <= kTableTolerance;
      ok = ok && within;
      detail += r.method + " " + r.count_text() + " (ref " + std::to_string(ref) + ")" + (within ? "" : " OUT") +
                (i + 1 < recs.size() ? ", " : "");
    }
    report(id, ok, detail);
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<std::string, std::function<void()>>> all{
      {"karate", karate},
      {"ideal-pipelines", ideal},
      {"population-identities", identities},
      {"concentration", concentration},
      {"deviation-trend", trend},
      {"experiment-1a", experiment_1a},
      {"oracle-equivalences", oracle_equivalences},
      {"mrsc-consistency", mrsc},
      {"real-networks", real_networks},
  };
  std::vector<std::string> only(argv + 1, argv + argc);
  for (const auto& [id, fn] : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  }
  const auto failed = std::count_if(g_lines.begin(), g_lines.end(), [](const Line& l) { return l.outcome == Outcome::Fail; });
  std::cout << (failed ? "FAILED " : "OK ") << failed << " of " << g_lines.size() << " criteria failed" << std::endl;
  return failed ? 1 : 0;
}

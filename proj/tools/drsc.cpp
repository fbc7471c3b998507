// Command-line front end: community detection on edge lists, simulation
// studies, regularizer sweeps and concentration experiments.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "drsc/bounds.hpp"
#include "drsc/dcsbm.hpp"
#include "drsc/diagnostics.hpp"
#include "drsc/embedding.hpp"
#include "drsc/error.hpp"
#include "drsc/graph.hpp"
#include "drsc/harness.hpp"
#include "drsc/random.hpp"

namespace fs = std::filesystem;
using namespace drsc;

namespace {

struct Globals {
  std::uint64_t seed = 20240229;
  std::optional<int> reps;
  std::string out;
  bool paper_scale = false;
};

struct Input {
  std::string edges;
  std::string labels;
  int index_base = 1;
  bool karate = false;
  std::string name;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--edges", edges, "Edge list file (one 'u v' or 'u,v' pair per line)");
    cmd->add_option("--labels", labels, "Label file ('node_id,label' per line)");
    cmd->add_option("--index-base", index_base, "Id of the first node")->check(CLI::IsMember({0, 1}));
    cmd->add_flag("--karate", karate, "Use the built-in karate club network");
    cmd->add_option("--name", name, "Dataset name used in output files");
  }

  bool labeled() const { return karate || !labels.empty(); }

  LabeledGraph load() const {
    if (karate) return karate_club();
    if (edges.empty()) throw InvalidArgument("pass --edges (and --labels) or --karate");
    std::ifstream e(edges);
    if (!e) throw Error("cannot open " + edges);
    if (labels.empty()) {
      LabeledGraph out;
      out.graph = load_edge_list(e, index_base);
      return out;
    }
    std::ifstream l(labels);
    if (!l) throw Error("cannot open " + labels);
    return load_labeled_graph(e, l, index_base);
  }

  std::string display_name() const {
    if (!name.empty()) return name;
    if (karate) return "karate";
    return fs::path(edges).stem().string();
  }
};

struct MethodOptions {
  std::string method = "drsc";
  int M = 2;
  std::optional<int> K0;
  double gamma = 0.25;
  std::optional<double> tau1, tau2;
  std::vector<double> taus;
  int restarts = 50;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--method", method, "drsc, drscore, drslim, mrsc, mrscore, mrslim, or a name such as 3RSC, DRSC_K+2");
    cmd->add_option("--M", M, "Regularization depth for mr* methods")->check(CLI::PositiveNumber);
    cmd->add_option("--K0", K0, "Extra eigenvectors beyond K")->check(CLI::NonNegativeNumber);
    cmd->add_option("--gamma", gamma, "SLIM scale parameter")->check(CLI::PositiveNumber);
    cmd->add_option("--tau1", tau1, "First regularizer (depth-2 methods)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--tau2", tau2, "Second regularizer (depth-2 methods)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--taus", taus, "All regularizers, comma separated")->delimiter(',');
    cmd->add_option("--restarts", restarts, "k-means restarts")->check(CLI::PositiveNumber);
  }

  MethodSpec build(std::uint64_t seed) const {
    MethodSpec spec = parse_method(method, M);
    if (K0) spec.K0 = *K0;
    spec.gamma = gamma;
    spec.kmeans.restarts = restarts;
    spec.kmeans.seed = seed;
    if (!taus.empty()) {
      if (tau1 || tau2) throw InvalidArgument("use either --taus or --tau1/--tau2");
      spec.M = static_cast<int>(taus.size());
      spec.schedule = RegularizerSchedule::explicit_values(taus);
    } else if (tau1 || tau2) {
      if (!(tau1 && tau2)) throw InvalidArgument("--tau1 and --tau2 must be given together");
      if (spec.M != 2) throw InvalidArgument("--tau1/--tau2 apply to depth-2 methods; use --taus");
      spec.schedule = RegularizerSchedule::explicit_values({*tau1, *tau2});
    }
    if (spec.schedule.policy == RegularizerSchedule::Policy::Explicit && spec.schedule.taus.front() == 0.0)
      warn("tau1 = 0: results are unstable for sparse or low-degree networks");
    spec.validate();
    return spec;
  }
};

fs::path output_dir(const Globals& g) {
  fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  return f;
}

void print_records(const std::vector<RunRecord>& recs) {
  for (const auto& r : recs) {
    std::cout << r.method << '\t' << r.count_text();
    if (!r.taus.empty()) {
      std::cout << "\ttaus=";
      for (std::size_t k = 0; k < r.taus.size(); ++k) std::cout << (k ? "," : "") << r.taus[k];
    }
    if (!r.note.empty()) std::cout << '\t' << r.note;
    std::cout << '\n';
  }
}

std::vector<MethodSpec> parse_methods(const std::vector<std::string>& names, int restarts) {
  std::vector<MethodSpec> out;
  for (const auto& n : names) {
    MethodSpec s = parse_method(n);
    s.kmeans.restarts = restarts;
    out.push_back(s);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual and multiple regularized spectral clustering"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Top-level random seed");
  app.add_option("--reps", g.reps, "Repetitions per grid point")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output directory (detect: labels file)");
  app.add_flag("--paper-scale", g.paper_scale, "50 repetitions and the full parameter grids");

  // detect
  auto* detect = app.add_subcommand("detect", "Detect communities in one network");
  Input detect_in;
  detect_in.add_to(detect);
  MethodOptions detect_m;
  detect_m.add_to(detect);
  std::optional<int> detect_K;
  detect->add_option("--K", detect_K, "Number of communities (default: from the label file)")->check(CLI::PositiveNumber);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a simulation study");
  std::string exp_id;
  int grid_stride = 1;
  std::vector<std::string> exp_methods;
  int exp_restarts = 50;
  std::string exp_config;
  experiment->add_option("--id", exp_id, "1a, 1b, 2a-2f, 3a, 3b");
  experiment->add_option("--config", exp_config, "JSON config (as written to config.json)");
  experiment->add_option("--grid-stride", grid_stride, "Keep every k-th grid point")->check(CLI::PositiveNumber);
  experiment->add_option("--methods", exp_methods, "Method names, comma separated")->delimiter(',');
  experiment->add_option("--restarts", exp_restarts, "k-means restarts")->check(CLI::PositiveNumber);

  // dataset
  auto* dataset = app.add_subcommand("dataset", "Run methods on a labeled network");
  Input data_in;
  data_in.add_to(dataset);
  std::vector<std::string> data_methods{"DRSC", "DRSC_K+2", "DRSCORE", "DRSCORE_K+2", "DRSLIM_K+1", "DRSLIM"};
  int data_restarts = 50;
  dataset->add_option("--methods", data_methods, "Method names, comma separated")->delimiter(',');
  dataset->add_option("--restarts", data_restarts, "k-means restarts")->check(CLI::PositiveNumber);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Mismatches over a regularizer grid");
  Input sweep_in;
  sweep_in.add_to(sweep);
  MethodOptions sweep_m;
  sweep->add_option("--method", sweep_m.method, "Depth-2 method name");
  sweep->add_option("--restarts", sweep_m.restarts, "k-means restarts")->check(CLI::PositiveNumber);
  sweep->add_option("--K0", sweep_m.K0, "Extra eigenvectors beyond K")->check(CLI::NonNegativeNumber);
  std::vector<double> sweep_line, sweep_t1, sweep_t2;
  sweep->add_option("--taus", sweep_line, "tau1 = tau2 values")->delimiter(',');
  sweep->add_option("--tau1-grid", sweep_t1, "tau1 values of a 2-D grid")->delimiter(',');
  sweep->add_option("--tau2-grid", sweep_t2, "tau2 values of a 2-D grid")->delimiter(',');

  // mrsc-table
  auto* mrsc = app.add_subcommand("mrsc-table", "Mismatches of multiple regularization by depth");
  Input mrsc_in;
  mrsc_in.add_to(mrsc);
  std::string mrsc_family = "sc";
  std::vector<int> mrsc_depths;
  int mrsc_restarts = 50;
  mrsc->add_option("--family", mrsc_family, "sc, score or slim")->check(CLI::IsMember({"sc", "score", "slim"}, CLI::ignore_case));
  mrsc->add_option("--depths", mrsc_depths, "Depths M, comma separated (default 1..10 for sc, 1..6 otherwise)")
      ->delimiter(',');
  mrsc->add_option("--restarts", mrsc_restarts, "k-means restarts")->check(CLI::PositiveNumber);

  // concentration
  auto* conc = app.add_subcommand("concentration", "Sample vs population Laplacian deviation");
  std::size_t conc_n = 400;
  double conc_eps = 0.05;
  std::vector<double> conc_line, conc_t1, conc_t2;
  conc->add_option("--n", conc_n, "Number of nodes")->check(CLI::PositiveNumber);
  conc->add_option("--epsilon", conc_eps, "Failure probability of the bound")->check(CLI::Range(0.0, 1.0));
  conc->add_option("--taus", conc_line, "tau1 = tau2 values")->delimiter(',');
  conc->add_option("--tau1-grid", conc_t1, "tau1 values (default 1,10,...,100)")->delimiter(',');
  conc->add_option("--tau2-grid", conc_t2, "tau2 values (default 1,10,...,100)")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed()) {
      const LabeledGraph data = detect_in.load();
      const int K = detect_K ? *detect_K : data.K;
      if (K < 1) throw InvalidArgument("pass --K when no label file is given");
      const MethodSpec spec = detect_m.build(g.seed);
      const MethodResult res = run_method_detailed(data.graph, K, spec);
      std::ostringstream labels;
      for (int l : res.labels.labels) labels << l << '\n';
      if (g.out.empty()) {
        std::cout << labels.str();
      } else {
        auto f = open_out(g.out);
        f << labels.str();
      }
      std::cerr << method_name(spec) << " taus=";
      for (std::size_t k = 0; k < res.taus.size(); ++k) std::cerr << (k ? "," : "") << res.taus[k];
      std::cerr << " objective=" << res.kmeans.objective;
      if (detect_in.labeled())
        std::cerr << " mismatches=" << align_and_count(res.labels, data.truth).mismatches << '/' << data.graph.n();
      std::cerr << '\n';
      return 0;
    }

    if (experiment->parsed()) {
      ExperimentConfig cfg;
      if (!exp_config.empty()) {
        std::ifstream f(exp_config);
        if (!f) throw Error("cannot open " + exp_config);
        std::stringstream ss;
        ss << f.rdbuf();
        cfg = experiment_config_from_json(ss.str());
      } else {
        if (exp_id.empty()) throw InvalidArgument("pass --id or --config");
        cfg = make_experiment_config(exp_id, g.paper_scale, grid_stride);
        cfg.seed = g.seed;
        if (!exp_methods.empty()) cfg.methods = parse_methods(exp_methods, exp_restarts);
        for (auto& m : cfg.methods) m.kmeans.restarts = exp_restarts;
      }
      if (g.reps) cfg.reps = *g.reps;
      cfg.validate();
      const auto dir = output_dir(g);
      {
        auto f = open_out(dir / "config.json");
        f << to_json(cfg) << '\n';
      }
      const auto records = run_experiment(cfg);
      const auto means = aggregate_means(records);
      {
        auto f = open_out(dir / "records.csv");
        write_records_csv(f, records);
      }
      {
        auto f = open_out(dir / "means.csv");
        write_means_csv(f, means);
      }
      write_means_csv(std::cout, means);
      return 0;
    }

    if (dataset->parsed()) {
      const LabeledGraph data = data_in.load();
      if (!data_in.labeled()) throw InvalidArgument("dataset needs --labels");
      const auto recs = run_dataset(data_in.display_name(), data, parse_methods(data_methods, data_restarts), g.seed);
      print_records(recs);
      if (!g.out.empty()) {
        auto f = open_out(output_dir(g) / "records.csv");
        write_records_csv(f, recs);
      }
      return 0;
    }

    if (sweep->parsed()) {
      const LabeledGraph data = sweep_in.load();
      if (!sweep_in.labeled()) throw InvalidArgument("sweep needs --labels");
      std::vector<std::pair<double, double>> grid;
      if (!sweep_line.empty())
        grid = line_grid(sweep_line);
      else if (!sweep_t1.empty() && !sweep_t2.empty())
        grid = product_grid(sweep_t1, sweep_t2);
      else
        throw InvalidArgument("pass --taus or both --tau1-grid and --tau2-grid");
      for (const auto& [t1, t2] : grid)
        if (t1 == 0.0) {
          warn("tau1 = 0 in the grid: results are unstable for sparse or low-degree networks");
          break;
        }
      MethodSpec base = parse_method(sweep_m.method);
      if (sweep_m.K0) base.K0 = *sweep_m.K0;
      base.kmeans.restarts = sweep_m.restarts;
      const auto rows = sweep_regularizers(sweep_in.display_name(), data, base, grid, g.seed);
      const auto dir = output_dir(g);
      auto f = open_out(dir / "sweep.csv");
      write_sweep_csv(f, rows);
      write_sweep_csv(std::cout, rows);
      return 0;
    }

    if (mrsc->parsed()) {
      const LabeledGraph data = mrsc_in.load();
      if (!mrsc_in.labeled()) throw InvalidArgument("mrsc-table needs --labels");
      const std::string fam = CLI::detail::to_lower(mrsc_family);
      const Family family = fam == "sc" ? Family::SC : fam == "score" ? Family::SCORE : Family::SLIM;
      std::vector<int> depths = mrsc_depths;
      if (depths.empty())
        for (int M = 1; M <= (family == Family::SC ? 10 : 6); ++M) depths.push_back(M);
      std::vector<MethodSpec> methods;
      for (int M : depths) {
        MethodSpec s = MethodSpec::multiple(family, M);
        s.kmeans.restarts = mrsc_restarts;
        methods.push_back(s);
      }
      const auto recs = run_dataset(mrsc_in.display_name(), data, methods, g.seed);
      print_records(recs);
      if (!g.out.empty()) {
        auto f = open_out(output_dir(g) / "mrsc.csv");
        write_records_csv(f, recs);
      }
      return 0;
    }

    if (conc->parsed()) {
      std::vector<std::pair<double, double>> grid;
      if (!conc_line.empty()) {
        grid = line_grid(conc_line);
      } else {
        std::vector<double> def;
        for (double t = 1; t <= 100; t += 9) def.push_back(t);
        grid = product_grid(conc_t1.empty() ? def : conc_t1, conc_t2.empty() ? def : conc_t2);
      }
      const DcsbmParams p = sparse_two_block_params(conc_n, derive_seed(g.seed, {tag_hash("memberships")}));
      const std::size_t reps = static_cast<std::size_t>(g.reps.value_or(g.paper_scale ? 100 : 20));
      const auto rows = concentration_experiment(p, grid, reps, g.seed, conc_eps);
      const auto dir = output_dir(g);
      auto f = open_out(dir / "concentration.csv");
      write_concentration_csv(f, rows);
      write_concentration_csv(std::cout, rows);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#include "drsc/dcsbm.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "drsc/error.hpp"
#include "drsc/linalg.hpp"
#include "drsc/random.hpp"

namespace drsc {
namespace {

using nlohmann::json;

constexpr std::size_t kStudyN = 500;

std::vector<double> arithmetic(double start, double step, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(start + step * k);
  return out;
}

Vector theta_by_block(const LabelVector& z, const std::vector<double>& per_block) {
  Vector theta(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) theta[i] = per_block[static_cast<std::size_t>(z[i] - 1)];
  return theta;
}

LabelVector split_membership(std::size_t n, std::size_t n1) {
  LabelVector z;
  z.K = 2;
  z.labels.assign(n, 2);
  std::fill(z.labels.begin(), z.labels.begin() + static_cast<std::ptrdiff_t>(n1), 1);
  return z;
}

Matrix p_3a(double a) {
  return {{0.4 + a, 0.4, 0.2, 0.2}, {0.4, 0.4 + a, 0.2, 0.2}, {0.2, 0.2, 0.4 + a, 0.4}, {0.2, 0.2, 0.4, 0.4 + a}};
}

Matrix p_3b(double b) {
  return {{0.4 + b, 0.4, 0.2 + b, 0.2 + b},
          {0.4, 0.4 + b, 0.2 + b, 0.2 + b},
          {0.2 + b, 0.2 + b, 0.4 + b, 0.4},
          {0.2 + b, 0.2 + b, 0.4, 0.4 + b}};
}

json spec_to_json(const MethodSpec& s) {
  json j;
  j["name"] = method_name(s);
  j["family"] = to_string(s.family);
  j["M"] = s.M;
  j["K0"] = s.k0();
  j["gamma"] = s.gamma;
  if (s.schedule.policy == RegularizerSchedule::Policy::Explicit)
    j["taus"] = s.schedule.taus;
  else
    j["taus"] = nullptr;
  j["kmeans"] = {{"restarts", s.kmeans.restarts},
                 {"max_iters", s.kmeans.max_iters},
                 {"rel_tol", s.kmeans.rel_tol},
                 {"seed", s.kmeans.seed}};
  return j;
}

MethodSpec spec_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  MethodSpec s;
  if (family == "SC")
    s.family = Family::SC;
  else if (family == "SCORE")
    s.family = Family::SCORE;
  else if (family == "SLIM")
    s.family = Family::SLIM;
  else
    throw InvalidArgument("unknown method family '" + family + "'");
  s.M = j.at("M").get<int>();
  if (j.contains("K0")) s.K0 = j.at("K0").get<int>();
  if (j.contains("gamma")) s.gamma = j.at("gamma").get<double>();
  if (j.contains("taus") && !j.at("taus").is_null())
    s.schedule = RegularizerSchedule::explicit_values(j.at("taus").get<std::vector<double>>());
  if (j.contains("kmeans")) {
    const auto& k = j.at("kmeans");
    s.kmeans.restarts = k.value("restarts", s.kmeans.restarts);
    s.kmeans.max_iters = k.value("max_iters", s.kmeans.max_iters);
    s.kmeans.rel_tol = k.value("rel_tol", s.kmeans.rel_tol);
    s.kmeans.seed = k.value("seed", s.kmeans.seed);
  }
  s.validate();
  return s;
}

}  // namespace

void DcsbmParams::validate(bool require_full_rank) const {
  if (n == 0) throw InvalidArgument("DCSBM needs n >= 1");
  if (K < 1) throw InvalidArgument("DCSBM needs K >= 1");
  const auto k = static_cast<std::size_t>(K);
  if (P.rows() != k || P.cols() != k) throw InvalidArgument("P must be K x K");
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const double v = P(a, b);
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("P entries must lie in [0,1]");
      if (v != P(b, a)) throw InvalidArgument("P must be symmetric");
    }
  if (require_full_rank) {
    const Vector ev = sym_eigenvalues(P);
    if (!(std::abs(ev.back()) > 1e-12)) throw InvalidArgument("P must have full rank");
  }
  if (theta.size() != n) throw InvalidArgument("theta must have length n");
  for (double t : theta)
    if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("theta entries must lie in (0,1]");
  if (z.size() != n) throw InvalidArgument("memberships must have length n");
  if (z.K != K) throw InvalidArgument("membership K differs from P");
  z.validate();
}

Matrix build_omega(const DcsbmParams& p) {
  const std::size_t n = p.n;
  Matrix omega(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto zi = static_cast<std::size_t>(p.z[i] - 1);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = p.theta[i] * p.theta[j] * p.P(zi, static_cast<std::size_t>(p.z[j] - 1));
      if (v > 1.0) throw DomainError("invalid probability " + std::to_string(v) + " at (" + std::to_string(i) + ", " +
                                     std::to_string(j) + ")");
      omega(i, j) = v;
    }
  }
  return omega;
}

Graph sample_adjacency(const Matrix& omega, std::uint64_t seed) {
  if (!omega.is_square()) throw InvalidArgument("expectation matrix must be square");
  const std::size_t n = omega.rows();
  Rng rng(seed);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = omega(i, j);
      if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability outside [0,1]");
      if (rng.bernoulli(p)) a(i, j) = a(j, i) = 1.0;
    }
  return Graph::from_adjacency(std::move(a));
}

MembershipDraw draw_memberships(std::size_t n, const std::vector<double>& probabilities, std::uint64_t seed) {
  const int K = static_cast<int>(probabilities.size());
  if (K < 1) throw InvalidArgument("need at least one community");
  if (n < static_cast<std::size_t>(K)) throw InvalidArgument("fewer nodes than communities");
  std::vector<double> cumulative;
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0)) throw InvalidArgument("membership probabilities must be positive");
    cumulative.push_back(total += p);
  }

  MembershipDraw out;
  out.z.K = K;
  Rng rng(seed);
  for (;;) {
    out.z.labels.assign(n, 0);
    for (auto& label : out.z.labels) {
      const double u = rng.uniform() * total;
      int k = 0;
      while (k + 1 < K && u >= cumulative[static_cast<std::size_t>(k)]) ++k;
      label = k + 1;
    }
    if (out.z.all_communities_present()) return out;
    ++out.rejections;
  }
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"1a", "1b", "2a", "2b", "2c", "2d", "2e", "2f", "3a", "3b"};
  return ids;
}

ExperimentGrid experiment_grid(std::string_view id) {
  if (id == "1a" || id == "1b") return {std::string(id), "n", arithmetic(50, 50, 10)};
  if (id == "2a") return {"2a", "a0", arithmetic(1.0, 0.2, 16)};
  if (id == "2b" || id == "2c") return {std::string(id), "b0", arithmetic(1.0, 0.5, 9)};
  if (id == "2d" || id == "2e") return {std::string(id), "c0", arithmetic(1, 1, 10)};
  if (id == "2f") return {"2f", "d0", arithmetic(0.0, 0.05, 10)};
  if (id == "3a") return {"3a", "alpha", arithmetic(0.0, 1.0 / 20.0, 13)};
  if (id == "3b") return {"3b", "beta", arithmetic(0.0, 1.0 / 20.0, 13)};
  throw InvalidArgument("unknown experiment '" + std::string(id) + "'");
}

ExperimentDraw experiment_draw(std::string_view id, double grid_point, std::uint64_t seed) {
  const ExperimentGrid grid = experiment_grid(id);
  const bool on_grid = std::any_of(grid.values.begin(), grid.values.end(),
                                   [&](double v) { return std::abs(v - grid_point) <= 1e-9 * std::max(1.0, std::abs(v)); });
  if (!on_grid)
    throw InvalidArgument(grid.parameter + " = " + std::to_string(grid_point) + " is not on the grid of experiment " +
                          grid.id);

  ExperimentDraw d;
  DcsbmParams& p = d.params;
  auto iid = [&](std::size_t n, std::vector<double> probs) {
    MembershipDraw m = draw_memberships(n, probs, seed);
    d.rejections = m.rejections;
    return m.z;
  };
  bool full_rank = true;

  if (id == "1a") {
    p.n = static_cast<std::size_t>(std::lround(grid_point));
    p.K = 2;
    p.P = {{1.0, 0.6}, {0.6, 1.0}};
    p.z = iid(p.n, {0.5, 0.5});
    p.theta = theta_by_block(p.z, {0.3, 0.7});
  } else if (id == "1b") {
    p.n = static_cast<std::size_t>(std::lround(grid_point));
    p.K = 3;
    p.P = {{1.0, 0.6, 0.6}, {0.6, 1.0, 0.6}, {0.6, 0.6, 1.0}};
    p.z = iid(p.n, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    p.theta = theta_by_block(p.z, {0.3, 0.5, 0.7});
  } else if (id == "2a") {
    p.n = kStudyN;
    p.K = 2;
    p.P = {{0.5, 0.3}, {0.3, 0.5}};
    p.z = iid(p.n, {0.5, 0.5});
    p.theta = theta_by_block(p.z, {1.0, 1.0 / grid_point});
  } else if (id == "2b" || id == "2c") {
    p.n = kStudyN;
    p.K = 2;
    const double on = id == "2b" ? 0.2 : 0.15, off = id == "2b" ? 0.15 : 0.2;
    p.P = {{grid_point * on, grid_point * off}, {grid_point * off, grid_point * on}};
    p.z = iid(p.n, {0.5, 0.5});
    p.theta.assign(p.n, 1.0);
  } else if (id == "2d" || id == "2e") {
    p.n = kStudyN;
    p.K = 2;
    p.P = {{0.9, 0.6}, {0.6, 0.8}};
    const auto n1 = static_cast<std::size_t>(std::lround(static_cast<double>(p.n) / (grid_point + 1.0)));
    p.z = split_membership(p.n, n1);
    if (id == "2d") {
      p.theta = theta_by_block(p.z, {0.6, 0.9});
    } else {
      p.theta.resize(p.n);
      for (std::size_t i = 0; i < p.n; ++i) {
        const double r = static_cast<double>(i + 1) / static_cast<double>(p.n);
        p.theta[i] = 0.6 + 0.4 * r * r;
      }
    }
  } else if (id == "2f") {
    p.n = kStudyN;
    p.K = 2;
    p.P = {{0.9, 0.6}, {0.6, 0.8}};
    p.z = iid(p.n, {0.5 - grid_point, 0.5 + grid_point});
    p.theta = theta_by_block(p.z, {0.4, 0.6});
  } else {
    p.n = kStudyN;
    p.K = 4;
    p.P = id == "3a" ? p_3a(grid_point) : p_3b(grid_point);
    p.z = iid(p.n, {0.25, 0.25, 0.25, 0.25});
    p.theta = theta_by_block(p.z, {1.0, 0.8, 0.6, 0.4});
    // At alpha = 0 (beta = 0) the first two and last two rows of P coincide.
    full_rank = false;
  }
  p.validate(full_rank);
  return d;
}

DcsbmParams experiment_params(std::string_view id, double grid_point, std::uint64_t seed) {
  return experiment_draw(id, grid_point, seed).params;
}

DcsbmParams sparse_two_block_params(std::size_t n, std::uint64_t seed) {
  DcsbmParams p;
  p.n = n;
  p.K = 2;
  p.P = {{0.1, 0.05}, {0.05, 0.1}};
  p.z = draw_memberships(n, {0.5, 0.5}, seed).z;
  p.theta = theta_by_block(p.z, {0.3, 0.7});
  p.validate();
  return p;
}

DcsbmParams random_params(std::size_t n, int K, std::uint64_t seed, double theta_lo) {
  if (!(theta_lo > 0.0 && theta_lo <= 1.0)) throw InvalidArgument("theta_lo must lie in (0,1]");
  Rng rng(derive_seed(seed, {0}));
  DcsbmParams p;
  p.n = n;
  p.K = K;
  const auto k = static_cast<std::size_t>(K);
  for (;;) {
    p.P = Matrix(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b) p.P(a, b) = p.P(b, a) = 0.05 + 0.95 * rng.uniform();
    const Vector ev = sym_eigenvalues(p.P);
    if (std::abs(ev.back()) > 1e-3) break;
  }
  std::vector<double> probs(k, 1.0 / K);
  p.z = draw_memberships(n, probs, derive_seed(seed, {1})).z;
  p.theta.resize(n);
  for (double& t : p.theta) t = theta_lo + (1.0 - theta_lo) * rng.uniform();
  p.validate();
  return p;
}

void ExperimentConfig::validate() const {
  const ExperimentGrid full = experiment_grid(id);
  if (grid.empty()) throw InvalidArgument("experiment grid is empty");
  for (double g : grid)
    if (!std::any_of(full.values.begin(), full.values.end(), [&](double v) { return std::abs(v - g) <= 1e-9; }))
      throw InvalidArgument("grid value " + std::to_string(g) + " is not part of experiment " + id);
  if (reps < 1) throw InvalidArgument("reps must be >= 1");
  if (methods.empty()) throw InvalidArgument("no methods selected");
  for (const auto& m : methods) m.validate();
}

std::vector<MethodSpec> default_methods() {
  return {MethodSpec::dual(Family::SC),         MethodSpec::dual(Family::SCORE),
          MethodSpec::dual(Family::SLIM),       MethodSpec::multiple(Family::SC, 1),
          MethodSpec::multiple(Family::SCORE, 1), MethodSpec::multiple(Family::SLIM, 1)};
}

ExperimentConfig make_experiment_config(std::string_view id, bool paper_scale, int grid_stride) {
  if (grid_stride < 1) throw InvalidArgument("grid stride must be >= 1");
  const ExperimentGrid full = experiment_grid(id);
  ExperimentConfig cfg;
  cfg.id = full.id;
  cfg.parameter = full.parameter;
  cfg.reps = paper_scale ? 50 : 20;
  cfg.methods = default_methods();
  const std::size_t stride = paper_scale ? 1 : static_cast<std::size_t>(grid_stride);
  for (std::size_t k = 0; k < full.values.size(); ++k)
    if (k % stride == 0 || k + 1 == full.values.size()) cfg.grid.push_back(full.values[k]);
  return cfg;
}

std::string to_json(const ExperimentConfig& cfg) {
  json j;
  j["id"] = cfg.id;
  j["parameter"] = cfg.parameter;
  j["grid"] = cfg.grid;
  j["reps"] = cfg.reps;
  j["seed"] = cfg.seed;
  j["methods"] = json::array();
  for (const auto& m : cfg.methods) j["methods"].push_back(spec_to_json(m));
  return j.dump(2);
}

ExperimentConfig experiment_config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("invalid experiment config: ") + e.what());
  }
  try {
    ExperimentConfig cfg;
    cfg.id = j.at("id").get<std::string>();
    cfg.parameter = j.value("parameter", experiment_grid(cfg.id).parameter);
    cfg.grid = j.at("grid").get<std::vector<double>>();
    cfg.reps = j.value("reps", 50);
    cfg.seed = j.value("seed", cfg.seed);
    for (const auto& m : j.at("methods")) cfg.methods.push_back(spec_from_json(m));
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw Error(std::string("invalid experiment config: ") + e.what());
  }
}

}  // namespace drsc

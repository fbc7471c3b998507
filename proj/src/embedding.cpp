#include "drsc/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

#include "drsc/diagnostics.hpp"
#include "drsc/error.hpp"

namespace drsc {

int default_K0(Family family) { return family == Family::SLIM ? 2 : 1; }

void MethodSpec::validate() const {
  if (M < 1) throw InvalidArgument("regularization depth M must be >= 1");
  if (K0 && *K0 < 0) throw InvalidArgument("K0 must be >= 0");
  if (family == Family::SCORE && k0() < 1) throw InvalidArgument("SCORE needs K0 >= 1 (the ratio matrix drops a column)");
  if (family == Family::SLIM && !(gamma > 0.0 && std::isfinite(gamma)))
    throw InvalidArgument("gamma must be a positive finite number");
  if (schedule.policy == RegularizerSchedule::Policy::Explicit &&
      schedule.depth() != static_cast<std::size_t>(M))
    throw InvalidArgument("explicit schedule has " + std::to_string(schedule.depth()) +
                          " regularizers but M = " + std::to_string(M));
  kmeans.validate();
}

MethodSpec MethodSpec::dual(Family family) {
  MethodSpec s;
  s.family = family;
  s.M = 2;
  return s;
}

MethodSpec MethodSpec::multiple(Family family, int M) {
  MethodSpec s;
  s.family = family;
  s.M = M;
  return s;
}

std::string method_name(const MethodSpec& spec) {
  std::string out = spec.M == 2 ? "DR" : std::to_string(spec.M) + "R";
  out += to_string(spec.family);
  if (spec.k0() != default_K0(spec.family)) out += "_K+" + std::to_string(spec.k0());
  return out;
}

MethodSpec parse_method(std::string_view name, int mr_depth) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  static const std::regex pattern(R"(^(DR|MR|\d+R)(SC|SCORE|SLIM)(_K\+(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(upper, m, pattern)) throw InvalidArgument("unknown method '" + std::string(name) + "'");

  MethodSpec spec;
  const std::string family = m[2];
  spec.family = family == "SC" ? Family::SC : family == "SCORE" ? Family::SCORE : Family::SLIM;
  const std::string depth = m[1];
  if (depth == "DR")
    spec.M = 2;
  else if (depth == "MR")
    spec.M = mr_depth;
  else
    spec.M = std::stoi(depth.substr(0, depth.size() - 1));
  if (m[4].matched) spec.K0 = std::stoi(m[4]);
  spec.validate();
  return spec;
}

SpectralEmbedding embed_sc(const Matrix& s, int K, int K0) {
  if (K < 1 || K0 < 0) throw InvalidArgument("embedding needs K >= 1 and K0 >= 0");
  const auto m = static_cast<std::size_t>(K + K0);
  if (m > s.rows())
    throw InvalidArgument("K + K0 = " + std::to_string(m) + " exceeds n = " + std::to_string(s.rows()));
  const EigenPairs eig = leading_eigs(s, m);
  SpectralEmbedding out;
  out.values = eig.values;
  out.X = eig.vectors;
  for (std::size_t i = 0; i < out.X.rows(); ++i) {
    auto row = out.X.row(i);
    for (std::size_t k = 0; k < m; ++k) row[k] *= eig.values[k];
  }
  return out;
}

SpectralEmbedding embed_sc(const RegularizedLaplacian& l, int K, int K0) { return embed_sc(l.matrix, K, K0); }

RowNormalized row_normalize(const Matrix& x, double zero_tol) {
  RowNormalized out{x, {}};
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto row = out.X.row(i);
    const double norm = norm2(row);
    if (norm <= zero_tol) {
      std::fill(row.begin(), row.end(), 0.0);
      out.zero_rows.push_back(i);
      continue;
    }
    for (double& v : row) v /= norm;
  }
  return out;
}

Matrix ratio_matrix(const Matrix& x, double denom_tol) {
  if (x.cols() < 2) throw InvalidArgument("ratio matrix needs at least two columns");
  Matrix r(x.rows(), x.cols() - 1);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double denom = x(i, 0);
    if (!(std::abs(denom) > denom_tol))
      throw DomainError("eigen-ratio undefined at node " + std::to_string(i) +
                        ": leading eigenvector entry is zero");
    for (std::size_t k = 1; k < x.cols(); ++k) r(i, k - 1) = x(i, k) / denom;
  }
  return r;
}

Matrix slim_similarity(const RegularizedLaplacian& l, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be > 0");
  const std::size_t n = l.matrix.rows();
  if (l.regularized_degree.size() != n) throw InvalidArgument("Laplacian is missing its degree diagonal");
  const double varsigma = std::exp(-gamma);

  Matrix system = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = varsigma / l.regularized_degree[i];
    for (std::size_t j = 0; j < n; ++j) system(i, j) -= scale * l.matrix(i, j);
  }
  Matrix w;
  try {
    w = invert(system);
  } catch (const SingularMatrix& e) {
    throw SingularMatrix(std::string("SLIM system I - exp(-gamma) D^-1 L is singular; exp(-gamma) is too large "
                                     "for invertibility (") + e.what() + ")");
  }

  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = i == j ? 0.0 : 0.5 * (w(i, j) + w(j, i));
  return out;
}

MethodResult run_on_matrix(const Matrix& s, int K, const MethodSpec& spec) {
  spec.validate();
  if (K < 1) throw InvalidArgument("K must be >= 1");

  MethodResult out;
  const RegularizerSchedule schedule = spec.schedule.policy == RegularizerSchedule::Policy::Explicit
                                           ? spec.schedule
                                           : default_taus(spec.family, s, K, spec.M);
  out.taus = schedule.taus;
  const RegularizedLaplacian lap = multiple_laplacian(s, schedule.taus);
  const int K0 = spec.k0();

  switch (spec.family) {
    case Family::SC: {
      out.embedding = embed_sc(lap, K, K0);
      auto normalized = row_normalize(out.embedding.X);
      out.features = std::move(normalized.X);
      out.zero_rows = std::move(normalized.zero_rows);
      break;
    }
    case Family::SCORE: {
      out.embedding = embed_sc(lap, K, K0);
      out.features = ratio_matrix(out.embedding.X);
      break;
    }
    case Family::SLIM: {
      out.embedding = embed_sc(slim_similarity(lap, spec.gamma), K, K0);
      auto normalized = row_normalize(out.embedding.X);
      out.features = std::move(normalized.X);
      out.zero_rows = std::move(normalized.zero_rows);
      break;
    }
  }
  if (!out.zero_rows.empty())
    warn(std::to_string(out.zero_rows.size()) + " zero embedding row(s) left unnormalized (first: node " +
         std::to_string(out.zero_rows.front()) + ")");

  out.kmeans = kmeans_fit(out.features, K, spec.kmeans);
  out.labels = out.kmeans.labels;
  return out;
}

MethodResult run_method_detailed(const Graph& g, int K, const MethodSpec& spec) {
  const bool connected = is_connected(g);
  if (!connected) warn("graph is not connected; spectral methods assume a connected network");
  MethodResult out = run_on_matrix(g.adjacency(), K, spec);
  out.connected = connected;
  return out;
}

LabelVector run_method(const Graph& g, int K, const MethodSpec& spec) {
  return run_method_detailed(g, K, spec).labels;
}

MethodResult run_ideal_detailed(const Matrix& omega, int K, const MethodSpec& spec) {
  return run_on_matrix(omega, K, spec);
}

LabelVector run_ideal(const Matrix& omega, int K, const MethodSpec& spec) {
  return run_ideal_detailed(omega, K, spec).labels;
}

}  // namespace drsc

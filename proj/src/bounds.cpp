#include "drsc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "drsc/csv.hpp"
#include "drsc/diagnostics.hpp"
#include "drsc/embedding.hpp"
#include "drsc/error.hpp"
#include "drsc/population.hpp"
#include "drsc/random.hpp"

namespace drsc {
namespace {

double positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string("nonpositive denominator in ") + what);
  return v;
}

double min_row_norm(const Matrix& x) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.rows(); ++i) m = std::min(m, norm2(x.row(i)));
  return m;
}

Vector algebraic_descending(Vector v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Factors of the SLIM radius: (tau1 D_max + D_max^2) / (tau2 D_max + tau1 tau2 + D_min)^2.
double slim_fraction(double tau1, double tau2, double lo, double hi) {
  const double den = tau2 * hi + tau1 * tau2 + lo;
  return (tau1 * hi + hi * hi) / positive(den * den, "Err_n");
}

}  // namespace

void BoundInputs::validate() const {
  if (n == 0) throw InvalidArgument("bound inputs need n >= 1");
  if (K < 1) throw InvalidArgument("bound inputs need K >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0,1)");
  if (!(tau1 >= 0.0) || !(tau2 >= 0.0)) throw InvalidArgument("regularizers must be >= 0");
  if (delta_min > delta_max) throw InvalidArgument("delta_min exceeds delta_max");
  if (Delta_min > Delta_max) throw InvalidArgument("Delta_min exceeds Delta_max");
}

Varpi varpi(const BoundInputs& b) {
  b.validate();
  const double num1 = b.tau2 + b.Delta_max / positive(b.tau1 + b.Delta_min, "varpi");
  const double den1 = positive(b.tau2 + b.delta_min / positive(b.tau1 + b.delta_max, "varpi"), "varpi");
  const double num2 = b.tau2 + b.Delta_min / positive(b.tau1 + b.Delta_max, "varpi");
  const double den2 = positive(b.tau2 + b.delta_max / positive(b.tau1 + b.delta_min, "varpi"), "varpi");
  Varpi v;
  v.a = std::max(std::sqrt(num1 / den1) - 1.0, 1.0 - std::sqrt(num2 / den2));
  v.b = std::max(num1 / den1 - 1.0, 1.0 - num2 / den2);
  return v;
}

bool assumption_a(const BoundInputs& b) {
  return b.tau1 + b.delta_min > 3.0 * std::log(4.0 * static_cast<double>(b.n) / b.epsilon);
}

bool assumption_b(const BoundInputs& b, double err) { return err <= b.lambda_K / 2.0; }

double err_n(const BoundInputs& b) {
  const Varpi v = varpi(b);
  if (!assumption_a(b))
    warn("concentration assumption fails: tau1 + delta_min = " + format_double(b.tau1 + b.delta_min) +
         " <= 3 log(4n/eps)");
  const double log_term = 3.0 * std::log(4.0 * static_cast<double>(b.n) / b.epsilon);
  const double pop = positive(b.tau2 + b.delta_min / positive(b.delta_max + b.tau1, "err_n"), "err_n");
  const double sample = positive(b.tau2 + b.Delta_min / positive(b.tau1 + b.Delta_max, "err_n"), "err_n");
  const double first = 4.0 * std::sqrt(log_term / positive(b.delta_min + b.tau1, "err_n")) / pop;
  const double second = (1.0 / std::sqrt(sample) + 1.0 / std::sqrt(pop)) *
                        (b.Delta_max / positive(b.tau1 + b.Delta_max, "err_n")) / std::sqrt(sample) * v.a;
  return first + second;
}

AssumptionC assumption_c(const BoundInputs& b) {
  const double varsigma = std::exp(-b.gamma);
  AssumptionC c;
  c.sample_limit = 1.0 / slim_fraction(b.tau1, b.tau2, b.Delta_min, b.Delta_max);
  c.population_limit = 1.0 / slim_fraction(b.tau1, b.tau2, b.delta_min, b.delta_max);
  c.holds = varsigma < std::min(c.sample_limit, c.population_limit);
  return c;
}

double Err_n(const BoundInputs& b) {
  const AssumptionC c = assumption_c(b);
  const double varsigma = std::exp(-b.gamma);
  if (!(varsigma < c.sample_limit))
    throw DomainError("exp(-gamma) = " + format_double(varsigma) + " violates the sample-degree limit " +
                      format_double(c.sample_limit));
  if (!(varsigma < c.population_limit))
    throw DomainError("exp(-gamma) = " + format_double(varsigma) + " violates the population-degree limit " +
                      format_double(c.population_limit));
  const Varpi v = varpi(b);
  const double e = err_n(b);
  const double fs = slim_fraction(b.tau1, b.tau2, b.Delta_min, b.Delta_max);
  const double fp = slim_fraction(b.tau1, b.tau2, b.delta_min, b.delta_max);
  const double sample = positive(b.tau2 + b.Delta_min / positive(b.tau1 + b.Delta_max, "Err_n"), "Err_n");
  const double tail = (b.tau1 + b.Delta_max) * b.delta_max * v.b /
                      positive((b.tau1 * b.tau2 + b.tau2 * b.Delta_max + b.Delta_min) *
                                   (b.tau1 * b.tau2 + b.tau2 * b.delta_max + b.delta_min),
                               "Err_n");
  return varsigma * (1.0 / (1.0 - varsigma * fs)) * (1.0 / (1.0 - varsigma * fp)) * (e / sample + tail);
}

double embedding_bound(BoundMethod method, const BoundInputs& b) {
  const double K = b.K;
  if (method == BoundMethod::DRSC) {
    const double e = err_n(b);
    if (!assumption_b(b, e))
      warn("eigen-gap assumption fails: err_n = " + format_double(e) + " > lambda_K / 2 = " +
           format_double(b.lambda_K / 2.0));
    positive(b.lambda_K, "the DRSC bound (lambda_K)");
    return std::sqrt(K * e * e + b.lambda_hat_K1 * b.lambda_hat_K1) + 8.0 * K * e / b.lambda_K;
  }
  const double E = Err_n(b);
  positive(b.slim_gap, "the DRSLIM bound (eigen-gap)");
  return E * std::sqrt(K + 2.0) + std::pow(2.0, 1.5) * (K + 2.0) * b.slim_lambda1 * E / b.slim_gap;
}

double hamming_bound(BoundMethod method, const BoundInputs& b) {
  const double m = method == BoundMethod::DRSC ? b.m_a : b.m_b;
  positive(m, "the Hamming bound (shortest row)");
  const double inner = embedding_bound(method, b);
  return 4.0 / (static_cast<double>(b.n) * m * m) * inner * inner;
}

double drsc_hamming_ceiling(const BoundInputs& b) {
  positive(b.m_a, "the Hamming bound (shortest row)");
  const double K = b.K;
  const double root = std::sqrt(K * b.lambda_K * b.lambda_K + 4.0 * b.lambda_hat_K1 * b.lambda_hat_K1) + 8.0 * K;
  return root * root / (static_cast<double>(b.n) * b.m_a * b.m_a);
}

double eigenvector_bound(const BoundInputs& b, double err) {
  return 8.0 * err * std::sqrt(static_cast<double>(b.K)) / positive(b.lambda_K, "the eigenvector bound");
}

double slim_eigenvector_bound(const BoundInputs& b, double slim_err) {
  return std::sqrt(8.0 * (b.K + 2.0)) * slim_err / positive(b.slim_gap, "the SLIM eigenvector bound");
}

BoundInputs measure_bound_inputs(const DcsbmParams& p, const Graph& g, double tau1, double tau2, double epsilon,
                                 double gamma) {
  p.validate(false);
  if (g.n() != p.n) throw InvalidArgument("graph size differs from the model");
  BoundInputs b;
  b.n = p.n;
  b.K = p.K;
  b.epsilon = epsilon;
  b.tau1 = tau1;
  b.tau2 = tau2;
  b.gamma = gamma;

  const Vector pop_deg = build_omega(p).row_sums();
  const auto [dlo, dhi] = std::minmax_element(pop_deg.begin(), pop_deg.end());
  b.delta_min = *dlo;
  b.delta_max = *dhi;
  const DegreeStats ds = degree_stats(g);
  b.Delta_min = ds.d_min;
  b.Delta_max = ds.d_max;

  const double taus[] = {tau1, tau2};
  const RegularizedLaplacian sample = multiple_laplacian(g.adjacency(), taus);
  const PopulationLaplacians pop = population_laplacians(p, tau1, tau2);

  const SpectralEmbedding xs = embed_sc(sample, p.K, 1);
  const SpectralEmbedding xp = embed_sc(pop.second, p.K, 1);
  b.lambda_hat_K1 = xs.values[static_cast<std::size_t>(p.K)];
  b.lambda_K = xp.values[static_cast<std::size_t>(p.K - 1)];
  b.m_a = std::min(min_row_norm(xs.X), min_row_norm(xp.X));

  if (static_cast<std::size_t>(p.K) + 3 <= p.n) {
    const Matrix ms = slim_similarity(sample, gamma);
    const Matrix mp = slim_similarity(pop.second, gamma);
    const SpectralEmbedding ys = embed_sc(ms, p.K, 2);
    const SpectralEmbedding yp = embed_sc(mp, p.K, 2);
    b.m_b = std::min(min_row_norm(ys.X), min_row_norm(yp.X));
    const Vector ev = sym_eigenvalues(mp);
    b.slim_lambda1 = ev[0];
    b.slim_gap = ev[static_cast<std::size_t>(p.K) + 1] - ev[static_cast<std::size_t>(p.K) + 2];
  }
  return b;
}

std::vector<ConcentrationRow> concentration_experiment(const DcsbmParams& p,
                                                       const std::vector<std::pair<double, double>>& tau_grid,
                                                       std::size_t reps, std::uint64_t seed, double epsilon) {
  p.validate(false);
  if (reps == 0) throw InvalidArgument("reps must be >= 1");
  const Matrix omega = build_omega(p);
  const Vector pop_deg = omega.row_sums();
  const auto K = static_cast<std::size_t>(p.K);

  struct PopulationPoint {
    Matrix L2;
    Vector spectrum;  // algebraic descending
    EigenPairs top;   // K leading pairs by magnitude
    bool degenerate = false;
  };
  std::vector<PopulationPoint> pops;
  for (const auto& [t1, t2] : tau_grid) {
    PopulationPoint pp;
    pp.L2 = population_laplacians(p, t1, t2).second.matrix;
    pp.spectrum = algebraic_descending(sym_eigenvalues(pp.L2));
    pp.top = leading_eigs(pp.L2, K);
    const Vector mag = sym_eigenvalues(pp.L2);
    for (std::size_t k = 0; k < K && k + 1 < mag.size(); ++k)
      if (std::abs(mag[k] - mag[k + 1]) <= kDefaultTolerances.eigen_gap * std::max(1.0, std::abs(mag[0])))
        pp.degenerate = true;
    pops.push_back(std::move(pp));
  }

  std::vector<ConcentrationRow> rows(tau_grid.size());
  for (std::size_t t = 0; t < tau_grid.size(); ++t) {
    rows[t].tau1 = tau_grid[t].first;
    rows[t].tau2 = tau_grid[t].second;
    rows[t].reps = reps;
  }

  {
  // err_n would warn once per sample; the per-row flag is reported below instead.
  ScopedWarningSink quiet([](const std::string&) {});
  for (std::size_t r = 0; r < reps; ++r) {
    const Graph g = sample_adjacency(omega, derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    const DegreeStats ds = degree_stats(g);
    for (std::size_t t = 0; t < tau_grid.size(); ++t) {
      ConcentrationRow& row = rows[t];
      const PopulationPoint& pp = pops[t];
      const double taus[] = {row.tau1, row.tau2};
      const Matrix L2 = multiple_laplacian(g.adjacency(), taus).matrix;
      const double dev = spectral_norm(L2 - pp.L2);

      BoundInputs b;
      b.n = p.n;
      b.K = p.K;
      b.epsilon = epsilon;
      b.tau1 = row.tau1;
      b.tau2 = row.tau2;
      const auto [dlo, dhi] = std::minmax_element(pop_deg.begin(), pop_deg.end());
      b.delta_min = *dlo;
      b.delta_max = *dhi;
      b.Delta_min = ds.d_min;
      b.Delta_max = ds.d_max;
      b.lambda_K = pp.top.values[K - 1];
      const double e = err_n(b);
      row.assumption_a = assumption_a(b);

      const EigenPairs eig = sym_eig(L2);
      const Vector spectrum = algebraic_descending(eig.values);
      double weyl_all = 0.0, weyl_top = 0.0;
      for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double d = std::abs(spectrum[k] - pp.spectrum[k]);
        weyl_all = std::max(weyl_all, d);
        if (k < K) weyl_top = std::max(weyl_top, d);
      }
      if (weyl_all > dev + 1e-12 * std::max(1.0, dev)) ++row.weyl_violations;

      row.deviations.push_back(dev);
      row.mean_dev += dev;
      row.err_n += e;
      row.weyl_max = std::max(row.weyl_max, weyl_top);
      if (dev <= e) row.coverage += 1.0;

      if (row.assumption_a && assumption_b(b, e)) {
        ++row.eigvec_checked;
        double dist = 0.0;
        if (pp.degenerate) {
          ++row.eigvec_projector;
          Matrix proj(p.n, p.n);
          for (std::size_t i = 0; i < p.n; ++i)
            for (std::size_t j = 0; j < p.n; ++j) {
              double v = 0.0;
              for (std::size_t k = 0; k < K; ++k)
                v += eig.vectors(i, k) * eig.vectors(j, k) - pp.top.vectors(i, k) * pp.top.vectors(j, k);
              proj(i, j) = v;
            }
          dist = frobenius_norm(proj);
        } else {
          double sq = 0.0;
          for (std::size_t k = 0; k < K; ++k) {
            double dotp = 0.0;
            for (std::size_t i = 0; i < p.n; ++i) dotp += eig.vectors(i, k) * pp.top.vectors(i, k);
            const double s = dotp < 0 ? -1.0 : 1.0;
            for (std::size_t i = 0; i < p.n; ++i) {
              const double d = s * eig.vectors(i, k) - pp.top.vectors(i, k);
              sq += d * d;
            }
          }
          dist = std::sqrt(sq);
        }
        if (dist <= eigenvector_bound(b, e)) ++row.eigvec_covered;
      }
    }
  }
  }
  for (auto& row : rows) {
    if (!row.assumption_a)
      warn("concentration assumption fails at tau1 = " + format_double(row.tau1) + ", tau2 = " +
           format_double(row.tau2));
    const double rr = static_cast<double>(reps);
    row.mean_dev /= rr;
    row.err_n /= rr;
    row.coverage /= rr;
  }
  return rows;
}

void write_concentration_csv(std::ostream& out, const std::vector<ConcentrationRow>& rows) {
  write_csv_row(out, {"tau1", "tau2", "mean_dev", "err_n", "weyl_max", "coverage"});
  for (const auto& r : rows)
    write_csv_row(out, {format_double(r.tau1), format_double(r.tau2), format_double(r.mean_dev),
                        format_double(r.err_n), format_double(r.weyl_max), format_double(r.coverage)});
}

std::vector<double> moving_average(const std::vector<double>& values, std::size_t window) {
  if (window == 0) throw InvalidArgument("window must be >= 1");
  const std::size_t half = window / 2;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(values.size() - 1, i + half);
    double s = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) s += values[j];
    out[i] = s / static_cast<double>(hi - lo + 1);
  }
  return out;
}

}  // namespace drsc

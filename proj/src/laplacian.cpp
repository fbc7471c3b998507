#include "drsc/laplacian.hpp"

#include <algorithm>
#include <cmath>

#include "drsc/error.hpp"

namespace drsc {

Family family_of(Method m) {
  switch (m) {
    case Method::DRSC:
    case Method::MRSC:
      return Family::SC;
    case Method::DRSCORE:
    case Method::MRSCORE:
      return Family::SCORE;
    case Method::DRSLIM:
    case Method::MRSLIM:
      return Family::SLIM;
  }
  throw InvalidArgument("unknown method");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::SC:
      return "SC";
    case Family::SCORE:
      return "SCORE";
    case Family::SLIM:
      return "SLIM";
  }
  return "?";
}

RegularizerSchedule RegularizerSchedule::explicit_values(std::vector<double> taus) {
  for (double t : taus)
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("regularizers must be finite and >= 0");
  RegularizerSchedule s;
  s.taus = std::move(taus);
  s.policy = Policy::Explicit;
  return s;
}

RegularizedLaplacian regularized_laplacian(const Matrix& s, double tau) {
  if (!s.is_square()) throw InvalidArgument("regularized_laplacian needs a square matrix");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("regularizer must be finite and >= 0");
  const std::size_t n = s.rows();
  for (double x : s.data())
    if (!(x >= 0.0)) throw InvalidArgument("regularized_laplacian needs a nonnegative matrix");
  if (!is_symmetric(s, 1e-10 * std::max(1.0, max_abs(s))))
    throw InvalidArgument("regularized_laplacian needs a symmetric matrix");

  RegularizedLaplacian out;
  out.tau = tau;
  out.regularized_degree = s.row_sums();
  Vector scale(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = out.regularized_degree[i] += tau;
    if (!(d > 0.0)) throw DomainError("singular degree matrix: row " + std::to_string(i) + " has zero regularized degree");
    scale[i] = 1.0 / std::sqrt(d);
  }

  out.matrix = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = s.row(i);
    auto dst = out.matrix.row(i);
    for (std::size_t j = 0; j < n; ++j) dst[j] = src[j] * (scale[i] * scale[j]);
  }
  out.row_sums = out.matrix.row_sums();
  return out;
}

RegularizedLaplacian multiple_laplacian(const Matrix& s, std::span<const double> taus) {
  if (taus.empty()) throw InvalidArgument("regularization depth must be at least 1");
  RegularizedLaplacian current = regularized_laplacian(s, taus[0]);
  for (std::size_t m = 1; m < taus.size(); ++m) current = regularized_laplacian(current.matrix, taus[m]);
  return current;
}

RegularizedLaplacian multiple_laplacian(const Graph& g, const RegularizerSchedule& schedule) {
  if (schedule.policy != RegularizerSchedule::Policy::Explicit)
    throw InvalidArgument("multiple_laplacian needs resolved regularizers; call default_taus first");
  return multiple_laplacian(g.adjacency(), schedule.taus);
}

RegularizerSchedule default_taus(Family family, const Matrix& s, int K, int M) {
  if (M < 1) throw InvalidArgument("regularization depth must be at least 1");
  if (K < 1) throw InvalidArgument("K must be at least 1");
  if (s.rows() == 0) throw InvalidArgument("empty matrix");
  const double n = static_cast<double>(s.rows());

  std::vector<double> taus;
  taus.reserve(static_cast<std::size_t>(M));
  Matrix current = s;
  for (int m = 1; m <= M; ++m) {
    const double total = current.sum();
    double tau = total / n;
    if (family == Family::SCORE) tau = (m < M) ? total : total / (n * K);
    taus.push_back(tau);
    if (m < M) current = regularized_laplacian(current, tau).matrix;
  }
  RegularizerSchedule out;
  out.taus = std::move(taus);
  out.policy = RegularizerSchedule::Policy::Explicit;
  return out;
}

RegularizerSchedule default_taus(Method method, const Graph& g, int K, int M) {
  switch (method) {
    case Method::DRSC:
    case Method::DRSCORE:
    case Method::DRSLIM:
      M = 2;
      break;
    default:
      break;
  }
  return default_taus(family_of(method), g.adjacency(), K, M);
}

}  // namespace drsc

#include "drsc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "drsc/error.hpp"

namespace drsc {
namespace {

Matrix symmetrized(const Matrix& s, const Tolerances& tol) {
  if (!s.is_square()) throw InvalidArgument("eigendecomposition needs a square matrix");
  if (!all_finite(s)) throw InvalidArgument("matrix has non-finite entries");
  if (!is_symmetric(s, tol.symmetry * std::max(1.0, max_abs(s))))
    throw InvalidArgument("matrix is not symmetric");
  const std::size_t n = s.rows();
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = 0.5 * (s(i, j) + s(j, i));
  return w;
}

// Householder reduction of the symmetric matrix held in `w` to tridiagonal
// form (diagonal d, subdiagonal e with e[0] unused). The storage is the
// transpose of the classic EISPACK tred2 layout, so on return row k of `w`
// holds column k of the orthogonal transform when `accumulate` is set.
void tridiagonalize(Matrix& w, Vector& d, Vector& e, bool accumulate) {
  const std::size_t n = w.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) d[j] = w(j, n - 1);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = w(j, i - 1);
        w(j, i) = 0.0;
        w(i, j) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        w(i, j) = f;
        auto wj = w.row(j);
        g = e[j] + wj[j] * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += wj[k] * d[k];
          e[k] += wj[k] * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        auto wj = w.row(j);
        for (std::size_t k = j; k < i; ++k) wj[k] -= (f * e[k] + g * d[k]);
        d[j] = w(j, i - 1);
        w(j, i) = 0.0;
      }
    }
    d[i] = h;
  }

  if (!accumulate) {
    for (std::size_t j = 0; j < n; ++j) d[j] = w(j, j);
    e[0] = 0.0;
    return;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    w(i, n - 1) = w(i, i);
    w(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      auto wi1 = w.row(i + 1);
      for (std::size_t k = 0; k <= i; ++k) d[k] = wi1[k] / h;
      for (std::size_t j = 0; j <= i; ++j) {
        auto wj = w.row(j);
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += wi1[k] * wj[k];
        for (std::size_t k = 0; k <= i; ++k) wj[k] -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) w(i + 1, k) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = w(j, n - 1);
    w(j, n - 1) = 0.0;
  }
  w(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e). When `z` is non-null its rows
// are rotated along, turning the Householder transform into eigenvectors.
void tridiagonal_ql(Vector& d, Vector& e, Matrix* z) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  const double eps = std::ldexp(1.0, -52);
  const int max_iter = 60;
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iter) throw Error("symmetric eigensolver did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (z) {
            auto zi = z->row(ii);
            auto zi1 = z->row(ii + 1);
            for (std::size_t k = 0; k < n; ++k) {
              const double t = zi1[k];
              zi1[k] = s * zi[k] + c * t;
              zi[k] = c * zi[k] - s * t;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

std::vector<std::size_t> magnitude_order(const Vector& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(values[a]), mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    return values[a] > values[b];
  });
  return idx;
}

}  // namespace

void orient_eigenvector(std::span<double> v, double tie) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return;
  for (double x : v) {
    if (std::abs(x) >= peak * (1.0 - tie)) {
      if (x < 0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

EigenPairs sym_eig(const Matrix& s, const Tolerances& tol) {
  Matrix w = symmetrized(s, tol);
  const std::size_t n = w.rows();
  EigenPairs out;
  out.source_dim = n;
  if (n == 0) return out;

  Vector d, e;
  tridiagonalize(w, d, e, true);
  tridiagonal_ql(d, e, &w);

  // Row k of w is now the eigenvector for d[k].
  const auto order = magnitude_order(d);
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  Vector v(n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t k = order[c];
    out.values[c] = d[k];
    std::copy(w.row(k).begin(), w.row(k).end(), v.begin());
    orient_eigenvector(v, tol.sign_tie);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, c) = v[i];
  }
  return out;
}

Vector sym_eigenvalues(const Matrix& s, const Tolerances& tol) {
  Matrix w = symmetrized(s, tol);
  const std::size_t n = w.rows();
  if (n == 0) return {};
  Vector d, e;
  tridiagonalize(w, d, e, false);
  tridiagonal_ql(d, e, nullptr);
  const auto order = magnitude_order(d);
  Vector out(n);
  for (std::size_t c = 0; c < n; ++c) out[c] = d[order[c]];
  return out;
}

EigenPairs leading_eigs(const Matrix& s, std::size_t m, const Tolerances& tol) {
  if (m < 1 || m > s.rows())
    throw InvalidArgument("leading_eigs: requested " + std::to_string(m) + " pairs of a " +
                          std::to_string(s.rows()) + "x" + std::to_string(s.rows()) + " matrix");
  EigenPairs full = sym_eig(s, tol);
  const std::size_t n = full.source_dim;
  EigenPairs out;
  out.source_dim = n;
  out.values.assign(full.values.begin(), full.values.begin() + static_cast<std::ptrdiff_t>(m));
  out.vectors = Matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < m; ++c) out.vectors(i, c) = full.vectors(i, c);

  bool any_pos = false, any_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    any_pos |= out.vectors(i, 0) > 0;
    any_neg |= out.vectors(i, 0) < 0;
  }
  if (any_neg && !any_pos)
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, 0) = -out.vectors(i, 0);
  return out;
}

Matrix invert(const Matrix& s, const Tolerances& tol) {
  if (!s.is_square()) throw InvalidArgument("invert needs a square matrix");
  if (!all_finite(s)) throw InvalidArgument("matrix has non-finite entries");
  const std::size_t n = s.rows();
  Matrix lu = s;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const double floor = tol.singular_pivot * max_abs(s);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        p = i;
      }
    }
    if (best <= floor || best == 0.0)
      throw SingularMatrix("singular matrix: pivot " + std::to_string(best) + " at column " +
                           std::to_string(k));
    if (p != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
      std::swap(perm[k], perm[p]);
    }
    const double pivot = lu(k, k);
    auto rk = lu.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = lu.row(i);
      const double factor = ri[k] / pivot;
      ri[k] = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= factor * rk[j];
    }
  }

  // Solve L U X = P for all columns at once, row by row.
  Matrix x(n, n);
  for (std::size_t i = 0; i < n; ++i) x(i, perm[i]) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const double f = lu(i, k);
      if (f == 0.0) continue;
      auto xk = x.row(k);
      for (std::size_t j = 0; j < n; ++j) xi[j] -= f * xk[j];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    auto xi = x.row(i);
    for (std::size_t k = i + 1; k < n; ++k) {
      const double f = lu(i, k);
      if (f == 0.0) continue;
      auto xk = x.row(k);
      for (std::size_t j = 0; j < n; ++j) xi[j] -= f * xk[j];
    }
    const double inv = 1.0 / lu(i, i);
    for (double& v : xi) v *= inv;
  }
  return x;
}

double spectral_norm(const Matrix& s) {
  if (s.empty()) return 0.0;
  const Vector values = sym_eigenvalues(s);
  return std::abs(values.front());
}

}  // namespace drsc

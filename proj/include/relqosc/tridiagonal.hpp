#pragma once

// Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
// eigenvalues, inverse iteration for the eigenvectors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "relqosc/error.hpp"

namespace relqosc {

struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;  // length diag.size() - 1

  int size() const { return static_cast<int>(diag.size()); }

  void validate() const {
    if (diag.size() < 1 || offdiag.size() + 1 != diag.size()) {
      throw config_error("tridiagonal operator: offdiag must have length size - 1");
    }
  }

  /// Infinity norm (max absolute row sum).
  double inf_norm() const {
    double best = 0.0;
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) {
      double row = std::abs(diag[i]);
      if (i > 0) row += std::abs(offdiag[i - 1]);
      if (i + 1 < n) row += std::abs(offdiag[i]);
      best = std::max(best, row);
    }
    return best;
  }

  std::vector<double> apply(std::span<const double> v) const {
    const std::size_t n = diag.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * v[i];
      if (i > 0) s += offdiag[i - 1] * v[i - 1];
      if (i + 1 < n) s += offdiag[i] * v[i + 1];
      out[i] = s;
    }
    return out;
  }
};

struct EigenResult {
  double lambda = 0.0;
  std::vector<double> vector;  // weight * sum(v^2) == 1
  double residual = 0.0;       // ||(T - lambda) v||_2
  int nodes = 0;               // sign changes of vector
};

/// Number of eigenvalues strictly below x (negative pivots of T - x I).
inline int sturm_count(const TridiagonalOperator& t, double x) {
  const double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double e2 = i > 0 ? t.offdiag[i - 1] * t.offdiag[i - 1] : 0.0;
    q = (t.diag[i] - x) - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

/// Sign changes in v, ignoring entries below threshold * max|v|.
inline int count_sign_changes(std::span<const double> v, double threshold = 1e-8) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double floor = threshold * vmax;
  int changes = 0;
  int last_sign = 0;
  for (double x : v) {
    if (std::abs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  return changes;
}

/// Flip v so that its first lobe (first local extremum reaching 1% of the
/// peak) is positive.
inline void fix_sign(std::span<double> v) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  if (vmax == 0.0) return;
  std::size_t i = 0;
  while (i < v.size() && std::abs(v[i]) < 1e-2 * vmax) ++i;
  while (i + 1 < v.size() && std::abs(v[i + 1]) > std::abs(v[i])) ++i;
  if (i < v.size() && v[i] < 0.0) {
    for (double& x : v) x = -x;
  }
}

namespace detail {

/// LU factorization of a tridiagonal matrix with partial pivoting. U gets a
/// second superdiagonal from row interchanges.
class TridiagonalLU {
 public:
  TridiagonalLU(const TridiagonalOperator& t, double shift, double pivot_floor) {
    const std::size_t n = t.diag.size();
    d_.resize(n);
    du_.assign(n, 0.0);
    du2_.assign(n, 0.0);
    l_.assign(n, 0.0);
    swap_.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) d_[i] = t.diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) du_[i] = t.offdiag[i];
    std::vector<double> dl(t.offdiag.begin(), t.offdiag.end());

    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl[i])) {
        if (d_[i] == 0.0) d_[i] = pivot_floor;
        const double f = dl[i] / d_[i];
        l_[i] = f;
        d_[i + 1] -= f * du_[i];
      } else {
        swap_[i] = true;
        const double f = d_[i] / dl[i];
        l_[i] = f;
        d_[i] = dl[i];
        const double tmp = d_[i + 1];
        d_[i + 1] = du_[i] - f * tmp;
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -f * du2_[i];
        }
        du_[i] = tmp;
      }
    }
    if (n > 0 && std::abs(d_[n - 1]) < pivot_floor) d_[n - 1] = pivot_floor;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(d_[i]) < pivot_floor) d_[i] = d_[i] < 0.0 ? -pivot_floor : pivot_floor;
    }
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swap_[i]) {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - l_[i] * b[i];
      } else {
        b[i + 1] -= l_[i] * b[i];
      }
    }
    for (std::size_t k = n; k-- > 0;) {
      double s = b[k];
      if (k + 1 < n) s -= du_[k] * b[k + 1];
      if (k + 2 < n) s -= du2_[k] * b[k + 2];
      b[k] = s / d_[k];
    }
  }

 private:
  std::vector<double> d_, du_, du2_, l_;
  std::vector<bool> swap_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void scale(std::span<double> v, double f) {
  for (double& x : v) x *= f;
}

}  // namespace detail

struct EigenOptions {
  double bisection_rel_tol = 1e-12;  // relative to ||T||_inf
  int max_inverse_iterations = 50;
  double vector_tol = 1e-12;
  double weight = 1.0;  // quadrature weight for the returned normalization
};

/// The k smallest eigenpairs of a symmetric tridiagonal matrix, ascending.
inline std::vector<EigenResult> eigen_lowest(const TridiagonalOperator& t, int k,
                                             const EigenOptions& opt = {}) {
  t.validate();
  const int n = t.size();
  if (k < 1 || k > n) {
    throw config_error("eigen_lowest: requested " + std::to_string(k) + " eigenvalues of a " +
                       std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  for (double x : t.diag) {
    if (!std::isfinite(x)) throw solver_error("eigen_lowest: non-finite diagonal entry");
  }

  // Gerschgorin enclosure
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.offdiag[static_cast<std::size_t>(i - 1)]);
    if (i + 1 < n) r += std::abs(t.offdiag[static_cast<std::size_t>(i)]);
    lo = std::min(lo, t.diag[static_cast<std::size_t>(i)] - r);
    hi = std::max(hi, t.diag[static_cast<std::size_t>(i)] + r);
  }
  const double norm = std::max(t.inf_norm(), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();
  const double abs_tol = opt.bisection_rel_tol * norm;
  lo -= 2.0 * eps * norm + abs_tol;
  hi += 2.0 * eps * norm + abs_tol;

  struct Bracket {
    double lo, hi;
  };
  std::vector<Bracket> brackets(static_cast<std::size_t>(k));
  for (int idx = 0; idx < k; ++idx) {
    double a = lo;
    double b = hi;
    // tighten from the previous eigenvalue: lambda_idx >= lambda_{idx-1}
    if (idx > 0) a = std::max(a, brackets[static_cast<std::size_t>(idx - 1)].lo);
    while (b - a > abs_tol + 2.0 * eps * std::max(std::abs(a), std::abs(b))) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (sturm_count(t, mid) > idx) {
        b = mid;
      } else {
        a = mid;
      }
    }
    brackets[static_cast<std::size_t>(idx)] = {a, b};
  }

  std::mt19937_64 rng(0x5eed1234abcdULL);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double pivot_floor = eps * norm;

  std::vector<EigenResult> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int idx = 0; idx < k; ++idx) {
    const auto [a, b] = brackets[static_cast<std::size_t>(idx)];
    const double sigma = 0.5 * (a + b);
    detail::TridiagonalLU lu(t, sigma, pivot_floor);

    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = uni(rng);
    detail::scale(v, 1.0 / std::sqrt(detail::dot(v, v)));

    auto orthogonalize = [&](std::vector<double>& x) {
      for (const auto& prev : out) {
        if (std::abs(prev.lambda - sigma) > 1e-3 * norm) continue;
        const double w = detail::dot(prev.vector, x) * opt.weight;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= w * prev.vector[i];
      }
    };

    bool converged = false;
    double last_diff = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opt.max_inverse_iterations; ++it) {
      std::vector<double> next = v;
      lu.solve(next);
      orthogonalize(next);
      const double len = std::sqrt(detail::dot(next, next));
      if (!(len > 0.0) || !std::isfinite(len)) {
        throw solver_error("inverse iteration broke down for eigenvalue index " + std::to_string(idx));
      }
      detail::scale(next, 1.0 / len);
      if (detail::dot(next, v) < 0.0) detail::scale(next, -1.0);
      double diff = 0.0;
      for (std::size_t i = 0; i < next.size(); ++i) diff += (next[i] - v[i]) * (next[i] - v[i]);
      diff = std::sqrt(diff);
      v = std::move(next);
      // Stagnation at roundoff level counts as convergence: the iterate is
      // a fixed point of the factored operator up to ~eps ||T|| / gap.
      if (diff <= opt.vector_tol || (it > 0 && diff <= 1e-8 && diff >= 0.5 * last_diff)) {
        converged = true;
        break;
      }
      last_diff = diff;
    }
    if (!converged) {
      throw solver_error("inverse iteration did not converge for eigenvalue index " +
                         std::to_string(idx));
    }

    // Rayleigh quotient, kept only when it stays inside the bisection bracket.
    const auto tv = t.apply(v);
    double lambda = detail::dot(v, tv);
    const double slack = 4.0 * eps * norm;
    if (!(lambda >= a - slack && lambda <= b + slack)) lambda = sigma;

    fix_sign(v);
    detail::scale(v, 1.0 / std::sqrt(opt.weight));
    const auto tvs = t.apply(v);
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double r = tvs[i] - lambda * v[i];
      res += r * r;
    }
    EigenResult er;
    er.lambda = lambda;
    er.nodes = count_sign_changes(v);
    er.residual = std::sqrt(res);
    er.vector = std::move(v);
    out.push_back(std::move(er));
  }

  std::stable_sort(out.begin(), out.end(), [](const EigenResult& x, const EigenResult& y) {
    if (x.lambda != y.lambda) return x.lambda < y.lambda;
    return x.nodes < y.nodes;
  });
  return out;
}

}  // namespace relqosc

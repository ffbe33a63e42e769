#pragma once

// Orthogonal polynomials and the terminating confluent hypergeometric
// series used by the closed-form wavefunctions. Everything is evaluated by
// recurrence in double precision.

#include <cmath>
#include <string>

#include "relqosc/error.hpp"

namespace relqosc::specfun {

/// Physicists' Hermite polynomial H_n(x).
inline double hermite(int n, double x) {
  if (n < 0) throw domain_error("hermite: degree must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// 1F1(-n; b; x), summed as the finite series
///   sum_{k=0}^{n} (-n)_k x^k / ((b)_k k!).
/// Only the terminating case is provided.
inline double kummer_terminating(int n, double b, double x) {
  if (n < 0) throw domain_error("kummer_terminating: n must be non-negative");
  if (!(b > 0.0)) {
    throw domain_error("kummer_terminating: second parameter must be > 0, got " +
                       std::to_string(b));
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= static_cast<double>(k - n) * x / ((b + k) * (k + 1.0));
    sum += term;
  }
  return sum;
}

/// Generalized Laguerre polynomial L_n^alpha(x) via
///   (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}.
inline double laguerre(int n, double alpha, double x) {
  if (n < 0) throw domain_error("laguerre: degree must be non-negative");
  if (!(alpha > -1.0)) {
    throw domain_error("laguerre: alpha must be > -1, got " + std::to_string(alpha));
  }
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// log(n!) without overflow.
inline double log_factorial(int n) {
  if (n < 0) throw domain_error("log_factorial: n must be non-negative");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

/// n! Gamma(alpha+1) / Gamma(n+alpha+1), the factor relating
/// 1F1(-n; alpha+1; x) to L_n^alpha(x).
inline double kummer_laguerre_ratio(int n, double alpha) {
  return std::exp(log_factorial(n) + std::lgamma(alpha + 1.0) - std::lgamma(n + alpha + 1.0));
}

}  // namespace relqosc::specfun

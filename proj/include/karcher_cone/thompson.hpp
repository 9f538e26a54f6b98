#ifndef KARCHER_CONE_THOMPSON_HPP
#define KARCHER_CONE_THOMPSON_HPP

// Thompson part metric on the positive definite cone.
//
//   M(x/y) = inf{t > 0 : x <= t y} = lambda_max(y^{-1/2} x y^{-1/2})
//   d(x, y) = log max{M(x/y), M(y/x)} = ||log(x^{-1/2} y x^{-1/2})||
//
// The spectral-norm form is the computation path; the ratio form is kept as
// an independent cross-check.

#include <algorithm>
#include <cmath>

#include "karcher_cone/hermitian.hpp"

namespace karcher_cone {

/// Distances below this are reported as exactly zero.
template <typename Real>
constexpr Real thompson_zero_threshold = Real(1e-10);

template <typename Real>
Real m_ratio(const PositiveDefinite<Real>& x, const PositiveDefinite<Real>& y) {
  return congruence(inv_sqrt(y), x).max_eigenvalue();
}

namespace detail {

// Unclamped spectral-norm Thompson distance.
template <typename Real>
Real raw_thompson_distance(const PositiveDefinite<Real>& x,
                           const PositiveDefinite<Real>& y) {
  const PositiveDefinite<Real> c = congruence(inv_sqrt(x), y);
  return std::max(std::abs(std::log(c.min_eigenvalue())),
                  std::abs(std::log(c.max_eigenvalue())));
}

// Cheap lower bound on d(x, y): Weyl monotonicity gives
// |log lambda_k(x) - log lambda_k(y)| <= d(x, y) for every k.
template <typename Real>
Real thompson_lower_bound(const PositiveDefinite<Real>& x,
                          const PositiveDefinite<Real>& y) {
  Real bound = 0;
  for (Index k = 0; k < x.dim(); ++k) {
    bound = std::max(bound, std::abs(std::log(x.spectral().eigenvalues(k)) -
                                     std::log(y.spectral().eigenvalues(k))));
  }
  return bound;
}

}  // namespace detail

/// Thompson distance ||log(x^{-1/2} y x^{-1/2})|| (spectral norm).
template <typename Real>
Real thompson_distance(const PositiveDefinite<Real>& x,
                       const PositiveDefinite<Real>& y) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("thompson_distance: dimension mismatch");
  }
  const Real d = detail::raw_thompson_distance(x, y);
  return d < thompson_zero_threshold<Real> ? Real(0) : d;
}

/// log max{M(x/y), M(y/x)}; the order-theoretic formula, with the same
/// zero threshold.
template <typename Real>
Real thompson_distance_by_ratio(const PositiveDefinite<Real>& x,
                                const PositiveDefinite<Real>& y) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("thompson_distance: dimension mismatch");
  }
  const Real d = std::log(std::max(m_ratio(x, y), m_ratio(y, x)));
  return d < thompson_zero_threshold<Real> ? Real(0) : d;
}

/// Spectral norm of x - y.
template <typename Real>
Real norm_distance(const Hermitian<Real>& x, const Hermitian<Real>& y) {
  return spectral_norm(x - y);
}

template <typename Real>
Real norm_distance(const PositiveDefinite<Real>& x,
                   const PositiveDefinite<Real>& y) {
  return norm_distance(x.hermitian(), y.hermitian());
}

}  // namespace karcher_cone

#endif  // KARCHER_CONE_THOMPSON_HPP

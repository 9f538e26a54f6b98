#ifndef KARCHER_CONE_RANDOM_HPP
#define KARCHER_CONE_RANDOM_HPP

// Seeded generators for Hermitian, positive definite, unitary and
// invertible matrices. Everything draws from a caller-owned engine so runs
// are reproducible.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "karcher_cone/hermitian.hpp"

namespace karcher_cone {

template <typename Real, typename Rng>
ComplexMatrix<Real> random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<Real> normal(0, 1);
  ComplexMatrix<Real> g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      g(i, j) = std::complex<Real>(re, im);
    }
  }
  return g;
}

/// Hermitian matrix with spectral norm drawn uniformly from [0, max_norm].
template <typename Real, typename Rng>
Hermitian<Real> random_hermitian(Index n, Real max_norm, Rng& rng) {
  const Hermitian<Real> h(random_gaussian<Real>(n, n, rng));
  const Real norm = spectral_norm(h);
  std::uniform_real_distribution<Real> uniform(0, max_norm);
  const Real target = uniform(rng);
  return norm > 0 ? (target / norm) * h : h;
}

/// Real-symmetric variant of random_hermitian.
template <typename Real, typename Rng>
Hermitian<Real> random_real_symmetric(Index n, Real max_norm, Rng& rng) {
  std::normal_distribution<Real> normal(0, 1);
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  const Hermitian<Real> h(g);
  const Real norm = spectral_norm(h);
  std::uniform_real_distribution<Real> uniform(0, max_norm);
  const Real target = uniform(rng);
  return norm > 0 ? (target / norm) * h : h;
}

/// exp(h) for a random Hermitian h with ||h|| <= log_radius, so the result
/// lies in the Thompson ball of radius log_radius around the identity.
template <typename Real, typename Rng>
PositiveDefinite<Real> random_pd(Index n, Real log_radius, Rng& rng) {
  return matrix_exp(random_hermitian<Real>(n, log_radius, rng));
}

template <typename Real, typename Rng>
std::vector<PositiveDefinite<Real>> random_pd_list(std::size_t count, Index n,
                                                   Real log_radius, Rng& rng) {
  std::vector<PositiveDefinite<Real>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(random_pd<Real>(n, log_radius, rng));
  }
  return out;
}

/// Unitary factor of a complex Gaussian matrix, with the phases of R's
/// diagonal absorbed so the distribution is Haar.
template <typename Real, typename Rng>
ComplexMatrix<Real> random_unitary(Index n, Rng& rng) {
  const ComplexMatrix<Real> g = random_gaussian<Real>(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix<Real>> qr(g);
  ComplexMatrix<Real> q = qr.householderQ();
  const ComplexMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const Real mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

/// U diag(s) V* with random unitaries and singular values log-uniform in
/// [1, max_cond]; the condition number never exceeds max_cond.
template <typename Real, typename Rng>
ComplexMatrix<Real> random_invertible(Index n, Real max_cond, Rng& rng) {
  std::uniform_real_distribution<Real> uniform(0, std::log(max_cond));
  RealVector<Real> s(n);
  for (Index k = 0; k < n; ++k) s(k) = std::exp(uniform(rng));
  const ComplexMatrix<Real> u = random_unitary<Real>(n, rng);
  const ComplexMatrix<Real> v = random_unitary<Real>(n, rng);
  return u * s.template cast<std::complex<Real>>().asDiagonal() * v.adjoint();
}

/// Pairwise commuting positive definite matrices sharing a random
/// eigenbasis; eigenvalues are exp of values uniform in
/// [-log_radius, log_radius].
template <typename Real, typename Rng>
std::vector<PositiveDefinite<Real>> random_commuting_pd(std::size_t count,
                                                        Index n,
                                                        Real log_radius,
                                                        Rng& rng,
                                                        ComplexMatrix<Real>* basis_out = nullptr) {
  const ComplexMatrix<Real> u = random_unitary<Real>(n, rng);
  if (basis_out) *basis_out = u;
  std::uniform_real_distribution<Real> uniform(-log_radius, log_radius);
  std::vector<PositiveDefinite<Real>> out;
  for (std::size_t k = 0; k < count; ++k) {
    RealVector<Real> lambdas(n);
    for (Index i = 0; i < n; ++i) lambdas(i) = std::exp(uniform(rng));
    out.emplace_back(u * lambdas.template cast<std::complex<Real>>().asDiagonal() *
                     u.adjoint());
  }
  return out;
}

/// Positive weights summing to one, from normalized uniform(0.1, 1) draws.
template <typename Real, typename Rng>
std::vector<Real> random_weights(std::size_t count, Rng& rng) {
  std::uniform_real_distribution<Real> uniform(Real(0.1), Real(1));
  std::vector<Real> w(count);
  Real total = 0;
  for (auto& v : w) total += (v = uniform(rng));
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace karcher_cone

#endif  // KARCHER_CONE_RANDOM_HPP

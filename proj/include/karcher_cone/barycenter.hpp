#ifndef KARCHER_CONE_BARYCENTER_HPP
#define KARCHER_CONE_BARYCENTER_HPP

// Barycentric maps on finitely supported measures: arithmetic (the Bochner
// integral of the identity), harmonic, and Karcher.

#include <cmath>
#include <utility>
#include <vector>

#include "karcher_cone/karcher.hpp"
#include "karcher_cone/measures.hpp"

namespace karcher_cone {

/// sum_i w_i a_i.
template <typename Real>
Hermitian<Real> arithmetic_barycenter(const SupportedMeasure<Real>& mu) {
  return arithmetic_mean(mu).hermitian();
}

template <typename Real>
struct SimplePiece {
  Real weight;
  PositiveDefinite<Real> value;
};

/// Integral of a simple function taking `value` on a set of measure
/// `weight`, summed piece by piece without merging equal values.
template <typename Real>
Hermitian<Real> bochner_of_simple(const std::vector<SimplePiece<Real>>& f) {
  if (f.empty()) throw InvalidMeasure("simple function has no pieces");
  Real total = 0;
  ComplexMatrix<Real> sum =
      ComplexMatrix<Real>::Zero(f.front().value.dim(), f.front().value.dim());
  for (const auto& piece : f) {
    if (piece.value.dim() != f.front().value.dim()) {
      throw DimensionMismatch("simple function values differ in dimension");
    }
    if (!(piece.weight >= 0)) {
      throw InvalidMeasure("simple function weights must be nonnegative");
    }
    total += piece.weight;
    sum += piece.weight * piece.value.matrix();
  }
  if (std::abs(total - 1) > weight_sum_tol<Real>) {
    throw InvalidMeasure("simple function weights must sum to 1");
  }
  return Hermitian<Real>(sum);
}

/// The pushforward f_* mu of a simple function, as a supported measure.
template <typename Real>
SupportedMeasure<Real> simple_pushforward(
    const std::vector<SimplePiece<Real>>& f) {
  std::vector<PositiveDefinite<Real>> atoms;
  std::vector<Real> weights;
  for (const auto& piece : f) {
    if (piece.weight == 0) continue;
    atoms.push_back(piece.value);
    weights.push_back(piece.weight);
  }
  return SupportedMeasure<Real>(std::move(atoms), std::move(weights));
}

/// (sum_i w_i a_i^{-1})^{-1}.
template <typename Real>
PositiveDefinite<Real> harmonic_barycenter(const SupportedMeasure<Real>& mu) {
  ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(mu.dim(), mu.dim());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum += mu.weight(i) * inverse(mu.atom(i)).matrix();
  }
  return inverse(PositiveDefinite<Real>(sum));
}

/// Karcher barycenter; throws NotConverged when the solver does not certify
/// its residual.
template <typename Real>
PositiveDefinite<Real> karcher_barycenter(const SupportedMeasure<Real>& mu,
                                          const SolverConfig& cfg = {}) {
  const KarcherResult<Real> result = karcher_mean(mu, cfg);
  return detail::require_converged(result, "karcher_barycenter");
}

}  // namespace karcher_cone

#endif  // KARCHER_CONE_BARYCENTER_HPP

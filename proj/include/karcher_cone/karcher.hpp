#ifndef KARCHER_CONE_KARCHER_HPP
#define KARCHER_CONE_KARCHER_HPP

// Karcher equation sum_i w_i log(x^{-1/2} a_i x^{-1/2}) = 0 on the positive
// definite cone: residuals, a damped fixed-point solver, and the inverse
// pair gamma / lambda obtained by fixing all but one atom.

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <type_traits>
#include <vector>

#include "karcher_cone/hermitian.hpp"
#include "karcher_cone/measures.hpp"
#include "karcher_cone/random.hpp"
#include "karcher_cone/thompson.hpp"

namespace karcher_cone {

struct SolverConfig {
  double tol_abs = 1e-11;
  double tol_rel = 1e-12;  // multiplied by the matrix dimension
  int max_iter = 500;
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  int max_backtracks = 30;

  /// Throws std::invalid_argument when any control is out of range.
  void validate() const {
    if (!(tol_abs > 0) || !(tol_rel > 0) || max_iter <= 0 ||
        max_backtracks <= 0) {
      throw std::invalid_argument("solver tolerances and budgets must be > 0");
    }
    if (!(initial_step > 0 && initial_step <= 1)) {
      throw std::invalid_argument("initial_step must lie in (0, 1]");
    }
    if (!(backtrack_factor > 0 && backtrack_factor < 1)) {
      throw std::invalid_argument("backtrack_factor must lie in (0, 1)");
    }
  }

  double threshold(Index dim) const {
    return tol_abs + tol_rel * static_cast<double>(dim);
  }
};

template <typename Real>
struct KarcherResult {
  PositiveDefinite<Real> mean;
  Real residual_norm;
  int iterations;
  bool converged;
  std::vector<Real> step_history;
};

/// K_x(mu) = sum_i w_i log(x^{-1/2} a_i x^{-1/2}).
template <typename Real>
Hermitian<Real> karcher_residual(const PositiveDefinite<Real>& x,
                                 const SupportedMeasure<Real>& mu) {
  if (x.dim() != mu.dim()) {
    throw DimensionMismatch("karcher_residual: dimension mismatch");
  }
  const PositiveDefinite<Real> w = inv_sqrt(x);
  ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(x.dim(), x.dim());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum += mu.weight(i) * matrix_log(congruence(w, mu.atom(i))).matrix();
  }
  return Hermitian<Real>(sum);
}

/// sum_i w_i log(x^{1/2} a_i^{-1} x^{1/2}); the negative of the primal
/// residual.
template <typename Real>
Hermitian<Real> karcher_residual_dual(
    const PositiveDefinite<Real>& x, const std::vector<Real>& weights,
    const std::vector<PositiveDefinite<Real>>& atoms) {
  if (weights.size() != atoms.size()) {
    throw InvalidMeasure("atom and weight counts differ");
  }
  const PositiveDefinite<Real> r = sqrt(x);
  ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(x.dim(), x.dim());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].dim() != x.dim()) {
      throw DimensionMismatch("karcher_residual_dual: dimension mismatch");
    }
    sum += weights[i] * matrix_log(congruence(r, inverse(atoms[i]))).matrix();
  }
  return Hermitian<Real>(sum);
}

/// sum_i w_i a_i.
template <typename Real>
PositiveDefinite<Real> arithmetic_mean(const SupportedMeasure<Real>& mu) {
  ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(mu.dim(), mu.dim());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum += mu.weight(i) * mu.atom(i).matrix();
  }
  return PositiveDefinite<Real>(sum);
}

/// Karcher mean by the damped fixed-point iteration
///   x <- x^{1/2} exp(t K_x(mu)) x^{1/2},
/// starting from `start` (default: the arithmetic mean). Each step starts at
/// cfg.initial_step and backtracks until the residual norm strictly
/// decreases. The returned mean is the last accepted iterate.
template <typename Real>
KarcherResult<Real> karcher_mean(
    const SupportedMeasure<Real>& mu, const SolverConfig& cfg = {},
    const std::optional<std::type_identity_t<PositiveDefinite<Real>>>& start =
        std::nullopt) {
  cfg.validate();
  if (start && start->dim() != mu.dim()) {
    throw DimensionMismatch("karcher_mean: start point has wrong dimension");
  }
  const Real threshold = static_cast<Real>(cfg.threshold(mu.dim()));

  PositiveDefinite<Real> x = start ? *start : arithmetic_mean(mu);
  Hermitian<Real> residual = karcher_residual(x, mu);
  Real norm = frobenius_norm(residual);
  std::vector<Real> steps;
  int iter = 0;
  bool stalled = false;

  while (norm > threshold && iter < cfg.max_iter && !stalled) {
    const PositiveDefinite<Real> root = sqrt(x);
    Real t = static_cast<Real>(cfg.initial_step);
    bool accepted = false;
    for (int b = 0; b <= cfg.max_backtracks; ++b) {
      PositiveDefinite<Real> candidate =
          congruence(root, matrix_exp(t * residual));
      Hermitian<Real> cand_residual = karcher_residual(candidate, mu);
      const Real cand_norm = frobenius_norm(cand_residual);
      if (cand_norm < norm) {
        x = std::move(candidate);
        residual = std::move(cand_residual);
        norm = cand_norm;
        steps.push_back(t);
        accepted = true;
        break;
      }
      t *= static_cast<Real>(cfg.backtrack_factor);
    }
    ++iter;
    stalled = !accepted;
  }

  return KarcherResult<Real>{std::move(x), norm, iter, norm <= threshold,
                             std::move(steps)};
}

/// Karcher mean of equally weighted atoms.
template <typename Real>
KarcherResult<Real> karcher_mean(
    const std::vector<PositiveDefinite<Real>>& atoms,
    const std::vector<Real>& weights, const SolverConfig& cfg = {}) {
  return karcher_mean(SupportedMeasure<Real>(atoms, weights), cfg);
}

namespace detail {

template <typename Real>
const PositiveDefinite<Real>& require_converged(const KarcherResult<Real>& r,
                                                const char* op) {
  if (!r.converged) {
    std::ostringstream msg;
    msg << op << ": Karcher iteration did not converge (residual "
        << r.residual_norm << " after " << r.iterations << " iterations)";
    throw NotConverged(msg.str(), static_cast<double>(r.residual_norm),
                       r.iterations);
  }
  return r.mean;
}

}  // namespace detail

/// gamma(x) = x^{1/2} exp(-sum_i log(x^{-1/2} a_i x^{-1/2})) x^{1/2}, the
/// unique a for which x solves the uniform Karcher equation of
/// (a_1, ..., a_{n-1}, a).
template <typename Real>
PositiveDefinite<Real> gamma_map(
    const PositiveDefinite<Real>& x,
    const std::vector<PositiveDefinite<Real>>& a_list) {
  const PositiveDefinite<Real> w = inv_sqrt(x);
  ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(x.dim(), x.dim());
  for (const auto& a : a_list) {
    if (a.dim() != x.dim()) {
      throw DimensionMismatch("gamma_map: dimension mismatch");
    }
    sum += matrix_log(congruence(w, a)).matrix();
  }
  return congruence(sqrt(x), matrix_exp(Hermitian<Real>(-sum)));
}

/// lambda(a) = uniform Karcher mean of (a_1, ..., a_{n-1}, a).
template <typename Real>
PositiveDefinite<Real> lambda_map(
    const PositiveDefinite<Real>& a,
    const std::vector<PositiveDefinite<Real>>& a_list,
    const SolverConfig& cfg = {}) {
  std::vector<PositiveDefinite<Real>> atoms = a_list;
  atoms.push_back(a);
  const auto mu = SupportedMeasure<Real>::uniform(std::move(atoms));
  const KarcherResult<Real> result = karcher_mean(mu, cfg);
  return detail::require_converged(result, "lambda_map");
}

struct UniquenessReport {
  int trials = 0;
  int converged = 0;
  int not_converged = 0;
  double spread = 0;  // max pairwise Thompson distance among converged means
  bool pass = false;
};

/// Solves from `trials` random starts m* A m (A the arithmetic mean, m
/// random with condition number <= 10) and measures the spread of the
/// converged means. Passes iff the spread is at most 1e-7.
template <typename Real>
UniquenessReport uniqueness_probe(const SupportedMeasure<Real>& mu,
                                  const SolverConfig& cfg, int trials,
                                  std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::mt19937_64 rng(seed);
  const PositiveDefinite<Real> center = arithmetic_mean(mu);
  std::vector<PositiveDefinite<Real>> means;
  UniquenessReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix<Real> m =
        random_invertible<Real>(mu.dim(), Real(10), rng);
    const auto result = karcher_mean(mu, cfg, congruence(m, center));
    if (result.converged) {
      means.push_back(result.mean);
    } else {
      ++report.not_converged;
    }
  }
  report.converged = static_cast<int>(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    for (std::size_t j = i + 1; j < means.size(); ++j) {
      report.spread = std::max(
          report.spread,
          static_cast<double>(thompson_distance(means[i], means[j])));
    }
  }
  report.pass = report.converged > 0 && report.spread <= 1e-7;
  return report;
}

}  // namespace karcher_cone

#endif  // KARCHER_CONE_KARCHER_HPP

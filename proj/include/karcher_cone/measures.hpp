#ifndef KARCHER_CONE_MEASURES_HPP
#define KARCHER_CONE_MEASURES_HPP

// Finitely supported probability measures on the positive definite cone,
// couplings and Wasserstein distances between them, the stochastic order on
// uniform measures, and epsilon-discretization of sampled measures.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "karcher_cone/hermitian.hpp"
#include "karcher_cone/thompson.hpp"
#include "karcher_cone/transport.hpp"

namespace karcher_cone {

/// Atoms closer than this in the Thompson metric are merged.
template <typename Real>
constexpr Real atom_merge_threshold = Real(1e-12);

/// Admissible deviation of the total weight from 1.
template <typename Real>
constexpr Real weight_sum_tol = Real(1e-12);

template <typename Real>
class SupportedMeasure {
 public:
  using Atom = PositiveDefinite<Real>;

  /// Validates the weights and merges coincident atoms, summing their
  /// weights; the first occurrence of an atom is kept.
  SupportedMeasure(std::vector<Atom> atoms, std::vector<Real> weights) {
    if (atoms.empty()) throw InvalidMeasure("measure has no atoms");
    if (atoms.size() != weights.size()) {
      throw InvalidMeasure("atom and weight counts differ");
    }
    Real total = 0;
    for (Real w : weights) {
      if (!(w > 0) || !std::isfinite(w)) {
        throw InvalidMeasure("weights must be positive and finite");
      }
      total += w;
    }
    if (std::abs(total - 1) > weight_sum_tol<Real>) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "weights sum to " << total << ", expected 1";
      throw InvalidMeasure(msg.str());
    }
    const Index d = atoms.front().dim();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (atoms[k].dim() != d) {
        throw DimensionMismatch("measure atoms differ in dimension");
      }
      std::size_t slot = atoms_.size();
      for (std::size_t j = 0; j < atoms_.size(); ++j) {
        if (coincide(atoms_[j], atoms[k])) {
          slot = j;
          break;
        }
      }
      if (slot == atoms_.size()) {
        atoms_.push_back(std::move(atoms[k]));
        weights_.push_back(weights[k]);
      } else {
        weights_[slot] += weights[k];
      }
    }
  }

  static SupportedMeasure dirac(Atom a) {
    return SupportedMeasure({std::move(a)}, {Real(1)});
  }

  static SupportedMeasure uniform(std::vector<Atom> atoms) {
    const std::size_t n = atoms.size();
    return SupportedMeasure(std::move(atoms),
                            std::vector<Real>(n, Real(1) / Real(n ? n : 1)));
  }

  std::size_t size() const { return atoms_.size(); }
  Index dim() const { return atoms_.front().dim(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Real>& weights() const { return weights_; }
  const Atom& atom(std::size_t i) const { return atoms_[i]; }
  Real weight(std::size_t i) const { return weights_[i]; }

  Eigen::Matrix<Real, Eigen::Dynamic, 1> weight_vector() const {
    return Eigen::Map<const Eigen::Matrix<Real, Eigen::Dynamic, 1>>(
        weights_.data(), static_cast<Index>(weights_.size()));
  }

  bool is_uniform(Real tol = weight_sum_tol<Real>) const {
    const Real target = Real(1) / Real(size());
    for (Real w : weights_) {
      if (std::abs(w - target) > tol) return false;
    }
    return true;
  }

 private:
  static bool coincide(const Atom& a, const Atom& b) {
    if (detail::thompson_lower_bound(a, b) >= atom_merge_threshold<Real>) {
      return false;
    }
    return detail::raw_thompson_distance(a, b) < atom_merge_threshold<Real>;
  }

  std::vector<Atom> atoms_;
  std::vector<Real> weights_;
};

using Measure = SupportedMeasure<double>;

/// f_* mu: atoms mapped pointwise, weights carried, coincident images merged.
template <typename Real, typename F>
SupportedMeasure<Real> pushforward(const SupportedMeasure<Real>& mu, F&& f) {
  std::vector<PositiveDefinite<Real>> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) atoms.push_back(f(a));
  return SupportedMeasure<Real>(std::move(atoms), mu.weights());
}

/// t_* mu under a -> t a.
template <typename Real>
SupportedMeasure<Real> scaled(const SupportedMeasure<Real>& mu, Real t) {
  return pushforward(mu, [t](const PositiveDefinite<Real>& a) {
    return scale(t, a);
  });
}

/// J_* mu under the inversion a -> a^{-1}.
template <typename Real>
SupportedMeasure<Real> inverted(const SupportedMeasure<Real>& mu) {
  return pushforward(mu, [](const PositiveDefinite<Real>& a) {
    return inverse(a);
  });
}

/// Pushforward under a -> m* a m.
template <typename Real, typename Derived>
SupportedMeasure<Real> congruent(const SupportedMeasure<Real>& mu,
                                 const Eigen::MatrixBase<Derived>& m) {
  const ComplexMatrix<Real> mc = m.template cast<std::complex<Real>>();
  return pushforward(mu, [&mc](const PositiveDefinite<Real>& a) {
    return congruence(mc, a);
  });
}

/// lambda mu + (1 - lambda) nu on the union support.
template <typename Real>
SupportedMeasure<Real> mixture(const SupportedMeasure<Real>& mu,
                               const SupportedMeasure<Real>& nu, Real lambda) {
  if (!(lambda >= 0 && lambda <= 1)) {
    throw InvalidMeasure("mixture coefficient must lie in [0, 1]");
  }
  if (lambda == 1) return mu;
  if (lambda == 0) return nu;
  std::vector<PositiveDefinite<Real>> atoms = mu.atoms();
  std::vector<Real> weights;
  for (Real w : mu.weights()) weights.push_back(lambda * w);
  for (std::size_t j = 0; j < nu.size(); ++j) {
    atoms.push_back(nu.atom(j));
    weights.push_back((1 - lambda) * nu.weight(j));
  }
  return SupportedMeasure<Real>(std::move(atoms), std::move(weights));
}

struct ThompsonGround {
  template <typename Real>
  Real operator()(const PositiveDefinite<Real>& x,
                  const PositiveDefinite<Real>& y) const {
    return thompson_distance(x, y);
  }
};

struct NormGround {
  template <typename Real>
  Real operator()(const PositiveDefinite<Real>& x,
                  const PositiveDefinite<Real>& y) const {
    return norm_distance(x, y);
  }
};

template <typename Real, typename Ground>
RealMatrix<Real> cost_matrix(const SupportedMeasure<Real>& mu,
                             const SupportedMeasure<Real>& nu,
                             Ground&& ground) {
  if (mu.dim() != nu.dim()) {
    throw DimensionMismatch("measures live on cones of different dimension");
  }
  RealMatrix<Real> cost(mu.size(), nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) {
      cost(i, j) = ground(mu.atom(i), nu.atom(j));
    }
  }
  return cost;
}

/// A coupling of two measures; row sums are the source weights, column
/// sums the target weights.
template <typename Real>
struct TransportPlan {
  SupportedMeasure<Real> source;
  SupportedMeasure<Real> target;
  RealMatrix<Real> flow;

  Real marginal_error() const {
    using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    const Vector rows = flow.rowwise().sum() - source.weight_vector();
    const Vector cols = flow.colwise().sum().transpose() - target.weight_vector();
    return std::max(rows.cwiseAbs().maxCoeff(), cols.cwiseAbs().maxCoeff());
  }
};

template <typename Real>
struct WassersteinResult {
  Real value;
  TransportPlan<Real> plan;
};

/// W1 distance for the given ground metric: exact optimum of the finite
/// transportation problem together with an optimal plan.
template <typename Real, typename Ground>
WassersteinResult<Real> wasserstein_w1(const SupportedMeasure<Real>& mu,
                                       const SupportedMeasure<Real>& nu,
                                       Ground&& ground) {
  const RealMatrix<Real> cost = cost_matrix(mu, nu, ground);
  TransportSolution<Real> sol =
      solve_transport(cost, mu.weight_vector(), nu.weight_vector());
  return {sol.cost, TransportPlan<Real>{mu, nu, std::move(sol.flow)}};
}

template <typename Real>
WassersteinResult<Real> wasserstein_w1(const SupportedMeasure<Real>& mu,
                                       const SupportedMeasure<Real>& nu) {
  return wasserstein_w1(mu, nu, ThompsonGround{});
}

namespace detail {

template <typename Real>
void require_uniform_pair(const SupportedMeasure<Real>& mu,
                          const SupportedMeasure<Real>& nu, const char* op) {
  if (mu.dim() != nu.dim()) {
    throw DimensionMismatch(std::string(op) + ": dimension mismatch");
  }
  if (!mu.is_uniform() || !nu.is_uniform() || mu.size() != nu.size()) {
    throw InvalidMeasure(std::string(op) +
                         " needs uniform measures of equal support size");
  }
}

}  // namespace detail

/// min over permutations sigma of max_j d(x_j, y_sigma(j)) for uniform
/// measures of equal support size.
template <typename Real>
Real wasserstein_minmax(const SupportedMeasure<Real>& mu,
                        const SupportedMeasure<Real>& nu) {
  detail::require_uniform_pair(mu, nu, "wasserstein_minmax");
  return bottleneck_assignment(cost_matrix(mu, nu, ThompsonGround{}));
}

/// mu <= nu in the stochastic order, for uniform measures of equal support
/// size: some matching pairs every atom of mu with a Loewner-larger atom of
/// nu.
template <typename Real>
bool stochastic_leq(const SupportedMeasure<Real>& mu,
                    const SupportedMeasure<Real>& nu, Real tol) {
  detail::require_uniform_pair(mu, nu, "stochastic_leq");
  const auto n = static_cast<Index>(mu.size());
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      allowed(i, j) =
          loewner_leq(mu.atom(i).hermitian(), nu.atom(j).hermitian(), tol);
    }
  }
  return has_perfect_matching(allowed);
}

struct DiscretizationOptions {
  /// Upper bound on the number of cells; 0 means unbounded. Sample points
  /// that fit no cell once the bound is reached send their mass to `base`.
  std::size_t max_cells = 0;
  /// Also require cells of spectral-norm diameter below eps.
  bool norm_cells = false;
};

/// Epsilon-discretization of the uniform measure on `sample`: first-fit
/// greedy partition into cells of Thompson diameter < eps; each cell is
/// represented by its first point and weighted by its share of the sample.
template <typename Real>
SupportedMeasure<Real> empirical_approximation(
    const std::vector<PositiveDefinite<Real>>& sample, Real eps,
    const PositiveDefinite<Real>& base, DiscretizationOptions opts = {}) {
  if (sample.empty()) throw InvalidMeasure("empty sample");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  for (const auto& p : sample) {
    if (p.dim() != base.dim()) {
      throw DimensionMismatch("sample and base differ in dimension");
    }
  }

  auto close = [&](const PositiveDefinite<Real>& p,
                   const PositiveDefinite<Real>& q) {
    if (detail::thompson_lower_bound(p, q) >= eps) return false;
    if (!(detail::raw_thompson_distance(p, q) < eps)) return false;
    return !opts.norm_cells || norm_distance(p, q) < eps;
  };

  std::vector<std::vector<std::size_t>> cells;
  std::size_t leftover = 0;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    bool placed = false;
    for (auto& cell : cells) {
      bool fits = true;
      for (std::size_t member : cell) {
        if (!close(sample[k], sample[member])) {
          fits = false;
          break;
        }
      }
      if (fits) {
        cell.push_back(k);
        placed = true;
        break;
      }
    }
    if (placed) continue;
    if (opts.max_cells == 0 || cells.size() < opts.max_cells) {
      cells.push_back({k});
    } else {
      ++leftover;
    }
  }

  const Real n = static_cast<Real>(sample.size());
  std::vector<PositiveDefinite<Real>> atoms;
  std::vector<Real> weights;
  for (const auto& cell : cells) {
    atoms.push_back(sample[cell.front()]);
    weights.push_back(static_cast<Real>(cell.size()) / n);
  }
  if (leftover > 0) {
    atoms.push_back(base);
    weights.push_back(static_cast<Real>(leftover) / n);
  }
  return SupportedMeasure<Real>(std::move(atoms), std::move(weights));
}

/// Uniform measure on a sample, keeping repeated points as repeated mass.
template <typename Real>
SupportedMeasure<Real> empirical_measure(
    const std::vector<PositiveDefinite<Real>>& sample) {
  return SupportedMeasure<Real>::uniform(sample);
}

}  // namespace karcher_cone

#endif  // KARCHER_CONE_MEASURES_HPP

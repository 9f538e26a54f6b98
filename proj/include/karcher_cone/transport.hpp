#ifndef KARCHER_CONE_TRANSPORT_HPP
#define KARCHER_CONE_TRANSPORT_HPP

// Finite transportation problems on dense bipartite cost matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "karcher_cone/errors.hpp"

namespace karcher_cone {

template <typename Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
struct TransportSolution {
  RealMatrix<Real> flow;
  Real cost = 0;
  int augmentations = 0;
};

/// Exact minimum-cost transport between `supply` (rows) and `demand`
/// (columns) by successive shortest augmenting paths with Johnson
/// potentials. Costs must be nonnegative; supply and demand must carry the
/// same total mass.
template <typename Real>
TransportSolution<Real> solve_transport(
    const RealMatrix<Real>& cost,
    const Eigen::Matrix<Real, Eigen::Dynamic, 1>& supply,
    const Eigen::Matrix<Real, Eigen::Dynamic, 1>& demand) {
  const Eigen::Index n = cost.rows();
  const Eigen::Index m = cost.cols();
  if (supply.size() != n || demand.size() != m) {
    throw DimensionMismatch("solve_transport: marginals do not match costs");
  }
  if ((cost.array() < 0).any() || !cost.allFinite()) {
    throw std::invalid_argument("solve_transport: costs must be finite, >= 0");
  }

  const Real total = supply.sum();
  const Real mass_tol =
      Real(64) * std::numeric_limits<Real>::epsilon() * std::max(Real(1), total);
  const Real inf = std::numeric_limits<Real>::infinity();

  TransportSolution<Real> out;
  out.flow = RealMatrix<Real>::Zero(n, m);
  std::vector<Real> rem_supply(supply.data(), supply.data() + n);
  std::vector<Real> rem_demand(demand.data(), demand.data() + m);

  // Nodes: sources [0, n), sinks [n, n + m), terminal n + m.
  const Eigen::Index nodes = n + m + 1;
  const Eigen::Index terminal = n + m;
  std::vector<Real> potential(nodes, 0), dist(nodes);
  std::vector<Eigen::Index> prev(nodes);
  std::vector<char> done(nodes);

  const int max_augmentations = static_cast<int>(4 * (n + m) * (n + m) + 16);
  while (out.augmentations < max_augmentations) {
    Real remaining = 0;
    for (Real s : rem_supply) remaining += s;
    if (remaining <= mass_tol) break;

    std::fill(dist.begin(), dist.end(), inf);
    std::fill(prev.begin(), prev.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (rem_supply[i] > mass_tol) dist[i] = 0;
    }

    auto relax = [&](Eigen::Index u, Eigen::Index v, Real reduced) {
      const Real cand = dist[u] + std::max(reduced, Real(0));
      if (cand < dist[v]) {
        dist[v] = cand;
        prev[v] = u;
      }
    };

    // Dense Dijkstra on reduced costs.
    while (true) {
      Eigen::Index u = -1;
      for (Eigen::Index v = 0; v < nodes; ++v) {
        if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u])) u = v;
      }
      if (u < 0 || u == terminal) break;
      done[u] = 1;
      if (u < n) {
        for (Eigen::Index j = 0; j < m; ++j) {
          relax(u, n + j, cost(u, j) + potential[u] - potential[n + j]);
        }
      } else {
        const Eigen::Index j = u - n;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (out.flow(i, j) > mass_tol) {
            relax(u, i, -cost(i, j) + potential[u] - potential[i]);
          }
        }
        if (rem_demand[j] > mass_tol) {
          relax(u, terminal, potential[u] - potential[terminal]);
        }
      }
    }
    if (!(dist[terminal] < inf)) break;

    const Real reach = dist[terminal];
    for (Eigen::Index v = 0; v < nodes; ++v) {
      potential[v] += std::min(dist[v], reach);
    }

    // Bottleneck along the path terminal <- sink <- ... <- source.
    const Eigen::Index last_sink = prev[terminal] - n;
    Real delta = rem_demand[last_sink];
    Eigen::Index v = prev[terminal];
    while (prev[v] >= 0) {
      const Eigen::Index u = prev[v];
      if (u >= n) delta = std::min(delta, out.flow(v, u - n));  // backward
      v = u;
    }
    const Eigen::Index first_source = v;
    delta = std::min(delta, rem_supply[first_source]);

    v = prev[terminal];
    while (prev[v] >= 0) {
      const Eigen::Index u = prev[v];
      if (u < n) {
        out.flow(u, v - n) += delta;
      } else {
        Real& f = out.flow(v, u - n);
        f -= delta;
        if (f <= mass_tol) f = 0;
      }
      v = u;
    }
    rem_supply[first_source] -= delta;
    if (rem_supply[first_source] <= mass_tol) rem_supply[first_source] = 0;
    rem_demand[last_sink] -= delta;
    if (rem_demand[last_sink] <= mass_tol) rem_demand[last_sink] = 0;
    ++out.augmentations;
  }

  out.cost = (out.flow.array() * cost.array()).sum();
  return out;
}

/// Whether the bipartite relation `allowed` (rows x cols, square) admits a
/// perfect matching. Kuhn's augmenting-path algorithm.
inline bool has_perfect_matching(
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& allowed) {
  const Eigen::Index n = allowed.rows();
  if (allowed.cols() != n) return false;
  std::vector<Eigen::Index> match_of_col(n, -1);
  std::vector<char> seen;

  auto try_row = [&](auto&& self, Eigen::Index row) -> bool {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!allowed(row, c) || seen[c]) continue;
      seen[c] = 1;
      if (match_of_col[c] < 0 || self(self, match_of_col[c])) {
        match_of_col[c] = row;
        return true;
      }
    }
    return false;
  };

  for (Eigen::Index r = 0; r < n; ++r) {
    seen.assign(n, 0);
    if (!try_row(try_row, r)) return false;
  }
  return true;
}

/// min over permutations sigma of max_j cost(j, sigma(j)), by binary search
/// over the sorted distinct costs with a matching feasibility test.
template <typename Real>
Real bottleneck_assignment(const RealMatrix<Real>& cost) {
  const Eigen::Index n = cost.rows();
  if (cost.cols() != n) {
    throw DimensionMismatch("bottleneck_assignment: cost must be square");
  }
  if (n == 0) return 0;
  std::vector<Real> levels(cost.data(), cost.data() + cost.size());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed =
        (cost.array() <= levels[mid]).matrix();
    if (has_perfect_matching(allowed)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return levels[lo];
}

}  // namespace karcher_cone

#endif  // KARCHER_CONE_TRANSPORT_HPP

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "karcher_cone/karcher_cone.hpp"
#include "karcher_cone/verify.hpp"
#include "oracles.hpp"

using namespace karcher_cone;
using CMatrix = ComplexMatrix<double>;
using Rng = std::mt19937_64;

namespace {

constexpr std::uint64_t seed = verify::default_seed;

struct Outcome {
  bool pass;
  std::string detail;
};

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::string sci(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

std::vector<CMatrix> raw(const std::vector<PDMatrix>& atoms) {
  std::vector<CMatrix> out;
  for (const auto& a : atoms) out.push_back(a.matrix());
  return out;
}

Measure random_measure(Rng& rng, Index dim, int max_atoms) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 2, max_atoms));
  auto atoms = random_pd_list<double>(n, dim, 2.0, rng);
  auto w = random_weights<double>(n, rng);
  return Measure(std::move(atoms), std::move(w));
}

Eigen::MatrixXd oracle_costs(const std::vector<PDMatrix>& xs,
                             const std::vector<PDMatrix>& ys) {
  Eigen::MatrixXd c(xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      c(i, j) = oracle::thompson(xs[i].matrix(), ys[j].matrix());
    }
  }
  return c;
}

Outcome solver_certificate() {
  Rng rng(seed + 1);
  const auto start = std::chrono::steady_clock::now();
  int converged = 0;
  double worst = 0, worst_oracle = 0;
  int max_iter = 0;
  const int instances = 200;
  for (int t = 0; t < instances; ++t) {
    const Measure mu = random_measure(rng, uniform_int(rng, 2, 8), 10);
    const auto r = karcher_mean(mu);
    if (!r.converged) continue;
    ++converged;
    max_iter = std::max(max_iter, r.iterations);
    worst = std::max(worst, frobenius_norm(karcher_residual(r.mean, mu)));
    worst_oracle = std::max(
        worst_oracle,
        oracle::karcher_residual_norm(r.mean.matrix(), raw(mu.atoms()), mu.weights()));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = worst <= 1e-10 && worst_oracle <= 1e-10 &&
                    converged >= 0.99 * instances && seconds < 60;
  return {pass, std::to_string(converged) + "/" + std::to_string(instances) +
                    " converged, max residual " + sci(worst) + " (oracle " +
                    sci(worst_oracle) + "), max iterations " +
                    std::to_string(max_iter) + ", " + sci(seconds) + " s"};
}

Outcome closed_forms() {
  Rng rng(seed + 2);
  double worst_comm = 0, worst_pair = 0;
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    const Index dim = uniform_int(rng, 2, 8);
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 10));
    CMatrix basis;
    const auto atoms = random_commuting_pd<double>(n, dim, 2.0, rng, &basis);
    const auto w = random_weights<double>(n, rng);
    Eigen::VectorXd log_lambda = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i < n; ++i) {
      const CMatrix d = basis.adjoint() * atoms[i].matrix() * basis;
      for (Index k = 0; k < dim; ++k) log_lambda(k) += w[i] * std::log(d(k, k).real());
    }
    const CMatrix expected =
        basis *
        log_lambda.array().exp().matrix().cast<std::complex<double>>().asDiagonal() *
        basis.adjoint();
    const auto r = karcher_mean(Measure(atoms, w));
    if (!r.converged) ++failures;
    worst_comm = std::max(worst_comm, oracle::thompson(r.mean.matrix(), expected));

    const PDMatrix a = random_pd<double>(dim, 2.0, rng);
    const PDMatrix b = random_pd<double>(dim, 2.0, rng);
    const auto g = karcher_mean(Measure::uniform({a, b}));
    if (!g.converged) ++failures;
    worst_pair = std::max(
        worst_pair, oracle::thompson(g.mean.matrix(),
                                     oracle::geometric_mean(a.matrix(), b.matrix())));
  }
  return {failures == 0 && worst_comm <= 1e-9 && worst_pair <= 1e-8,
          "commuting " + sci(worst_comm) + " (tol 1e-9), two-atom " +
              sci(worst_pair) + " (tol 1e-8), non-converged " +
              std::to_string(failures)};
}

Outcome uniqueness() {
  Rng rng(seed + 3);
  double spread = 0;
  int lost = 0;
  for (int t = 0; t < 50; ++t) {
    const Measure mu = random_measure(rng, uniform_int(rng, 2, 8), 10);
    const auto rep = uniqueness_probe(mu, SolverConfig{}, 8, seed + 100 + t);
    spread = std::max(spread, rep.spread);
    lost += rep.not_converged;
  }
  return {spread <= 1e-7, "max spread " + sci(spread) + " over 50 x 8 starts, " +
                              std::to_string(lost) + " non-converged starts"};
}

Outcome property_suites() {
  verify::SuiteOptions opts;
  opts.trials = 100;
  int total = 0;
  std::vector<std::string> failing;
  for (const char* name :
       {"p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9", "bary"}) {
    for (const auto& r : verify::run_suite(name, opts)) {
      ++total;
      if (!r.pass) {
        failing.push_back(r.suite + ": " + r.property + " (worst slack " +
                          sci(r.worst_slack) + ", tol " + sci(r.tolerance) + ")");
      }
    }
  }
  std::string detail = std::to_string(total - static_cast<int>(failing.size())) +
                       "/" + std::to_string(total) + " properties pass";
  for (const auto& f : failing) detail += "; failing " + f;
  return {failing.empty(), detail};
}

Outcome inverse_maps() {
  Rng rng(seed + 5);
  double worst_lg = 0, worst_gl = 0;
  for (int t = 0; t < 50; ++t) {
    const Index dim = uniform_int(rng, 2, 8);
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 5));
    const auto a_list = random_pd_list<double>(n, dim, 1.0, rng);
    const PDMatrix x = random_pd<double>(dim, 1.0, rng);
    worst_lg = std::max(worst_lg, oracle::thompson(
                                      lambda_map(gamma_map(x, a_list), a_list).matrix(),
                                      x.matrix()));
    const PDMatrix a = random_pd<double>(dim, 1.0, rng);
    worst_gl = std::max(worst_gl, oracle::thompson(
                                      gamma_map(lambda_map(a, a_list), a_list).matrix(),
                                      a.matrix()));
  }
  return {worst_lg <= 1e-7 && worst_gl <= 1e-7,
          "lambda(gamma) " + sci(worst_lg) + ", gamma(lambda) " + sci(worst_gl)};
}

Outcome contraction() {
  Rng rng(seed + 6);
  double worst = -1e300;
  int lost = 0;
  for (int t = 0; t < 100; ++t) {
    const Index dim = uniform_int(rng, 2, 8);
    const Measure mu = random_measure(rng, dim, 10);
    Measure nu = random_measure(rng, dim, 10);
    if (t % 2 == 0) {
      // Nearby measure: every atom moved a little.
      std::vector<PDMatrix> moved;
      for (const auto& a : mu.atoms()) {
        moved.push_back(congruence(sqrt(a), random_pd<double>(dim, 0.1, rng)));
      }
      nu = Measure(std::move(moved), mu.weights());
    }
    const auto rm = karcher_mean(mu);
    const auto rn = karcher_mean(nu);
    if (!rm.converged || !rn.converged) {
      ++lost;
      continue;
    }
    const double gap = thompson_distance(rm.mean, rn.mean) -
                       wasserstein_w1(mu, nu).value;
    worst = std::max(worst, gap);
  }
  return {lost == 0 && worst <= 1e-7,
          "max d(mean) - W1 = " + sci(worst) + ", lost pairs " + std::to_string(lost)};
}

Outcome transport_exactness() {
  Rng rng(seed + 7);
  double worst_lp = 0, worst_bn = 0, worst_marginal = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int t = 0; t < 20; ++t) {
      const Index dim = uniform_int(rng, 2, 8);
      const auto xs = random_pd_list<double>(n, dim, 2.0, rng);
      const auto ys = random_pd_list<double>(n, dim, 2.0, rng);
      const auto best = oracle::enumerate_permutations(oracle_costs(xs, ys));
      const Measure mu = Measure::uniform(xs), nu = Measure::uniform(ys);
      const auto w1 = wasserstein_w1(mu, nu);
      worst_lp = std::max(worst_lp, std::abs(w1.value - best.min_average));
      worst_marginal = std::max(worst_marginal, w1.plan.marginal_error());
      worst_bn = std::max(worst_bn, std::abs(wasserstein_minmax(mu, nu) - best.min_max));
    }
  }
  return {worst_lp <= 1e-10 && worst_bn <= 1e-10 && worst_marginal <= 1e-10,
          "LP " + sci(worst_lp) + ", bottleneck " + sci(worst_bn) + ", marginals " +
              sci(worst_marginal) + " over 120 instances, n = 1..6"};
}

Outcome appendix_bound() {
  Rng rng(seed + 8);
  std::uniform_real_distribution<double> radius(0.05, 1.0);
  double worst_ratio = 0, worst_norm_ratio = 0;
  bool pass = true;
  for (int cloud_index = 0; cloud_index < 3; ++cloud_index) {
    const Index dim = uniform_int(rng, 2, 4);
    const PDMatrix center = random_pd<double>(dim, 1.0, rng);
    std::vector<PDMatrix> cloud;
    for (int k = 0; k < 200; ++k) {
      cloud.push_back(congruence(sqrt(center), random_pd<double>(dim, radius(rng), rng)));
    }
    const Measure sample = empirical_measure(cloud);
    for (double eps : {0.5, 0.1, 0.02}) {
      const double d =
          wasserstein_w1(sample, empirical_approximation(cloud, eps, center)).value;
      DiscretizationOptions two;
      two.norm_cells = true;
      const Measure disc2 = empirical_approximation(cloud, eps, center, two);
      const double d2 = wasserstein_w1(sample, disc2).value;
      const double n2 = wasserstein_w1(sample, disc2, NormGround{}).value;
      pass = pass && d < 2 * eps && d2 < 2 * eps && n2 < 2 * eps;
      worst_ratio = std::max({worst_ratio, d / (2 * eps), d2 / (2 * eps)});
      worst_norm_ratio = std::max(worst_norm_ratio, n2 / (2 * eps));
    }
  }
  return {pass, "max W1 / 2eps: Thompson " + sci(worst_ratio) + ", norm " +
                    sci(worst_norm_ratio) + " (3 clouds of 200, eps 0.5, 0.1, 0.02)"};
}

Outcome metric_cross_check() {
  Rng rng(seed + 9);
  double formula = 0, oracle_gap = 0, cong = 0, inv = 0;
  for (int t = 0; t < 1000; ++t) {
    const Index dim = uniform_int(rng, 2, 8);
    const PDMatrix x = random_pd<double>(dim, 2.0, rng);
    const PDMatrix y = random_pd<double>(dim, 2.0, rng);
    const CMatrix m = random_invertible<double>(dim, 10.0, rng);
    const double d = thompson_distance(x, y);
    formula = std::max(formula, std::abs(d - thompson_distance_by_ratio(x, y)));
    oracle_gap = std::max(oracle_gap, std::abs(d - oracle::thompson(x.matrix(), y.matrix())));
    cong = std::max(cong, std::abs(thompson_distance(congruence(m, x), congruence(m, y)) - d));
    inv = std::max(inv, std::abs(thompson_distance(inverse(x), inverse(y)) - d));
  }
  return {formula <= 1e-9 && oracle_gap <= 1e-9 && cong <= 1e-9 && inv <= 1e-9,
          "formulas " + sci(formula) + ", oracle " + sci(oracle_gap) +
              ", congruence " + sci(cong) + ", inversion " + sci(inv)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"solver certificate", solver_certificate},
      {"closed-form means", closed_forms},
      {"uniqueness probe", uniqueness},
      {"property suites", property_suites},
      {"gamma/lambda round trip", inverse_maps},
      {"contraction", contraction},
      {"transport exactness", transport_exactness},
      {"discretization bound", appendix_bound},
      {"metric cross-check", metric_cross_check},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << index << " "
              << c.name << ": " << o.detail << std::endl;
  }
  std::cout << (9 - failed) << "/9 criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}

#include "karcher_cone/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "karcher_cone/barycenter.hpp"
#include "karcher_cone/measures.hpp"
#include "karcher_cone/random.hpp"
#include "karcher_cone/thompson.hpp"

namespace karcher_cone::verify {

namespace {

using Rng = std::mt19937_64;
using json = nlohmann::json;
using CMatrix = ComplexMatrix<double>;

// Log-radius of random atoms around the identity.
constexpr double atom_radius = 2.0;

class Tally {
 public:
  Tally(std::string suite, std::string property, double tol,
        bool strict = false)
      : suite_(std::move(suite)),
        property_(std::move(property)),
        tol_(tol),
        strict_(strict) {}

  /// `excess` is the signed amount by which the bound is exceeded.
  void observe(double excess) {
    if (std::isnan(excess)) excess = std::numeric_limits<double>::infinity();
    raw_ = std::max(raw_, excess);
    ++trials_;
  }
  void skip() { ++skipped_; }

  PropertyResult result() const {
    PropertyResult r;
    r.suite = suite_;
    r.property = property_;
    r.tolerance = tol_;
    r.strict = strict_;
    r.trials = trials_;
    r.skipped = skipped_;
    r.worst_slack = trials_ > 0 ? std::max(0.0, raw_) : 0.0;
    r.pass = trials_ > 0 && skipped_ == 0 &&
             (strict_ ? raw_ < tol_ : raw_ <= tol_);
    return r;
  }

 private:
  std::string suite_, property_;
  double tol_;
  bool strict_;
  double raw_ = -std::numeric_limits<double>::infinity();
  int trials_ = 0;
  int skipped_ = 0;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Rng trial_rng(const std::string& suite, std::uint64_t seed, int trial) {
  const std::uint64_t h = fnv1a(suite);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::optional<PDMatrix> solve(const Measure& mu, const SolverConfig& cfg) {
  auto r = karcher_mean(mu, cfg);
  if (!r.converged) return std::nullopt;
  return std::move(r.mean);
}

std::optional<PDMatrix> solve(const std::vector<PDMatrix>& atoms,
                              const std::vector<double>& weights,
                              const SolverConfig& cfg) {
  return solve(Measure(atoms, weights), cfg);
}

// Signed violation of a <= b, scaled as in loewner_leq.
double loewner_excess(const HermitianMatrix& a, const HermitianMatrix& b) {
  const HermitianMatrix diff = b - a;
  const RealVector<double> ev = eigenvalues(diff);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return -ev(0) / (1 + norm);
}

struct Tuple {
  std::vector<PDMatrix> atoms;
  std::vector<double> weights;
};

Tuple random_tuple(Rng& rng, int min_dim = 2, int max_dim = 8,
                   int max_atoms = 10) {
  const int d = uniform_int(rng, min_dim, max_dim);
  const int n = uniform_int(rng, 2, max_atoms);
  Tuple t;
  t.atoms = random_pd_list<double>(n, d, atom_radius, rng);
  t.weights = random_weights<double>(n, rng);
  return t;
}

// A PSD matrix of spectral norm <= 1.
HermitianMatrix random_psd(Index d, Rng& rng) {
  const HermitianMatrix h = random_hermitian<double>(d, 1.0, rng);
  return HermitianMatrix(h.matrix() * h.matrix());
}

// a^{1/2} exp(sign * P) a^{1/2}: below a for sign = -1, above for +1.
PDMatrix order_shift(const PDMatrix& a, double sign, Rng& rng) {
  return congruence(sqrt(a), matrix_exp(sign * random_psd(a.dim(), rng)));
}

std::vector<PDMatrix> random_cloud(Rng& rng, Index d, std::size_t count,
                                   double radius) {
  const PDMatrix center = random_pd<double>(d, 1.0, rng);
  const PDMatrix root = sqrt(center);
  std::vector<PDMatrix> cloud;
  cloud.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    cloud.push_back(congruence(root, random_pd<double>(d, radius, rng)));
  }
  return cloud;
}

using SuiteFn = std::function<std::vector<PropertyResult>(const SuiteOptions&)>;

// ---------------------------------------------------------------------------
// Weighted Karcher mean properties.

std::vector<PropertyResult> suite_p1(const SuiteOptions& o) {
  Tally tally("p1", "consistency with scalars (commuting atoms)", 1e-9);
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("p1", o.seed, t);
    const int d = uniform_int(rng, 2, 8);
    const int n = uniform_int(rng, 2, 10);
    CMatrix u;
    const auto atoms = random_commuting_pd<double>(n, d, atom_radius, rng, &u);
    const auto w = random_weights<double>(n, rng);
    RealVector<double> expected = RealVector<double>::Ones(d);
    for (int i = 0; i < n; ++i) {
      const CMatrix local = u.adjoint() * atoms[i].matrix() * u;
      for (int k = 0; k < d; ++k) {
        expected(k) *= std::pow(local(k, k).real(), w[i]);
      }
    }
    const PDMatrix closed(u * expected.cast<std::complex<double>>().asDiagonal() *
                          u.adjoint());
    const auto mean = solve(atoms, w, o.solver);
    if (!mean) {
      tally.skip();
      continue;
    }
    tally.observe(thompson_distance(*mean, closed));
  }
  return {tally.result()};
}

std::vector<PropertyResult> suite_p2(const SuiteOptions& o) {
  Tally tally("p2", "joint homogeneity", 1e-7);
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("p2", o.seed, t);
    Tuple tup = random_tuple(rng);
    std::vector<PDMatrix> scaled_atoms;
    double factor = 1;
    for (std::size_t i = 0; i < tup.atoms.size(); ++i) {
      const double s = std::exp(uniform_real(rng, -1.5, 1.5));
      factor *= std::pow(s, tup.weights[i]);
      scaled_atoms.push_back(scale(s, tup.atoms[i]));
    }
    const auto base = solve(tup.atoms, tup.weights, o.solver);
    const auto moved = solve(scaled_atoms, tup.weights, o.solver);
    if (!base || !moved) {
      tally.skip();
      continue;
    }
    tally.observe(thompson_distance(*moved, scale(factor, *base)));
  }
  return {tally.result()};
}

std::vector<PropertyResult> suite_p3(const SuiteOptions& o) {
  Tally tally("p3", "permutation invariance", 1e-7);
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("p3", o.seed, t);
    Tuple tup = random_tuple(rng);
    std::vector<std::size_t> order(tup.atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<PDMatrix> atoms;
    std::vector<double> weights;
    for (std::size_t k : order) {
      atoms.push_back(tup.atoms[k]);
      weights.push_back(tup.weights[k]);
    }
    const auto base = solve(tup.atoms, tup.weights, o.solver);
    const auto perm = solve(atoms, weights, o.solver);
    if (!base || !perm) {
      tally.skip();
      continue;
    }
    tally.observe(thompson_distance(*base, *perm));
  }
  return {tally.result()};
}

std::vector<PropertyResult> suite_p4(const SuiteOptions& o) {
  Tally tally("p4", "monotonicity", 1e-7);
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("p4", o.seed, t);
    Tuple tup = random_tuple(rng);
    std::vector<PDMatrix> lower;
    for (const auto& a : tup.atoms) lower.push_back(order_shift(a, -1, rng));
    const auto upper_mean = solve(tup.atoms, tup.weights, o.solver);
    const auto lower_mean = solve(lower, tup.weights, o.solver);
    if (!upper_mean || !lower_mean) {
      tally.skip();
      continue;
    }
    tally.observe(
        loewner_excess(lower_mean->hermitian(), upper_mean->hermitian()));
  }
  return {tally.result()};
}

std::vector<PropertyResult> suite_p5(const SuiteOptions& o) {
  Tally tally("p5", "Thompson contraction against W1", 1e-7);
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("p5", o.seed, t);
    Tuple first = random_tuple(rng);
    const Index d = first.atoms.front().dim();
    Tuple second;
    if (t % 2 == 0) {
      // Nearby measure: perturbed atoms, fresh weights.
      for (const auto& a : first.atoms) {
        second.atoms.push_back(
            congruence(sqrt(a), random_pd<double>(d, 0.3, rng)));
      }
      second.weights = random_weights<double>(second.atoms.size(), rng);
    } else {
      const int n = uniform_int(rng, 1, 10);
      second.atoms = random_pd_list<double>(n, d, atom_radius, rng);
      second.weights = random_weights<double>(n, rng);
    }
    const Measure mu(first.atoms, first.weights);
    const Measure nu(second.atoms, second.weights);
    const auto a = solve(mu, o.solver);
    const auto b = solve(nu, o.solver);
    if (!a || !b) {
      tally.skip();
      continue;
    }
    tally.observe(thompson_distance(*a, *b) - wasserstein_w1(mu, nu).value);
  }
  return {tally.result()};
}

std::vector<PropertyResult> suite_p6(const SuiteOptions& o) {
  Tally tally("p6", "congruence invariance", 1e-7);
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("p6", o.seed, t);
    Tuple tup = random_tuple(rng);
    const CMatrix m =
        random_invertible<double>(tup.atoms.front().dim(), 10.0, rng);
    std::vector<PDMatrix> moved;
    for (const auto& a : tup.atoms) moved.push_back(congruence(m, a));
    const auto base = solve(tup.atoms, tup.weights, o.solver);
    const auto image = solve(moved, tup.weights, o.solver);
    if (!base || !image) {
      tally.skip();
      continue;
    }
    tally.observe(thompson_distance(*image, congruence(m, *base)));
  }
  return {tally.result()};
}

std::vector<PropertyResult> suite_p7(const SuiteOptions& o) {
  Tally tally("p7", "joint concavity", 1e-7);
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("p7", o.seed, t);
    Tuple a = random_tuple(rng);
    const Index d = a.atoms.front().dim();
    const auto b_atoms =
        random_pd_list<double>(a.atoms.size(), d, atom_radius, rng);
    const double lambda = uniform_real(rng, 0.0, 1.0);
    std::vector<PDMatrix> mixed;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
      mixed.emplace_back(lambda * a.atoms[i].matrix() +
                         (1 - lambda) * b_atoms[i].matrix());
    }
    const auto ma = solve(a.atoms, a.weights, o.solver);
    const auto mb = solve(b_atoms, a.weights, o.solver);
    const auto mm = solve(mixed, a.weights, o.solver);
    if (!ma || !mb || !mm) {
      tally.skip();
      continue;
    }
    const HermitianMatrix rhs =
        lambda * ma->hermitian() + (1 - lambda) * mb->hermitian();
    tally.observe(-loewner_gap(rhs, mm->hermitian()));
  }
  return {tally.result()};
}

std::vector<PropertyResult> suite_p8(const SuiteOptions& o) {
  Tally tally("p8", "self-duality", 1e-7);
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("p8", o.seed, t);
    Tuple tup = random_tuple(rng);
    std::vector<PDMatrix> inv;
    for (const auto& a : tup.atoms) inv.push_back(inverse(a));
    const auto base = solve(tup.atoms, tup.weights, o.solver);
    const auto dual = solve(inv, tup.weights, o.solver);
    if (!base || !dual) {
      tally.skip();
      continue;
    }
    tally.observe(thompson_distance(inverse(*dual), *base));
  }
  return {tally.result()};
}

std::vector<PropertyResult> suite_p9(const SuiteOptions& o) {
  Tally tally("p9", "harmonic <= Karcher <= arithmetic", 1e-7);
  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("p9", o.seed, t);
    Tuple tup = random_tuple(rng);
    const Measure mu(tup.atoms, tup.weights);
    const auto mean = solve(mu, o.solver);
    if (!mean) {
      tally.skip();
      continue;
    }
    const PDMatrix h = harmonic_barycenter(mu);
    const HermitianMatrix a = arithmetic_barycenter(mu);
    tally.observe(std::max(loewner_excess(h.hermitian(), mean->hermitian()),
                           loewner_excess(mean->hermitian(), a)));
  }
  return {tally.result()};
}

// ---------------------------------------------------------------------------
// Barycenter map on measures.

Measure random_measure(Rng& rng, Index d, int max_atoms = 8) {
  const int n = uniform_int(rng, 1, max_atoms);
  return Measure(random_pd_list<double>(n, d, atom_radius, rng),
                 random_weights<double>(n, rng));
}

std::vector<PropertyResult> suite_bary(const SuiteOptions& o) {
  Tally scaling("bary", "P1 scaling pushforward", 1e-7);
  Tally order("bary", "P2 stochastic order monotonicity", 1e-7);
  Tally contraction("bary", "P3 contraction against W1", 1e-7);
  Tally congr("bary", "P4 congruence pushforward", 1e-7);
  Tally mixture_c("bary", "P5 concavity on mixtures", 1e-7);
  Tally inversion("bary", "P6 inversion pushforward", 1e-7);
  Tally agh("bary", "P7 harmonic <= Karcher <= arithmetic", 1e-7);
  Tally stability("bary", "discretization stability", 1e-7);

  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("bary", o.seed, t);
    const Index d = uniform_int(rng, 2, 6);
    const Measure mu = random_measure(rng, d);
    const auto lm = solve(mu, o.solver);

    // P1
    {
      const double s = std::exp(uniform_real(rng, -1.5, 1.5));
      const auto img = solve(scaled(mu, s), o.solver);
      if (lm && img) {
        scaling.observe(thompson_distance(*img, scale(s, *lm)));
      } else {
        scaling.skip();
      }
    }
    // P2 on uniform measures: nu dominates mu atomwise up to a permutation.
    {
      const int n = uniform_int(rng, 1, 8);
      auto lower = random_pd_list<double>(n, d, atom_radius, rng);
      std::vector<PDMatrix> upper;
      for (const auto& a : lower) upper.push_back(order_shift(a, +1, rng));
      std::shuffle(upper.begin(), upper.end(), rng);
      const Measure small = Measure::uniform(lower);
      const Measure large = Measure::uniform(upper);
      const auto ls = solve(small, o.solver);
      const auto ll = solve(large, o.solver);
      if (!ls || !ll) {
        order.skip();
      } else if (!stochastic_leq(small, large, 1e-9)) {
        order.observe(std::numeric_limits<double>::infinity());
      } else {
        order.observe(loewner_excess(ls->hermitian(), ll->hermitian()));
      }
    }
    const Measure nu = random_measure(rng, d);
    const auto ln = solve(nu, o.solver);
    // P3
    if (lm && ln) {
      contraction.observe(thompson_distance(*lm, *ln) -
                          wasserstein_w1(mu, nu).value);
    } else {
      contraction.skip();
    }
    // P4
    {
      const CMatrix m = random_invertible<double>(d, 10.0, rng);
      const auto img = solve(congruent(mu, m), o.solver);
      if (lm && img) {
        congr.observe(thompson_distance(*img, congruence(m, *lm)));
      } else {
        congr.skip();
      }
    }
    // P5 on mixtures formed over the union support.
    {
      const double lambda = uniform_real(rng, 0.05, 0.95);
      const auto mix = solve(mixture(mu, nu, lambda), o.solver);
      if (lm && ln && mix) {
        const HermitianMatrix rhs =
            lambda * lm->hermitian() + (1 - lambda) * ln->hermitian();
        mixture_c.observe(-loewner_gap(rhs, mix->hermitian()));
      } else {
        mixture_c.skip();
      }
    }
    // P6
    {
      const auto img = solve(inverted(mu), o.solver);
      if (lm && img) {
        inversion.observe(thompson_distance(*img, inverse(*lm)));
      } else {
        inversion.skip();
      }
    }
    // P7
    if (lm) {
      agh.observe(std::max(
          loewner_excess(harmonic_barycenter(mu).hermitian(), lm->hermitian()),
          loewner_excess(lm->hermitian(), arithmetic_barycenter(mu))));
    } else {
      agh.skip();
    }
  }

  // One fixed 200-point cloud per seed.
  {
    Rng rng = trial_rng("bary/cloud", o.seed, 0);
    const Index d = uniform_int(rng, 2, 4);
    const auto cloud = random_cloud(rng, d, 200, 1.0);
    const Measure empirical = empirical_measure(cloud);
    const auto full = solve(empirical, o.solver);
    for (double eps : {0.5, 0.1, 0.02}) {
      const Measure disc = empirical_approximation(cloud, eps, cloud.front());
      const auto coarse = solve(disc, o.solver);
      if (!full || !coarse) {
        stability.skip();
        continue;
      }
      stability.observe(thompson_distance(*full, *coarse) - 2 * eps);
    }
  }

  return {scaling.result(),     order.result(),     contraction.result(),
          congr.result(),       mixture_c.result(), inversion.result(),
          agh.result(),         stability.result()};
}

// ---------------------------------------------------------------------------
// Thompson metric.

std::vector<PropertyResult> suite_metric(const SuiteOptions& o) {
  Tally zero("metric", "d(x, x) = 0", 0.0);
  Tally symmetry("metric", "symmetry", 1e-10);
  Tally triangle("metric", "triangle inequality", 1e-9);
  Tally formulas("metric", "spectral vs M-ratio formula", 1e-9);
  Tally congr("metric", "congruence isometry", 1e-9);
  Tally inversion("metric", "inversion isometry", 1e-9);
  Tally log_contr("metric", "log contraction", 1e-9);
  Tally lipschitz("metric", "local Lipschitz against the norm", 1e-9);

  auto pair_checks = [&](const PDMatrix& x, const PDMatrix& y,
                         const CMatrix& m) {
    const double dxy = thompson_distance(x, y);
    zero.observe(thompson_distance(x, x));
    symmetry.observe(std::abs(dxy - thompson_distance(y, x)));
    formulas.observe(std::abs(dxy - thompson_distance_by_ratio(x, y)));
    congr.observe(std::abs(
        thompson_distance(congruence(m, x), congruence(m, y)) - dxy));
    inversion.observe(std::abs(thompson_distance(inverse(x), inverse(y)) - dxy));
    log_contr.observe(norm_distance(matrix_log(x), matrix_log(y)) - dxy);
    const double lip = std::max(1 / x.min_eigenvalue(), 1 / y.min_eigenvalue());
    lipschitz.observe(dxy - std::log1p(lip * norm_distance(x, y)));
  };

  if (!o.fixture.empty()) {
    Rng rng = trial_rng("metric/fixture", o.seed, 0);
    const auto& f = o.fixture;
    const CMatrix m = random_invertible<double>(f.front().dim(), 10.0, rng);
    for (const auto& x : f) {
      for (const auto& y : f) {
        pair_checks(x, y, m);
        for (const auto& z : f) {
          triangle.observe(thompson_distance(x, z) - thompson_distance(x, y) -
                           thompson_distance(y, z));
        }
      }
    }
  } else {
    for (int t = 0; t < o.trials; ++t) {
      Rng rng = trial_rng("metric", o.seed, t);
      const Index d = uniform_int(rng, 2, 8);
      const auto x = random_pd<double>(d, 3.0, rng);
      const auto y = random_pd<double>(d, 3.0, rng);
      const auto z = random_pd<double>(d, 3.0, rng);
      const CMatrix m = random_invertible<double>(d, 10.0, rng);
      pair_checks(x, y, m);
      triangle.observe(thompson_distance(x, z) - thompson_distance(x, y) -
                       thompson_distance(y, z));
    }
  }
  return {zero.result(),      symmetry.result(),  triangle.result(),
          formulas.result(),  congr.result(),     inversion.result(),
          log_contr.result(), lipschitz.result()};
}

// ---------------------------------------------------------------------------
// Optimal transport.

std::vector<PropertyResult> suite_ot(const SuiteOptions& o) {
  Tally lp("ot", "W1 equals brute-force permutation optimum", 1e-10);
  Tally bottleneck("ot", "min-max equals brute-force bottleneck", 1e-10);
  Tally marginals("ot", "plan marginals", 1e-10);
  Tally dirac("ot", "W1 of point masses", 1e-12);
  Tally self("ot", "W1(mu, mu) = 0", 1e-12);
  Tally symmetry("ot", "W1 symmetry", 1e-9);
  Tally triangle("ot", "W1 triangle inequality", 1e-8);
  Tally isometry("ot", "W1 non-expansive under isometries", 1e-9);

  for (int t = 0; t < o.trials; ++t) {
    Rng rng = trial_rng("ot", o.seed, t);
    const Index d = uniform_int(rng, 2, 6);

    // Uniform equal-size supports.
    {
      const int n = uniform_int(rng, 1, 6);
      const Measure mu =
          Measure::uniform(random_pd_list<double>(n, d, atom_radius, rng));
      const Measure nu =
          Measure::uniform(random_pd_list<double>(n, d, atom_radius, rng));
      const PermutationOptimum brute =
          brute_force_permutations(cost_matrix(mu, nu, ThompsonGround{}));
      lp.observe(std::abs(wasserstein_w1(mu, nu).value - brute.min_average));
      bottleneck.observe(std::abs(wasserstein_minmax(mu, nu) - brute.min_max));
    }

    const Measure mu = random_measure(rng, d);
    const Measure nu = random_measure(rng, d);
    const Measure eta = random_measure(rng, d);
    const auto w_mn = wasserstein_w1(mu, nu);
    marginals.observe(w_mn.plan.marginal_error());
    symmetry.observe(std::abs(w_mn.value - wasserstein_w1(nu, mu).value));
    triangle.observe(w_mn.value - wasserstein_w1(mu, eta).value -
                     wasserstein_w1(eta, nu).value);
    self.observe(wasserstein_w1(mu, mu).value);

    {
      const auto x = random_pd<double>(d, atom_radius, rng);
      const auto y = random_pd<double>(d, atom_radius, rng);
      dirac.observe(std::abs(
          wasserstein_w1(Measure::dirac(x), Measure::dirac(y)).value -
          thompson_distance(x, y)));
    }

    const CMatrix m = random_invertible<double>(d, 10.0, rng);
    isometry.observe(
        std::max(wasserstein_w1(congruent(mu, m), congruent(nu, m)).value,
                 wasserstein_w1(inverted(mu), inverted(nu)).value) -
        w_mn.value);
  }
  return {lp.result(),       bottleneck.result(), marginals.result(),
          dirac.result(),    self.result(),       symmetry.result(),
          triangle.result(), isometry.result()};
}

// ---------------------------------------------------------------------------
// Discretization of sampled measures.

std::vector<PropertyResult> suite_appendix(const SuiteOptions& o) {
  Tally bound("appendix", "W1(sample, discretization) < 2 eps", 0.0, true);
  Tally both_d("appendix", "two-metric cells: Thompson W1 < 2 eps", 0.0, true);
  Tally both_n("appendix", "two-metric cells: norm W1 < 2 eps", 0.0, true);
  Tally single("appendix", "singleton sample gives a point mass", 0.0);

  const int clouds = std::max(1, o.trials / 20);
  for (int t = 0; t < clouds; ++t) {
    Rng rng = trial_rng("appendix", o.seed, t);
    const Index d = uniform_int(rng, 2, 4);
    const auto cloud = random_cloud(rng, d, 200, 1.0);
    const Measure empirical = empirical_measure(cloud);
    const PDMatrix base = random_pd<double>(d, 1.0, rng);
    for (double eps : {0.5, 0.1, 0.02}) {
      const Measure disc = empirical_approximation(cloud, eps, base);
      bound.observe(wasserstein_w1(empirical, disc).value - 2 * eps);

      DiscretizationOptions opts;
      opts.norm_cells = true;
      const Measure disc2 = empirical_approximation(cloud, eps, base, opts);
      both_d.observe(wasserstein_w1(empirical, disc2).value - 2 * eps);
      both_n.observe(wasserstein_w1(empirical, disc2, NormGround{}).value -
                     2 * eps);
    }
    const Measure point = empirical_approximation(
        std::vector<PDMatrix>{cloud.front()}, 0.1, base);
    single.observe(point.size() == 1 &&
                           thompson_distance(point.atom(0), cloud.front()) == 0
                       ? 0.0
                       : 1.0);
  }
  return {bound.result(), both_d.result(), both_n.result(), single.result()};
}

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites{
      {"p1", suite_p1},         {"p2", suite_p2},     {"p3", suite_p3},
      {"p4", suite_p4},         {"p5", suite_p5},     {"p6", suite_p6},
      {"p7", suite_p7},         {"p8", suite_p8},     {"p9", suite_p9},
      {"bary", suite_bary},     {"metric", suite_metric},
      {"ot", suite_ot},         {"appendix", suite_appendix}};
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "p1", "p2", "p3", "p4",   "p5",     "p6", "p7",
      "p8", "p9", "bary", "metric", "ot", "appendix"};
  return names;
}

bool is_suite(const std::string& name) { return registry().count(name) > 0; }

std::vector<PropertyResult> run_suite(const std::string& name,
                                      const SuiteOptions& opts) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw std::invalid_argument("unknown suite: " + name);
  }
  if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
  return it->second(opts);
}

bool all_pass(const std::vector<PropertyResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.pass; });
}

json to_json(const PropertyResult& r) {
  return json{{"suite", r.suite},
              {"property", r.property},
              {"pass", r.pass},
              {"worst_slack", r.worst_slack},
              {"tolerance", r.tolerance},
              {"bound", r.strict ? "<" : "<="},
              {"trials", r.trials},
              {"skipped", r.skipped}};
}

json report_json(const std::vector<PropertyResult>& results,
                 const SuiteOptions& opts) {
  json props = json::array();
  for (const auto& r : results) props.push_back(to_json(r));
  return json{{"seed", opts.seed},
              {"trials", opts.trials},
              {"pass", all_pass(results)},
              {"properties", std::move(props)}};
}

PermutationOptimum brute_force_permutations(const RealMatrix<double>& cost) {
  const Index n = cost.rows();
  std::vector<Index> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Index(0));
  PermutationOptimum best{std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};
  do {
    double sum = 0, worst = 0;
    for (Index j = 0; j < n; ++j) {
      sum += cost(j, sigma[j]);
      worst = std::max(worst, cost(j, sigma[j]));
    }
    best.min_average = std::min(best.min_average, sum / static_cast<double>(n));
    best.min_max = std::min(best.min_max, worst);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

}  // namespace karcher_cone::verify

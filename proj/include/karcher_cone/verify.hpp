#ifndef KARCHER_CONE_VERIFY_HPP
#define KARCHER_CONE_VERIFY_HPP

// Seeded property suites over random instances. Each property records its
// worst observed violation ("slack", zero when never violated) against a
// fixed tolerance.
//
// Suites:
//   p1 .. p9  weighted Karcher mean properties
//   bary      barycenter map properties and discretization stability
//   metric    Thompson metric axioms, cross-checks and invariances
//   ot        transport solver exactness and W1 metric properties
//   appendix  epsilon-discretization bounds in one and two metrics

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "karcher_cone/karcher.hpp"

namespace karcher_cone::verify {

constexpr std::uint64_t default_seed = 20160401;

struct PropertyResult {
  std::string suite;
  std::string property;
  bool pass = false;
  double worst_slack = 0;
  double tolerance = 0;
  bool strict = false;  // the bound is "<" rather than "<="
  int trials = 0;
  int skipped = 0;  // instances lost to a non-converged solve
};

struct SuiteOptions {
  std::uint64_t seed = default_seed;
  int trials = 100;
  SolverConfig solver;
  /// When nonempty, the metric suite runs over all pairs and triples of
  /// these matrices instead of random ones.
  std::vector<PDMatrix> fixture;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Throws std::invalid_argument for an unknown suite name.
std::vector<PropertyResult> run_suite(const std::string& name,
                                      const SuiteOptions& opts);

bool all_pass(const std::vector<PropertyResult>& results);

nlohmann::json to_json(const PropertyResult& r);
nlohmann::json report_json(const std::vector<PropertyResult>& results,
                           const SuiteOptions& opts);

/// min over permutations of the mean and of the max of cost(j, sigma(j)),
/// by enumeration.
struct PermutationOptimum {
  double min_average;
  double min_max;
};
PermutationOptimum brute_force_permutations(const RealMatrix<double>& cost);

}  // namespace karcher_cone::verify

#endif  // KARCHER_CONE_VERIFY_HPP

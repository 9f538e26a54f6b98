#include "karcher_cone/cli.hpp"

#include <cstdlib>
#include <exception>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "karcher_cone/barycenter.hpp"
#include "karcher_cone/io.hpp"
#include "karcher_cone/verify.hpp"

namespace karcher_cone::cli {

namespace {

using json = nlohmann::json;

void add_solver_flags(CLI::App& cmd, SolverConfig& cfg) {
  cmd.add_option("--tol-abs", cfg.tol_abs, "Absolute residual tolerance");
  cmd.add_option("--tol-rel", cfg.tol_rel,
                 "Relative residual tolerance (times dimension)");
  cmd.add_option("--max-iter", cfg.max_iter, "Maximum outer iterations");
  cmd.add_option("--initial-step", cfg.initial_step, "Initial step in (0, 1]");
  cmd.add_option("--backtrack-factor", cfg.backtrack_factor,
                 "Step shrink factor in (0, 1)");
  cmd.add_option("--max-backtracks", cfg.max_backtracks,
                 "Backtracking budget per iteration");
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  in.imbue(std::locale::classic());
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double w = std::stod(item, &used);
    if (used != item.size()) throw io::FormatError("bad weight: " + item);
    out.push_back(w);
  }
  return out;
}

bool is_measure_document(const json& j) {
  return j.is_array() || (j.is_object() && j.contains("atoms"));
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace

std::uint64_t resolve_seed(const std::uint64_t* flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("KARCHER_CONE_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
  }
  return verify::default_seed;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Karcher means, Thompson and Wasserstein distances, and "
               "barycenters on the positive definite cone"};
  app.name("karcher-cone");
  app.require_subcommand(1);

  SolverConfig cfg;

  auto* mean = app.add_subcommand("mean", "Weighted Karcher mean of a measure");
  std::string mean_input, mean_weights;
  mean->add_option("input", mean_input, "Measure JSON file")->required();
  mean->add_option("--weights", mean_weights,
                   "Comma-separated weights overriding the stored ones");
  add_solver_flags(*mean, cfg);

  auto* distance = app.add_subcommand("distance", "Distance between two inputs");
  std::string dist_x, dist_y, metric = "thompson";
  distance->add_option("x", dist_x, "First matrix or measure file")->required();
  distance->add_option("y", dist_y, "Second matrix or measure file")->required();
  distance->add_option("--metric", metric, "thompson | w1 | minmax")
      ->check(CLI::IsMember({"thompson", "w1", "minmax"}));

  auto* bary = app.add_subcommand("barycenter", "Barycenter of a measure");
  std::string bary_input, kind = "karcher";
  bary->add_option("input", bary_input, "Measure JSON file")->required();
  bary->add_option("--kind", kind, "karcher | arithmetic | harmonic")
      ->check(CLI::IsMember({"karcher", "arithmetic", "harmonic"}));
  add_solver_flags(*bary, cfg);

  auto* approx = app.add_subcommand(
      "approx", "Epsilon-discretization of the uniform measure on a sample");
  std::string sample_file, base_file;
  double eps = 0;
  std::size_t max_cells = 0;
  bool two_metric = false;
  approx->add_option("sample", sample_file, "Sample JSON file")->required();
  approx->add_option("--eps", eps, "Cell diameter bound")->required();
  approx->add_option("--base", base_file,
                     "Matrix receiving leftover mass (default: first point)");
  approx->add_option("--max-cells", max_cells, "Cell cap, 0 for none");
  approx->add_flag("--two-metric", two_metric,
                   "Cells small in both the Thompson and norm metrics");

  auto* ver = app.add_subcommand("verify", "Run property suites");
  std::string suites = "all", fixture_file;
  std::uint64_t seed_flag = 0;
  int trials = 100;
  ver->add_option("--suite", suites,
                  "Comma-separated suites (p1..p9, bary, metric, ot, "
                  "appendix) or all");
  auto* seed_opt = ver->add_option("--seed", seed_flag, "RNG seed");
  ver->add_option("--trials", trials, "Random instances per suite");
  ver->add_option("--fixture", fixture_file,
                  "Matrices (measure JSON) for the metric suite");
  add_solver_flags(*ver, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    if (*mean) {
      cfg.validate();
      io::RawMeasure raw = io::raw_measure_from_json(io::read_file(mean_input));
      if (!mean_weights.empty()) {
        raw.weights = parse_weights(mean_weights);
        if (raw.weights.size() != raw.atoms.size()) {
          throw io::FormatError("--weights count differs from atom count");
        }
      }
      const Measure mu = io::measure_from_raw(std::move(raw));
      const auto result = karcher_mean(mu, cfg);
      emit(out, io::to_json(result));
      if (!result.converged) {
        err << "karcher-cone: mean did not converge (residual "
            << io::format_scalar(result.residual_norm) << ")\n";
        return exit_not_converged;
      }
      return exit_ok;
    }

    if (*distance) {
      const json jx = io::read_file(dist_x);
      const json jy = io::read_file(dist_y);
      double value = 0;
      if (metric == "thompson") {
        if (is_measure_document(jx) || is_measure_document(jy)) {
          throw io::FormatError("--metric thompson expects two matrix files");
        }
        value = thompson_distance(io::pd_from_json(jx), io::pd_from_json(jy));
      } else {
        if (!is_measure_document(jx) || !is_measure_document(jy)) {
          throw io::FormatError("--metric " + metric +
                                " expects two measure files");
        }
        const Measure mu = io::measure_from_json(jx);
        const Measure nu = io::measure_from_json(jy);
        value = metric == "w1" ? wasserstein_w1(mu, nu).value
                               : wasserstein_minmax(mu, nu);
      }
      out << io::format_scalar(value) << '\n';
      return exit_ok;
    }

    if (*bary) {
      const Measure mu = io::measure_from_json(io::read_file(bary_input));
      json doc{{"kind", kind}};
      if (kind == "arithmetic") {
        doc["barycenter"] = io::to_json(arithmetic_barycenter(mu));
      } else if (kind == "harmonic") {
        doc["barycenter"] = io::to_json(harmonic_barycenter(mu));
      } else {
        cfg.validate();
        const auto result = karcher_mean(mu, cfg);
        doc["barycenter"] = io::to_json(result.mean);
        doc.update(io::convergence_record(result));
        if (!result.converged) {
          emit(out, doc);
          err << "karcher-cone: barycenter did not converge\n";
          return exit_not_converged;
        }
      }
      emit(out, doc);
      return exit_ok;
    }

    if (*approx) {
      if (!(eps > 0)) throw io::FormatError("--eps must be positive");
      const io::RawMeasure raw =
          io::raw_measure_from_json(io::read_file(sample_file));
      if (raw.atoms.empty()) throw io::FormatError("empty sample");
      const PDMatrix base = base_file.empty()
                                ? raw.atoms.front()
                                : io::pd_from_json(io::read_file(base_file));
      DiscretizationOptions opts;
      opts.max_cells = max_cells;
      opts.norm_cells = two_metric;
      const Measure disc = empirical_approximation(raw.atoms, eps, base, opts);
      json doc = io::to_json(disc);
      doc["eps"] = eps;
      doc["certified_w1_bound"] = 2 * eps;
      emit(out, doc);
      return exit_ok;
    }

    if (*ver) {
      verify::SuiteOptions opts;
      opts.seed = resolve_seed(seed_opt->count() ? &seed_flag : nullptr);
      opts.trials = trials;
      opts.solver = cfg;
      cfg.validate();
      if (!fixture_file.empty()) {
        opts.fixture = io::raw_measure_from_json(io::read_file(fixture_file)).atoms;
      }
      std::vector<std::string> names;
      if (suites == "all") {
        names = verify::suite_names();
      } else {
        std::stringstream in(suites);
        std::string name;
        while (std::getline(in, name, ',')) {
          if (!verify::is_suite(name)) {
            err << "karcher-cone: unknown suite '" << name << "'\n";
            return exit_error;
          }
          names.push_back(name);
        }
      }
      std::vector<verify::PropertyResult> results;
      for (const auto& name : names) {
        auto part = verify::run_suite(name, opts);
        results.insert(results.end(), part.begin(), part.end());
      }
      for (const auto& r : results) {
        err << (r.pass ? "PASS " : "FAIL ") << r.suite << ": " << r.property
            << " (worst slack " << io::format_scalar(r.worst_slack)
            << ", tolerance " << io::format_scalar(r.tolerance) << ")\n";
      }
      emit(out, verify::report_json(results, opts));
      return verify::all_pass(results) ? exit_ok : exit_error;
    }
  } catch (const std::exception& e) {
    err << "karcher-cone: " << e.what() << '\n';
    return exit_error;
  }
  return exit_error;
}

}  // namespace karcher_cone::cli

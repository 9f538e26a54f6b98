#ifndef KARCHER_CONE_IO_HPP
#define KARCHER_CONE_IO_HPP

// JSON encodings.
//
//   matrix:  {"dim": n, "entries": [[[re, im], ...], ...]}   (row-major)
//   measure: {"atoms": [<matrix>, ...], "weights": [w, ...]}
//
// Readers symmetrize matrices. Measure weights that sum to within 1e-9 of 1
// are accepted (and renormalized when off by more than the in-memory 1e-12
// tolerance); anything else is rejected. A measure without "weights" is
// uniform on its atoms.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "karcher_cone/karcher.hpp"
#include "karcher_cone/measures.hpp"

namespace karcher_cone::io {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weight sums within this distance of 1 are accepted on read.
constexpr double read_weight_tol = 1e-9;

json to_json(const HermitianMatrix& h);
json to_json(const PDMatrix& a);
json to_json(const Measure& mu);

HermitianMatrix hermitian_from_json(const json& j);
PDMatrix pd_from_json(const json& j);

/// Atoms and weights as stored, before merging or normalization.
struct RawMeasure {
  std::vector<PDMatrix> atoms;
  std::vector<double> weights;  // empty when the document has none
};

RawMeasure raw_measure_from_json(const json& j);
Measure measure_from_raw(RawMeasure raw);
Measure measure_from_json(const json& j);

/// {"residual_norm": ..., "iterations": ..., "converged": ...}
json convergence_record(const KarcherResult<double>& r);

/// Mean matrix plus convergence record.
json to_json(const KarcherResult<double>& r);

json read_file(const std::string& path);

/// Decimal with 15 significant digits, independent of the global locale.
std::string format_scalar(double v);

}  // namespace karcher_cone::io

#endif  // KARCHER_CONE_IO_HPP

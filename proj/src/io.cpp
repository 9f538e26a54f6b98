#include "karcher_cone/io.hpp"

#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>

namespace karcher_cone::io {

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

json to_json(const HermitianMatrix& h) {
  json rows = json::array();
  for (Index i = 0; i < h.dim(); ++i) {
    json row = json::array();
    for (Index j = 0; j < h.dim(); ++j) {
      row.push_back(json::array({h(i, j).real(), h(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return json{{"dim", h.dim()}, {"entries", std::move(rows)}};
}

json to_json(const PDMatrix& a) { return to_json(a.hermitian()); }

json to_json(const Measure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms()) atoms.push_back(to_json(a));
  return json{{"atoms", std::move(atoms)}, {"weights", mu.weights()}};
}

HermitianMatrix hermitian_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw FormatError("matrix must be an object with \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
    throw FormatError("\"dim\" must be a positive integer");
  }
  const auto n = static_cast<Index>(j["dim"].get<long long>());
  const json& rows = j["entries"];
  if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
    throw FormatError("\"entries\" must hold dim rows");
  }
  ComplexMatrix<double> m(n, n);
  for (Index r = 0; r < n; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw FormatError("every row of \"entries\" must hold dim values");
    }
    for (Index c = 0; c < n; ++c) {
      const json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2) {
        throw FormatError("matrix entries must be [re, im] pairs");
      }
      m(r, c) = {number(z[0], "real part"), number(z[1], "imaginary part")};
    }
  }
  if (!m.allFinite()) throw FormatError("matrix entries must be finite");
  return HermitianMatrix(m);
}

PDMatrix pd_from_json(const json& j) { return PDMatrix(hermitian_from_json(j)); }

RawMeasure raw_measure_from_json(const json& j) {
  RawMeasure raw;
  const json* atoms = nullptr;
  if (j.is_array()) {
    atoms = &j;
  } else if (j.is_object() && j.contains("atoms") && j["atoms"].is_array()) {
    atoms = &j["atoms"];
  } else {
    throw FormatError("measure must be an object with an \"atoms\" array");
  }
  for (const auto& a : *atoms) raw.atoms.push_back(pd_from_json(a));
  if (j.is_object() && j.contains("weights")) {
    const json& w = j["weights"];
    if (!w.is_array()) throw FormatError("\"weights\" must be an array");
    for (const auto& v : w) raw.weights.push_back(number(v, "weight"));
    if (raw.weights.size() != raw.atoms.size()) {
      throw FormatError("atom and weight counts differ");
    }
  }
  return raw;
}

Measure measure_from_raw(RawMeasure raw) {
  if (raw.atoms.empty()) throw FormatError("measure has no atoms");
  if (raw.weights.empty()) return Measure::uniform(std::move(raw.atoms));
  double total = 0;
  for (double w : raw.weights) total += w;
  if (!(std::abs(total - 1) <= read_weight_tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "weights sum to " << total << "; expected 1 within "
        << read_weight_tol;
    throw FormatError(msg.str());
  }
  if (std::abs(total - 1) > weight_sum_tol<double>) {
    for (double& w : raw.weights) w /= total;
  }
  return Measure(std::move(raw.atoms), std::move(raw.weights));
}

Measure measure_from_json(const json& j) {
  return measure_from_raw(raw_measure_from_json(j));
}

json convergence_record(const KarcherResult<double>& r) {
  return json{{"residual_norm", r.residual_norm},
              {"iterations", r.iterations},
              {"converged", r.converged}};
}

json to_json(const KarcherResult<double>& r) {
  json out = convergence_record(r);
  out["mean"] = to_json(r.mean);
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string format_scalar(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(15);
  out << v;
  return out.str();
}

}  // namespace karcher_cone::io

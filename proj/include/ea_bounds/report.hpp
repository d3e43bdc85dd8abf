#pragma once

// JSON / CSV renderings of reports. Schema: ea-bounds/1. Exact values are
// {num, den} integer pairs (strings when beyond 64 bits) with a decimal string.

#include <cstdio>
#include <limits>
#include <string>

#include <json.hpp>

#include "ea_bounds/bounds.hpp"
#include "ea_bounds/exact_gs.hpp"
#include "ea_bounds/quantum_cell.hpp"
#include "ea_bounds/rational.hpp"
#include "ea_bounds/version.hpp"

namespace ea {

using Json = nlohmann::ordered_json;

inline Json integer_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

inline Json fraction_json(const Rational& r, int precision) {
  return Json{{"num", integer_json(num(r))},
              {"den", integer_json(den(r))},
              {"decimal", to_decimal(r, precision).text}};
}

/// Shortest text that keeps 12 significant digits, e.g. "-1.5", "0.25".
inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Json comparison_json(const ComparisonConstant& c) {
  return Json{{"label", c.label}, {"value", c.value}, {"role", to_string(c.role)}, {"source", c.source}};
}

inline Json report_json(const BoundReport& r, int precision) {
  Json j;
  j["dimension"] = r.dimension;
  j["distribution"] = r.distribution;
  if (!r.distribution_atoms.empty()) j["atoms"] = r.distribution_atoms;
  j["method"] = to_string(r.method);
  j["centered"] = r.centered;
  j["multiplicity_factor"] = fraction_json(r.multiplicity_factor, precision);
  if (r.method == Method::exact_enumeration) {
    j["configurations"] = r.configurations;
    j["cell_average"] = fraction_json(*r.cell_average, precision);
    if (r.equiprobable_sum) j["equiprobable_sum"] = fraction_json(*r.equiprobable_sum, precision);
    j["lower_bound"] = fraction_json(*r.lower_bound, precision);
    if (r.ideal_energy_per_site) j["ideal_energy_per_site"] = fraction_json(*r.ideal_energy_per_site, precision);
    if (r.misfit_bound) j["misfit_bound"] = fraction_json(*r.misfit_bound, precision);
  } else {
    j["samples"] = r.mc_samples;
    j["seed"] = r.seed;
    j["cell_average"] = *r.mc_cell_average;
    j["cell_average_stderr"] = *r.mc_cell_stderr;
    j["lower_bound"] = *r.mc_lower_bound;
    j["stderr"] = *r.mc_stderr;
  }
  Json constants = Json::array();
  for (const auto& c : r.comparison) constants.push_back(comparison_json(c));
  j["comparison_constants"] = constants;
  j["notes"] = r.notes;
  return j;
}

inline Json provenance_json(const Json& config) {
  return Json{{"schema", kSchemaVersion},
              {"tool", Json{{"name", kToolName}, {"version", kToolVersion}}},
              {"config", config}};
}

inline std::string sweep_csv_header() { return "alpha_x,lower_bound,method,stderr"; }

inline std::string sweep_csv_row(const SweepRow& row) {
  return format_real(row.alpha_x) + "," + format_real(row.lower_bound) + ",exact-enumeration,";
}

inline Json sample_json(const SampleRecord& s, int precision) {
  return Json{{"type", "sample"},
              {"index", s.index},
              {"seed", s.seed},
              {"energy", Json{{"num", integer_json(num(s.energy))}, {"den", integer_json(den(s.energy))}}},
              {"per_site", to_decimal(s.energy_per_site, precision).text}};
}

}  // namespace ea

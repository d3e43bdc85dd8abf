#pragma once

// Command-line front end: `bound classical`, `bound quantum`, `upper`,
// `verify`, `analyze frustration`.
//
// Exit codes: 0 success, 1 failed verification, 2 configuration error,
// 3 size guard, 4 numerical failure.

#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ea_bounds/bounds.hpp"
#include "ea_bounds/classical_cell.hpp"
#include "ea_bounds/distribution.hpp"
#include "ea_bounds/errors.hpp"
#include "ea_bounds/exact_gs.hpp"
#include "ea_bounds/lattice.hpp"
#include "ea_bounds/quantum_cell.hpp"
#include "ea_bounds/report.hpp"
#include "ea_bounds/verify.hpp"
#include "ea_bounds/version.hpp"

namespace ea::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kGuardError = 3, kNumericalError = 4 };

struct RunConfig {
  std::string command;
  int dimension = 2;
  std::string dist = "bernoulli";
  bool allow_noncentered = false;
  std::vector<double> alpha_x{0.0};
  int L = 10;
  std::string boundary = "free";
  std::uint64_t samples = 0;  ///< 0 picks the command default
  std::uint64_t seed = 1;
  std::string format;  ///< empty picks the command default
  std::string output;
  int precision = 6;
  unsigned threads = 0;  ///< not echoed: results do not depend on it

  Json to_json() const {
    Json j{{"command", command}};
    if (command == "bound classical" || command == "bound quantum" || command == "upper" ||
        command == "analyze frustration") {
      j["dim"] = dimension;
    }
    if (command != "verify" && command != "analyze frustration") {
      j["dist"] = dist;
      j["allow_noncentered"] = allow_noncentered;
    }
    if (command == "bound quantum") j["alpha_x"] = alpha_x;
    if (command == "upper") {
      j["L"] = L;
      j["boundary"] = boundary;
    }
    if (command != "analyze frustration" && command != "bound quantum") {
      j["samples"] = samples;
      j["seed"] = seed;
    }
    j["format"] = format;
    j["precision"] = precision;
    return j;
  }
};

/// Distribution spec: bernoulli[:J], point:v, file:path, normal[:sigma],
/// uniform:a, or mc:<discrete spec> to sample a discrete law.
inline CouplingDistribution parse_distribution_spec(const std::string& spec, bool allow_noncentered,
                                                    std::uint64_t seed) {
  const Centering centering = allow_noncentered ? Centering::allow_noncentered : Centering::required;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto parse_real = [&](const std::string& text, double fallback) {
    if (text.empty()) return fallback;
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number '" + text + "' in distribution spec");
    }
  };

  if (kind == "bernoulli") return bernoulli(arg.empty() ? Rational(1) : parse_rational(arg));
  if (kind == "point") {
    if (arg.empty()) throw ConfigError("point mass needs a value, e.g. point:1");
    return point_mass(parse_rational(arg), centering);
  }
  if (kind == "file") {
    if (arg.empty()) throw ConfigError("file distribution needs a path, e.g. file:table.txt");
    return load_distribution_file(arg, centering);
  }
  if (kind == "normal") return SampledDistribution::normal(parse_real(arg, 1.0), seed);
  if (kind == "uniform") {
    if (arg.empty()) throw ConfigError("uniform needs a half-width, e.g. uniform:1");
    return SampledDistribution::uniform(parse_real(arg, 1.0), seed);
  }
  if (kind == "mc") {
    auto inner = parse_distribution_spec(arg, allow_noncentered, seed);
    if (auto* d = std::get_if<DiscreteDistribution>(&inner)) return SampledDistribution::from_discrete(*d, seed);
    return inner;
  }
  throw ConfigError("unknown distribution spec '" + spec + "'");
}

inline DiscreteDistribution require_discrete(const CouplingDistribution& dist, const std::string& command) {
  if (const auto* d = std::get_if<DiscreteDistribution>(&dist)) return *d;
  throw ConfigError(command + " needs a discrete distribution (bernoulli, point, file)");
}

inline std::string provenance_comment(const RunConfig& config) {
  return std::string("# ") + kToolName + " " + kToolVersion + " schema " + kSchemaVersion + "\n# config " +
         config.to_json().dump() + "\n";
}

inline void write_bound_human(std::ostream& out, const BoundReport& r, const RunConfig& config) {
  const int p = config.precision;
  auto frac = [&](const Rational& v) { return to_fraction_string(v) + " (" + to_decimal(v, p).text + ")"; };
  out << kToolName << " " << kToolVersion << " (schema " << kSchemaVersion << ")\n";
  out << "config: " << config.to_json().dump() << "\n";
  out << "dimension: " << r.dimension << "\n";
  out << "distribution: " << r.distribution;
  if (!r.distribution_atoms.empty()) out << " " << r.distribution_atoms;
  out << "\nmethod: " << to_string(r.method) << "\n";
  out << "multiplicity factor c_" << r.dimension << ": " << to_fraction_string(r.multiplicity_factor) << "\n";
  double bound_value = 0.0;
  if (r.method == Method::exact_enumeration) {
    out << "coupling configurations: " << r.configurations << "\n";
    out << "cell average Av E0: " << frac(*r.cell_average) << "\n";
    out << "lower bound: " << frac(*r.lower_bound) << "\n";
    if (r.equiprobable_sum) {
      const Rational scaled = r.multiplicity_factor * *r.equiprobable_sum;
      out << "  enumeration: (" << to_fraction_string(r.multiplicity_factor) << ") x ("
          << to_fraction_string(*r.equiprobable_sum) << "/" << r.configurations << ")";
      if (is_integer(scaled)) {
        out << " = " << to_fraction_string(scaled) << "/" << r.configurations << " ("
            << to_decimal(*r.lower_bound, p).text << ")";
      }
      out << "\n";
    }
    if (r.misfit_bound) {
      out << "misfit bound: m >= " << frac(*r.misfit_bound) << " (reference "
          << to_fraction_string(*r.ideal_energy_per_site) << " per site)\n";
    }
    bound_value = to_double(*r.lower_bound);
  } else {
    out << "samples: " << r.mc_samples << ", seed: " << r.seed << "\n";
    out << "cell average estimate: " << format_real(*r.mc_cell_average) << " +- "
        << format_real(*r.mc_cell_stderr) << "\n";
    out << "lower bound estimate: " << format_real(*r.mc_lower_bound) << " +- " << format_real(*r.mc_stderr)
        << "  [" << kMonteCarloBanner << "]\n";
    bound_value = *r.mc_lower_bound;
  }
  out << "comparison constants (+-1 couplings):\n";
  for (const auto& c : r.comparison) {
    out << "  " << c.value << "  " << to_string(c.role) << "  " << c.label << " -- " << c.source << "\n";
  }
  for (const auto& c : r.comparison) {
    if (c.role == ConstantRole::upper) {
      out << "sandwich: " << format_real(bound_value) << " <= e(" << r.dimension << ") <= " << c.value << "\n";
    }
  }
  for (const auto& n : r.notes) out << "note: " << n << "\n";
}

inline int cmd_bound_classical(const RunConfig& config, std::ostream& out) {
  const auto dist = parse_distribution_spec(config.dist, config.allow_noncentered, config.seed);
  const auto cell = make_cell(config.dimension);
  BoundOptions options;
  options.threads = config.threads;
  if (config.samples) options.mc_samples = config.samples;
  const auto report = lower_bound(cell, dist, options);

  if (config.format == "json") {
    Json j = provenance_json(config.to_json());
    j["report"] = report_json(report, config.precision);
    out << j.dump(2) << "\n";
  } else if (config.format == "csv") {
    out << provenance_comment(config);
    out << "dimension,distribution,method,lower_bound_num,lower_bound_den,lower_bound,stderr\n";
    out << report.dimension << "," << report.distribution << "," << to_string(report.method) << ",";
    if (report.lower_bound) {
      out << num(*report.lower_bound).str() << "," << den(*report.lower_bound).str() << ","
          << to_decimal(*report.lower_bound, config.precision).text << ",\n";
    } else {
      out << ",," << format_real(*report.mc_lower_bound) << "," << format_real(*report.mc_stderr) << "\n";
    }
  } else {
    write_bound_human(out, report, config);
  }
  return kOk;
}

inline int cmd_bound_quantum(const RunConfig& config, std::ostream& out) {
  const auto dist = require_discrete(
      parse_distribution_spec(config.dist, config.allow_noncentered, config.seed), "bound quantum");
  const auto cell = make_cell(config.dimension);
  const auto rows = anisotropy_sweep(cell, dist, config.alpha_x, config.threads);

  if (config.format == "json") {
    Json j = provenance_json(config.to_json());
    Json table = Json::array();
    for (const auto& row : rows) {
      table.push_back(Json{{"alpha_x", row.alpha_x},
                           {"lower_bound", row.lower_bound},
                           {"method", "exact-enumeration"},
                           {"stderr", nullptr}});
    }
    j["sweep"] = table;
    j["notes"] = Json::array({"alpha_y = 0, alpha_z = 1; lower bound = c_d x average quantum cell ground energy"});
    if (!dist.centered()) j["notes"].push_back(kNonCenteredNote);
    out << j.dump(2) << "\n";
  } else {
    out << provenance_comment(config);
    out << sweep_csv_header() << "\n";
    for (const auto& row : rows) out << sweep_csv_row(row) << "\n";
  }
  return kOk;
}

inline int cmd_upper(const RunConfig& config, std::ostream& out) {
  const auto dist =
      require_discrete(parse_distribution_spec(config.dist, config.allow_noncentered, config.seed), "upper");
  const std::uint64_t samples = config.samples ? config.samples : 100;
  const auto est = sample_upper_bound(config.dimension, config.L, parse_boundary(config.boundary), dist, samples,
                                      config.seed, config.threads);
  const std::string note =
      "the population mean of E/N over samples upper-bounds the infinite-volume energy per site; "
      "the sample mean carries statistical error";

  if (config.format == "json") {
    for (const auto& rec : est.records) out << sample_json(rec, config.precision).dump() << "\n";
    Json summary{{"type", "summary"}};
    const Json provenance = provenance_json(config.to_json());
    for (const auto& [key, value] : provenance.items()) summary[key] = value;
    summary["dimension"] = est.dimension;
    summary["side_lengths"] = est.side_lengths;
    summary["boundary"] = to_string(est.boundary);
    summary["distribution"] = dist.label();
    summary["samples"] = est.samples;
    summary["mean_per_site"] = est.mean_per_site;
    summary["stderr"] = est.standard_error;
    if (est.dimension == 2 && dist.is_symmetric_two_point() && dist.atoms()[0].value * dist.atoms()[0].value == 1) {
      summary["reference"] = Json{{"monte_carlo_estimate", "-1.4"}, {"exact_lower_bound", "-3/2"}};
    }
    Json notes = Json::array({note});
    if (!dist.centered()) notes.push_back(kNonCenteredNote);
    summary["notes"] = notes;
    out << summary.dump() << "\n";
  } else if (config.format == "csv") {
    out << provenance_comment(config);
    out << "index,seed,energy,per_site\n";
    for (const auto& rec : est.records) {
      out << rec.index << "," << rec.seed << "," << to_fraction_string(rec.energy) << ","
          << to_decimal(rec.energy_per_site, config.precision).text << "\n";
    }
  } else {
    out << provenance_comment(config);
    out << "lattice: d=" << est.dimension << " L=" << config.L << " " << to_string(est.boundary) << "\n";
    out << "distribution: " << dist.label() << "\n";
    out << "samples: " << est.samples << "\n";
    out << "mean energy per site: " << format_real(est.mean_per_site) << " +- "
        << format_real(est.standard_error) << "\n";
    out << "note: " << note << "\n";
    if (!dist.centered()) out << "note: " << kNonCenteredNote << "\n";
  }
  return kOk;
}

inline int cmd_verify(const RunConfig& config, std::ostream& out) {
  VerifyOptions options;
  options.seed = config.seed;
  if (config.samples) options.cover_samples = config.samples;
  options.threads = config.threads;
  const auto results = run_property_suite(options);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;

  if (config.format == "json") {
    Json j = provenance_json(config.to_json());
    Json checks = Json::array();
    for (const auto& r : results) {
      checks.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    j["checks"] = checks;
    j["all_passed"] = all;
    out << j.dump(2) << "\n";
  } else {
    out << provenance_comment(config);
    for (const auto& r : results) {
      out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  -- " << r.detail << "\n";
    }
    out << (all ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return all ? kOk : kCheckFailed;
}

inline int cmd_analyze_frustration(const RunConfig& config, std::ostream& out) {
  const auto cell = make_cell(config.dimension);
  const auto census = frustration_census(cell);
  if (config.format == "json") {
    Json j = provenance_json(config.to_json());
    Json faces = Json::object();
    for (const auto& [k, n] : census.by_frustrated_faces) faces[std::to_string(k)] = n;
    Json energies = Json::object();
    for (const auto& [e, n] : census.by_ground_energy) energies[std::to_string(e)] = n;
    j["census"] = Json{{"dimension", census.dimension},
                       {"patterns", census.patterns},
                       {"by_frustrated_faces", faces},
                       {"by_ground_energy", energies},
                       {"ground_energy_sum", census.ground_energy_sum},
                       {"odd_parity_patterns", census.parity_violations}};
    out << j.dump(2) << "\n";
  } else {
    out << provenance_comment(config);
    out << "sign patterns: " << census.patterns << " (d=" << census.dimension << ", J=1)\n";
    out << "frustrated faces -> patterns:\n";
    for (const auto& [k, n] : census.by_frustrated_faces) out << "  " << k << ": " << n << "\n";
    out << "ground energy -> patterns:\n";
    for (const auto& [e, n] : census.by_ground_energy) out << "  " << e << ": " << n << "\n";
    out << "sum of ground energies: " << census.ground_energy_sum << "\n";
    if (census.dimension == 3) out << "patterns with odd frustrated count: " << census.parity_violations << "\n";
  }
  return kOk;
}

/// Parses and runs one command. Output goes to `out` unless --output is set.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Rigorous lower bounds for Edwards-Anderson spin-glass ground-state energies", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  std::string format;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_option("--output,-o", config.output, "write output to this file");
    sub->add_option("--precision", config.precision, "decimal digits")->check(CLI::Range(0, 60));
    sub->add_option("--threads", config.threads, "worker threads (0 = all cores)");
  };
  auto add_dist = [&](CLI::App* sub) {
    sub->add_option("--dist", config.dist, "bernoulli[:J], point:v, file:path, normal[:sigma], uniform:a, mc:<spec>");
    sub->add_flag("--allow-noncentered", config.allow_noncentered,
                  "accept couplings with non-zero mean (the cell bound then carries no guarantee)");
  };

  auto* bound = app.add_subcommand("bound", "lower bound on the ground-state energy per site");
  bound->require_subcommand(1);
  auto* classical = bound->add_subcommand("classical", "exact classical cell bound");
  classical->add_option("--dim", config.dimension, "2 or 3")->required();
  add_dist(classical);
  classical->add_option("--samples", config.samples, "Monte Carlo samples for continuous laws");
  classical->add_option("--seed", config.seed, "Monte Carlo seed");
  add_common(classical);

  auto* quantum = bound->add_subcommand("quantum", "quantum XZ cell bound swept over alpha_x");
  quantum->add_option("--dim", config.dimension, "2 or 3")->required();
  add_dist(quantum);
  quantum->add_option("--alpha-x", config.alpha_x, "comma-separated alpha_x grid (must include 0)")->delimiter(',');
  add_common(quantum);

  auto* upper = app.add_subcommand("upper", "exact finite-lattice ground states of sampled couplings");
  upper->add_option("--dim", config.dimension, "2 or 3");
  upper->add_option("--L", config.L, "side length");
  upper->add_option("--boundary", config.boundary, "free | periodic");
  add_dist(upper);
  upper->add_option("--samples", config.samples, "number of samples (default 100)");
  upper->add_option("--seed", config.seed, "seed");
  add_common(upper);

  auto* verify = app.add_subcommand("verify", "run the property suite");
  verify->add_option("--samples", config.samples, "samples for the cover-inequality check (default 100)");
  verify->add_option("--seed", config.seed, "seed");
  add_common(verify);

  auto* analyze = app.add_subcommand("analyze", "cell analyses");
  analyze->require_subcommand(1);
  auto* frustration = analyze->add_subcommand("frustration", "frustration census over all sign patterns");
  frustration->add_option("--dim", config.dimension, "2 or 3")->required();
  add_common(frustration);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  std::string default_format = "human";
  if (classical->parsed()) {
    config.command = "bound classical";
  } else if (quantum->parsed()) {
    config.command = "bound quantum";
    default_format = "csv";
  } else if (upper->parsed()) {
    config.command = "upper";
    default_format = "json";
  } else if (verify->parsed()) {
    config.command = "verify";
  } else {
    config.command = "analyze frustration";
  }
  config.format = format.empty() ? default_format : format;

  try {
    std::ostringstream buffer;
    int code = kOk;
    if (config.command == "bound classical") code = cmd_bound_classical(config, buffer);
    else if (config.command == "bound quantum") code = cmd_bound_quantum(config, buffer);
    else if (config.command == "upper") code = cmd_upper(config, buffer);
    else if (config.command == "verify") code = cmd_verify(config, buffer);
    else code = cmd_analyze_frustration(config, buffer);

    if (config.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!file) throw ConfigError("cannot write output file '" + config.output + "'");
      file << buffer.str();
    }
    return code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const GuardError& e) {
    err << "guard: " << e.what() << "\n";
    return kGuardError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace ea::cli

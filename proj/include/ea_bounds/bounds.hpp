#pragma once

// Disorder averages of cell ground-state energies and the resulting lower
// bound on the ground-state energy per site:
//
//   Av(E_0^{(N,d)}) / N  >=  c_d · Av(min_σ F_cell(σ, J)).
//
// Discrete coupling laws are enumerated exactly; continuous laws only get a
// Monte Carlo estimate, which is reported as such.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ea_bounds/classical_cell.hpp"
#include "ea_bounds/distribution.hpp"
#include "ea_bounds/errors.hpp"
#include "ea_bounds/lattice.hpp"
#include "ea_bounds/parallel.hpp"
#include "ea_bounds/rational.hpp"

namespace ea {

/// Upper limit on |atoms|^|bonds| for exact enumeration.
inline constexpr std::uint64_t kEnumerationGuard = 100'000'000;

/// Chunk count for parallel sweeps; fixed so results never depend on threads.
inline constexpr std::size_t kSweepChunks = 64;

inline std::uint64_t enumeration_size(std::size_t atoms, std::size_t bonds) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < bonds; ++k) {
    if (total > kEnumerationGuard / atoms) {
      throw GuardError(std::to_string(atoms) + "^" + std::to_string(bonds) +
                       " coupling configurations exceed the enumeration guard of 10^8");
    }
    total *= atoms;
  }
  return total;
}

struct ExactCellAverage {
  Rational average;             ///< Av of the cell ground energy, before c_d
  std::uint64_t configurations; ///< |atoms|^|bonds|
  /// Σ of ground energies over all configurations, present when they are
  /// equiprobable (so average = sum / configurations).
  std::optional<Rational> equiprobable_sum;
};

namespace detail {

/// Atom values as integers over a common denominator.
struct IntegerAtoms {
  std::vector<std::int64_t> values;
  BigInt denominator;
};

inline IntegerAtoms integer_atoms(const DiscreteDistribution& dist, std::size_t bonds) {
  std::vector<Rational> values;
  for (const auto& a : dist.atoms()) values.push_back(a.value);
  IntegerAtoms out{{}, common_denominator(values)};
  BigInt largest = 0;
  for (const auto& v : values) {
    BigInt scaled = num(v) * (out.denominator / den(v));
    largest = std::max(largest, BigInt(abs(scaled)));
    out.values.push_back(to_int64(scaled));
  }
  if (largest * (2 * bonds + 1) > BigInt(std::numeric_limits<std::int64_t>::max())) {
    throw GuardError("scaled coupling values too large for integer enumeration");
  }
  return out;
}

}  // namespace detail

/// Av over all coupling configurations of the exact cell ground energy.
///
/// Couplings are rescaled to integers, so every per-configuration minimum is
/// an exact integer comparison. Symmetric two-point laws use the sign-mask
/// path; equiprobable atoms sum plain integers; other laws accumulate
/// integer probability weights in arbitrary precision.
inline ExactCellAverage exact_cell_average(const CellGeometry& cell, const DiscreteDistribution& dist,
                                           unsigned threads = 1) {
  const std::size_t bonds = cell.bonds().size();
  const std::size_t k = dist.atoms().size();
  const std::uint64_t total = enumeration_size(k, bonds);
  const CellSolver solver(cell);
  const std::size_t chunks = std::min<std::uint64_t>(kSweepChunks, total);

  if (dist.is_symmetric_two_point()) {
    // Atom 0 is +v or -v; sign masks index the configurations either way.
    const Rational v = dist.atoms()[0].value < 0 ? Rational(-dist.atoms()[0].value) : dist.atoms()[0].value;
    auto partial = indexed_map<std::int64_t>(chunks, threads, [&](std::size_t c) {
      const auto range = chunk_range(total, chunks, c);
      std::int64_t sum = 0;
      for (std::size_t signs = range.begin; signs < range.end; ++signs) {
        sum += solver.ground_energy(static_cast<std::uint32_t>(signs));
      }
      return sum;
    });
    std::int64_t sum = 0;
    for (auto p : partial) sum += p;
    Rational equi = v * sum;
    return {equi / total, total, equi};
  }

  const auto atoms = detail::integer_atoms(dist, bonds);
  bool equiprobable = true;
  for (const auto& a : dist.atoms()) equiprobable = equiprobable && a.probability == dist.atoms()[0].probability;

  std::vector<Rational> probs;
  for (const auto& a : dist.atoms()) probs.push_back(a.probability);
  const BigInt prob_den = common_denominator(probs);
  std::vector<BigInt> weights;
  for (const auto& p : probs) weights.push_back(num(p) * (prob_den / den(p)));

  auto partial = indexed_map<BigInt>(chunks, threads, [&](std::size_t c) {
    const auto range = chunk_range(total, chunks, c);
    std::vector<std::size_t> digits(bonds, 0);
    std::uint64_t rest = range.begin;
    for (std::size_t b = 0; b < bonds; ++b) {
      digits[b] = rest % k;
      rest /= k;
    }
    std::vector<std::int64_t> couplings(bonds);
    BigInt sum = 0;
    std::int64_t plain = 0;
    for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
      for (std::size_t b = 0; b < bonds; ++b) couplings[b] = atoms.values[digits[b]];
      const std::int64_t e = solver.ground_energy(std::span<const std::int64_t>(couplings));
      if (equiprobable) {
        plain += e;
      } else {
        BigInt w = 1;
        for (std::size_t b = 0; b < bonds; ++b) w *= weights[digits[b]];
        sum += w * e;
      }
      for (std::size_t b = 0; b < bonds && ++digits[b] == k; ++b) digits[b] = 0;
    }
    return equiprobable ? BigInt(plain) : sum;
  });
  BigInt sum = 0;
  for (const auto& p : partial) sum += p;

  if (equiprobable) {
    Rational equi = Rational(sum, atoms.denominator);
    return {equi / total, total, equi};
  }
  const BigInt scale = boost::multiprecision::pow(prob_den, static_cast<unsigned>(bonds)) * atoms.denominator;
  return {Rational(sum, scale), total, std::nullopt};
}

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo estimate of Av of the cell ground energy.
///
/// Samples are split into fixed chunks with independent substreams derived
/// from (seed, chunk), then combined in chunk order.
inline McEstimate mc_cell_average(const CellGeometry& cell, const SampledDistribution& dist,
                                  std::uint64_t samples, unsigned threads = 1) {
  if (samples < 2) throw ConfigError("Monte Carlo needs at least 2 samples");
  const std::size_t bonds = cell.bonds().size();
  const CellSolver solver(cell);
  const std::size_t chunks = std::min<std::uint64_t>(kSweepChunks, samples);

  struct Moments {
    double n = 0, mean = 0, m2 = 0;
  };
  auto partial = indexed_map<Moments>(chunks, threads, [&](std::size_t c) {
    auto rng = substream(dist.seed, c);
    const auto range = chunk_range(samples, chunks, c);
    std::vector<double> couplings(bonds);
    Moments m;
    for (std::size_t i = range.begin; i < range.end; ++i) {
      for (auto& J : couplings) J = dist.draw(rng);
      const double e = solver.ground_energy(std::span<const double>(couplings));
      m.n += 1;
      const double delta = e - m.mean;
      m.mean += delta / m.n;
      m.m2 += delta * (e - m.mean);
    }
    return m;
  });
  Moments all;
  for (const auto& m : partial) {
    if (m.n == 0) continue;
    const double n = all.n + m.n;
    const double delta = m.mean - all.mean;
    all.mean += delta * m.n / n;
    all.m2 += m.m2 + delta * delta * all.n * m.n / n;
    all.n = n;
  }
  const double variance = std::max(0.0, all.m2 / (all.n - 1));
  return {all.mean, std::sqrt(variance / all.n), samples};
}

/// Misfit m = (|E_id| - |E_0|) / |E_id| evaluated with the lower bound in
/// place of E_0. Since |lower bound| >= |E_0|, the result lower-bounds m.
inline Rational misfit_lower_bound(const Rational& lower_bound, const Rational& ideal_per_site) {
  if (ideal_per_site == 0) throw ConfigError("ideal reference energy must be non-zero");
  const Rational ideal_abs = ideal_per_site < 0 ? Rational(-ideal_per_site) : ideal_per_site;
  const Rational bound_abs = lower_bound < 0 ? Rational(-lower_bound) : lower_bound;
  return (ideal_abs - bound_abs) / ideal_abs;
}

/// Ground energy per site of the unfrustrated reference: every one of the d
/// bonds per site satisfied with strength Av|J|.
inline Rational ideal_energy_per_site(int dimension, const DiscreteDistribution& dist) {
  return -Rational(dimension) * dist.mean_abs();
}

enum class ConstantRole { upper, lower, heuristic_lower, estimate };

inline std::string to_string(ConstantRole role) {
  switch (role) {
    case ConstantRole::upper: return "upper";
    case ConstantRole::lower: return "lower";
    case ConstantRole::heuristic_lower: return "heuristic-lower";
    case ConstantRole::estimate: return "estimate";
  }
  return "";
}

/// Published reference values for ±1 couplings. Reported, never computed with.
struct ComparisonConstant {
  std::string label;
  std::string value;  ///< decimal as published
  ConstantRole role;
  std::string source;

  double numeric() const { return std::stod(value); }
};

inline std::vector<ComparisonConstant> comparison_table(int dimension) {
  check_dimension(dimension);
  if (dimension == 2) {
    return {
        {"exact finite-sample ground states (upper bound)", "-1.39", ConstantRole::upper,
         "De Simone, Diehl, Juenger, Mutzel, Reinelt, Rinaldi: exact ground states of 2D +-J spin glasses"},
        {"random energy model bound", "-1.560", ConstantRole::lower,
         "Derrida, random-energy model; rigorous for the REM only"},
        {"Monte Carlo estimate", "-1.4", ConstantRole::estimate, "Binder, Monte Carlo review"},
    };
  }
  return {
      {"exact 5x5x5 ground state (upper bound)", "-1.759", ConstantRole::upper,
       "Homer and Peinado: exact ground state of a 5x5x5 sample"},
      {"random energy model bound", "-1.956", ConstantRole::lower,
       "Derrida, random-energy model; rigorous for the REM only"},
      {"frustration-surface argument", "-2.25", ConstantRole::heuristic_lower,
       "Kirkpatrick, minimal covering surfaces (unproven assumptions)"},
      {"Monte Carlo estimate", "-1.9", ConstantRole::estimate, "Binder, Monte Carlo review"},
  };
}

enum class Method { exact_enumeration, monte_carlo };

inline std::string to_string(Method m) {
  return m == Method::exact_enumeration ? "exact-enumeration" : "monte-carlo";
}

struct BoundReport {
  int dimension = 0;
  std::string distribution;
  std::string distribution_atoms;  ///< empty for continuous laws
  Method method = Method::exact_enumeration;
  bool centered = true;
  Rational multiplicity_factor;

  // exact-enumeration
  std::uint64_t configurations = 0;
  std::optional<Rational> cell_average;
  std::optional<Rational> lower_bound;
  std::optional<Rational> equiprobable_sum;
  std::optional<Rational> ideal_energy_per_site;
  std::optional<Rational> misfit_bound;

  // monte-carlo
  std::optional<double> mc_cell_average;
  std::optional<double> mc_cell_stderr;
  std::optional<double> mc_lower_bound;
  std::optional<double> mc_stderr;  ///< of mc_lower_bound
  std::uint64_t mc_samples = 0;
  std::uint64_t seed = 0;

  std::vector<ComparisonConstant> comparison;
  std::vector<std::string> notes;
};

inline constexpr const char* kMonteCarloBanner = "estimate, not a rigorous bound";
inline constexpr const char* kNonCenteredNote =
    "couplings are not centered (Av J != 0); the cell lower bound is not guaranteed for this distribution";

struct BoundOptions {
  unsigned threads = 1;
  std::uint64_t mc_samples = 100'000;
};

/// c_d × Av(cell ground energy), with comparison constants and misfit attached.
inline BoundReport lower_bound(const CellGeometry& cell, const CouplingDistribution& dist,
                               const BoundOptions& options = {}) {
  BoundReport report;
  report.dimension = cell.dimension();
  report.multiplicity_factor = cell.multiplicity_factor();
  report.comparison = comparison_table(cell.dimension());

  if (const auto* discrete = std::get_if<DiscreteDistribution>(&dist)) {
    report.distribution = discrete->label();
    report.distribution_atoms = discrete->atoms_text();
    report.method = Method::exact_enumeration;
    report.centered = discrete->centered();
    const auto avg = exact_cell_average(cell, *discrete, options.threads);
    report.configurations = avg.configurations;
    report.cell_average = avg.average;
    report.equiprobable_sum = avg.equiprobable_sum;
    report.lower_bound = cell.multiplicity_factor() * avg.average;
    const Rational ideal = ideal_energy_per_site(cell.dimension(), *discrete);
    if (ideal != 0) {
      report.ideal_energy_per_site = ideal;
      report.misfit_bound = misfit_lower_bound(*report.lower_bound, ideal);
    } else {
      report.notes.push_back("misfit undefined: the unfrustrated reference energy is zero");
    }
    if (cell.dimension() == 3 && discrete->is_symmetric_two_point() &&
        (discrete->atoms()[0].value == 1 || discrete->atoms()[0].value == -1)) {
      report.notes.push_back(
          "the published decimal -2.204... for this bound does not match the exact value "
          "-9024/4096 = -2.203125 (apparently rounded inconsistently); the exact fraction is authoritative");
    }
  } else {
    const auto& sampled = std::get<SampledDistribution>(dist);
    report.distribution = sampled.label();
    if (sampled.discrete) report.distribution_atoms = sampled.discrete->atoms_text();
    report.method = Method::monte_carlo;
    report.centered = sampled.centered();
    const auto est = mc_cell_average(cell, sampled, options.mc_samples, options.threads);
    const double c = to_double(cell.multiplicity_factor());
    report.mc_cell_average = est.mean;
    report.mc_cell_stderr = est.standard_error;
    report.mc_lower_bound = c * est.mean;
    report.mc_stderr = c * est.standard_error;
    report.mc_samples = est.samples;
    report.seed = sampled.seed;
    report.notes.emplace_back(kMonteCarloBanner);
  }
  if (!report.centered) report.notes.emplace_back(kNonCenteredNote);
  return report;
}

}  // namespace ea

#pragma once

// Exact ground states of finite classical lattices, the sampling harness for
// finite-sample estimates of Av(E_Λ)/|Λ|, and the per-realization check of
// E_0^{(N)}(J) ≥ Σ_n c_d E_0^{(n)}(J). All energies are exact: couplings are
// rescaled to integers over their common denominator.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ea_bounds/classical_cell.hpp"
#include "ea_bounds/distribution.hpp"
#include "ea_bounds/errors.hpp"
#include "ea_bounds/lattice.hpp"
#include "ea_bounds/parallel.hpp"
#include "ea_bounds/rational.hpp"

namespace ea {

inline constexpr int kMaxFreeRowWidth = 12;
inline constexpr int kMaxPeriodicRowWidth = 8;
inline constexpr int kMaxRows = 1024;
inline constexpr std::size_t kMaxExhaustiveSites = 27;

struct LatticeInstance {
  FiniteLattice lattice;
  CouplingAssignment<Rational> couplings;
  std::uint64_t seed = 0;
};

enum class SolverKind { row_dp, exhaustive };

struct LatticeGroundState {
  Rational energy;
  std::vector<int> spins;  ///< ±1 per lattice site
  SolverKind solver = SolverKind::row_dp;
};

namespace detail {

struct IntegerCouplings {
  std::vector<std::int64_t> values;
  BigInt denominator;
};

inline IntegerCouplings integerize(const CouplingAssignment<Rational>& J) {
  IntegerCouplings out{{}, common_denominator(J.values)};
  BigInt total = 0;
  for (const auto& v : J.values) {
    BigInt scaled = num(v) * (out.denominator / den(v));
    total += abs(scaled);
    out.values.push_back(to_int64(scaled));
  }
  if (total * 2 > BigInt(std::numeric_limits<std::int64_t>::max())) {
    throw GuardError("coupling magnitudes too large for exact integer ground-state search");
  }
  return out;
}

inline void check_instance(const LatticeInstance& instance) {
  if (instance.couplings.size() != instance.lattice.bonds().size()) {
    throw ConfigError("coupling count does not match lattice bond count");
  }
}

inline std::int64_t integer_energy(const FiniteLattice& lattice, std::span<const std::int64_t> J,
                                   std::span<const int> spins) {
  std::int64_t e = 0;
  const auto bonds = lattice.bonds();
  for (std::size_t k = 0; k < bonds.size(); ++k) e += J[k] * spins[bonds[k].a] * spins[bonds[k].b];
  return e;
}

}  // namespace detail

/// Exact F(σ, J) of a lattice configuration.
inline Rational lattice_energy(const LatticeInstance& instance, std::span<const int> spins) {
  detail::check_instance(instance);
  if (spins.size() != instance.lattice.site_count()) throw ConfigError("spin count does not match site count");
  Rational e = 0;
  const auto bonds = instance.lattice.bonds();
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    e += instance.couplings.values[k] * (spins[bonds[k].a] * spins[bonds[k].b]);
  }
  return e;
}

/// Exhaustive minimum over 2^(N-1) configurations (last site pinned to +1),
/// visited in Gray-code order with incremental energy updates.
inline LatticeGroundState exhaustive_ground_state(const LatticeInstance& instance) {
  detail::check_instance(instance);
  const FiniteLattice& lattice = instance.lattice;
  const std::size_t n = lattice.site_count();
  if (n > kMaxExhaustiveSites) {
    throw GuardError("exhaustive search limited to " + std::to_string(kMaxExhaustiveSites) + " sites, got " +
                     std::to_string(n));
  }
  const auto J = detail::integerize(instance.couplings);

  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> adjacency(n);
  const auto bonds = lattice.bonds();
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    adjacency[bonds[k].a].emplace_back(bonds[k].b, J.values[k]);
    adjacency[bonds[k].b].emplace_back(bonds[k].a, J.values[k]);
  }

  std::vector<int> spins(n, 1);
  std::int64_t energy = detail::integer_energy(lattice, J.values, spins);
  std::int64_t best = energy;
  std::uint64_t best_code = 0;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto site = static_cast<std::size_t>(std::countr_zero(i));
    std::int64_t local = 0;
    for (const auto& [other, j] : adjacency[site]) local += j * spins[other];
    energy -= 2 * spins[site] * local;
    spins[site] = -spins[site];
    if (energy < best) {
      best = energy;
      best_code = i ^ (i >> 1);
    }
  }
  LatticeGroundState out;
  out.energy = Rational(BigInt(best), J.denominator);
  out.spins.assign(n, 1);
  for (std::size_t s = 0; s + 1 < n; ++s) {
    if ((best_code >> s) & 1u) out.spins[s] = -1;
  }
  out.solver = SolverKind::exhaustive;
  return out;
}

namespace detail {

/// Row transfer DP for d = 2. Row y holds sites x + L_x·y; a row state is a
/// bitmask (bit x set: σ = -1). Horizontal bonds (including the wrap) enter
/// the row cost, vertical bonds the transition cost, which depends only on
/// the XOR of the two row states.
inline LatticeGroundState row_dp_ground_state(const LatticeInstance& instance) {
  const FiniteLattice& lattice = instance.lattice;
  const int width = lattice.side_lengths()[0];
  const int height = lattice.side_lengths()[1];
  const bool periodic = lattice.boundary() == Boundary::periodic;
  const auto J = integerize(instance.couplings);
  const std::uint32_t states = std::uint32_t{1} << width;

  // Row cost H_y(s) and vertical cost V_y(s ^ t) between rows y and y+1.
  std::vector<std::vector<std::int64_t>> row_cost(height, std::vector<std::int64_t>(states, 0));
  std::vector<std::vector<std::int64_t>> vertical_cost(height, std::vector<std::int64_t>(states, 0));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const auto site = lattice.site_index({x, y, 0});
      if (auto k = lattice.bond_index(site, 0)) {
        const int x2 = (x + 1) % width;
        for (std::uint32_t s = 0; s < states; ++s) {
          const bool differ = ((s >> x) ^ (s >> x2)) & 1u;
          row_cost[y][s] += differ ? -J.values[*k] : J.values[*k];
        }
      }
      if (auto k = lattice.bond_index(site, 1)) {
        for (std::uint32_t d = 0; d < states; ++d) {
          vertical_cost[y][d] += ((d >> x) & 1u) ? -J.values[*k] : J.values[*k];
        }
      }
    }
  }

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::vector<std::uint32_t>> parent(height, std::vector<std::uint32_t>(states, 0));
  std::vector<std::int64_t> cost(states);
  std::vector<std::int64_t> next(states);

  std::int64_t best = kInf;
  std::uint32_t best_last = 0;
  std::vector<std::vector<std::uint32_t>> best_parent;

  // Periodic vertical wrap: condition on the first row. The global flip lets
  // the first row's top bit be pinned to 0.
  const std::uint32_t first_rows = periodic ? states / 2 : 1;
  for (std::uint32_t first = 0; first < first_rows; ++first) {
    if (periodic) {
      std::fill(cost.begin(), cost.end(), kInf);
      cost[first] = row_cost[0][first];
    } else {
      cost = row_cost[0];
    }
    for (int y = 1; y < height; ++y) {
      const auto& v = vertical_cost[y - 1];
      for (std::uint32_t t = 0; t < states; ++t) {
        std::int64_t m = kInf;
        std::uint32_t arg = 0;
        for (std::uint32_t s = 0; s < states; ++s) {
          const std::int64_t c = cost[s] + v[s ^ t];
          if (c < m) {
            m = c;
            arg = s;
          }
        }
        next[t] = m + row_cost[y][t];
        parent[y][t] = arg;
      }
      std::swap(cost, next);
    }
    for (std::uint32_t t = 0; t < states; ++t) {
      const std::int64_t c = cost[t] + (periodic ? vertical_cost[height - 1][t ^ first] : 0);
      if (c < best) {
        best = c;
        best_last = t;
        best_parent = parent;
      }
    }
  }

  LatticeGroundState out;
  out.energy = Rational(BigInt(best), J.denominator);
  out.spins.assign(lattice.site_count(), 1);
  std::uint32_t row = best_last;
  for (int y = height - 1; y >= 0; --y) {
    for (int x = 0; x < width; ++x) {
      if ((row >> x) & 1u) out.spins[lattice.site_index({x, y, 0})] = -1;
    }
    if (y > 0) row = best_parent[y][row];
  }
  out.solver = SolverKind::row_dp;
  return out;
}

}  // namespace detail

/// Size guards: d=2 row width ≤ 12 (free) or ≤ 8 (periodic), at most 1024
/// rows; d=3 at most 27 sites.
inline void check_exact_guard(const FiniteLattice& lattice) {
  if (lattice.dimension() == 2) {
    const int width = lattice.side_lengths()[0];
    const int limit = lattice.boundary() == Boundary::periodic ? kMaxPeriodicRowWidth : kMaxFreeRowWidth;
    if (width > limit) {
      throw GuardError("exact 2D solver limited to row width " + std::to_string(limit) + " for " +
                       to_string(lattice.boundary()) + " boundary, got " + std::to_string(width));
    }
    if (lattice.side_lengths()[1] > kMaxRows) throw GuardError("exact 2D solver limited to 1024 rows");
  } else if (lattice.site_count() > kMaxExhaustiveSites) {
    throw GuardError("exact 3D solver limited to " + std::to_string(kMaxExhaustiveSites) + " sites, got " +
                     std::to_string(lattice.site_count()));
  }
}

/// Exact ground state: row DP in d = 2, exhaustive search in d = 3.
inline LatticeGroundState exact_ground_state(const LatticeInstance& instance) {
  detail::check_instance(instance);
  check_exact_guard(instance.lattice);
  if (instance.lattice.dimension() == 2) return detail::row_dp_ground_state(instance);
  return exhaustive_ground_state(instance);
}

struct SampleRecord {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  Rational energy;
  Rational energy_per_site;
};

struct UpperBoundEstimate {
  int dimension = 0;
  std::vector<int> side_lengths;
  Boundary boundary = Boundary::free;
  std::uint64_t samples = 0;
  double mean_per_site = 0.0;
  double standard_error = 0.0;  ///< sample standard deviation / sqrt(samples); 0 for one sample
  std::vector<SampleRecord> records;
};

/// Seed of sample `index` in a run seeded with `seed`.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) { return substream(seed, index)(); }

inline LatticeInstance draw_instance(const FiniteLattice& lattice, const DiscreteDistribution& dist,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return {lattice, {draw_couplings(dist, lattice.bonds().size(), rng)}, seed};
}

/// Per-site ground energies of i.i.d. samples. The population mean is an
/// upper bound on the infinite-volume energy per site; the sample mean
/// carries statistical error.
inline UpperBoundEstimate sample_upper_bound(int dimension, int L, Boundary boundary,
                                             const DiscreteDistribution& dist, std::uint64_t samples,
                                             std::uint64_t seed, unsigned threads = 1) {
  if (samples < 1) throw ConfigError("at least one sample is required");
  const FiniteLattice lattice = make_lattice(dimension, std::vector<int>(dimension, L), boundary);
  check_exact_guard(lattice);

  UpperBoundEstimate est;
  est.dimension = dimension;
  est.side_lengths.assign(dimension, L);
  est.boundary = boundary;
  est.samples = samples;
  est.records = indexed_map<SampleRecord>(samples, threads, [&](std::size_t i) {
    const std::uint64_t s = sample_seed(seed, i);
    const auto gs = exact_ground_state(draw_instance(lattice, dist, s));
    return SampleRecord{i, s, gs.energy, gs.energy / static_cast<long long>(lattice.site_count())};
  });

  double mean = 0.0;
  double m2 = 0.0;
  double n = 0.0;
  for (const auto& r : est.records) {
    const double x = to_double(r.energy_per_site);
    n += 1;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }
  est.mean_per_site = mean;
  est.standard_error = samples > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0;
  return est;
}

struct CoverSample {
  std::uint64_t seed = 0;
  Rational lattice_energy;  ///< E_0^{(N,d)}(J)
  Rational cell_sum;        ///< Σ_n c_d E_0^{(n,d)}(J)
  Rational gap;             ///< lattice_energy - cell_sum
  bool holds = false;
};

struct CoverInequalityReport {
  int dimension = 0;
  int L = 0;
  std::uint64_t samples = 0;
  std::uint64_t holding = 0;
  double mean_gap_per_site = 0.0;
  Rational min_gap;
  std::vector<CoverSample> records;
};

/// Cell energies Σ_n c_d E_0^{(n,d)}(J) with the cell couplings read off J.
inline Rational cover_cell_sum(const CellCover& cover, const CouplingAssignment<Rational>& J) {
  const auto& cell = cover.cell();
  Rational sum = 0;
  for (const auto& inst : cover.cells()) {
    CouplingAssignment<Rational> local;
    local.values.reserve(inst.bonds.size());
    for (auto b : inst.bonds) local.values.push_back(J.values[b]);
    sum += cell_ground_state(cell, local).energy;
  }
  return cell.multiplicity_factor() * sum;
}

/// Checks E_0^{(N,d)}(J) ≥ Σ_n c_d E_0^{(n,d)}(J) exactly for sampled J on a
/// periodic L^d lattice.
inline CoverInequalityReport verify_cover_inequality(int dimension, int L, const DiscreteDistribution& dist,
                                                    std::uint64_t seed, std::uint64_t samples,
                                                    unsigned threads = 1) {
  if (samples < 1) throw ConfigError("at least one sample is required");
  const FiniteLattice lattice = make_lattice(dimension, std::vector<int>(dimension, L), Boundary::periodic);
  check_exact_guard(lattice);
  const CellCover cover = make_cover(lattice);

  CoverInequalityReport report;
  report.dimension = dimension;
  report.L = L;
  report.samples = samples;
  report.records = indexed_map<CoverSample>(samples, threads, [&](std::size_t i) {
    const std::uint64_t s = sample_seed(seed, i);
    const auto instance = draw_instance(lattice, dist, s);
    CoverSample rec;
    rec.seed = s;
    rec.lattice_energy = exact_ground_state(instance).energy;
    rec.cell_sum = cover_cell_sum(cover, instance.couplings);
    rec.gap = rec.lattice_energy - rec.cell_sum;
    rec.holds = rec.lattice_energy >= rec.cell_sum;
    return rec;
  });
  double gap_sum = 0.0;
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& rec = report.records[i];
    if (rec.holds) ++report.holding;
    gap_sum += to_double(rec.gap);
    if (i == 0 || rec.gap < report.min_gap) report.min_gap = rec.gap;
  }
  report.mean_gap_per_site = gap_sum / static_cast<double>(samples) / static_cast<double>(lattice.site_count());
  return report;
}

}  // namespace ea

#pragma once

// Property suite behind `ea-bounds verify`.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ea_bounds/bounds.hpp"
#include "ea_bounds/classical_cell.hpp"
#include "ea_bounds/distribution.hpp"
#include "ea_bounds/exact_gs.hpp"
#include "ea_bounds/lattice.hpp"
#include "ea_bounds/quantum_cell.hpp"

namespace ea {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::uint64_t cover_samples = 100;
  std::uint64_t oracle_draws = 50;
  std::uint64_t quantum_patterns = 20;
  unsigned threads = 1;
};

/// Ground energy of every sign pattern is unchanged by a gauge flip at every site.
inline CheckResult check_classical_gauge(int dimension) {
  const auto cell = make_cell(dimension);
  const CellSolver solver(cell);
  const std::uint32_t patterns = std::uint32_t{1} << cell.bonds().size();
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  for (std::uint32_t site = 0; site < cell.site_count(); ++site) {
    const std::uint32_t flip = cell.incident_bonds(site);
    for (std::uint32_t signs = 0; signs < patterns; ++signs) {
      ++checked;
      if (solver.ground_energy(signs) != solver.ground_energy(signs ^ flip)) ++failures;
      if (frustration_signature(cell, signs).face_products !=
          frustration_signature(cell, signs ^ flip).face_products) {
        ++failures;
      }
    }
  }
  std::ostringstream detail;
  detail << patterns << " patterns x " << cell.site_count() << " sites, " << failures << " violations";
  return {std::string("classical gauge invariance (d=") + std::to_string(dimension) + ")", failures == 0,
          detail.str()};
}

inline CheckResult check_square_census() {
  const auto census = frustration_census(make_cell(2));
  const auto frustrated = census.by_frustrated_faces.count(1) ? census.by_frustrated_faces.at(1) : 0;
  const auto unfrustrated = census.by_frustrated_faces.count(0) ? census.by_frustrated_faces.at(0) : 0;
  const auto e2 = census.by_ground_energy.count(-2) ? census.by_ground_energy.at(-2) : 0;
  const auto e4 = census.by_ground_energy.count(-4) ? census.by_ground_energy.at(-4) : 0;
  std::ostringstream detail;
  detail << frustrated << " frustrated (E=-2: " << e2 << "), " << unfrustrated << " unfrustrated (E=-4: " << e4
         << ")";
  return {"square frustration census", frustrated == 8 && unfrustrated == 8 && e2 == 8 && e4 == 8, detail.str()};
}

inline CheckResult check_cube_parity() {
  const auto census = frustration_census(make_cell(3));
  std::ostringstream detail;
  std::uint64_t total = 0;
  for (const auto& [count, n] : census.by_frustrated_faces) {
    detail << count << ":" << n << " ";
    total += n;
  }
  detail << "(total " << total << ", odd " << census.parity_violations << ")";
  return {"cube face parity", census.parity_violations == 0 && total == 4096, detail.str()};
}

inline CheckResult check_quantum_xz_gauge(const VerifyOptions& options) {
  const auto cell = make_cell(2);
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::uint32_t> pattern(0, 15);
  std::uniform_int_distribution<std::uint32_t> site(0, 3);
  double worst = 0.0;
  bool ok = true;
  for (std::uint64_t i = 0; i < options.quantum_patterns; ++i) {
    const auto J = CouplingAssignment<Rational>::from_sign_mask(pattern(rng), 4);
    const auto check = xz_gauge_check(cell, J, site(rng), Anisotropy::xz(1.0));
    worst = std::max(worst, check.spectrum_deviation);
    ok = ok && check.invariant;
  }
  std::ostringstream detail;
  detail << options.quantum_patterns << " square patterns, aniso (1,0,1), max spectrum deviation " << worst;
  return {"quantum XZ gauge invariance", ok, detail.str()};
}

inline CheckResult check_cover_inequality(const VerifyOptions& options) {
  const auto report = verify_cover_inequality(2, 4, bernoulli(1), options.seed, options.cover_samples,
                                             options.threads);
  std::ostringstream detail;
  detail << report.holding << "/" << report.samples << " hold on periodic 4x4, min gap "
         << to_fraction_string(report.min_gap) << ", mean gap per site " << report.mean_gap_per_site;
  return {"cover inequality E_N >= sum_n c_d E_n", report.holding == report.samples, detail.str()};
}

inline CheckResult check_dp_oracle(const VerifyOptions& options) {
  std::uint64_t agree = 0;
  std::uint64_t total = 0;
  for (Boundary boundary : {Boundary::free, Boundary::periodic}) {
    const auto lattice = make_lattice(2, {4, 4}, boundary);
    for (std::uint64_t i = 0; i < options.oracle_draws; ++i) {
      const auto instance = draw_instance(lattice, bernoulli(1), sample_seed(options.seed + 7, i));
      ++total;
      if (exact_ground_state(instance).energy == exhaustive_ground_state(instance).energy) ++agree;
    }
  }
  std::ostringstream detail;
  detail << agree << "/" << total << " draws agree on 4x4 (free and periodic)";
  return {"row DP vs exhaustive enumeration", agree == total, detail.str()};
}

inline CheckResult check_quantum_cover(const VerifyOptions& options) {
  const auto lattice = make_lattice(2, {3, 3}, Boundary::periodic);
  const auto samples = verify_quantum_cover_inequality(lattice, bernoulli(1), Anisotropy::xz(1.0), options.seed,
                                                       options.quantum_patterns, options.threads);
  std::uint64_t holding = 0;
  for (const auto& s : samples) holding += s.holds ? 1 : 0;
  std::ostringstream detail;
  detail << holding << "/" << samples.size() << " hold on periodic 3x3, aniso (1,0,1)";
  return {"quantum cover inequality", holding == samples.size(), detail.str()};
}

inline std::vector<CheckResult> run_property_suite(const VerifyOptions& options = {}) {
  return {
      check_square_census(),
      check_cube_parity(),
      check_classical_gauge(2),
      check_classical_gauge(3),
      check_quantum_xz_gauge(options),
      check_cover_inequality(options),
      check_dp_oracle(options),
      check_quantum_cover(options),
  };
}

}  // namespace ea

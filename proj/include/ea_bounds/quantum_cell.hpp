#pragma once

// Quantum cell Hamiltonians H = Σ_bonds J_ij (α_x X_iX_j + α_y Y_iY_j + α_z Z_iZ_j)
// as dense matrices over the 2^|sites| spin basis, and their ground energies.
//
// Basis state b: bit s set means σ^z_s = -1, matching the classical spin
// masks. X_iX_j and Y_iY_j both flip bits i and j; Y_iY_j carries the phase
// -1 when the two bits agree and +1 when they differ, so every entry is real
// for any anisotropy and the matrix is real symmetric.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ea_bounds/bounds.hpp"
#include "ea_bounds/classical_cell.hpp"
#include "ea_bounds/distribution.hpp"
#include "ea_bounds/errors.hpp"
#include "ea_bounds/lattice.hpp"
#include "ea_bounds/parallel.hpp"
#include "ea_bounds/rational.hpp"

namespace ea {

struct Anisotropy {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  static Anisotropy classical() { return {0.0, 0.0, 1.0}; }
  static Anisotropy xz(double alpha_x) { return {alpha_x, 0.0, 1.0}; }
};

/// Largest site count accepted by build_hamiltonian (4096-dimensional space).
inline constexpr std::size_t kMaxQuantumSites = 12;

struct CellHamiltonian {
  Eigen::MatrixXd matrix;
  Anisotropy anisotropy;
  std::size_t sites = 0;
};

template <class Graph>
CellHamiltonian build_hamiltonian(const Graph& graph, std::span<const double> couplings, Anisotropy aniso) {
  const auto bonds = graph.bonds();
  if (couplings.size() != bonds.size()) {
    throw ConfigError("coupling count " + std::to_string(couplings.size()) + " does not match bond count " +
                      std::to_string(bonds.size()));
  }
  const std::size_t sites = graph.site_count();
  if (sites > kMaxQuantumSites) {
    throw GuardError("quantum Hamiltonian limited to " + std::to_string(kMaxQuantumSites) + " sites");
  }
  const Eigen::Index dim = Eigen::Index{1} << sites;
  CellHamiltonian H{Eigen::MatrixXd::Zero(dim, dim), aniso, sites};
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto state = static_cast<std::uint64_t>(b);
    for (std::size_t k = 0; k < bonds.size(); ++k) {
      const double J = couplings[k];
      if (J == 0.0) continue;
      const bool same = (((state >> bonds[k].a) ^ (state >> bonds[k].b)) & 1u) == 0;
      H.matrix(b, b) += J * aniso.z * (same ? 1.0 : -1.0);
      const double flip = J * (aniso.x + aniso.y * (same ? -1.0 : 1.0));
      if (flip != 0.0) {
        const auto target = static_cast<Eigen::Index>(state ^ (std::uint64_t{1} << bonds[k].a) ^
                                                      (std::uint64_t{1} << bonds[k].b));
        H.matrix(target, b) += flip;
      }
    }
  }
  return H;
}

template <class Graph>
CellHamiltonian build_hamiltonian(const Graph& graph, const CouplingAssignment<Rational>& J, Anisotropy aniso) {
  std::vector<double> values;
  values.reserve(J.size());
  for (const auto& v : J.values) values.push_back(to_double(v));
  return build_hamiltonian(graph, std::span<const double>(values), aniso);
}

struct CellSpectrum {
  double ground_energy = 0.0;
  std::vector<double> eigenvalues;  ///< ascending; filled only on request
  double residual = 0.0;            ///< ‖Hv - λv‖ for the returned ground vector
};

inline double infinity_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

/// Minimum eigenvalue, certified by an eigenvector with residual
/// ‖Hv - λv‖ ≤ 1e-10·‖H‖∞.
///
/// Eigenvalues come from a dense symmetric solve without vectors; the ground
/// vector is then obtained by shifted inverse iteration, falling back to a
/// full decomposition if that does not reach the residual tolerance.
inline CellSpectrum ground_energy(const CellHamiltonian& H, bool full_spectrum = false) {
  const Eigen::MatrixXd& A = H.matrix;
  const Eigen::Index n = A.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> values(A, Eigen::EigenvaluesOnly);
  if (values.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  const double lambda = values.eigenvalues()(0);
  const double norm = infinity_norm(A);
  const double tolerance = 1e-10 * norm;

  CellSpectrum out;
  out.ground_energy = lambda;
  if (full_spectrum) {
    out.eigenvalues.assign(values.eigenvalues().data(), values.eigenvalues().data() + n);
  }

  auto residual_of = [&](const Eigen::VectorXd& v) { return (A * v - lambda * v).norm(); };

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * uniform(rng);
  v.normalize();
  double residual = residual_of(v);

  const double shift = 1e-7 * std::max(1.0, norm);
  Eigen::LLT<Eigen::MatrixXd> factor(A - (lambda - shift) * Eigen::MatrixXd::Identity(n, n));
  if (factor.info() == Eigen::Success) {
    for (int iter = 0; iter < 8 && residual > tolerance; ++iter) {
      v = factor.solve(v);
      const double length = v.norm();
      if (!std::isfinite(length) || length == 0.0) break;
      v /= length;
      residual = residual_of(v);
    }
  }
  if (residual > tolerance) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(A);
    if (full.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
    v = full.eigenvectors().col(0);
    residual = residual_of(v);
  }
  if (residual > tolerance) {
    throw NumericalError("ground eigenpair residual " + std::to_string(residual) + " exceeds tolerance " +
                         std::to_string(tolerance));
  }
  out.residual = residual;
  return out;
}

struct QuantumAverage {
  double average = 0.0;
  std::uint64_t configurations = 0;
};

/// Av over all coupling configurations of the quantum cell ground energy.
/// Every configuration is one dense eigensolve; partial sums are folded in
/// configuration order.
inline QuantumAverage quantum_cell_average(const CellGeometry& cell, const DiscreteDistribution& dist,
                                           Anisotropy aniso, unsigned threads = 1) {
  const std::size_t bonds = cell.bonds().size();
  const std::size_t k = dist.atoms().size();
  const std::uint64_t total = enumeration_size(k, bonds);
  std::vector<double> values;
  std::vector<double> probs;
  for (const auto& a : dist.atoms()) {
    values.push_back(to_double(a.value));
    probs.push_back(to_double(a.probability));
  }

  auto energies = indexed_map<double>(total, threads, [&](std::size_t idx) {
    std::vector<double> couplings(bonds);
    std::uint64_t rest = idx;
    double weight = 1.0;
    for (std::size_t b = 0; b < bonds; ++b) {
      couplings[b] = values[rest % k];
      weight *= probs[rest % k];
      rest /= k;
    }
    const auto H = build_hamiltonian(cell, std::span<const double>(couplings), aniso);
    return weight * ground_energy(H).ground_energy;
  });
  double sum = 0.0;
  for (double e : energies) sum += e;
  return {sum, total};
}

struct SweepRow {
  double alpha_x = 0.0;
  double lower_bound = 0.0;
};

/// c_d × quantum cell average along α_x with α_y = 0 and α_z = 1.
/// The grid must contain 0, where the result must agree with the exact
/// classical bound to 1e-9.
inline std::vector<SweepRow> anisotropy_sweep(const CellGeometry& cell, const DiscreteDistribution& dist,
                                              std::span<const double> grid, unsigned threads = 1) {
  if (grid.empty()) throw ConfigError("anisotropy grid is empty");
  bool has_zero = false;
  for (double a : grid) {
    if (!std::isfinite(a)) throw ConfigError("anisotropy grid values must be finite");
    has_zero = has_zero || a == 0.0;
  }
  if (!has_zero) throw ConfigError("anisotropy grid must include alpha_x = 0 (the classical endpoint)");

  const double c = to_double(cell.multiplicity_factor());
  std::vector<SweepRow> rows;
  for (double a : grid) {
    rows.push_back({a, c * quantum_cell_average(cell, dist, Anisotropy::xz(a), threads).average});
  }
  const double classical = to_double(cell.multiplicity_factor() * exact_cell_average(cell, dist, threads).average);
  for (const auto& row : rows) {
    if (row.alpha_x == 0.0 && std::abs(row.lower_bound - classical) > 1e-9) {
      throw NumericalError("quantum sweep at alpha_x = 0 deviates from the exact classical bound");
    }
  }
  return rows;
}

struct XzGaugeCheck {
  bool invariant = false;
  double energy_before = 0.0;
  double energy_after = 0.0;
  double spectrum_deviation = 0.0;  ///< max |λ_i(H) - λ_i(H')| over sorted spectra
};

/// Checks that flipping every coupling at `site` leaves the spectrum
/// unchanged. Conjugation by Y_site maps X → -X and Z → -Z, so this holds
/// only when α_y = 0.
template <class Graph>
XzGaugeCheck xz_gauge_check(const Graph& graph, const CouplingAssignment<Rational>& J, std::size_t site,
                            Anisotropy aniso, double tolerance = 1e-9) {
  if (aniso.y != 0.0) throw ConfigError("XZ gauge invariance requires alpha_y = 0");
  const auto gauged = gauge_transform(graph, J, site);
  const auto before = ground_energy(build_hamiltonian(graph, J, aniso), true);
  const auto after = ground_energy(build_hamiltonian(graph, gauged, aniso), true);
  XzGaugeCheck check{false, before.ground_energy, after.ground_energy, 0.0};
  for (std::size_t i = 0; i < before.eigenvalues.size(); ++i) {
    check.spectrum_deviation =
        std::max(check.spectrum_deviation, std::abs(before.eigenvalues[i] - after.eigenvalues[i]));
  }
  check.invariant = check.spectrum_deviation <= tolerance;
  return check;
}

struct QuantumCoverSample {
  double lattice_energy = 0.0;  ///< E_0^{(N,d)}(J)
  double cell_sum = 0.0;        ///< Σ_n c_d E_0^{(n)}(J)
  bool holds = false;
};

/// Per-realization inequality E_0^{(N)}(J) ≥ Σ_n c_d E_0^{(n)}(J) for the
/// quantum model on a small periodic lattice (tolerance 1e-9).
inline std::vector<QuantumCoverSample> verify_quantum_cover_inequality(const FiniteLattice& lattice,
                                                                       const DiscreteDistribution& dist,
                                                                       Anisotropy aniso, std::uint64_t seed,
                                                                       std::uint64_t samples,
                                                                       unsigned threads = 1) {
  const CellCover cover = make_cover(lattice);
  const double c = to_double(cover.cell().multiplicity_factor());
  return indexed_map<QuantumCoverSample>(samples, threads, [&](std::size_t i) {
    auto rng = substream(seed, i);
    const CouplingAssignment<Rational> J{draw_couplings(dist, lattice.bonds().size(), rng)};
    QuantumCoverSample s;
    s.lattice_energy = ground_energy(build_hamiltonian(lattice, J, aniso)).ground_energy;
    for (const auto& inst : cover.cells()) {
      CouplingAssignment<Rational> local;
      for (auto b : inst.bonds) local.values.push_back(J.values[b]);
      s.cell_sum += c * ground_energy(build_hamiltonian(cover.cell(), local, aniso)).ground_energy;
    }
    s.holds = s.lattice_energy >= s.cell_sum - 1e-9;
    return s;
  });
}

}  // namespace ea

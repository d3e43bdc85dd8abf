#pragma once

// Classical Ising cells: energy functional F(σ, J) = Σ_bonds J_ij σ_i σ_j,
// exhaustive ground states, plaquette frustration and local gauge maps.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ea_bounds/errors.hpp"
#include "ea_bounds/lattice.hpp"
#include "ea_bounds/rational.hpp"

namespace ea {

/// One coupling value per bond, in the bond order of the owning geometry.
template <class Value = Rational>
struct CouplingAssignment {
  std::vector<Value> values;

  std::size_t size() const { return values.size(); }

  /// ±J couplings: bit k set means bond k carries -scale.
  static CouplingAssignment from_sign_mask(std::uint64_t mask, std::size_t bond_count,
                                           const Value& scale = Value{1}) {
    if (bond_count > 64) throw ConfigError("sign mask supports at most 64 bonds");
    CouplingAssignment out;
    out.values.reserve(bond_count);
    for (std::size_t k = 0; k < bond_count; ++k) {
      out.values.push_back(((mask >> k) & 1u) ? Value(-scale) : scale);
    }
    return out;
  }

  /// The sign mask if every value is ±s for a single s > 0.
  std::optional<std::uint64_t> sign_mask() const {
    if (values.empty() || values.size() > 64) return std::nullopt;
    const Value scale = values[0] < Value{0} ? Value(-values[0]) : values[0];
    if (!(scale > Value{0})) return std::nullopt;
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] == scale) continue;
      if (values[k] == -scale) {
        mask |= std::uint64_t{1} << k;
        continue;
      }
      return std::nullopt;
    }
    return mask;
  }

  friend bool operator==(const CouplingAssignment&, const CouplingAssignment&) = default;
};

/// Ising spins of a cell: bit s set means σ_s = -1.
struct CellSpins {
  std::uint32_t mask = 0;

  int spin(std::uint32_t site) const { return ((mask >> site) & 1u) ? -1 : 1; }
  CellSpins flipped(std::size_t sites) const {
    return {static_cast<std::uint32_t>(~mask & ((std::uint32_t{1} << sites) - 1))};
  }
  friend bool operator==(const CellSpins&, const CellSpins&) = default;
};

template <class Value>
struct CellGroundState {
  Value energy;
  CellSpins argmin;
};

namespace detail {

template <class Graph, class Value>
void check_coupling_count(const Graph& graph, const CouplingAssignment<Value>& J) {
  if (J.size() != graph.bonds().size()) {
    throw ConfigError("coupling count " + std::to_string(J.size()) + " does not match bond count " +
                      std::to_string(graph.bonds().size()));
  }
}

/// Bitmask over bonds whose endpoints carry opposite spins.
inline std::uint32_t disagreement_mask(std::span<const Bond> bonds, std::uint32_t spins) {
  std::uint32_t mask = 0;
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    if (((spins >> bonds[k].a) ^ (spins >> bonds[k].b)) & 1u) mask |= 1u << k;
  }
  return mask;
}

}  // namespace detail

/// F(σ, J) on a cell. No multiplicity factor is applied.
template <class Value>
Value cell_energy(const CellGeometry& cell, const CouplingAssignment<Value>& J, CellSpins spins) {
  detail::check_coupling_count(cell, J);
  if (spins.mask >> cell.site_count()) throw ConfigError("spin mask has bits beyond the cell sites");
  Value energy{0};
  const auto bonds = cell.bonds();
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    if (spins.spin(bonds[k].a) == spins.spin(bonds[k].b)) {
      energy += J.values[k];
    } else {
      energy -= J.values[k];
    }
  }
  return energy;
}

/// Exhaustive minimum of F over the cell's spin configurations.
///
/// The highest-indexed site is pinned to +1, which loses nothing under the
/// global flip σ → -σ and makes the first minimizer in scan order the
/// smallest minimizing bitmask overall.
template <class Value>
CellGroundState<Value> cell_ground_state(const CellGeometry& cell, const CouplingAssignment<Value>& J) {
  detail::check_coupling_count(cell, J);
  const std::uint32_t half = std::uint32_t{1} << (cell.site_count() - 1);
  std::optional<CellGroundState<Value>> best;
  for (std::uint32_t s = 0; s < half; ++s) {
    Value e = cell_energy(cell, J, CellSpins{s});
    if (!best || e < best->energy) best = CellGroundState<Value>{std::move(e), CellSpins{s}};
  }
  return *best;
}

/// Reference enumeration over all 2^|sites| configurations, no symmetry.
template <class Value>
CellGroundState<Value> cell_ground_state_full(const CellGeometry& cell, const CouplingAssignment<Value>& J) {
  detail::check_coupling_count(cell, J);
  const std::uint32_t all = std::uint32_t{1} << cell.site_count();
  std::optional<CellGroundState<Value>> best;
  for (std::uint32_t s = 0; s < all; ++s) {
    Value e = cell_energy(cell, J, CellSpins{s});
    if (!best || e < best->energy) best = CellGroundState<Value>{std::move(e), CellSpins{s}};
  }
  return *best;
}

/// Integer ground-state solver for one cell geometry.
///
/// Precomputes, for each spin configuration with the top site pinned, the
/// mask of bonds whose spins disagree. For ±1 couplings given as a sign mask
/// the energy is |bonds| - 2·popcount(signs ^ disagreement).
class CellSolver {
 public:
  explicit CellSolver(const CellGeometry& cell)
      : bond_count_(static_cast<int>(cell.bonds().size())) {
    const std::uint32_t half = std::uint32_t{1} << (cell.site_count() - 1);
    disagreements_.reserve(half);
    for (std::uint32_t s = 0; s < half; ++s) {
      disagreements_.push_back(detail::disagreement_mask(cell.bonds(), s));
    }
  }

  int bond_count() const { return bond_count_; }

  /// Ground energy in units of J for the sign pattern `signs` (bit set: -J).
  int ground_energy(std::uint32_t signs) const {
    int best = 0;
    for (std::uint32_t d : disagreements_) {
      best = std::max(best, std::popcount(signs ^ d));
    }
    return bond_count_ - 2 * best;
  }

  /// Ground energy for integer couplings.
  std::int64_t ground_energy(std::span<const std::int64_t> couplings) const {
    std::int64_t total = 0;
    for (auto c : couplings) total += c;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::uint32_t d : disagreements_) {
      std::int64_t e = total;
      for (std::uint32_t rest = d; rest != 0; rest &= rest - 1) {
        e -= 2 * couplings[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      best = std::min(best, e);
    }
    return best;
  }

  /// Ground energy for real couplings (used by the Monte Carlo estimator).
  double ground_energy(std::span<const double> couplings) const {
    double total = 0.0;
    for (auto c : couplings) total += c;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t d : disagreements_) {
      double e = total;
      for (std::uint32_t rest = d; rest != 0; rest &= rest - 1) {
        e -= 2.0 * couplings[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      best = std::min(best, e);
    }
    return best;
  }

 private:
  int bond_count_;
  std::vector<std::uint32_t> disagreements_;
};

struct FrustrationSignature {
  std::vector<int> face_products;  ///< G_P ∈ {+1, -1} per face
  int frustrated_count = 0;
};

/// G_P = sign(∏ J) over the four bonds of every face. Zero couplings are rejected.
template <class Value>
FrustrationSignature frustration_signature(const CellGeometry& cell, const CouplingAssignment<Value>& J) {
  detail::check_coupling_count(cell, J);
  for (std::size_t k = 0; k < J.size(); ++k) {
    if (J.values[k] == Value{0}) {
      throw ConfigError("frustration is undefined for zero coupling on bond " + std::to_string(k));
    }
  }
  FrustrationSignature sig;
  for (const Face& face : cell.faces()) {
    int product = 1;
    for (auto k : face.bonds) {
      if (J.values[k] < Value{0}) product = -product;
    }
    sig.face_products.push_back(product);
    if (product < 0) ++sig.frustrated_count;
  }
  return sig;
}

/// Frustration signature of a sign pattern (bit set: negative coupling).
inline FrustrationSignature frustration_signature(const CellGeometry& cell, std::uint32_t signs) {
  FrustrationSignature sig;
  for (const Face& face : cell.faces()) {
    int negatives = 0;
    for (auto k : face.bonds) negatives += static_cast<int>((signs >> k) & 1u);
    const int product = (negatives % 2 == 0) ? 1 : -1;
    sig.face_products.push_back(product);
    if (product < 0) ++sig.frustrated_count;
  }
  return sig;
}

/// J_ij → -J_ij on every bond incident to `site` (paired with σ_site → -σ_site).
/// Works for any graph exposing site_count() and bonds().
template <class Graph, class Value>
CouplingAssignment<Value> gauge_transform(const Graph& graph, CouplingAssignment<Value> J, std::size_t site) {
  detail::check_coupling_count(graph, J);
  if (site >= graph.site_count()) {
    throw ConfigError("gauge site " + std::to_string(site) + " out of range");
  }
  const auto bonds = graph.bonds();
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    if (bonds[k].a == site || bonds[k].b == site) J.values[k] = -J.values[k];
  }
  return J;
}

/// Census over all 2^|bonds| sign patterns of a cell.
struct FrustrationCensus {
  int dimension = 0;
  std::uint64_t patterns = 0;
  std::map<int, std::uint64_t> by_frustrated_faces;  ///< frustrated face count → patterns
  std::map<int, std::uint64_t> by_ground_energy;     ///< ground energy (units of J) → patterns
  std::uint64_t parity_violations = 0;               ///< cube patterns with odd frustrated count
  std::int64_t ground_energy_sum = 0;
};

inline FrustrationCensus frustration_census(const CellGeometry& cell) {
  const CellSolver solver(cell);
  FrustrationCensus census;
  census.dimension = cell.dimension();
  census.patterns = std::uint64_t{1} << cell.bonds().size();
  for (std::uint32_t signs = 0; signs < census.patterns; ++signs) {
    const auto sig = frustration_signature(cell, signs);
    const int e = solver.ground_energy(signs);
    ++census.by_frustrated_faces[sig.frustrated_count];
    ++census.by_ground_energy[e];
    census.ground_energy_sum += e;
    if (cell.dimension() == 3 && sig.frustrated_count % 2 != 0) ++census.parity_violations;
  }
  return census;
}

}  // namespace ea

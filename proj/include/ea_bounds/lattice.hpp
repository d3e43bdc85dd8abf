#pragma once

// Unit cells (square, cube), finite hypercubic lattices and the cover of a
// periodic lattice by translated unit cells.
//
// Site numbering is row-major with x fastest. Bonds are listed
// lexicographically by (anchor site, axis), where the anchor is the endpoint
// with the smaller coordinate along the bond axis (modulo the wrap for
// periodic lattices). This ordering fixes the bit positions of coupling
// bitmasks.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ea_bounds/errors.hpp"
#include "ea_bounds/rational.hpp"

namespace ea {

struct Bond {
  std::uint32_t a;  ///< anchor site
  std::uint32_t b;  ///< a + e_axis
  int axis;         ///< 0 = x, 1 = y, 2 = z

  friend bool operator==(const Bond&, const Bond&) = default;
};

/// An elementary plaquette: four bonds forming a cycle.
struct Face {
  std::array<std::uint32_t, 4> bonds;  ///< indices into the owning bond list
  int normal_axis;                     ///< axis perpendicular to the face (2 for the square)
  int offset;                          ///< coordinate of the face along normal_axis (0 or 1)
};

enum class Boundary { periodic, free };

inline std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "free"; }

inline Boundary parse_boundary(const std::string& text) {
  if (text == "periodic") return Boundary::periodic;
  if (text == "free") return Boundary::free;
  throw ConfigError("unknown boundary '" + text + "' (expected periodic or free)");
}

inline void check_dimension(int dimension) {
  if (dimension != 2 && dimension != 3) {
    throw ConfigError("unsupported dimension " + std::to_string(dimension) + " (expected 2 or 3)");
  }
}

/// Unit square (d=2) or unit cube (d=3).
///
/// Cell site s has coordinates (bit0, bit1, bit2) of s. Bond order for the
/// cube: 0-1 x, 0-2 y, 0-4 z, 1-3 y, 1-5 z, 2-3 x, 2-6 z, 3-7 z, 4-5 x,
/// 4-6 y, 5-7 y, 6-7 x. For the square: 0-1 x, 0-2 y, 1-3 y, 2-3 x.
/// Faces are ordered by (normal axis, offset) with the normal axis running
/// z, y, x: xy@z=0, xy@z=1, xz@y=0, xz@y=1, yz@x=0, yz@x=1.
class CellGeometry {
 public:
  int dimension() const { return dimension_; }
  std::size_t site_count() const { return std::size_t{1} << dimension_; }
  std::span<const Bond> bonds() const { return bonds_; }
  std::span<const Face> faces() const { return faces_; }
  /// c_d: the weight that makes overlapping cells count each lattice bond once.
  const Rational& multiplicity_factor() const { return multiplicity_; }

  static std::array<int, 3> site_coords(std::uint32_t site) {
    return {static_cast<int>(site & 1u), static_cast<int>((site >> 1) & 1u),
            static_cast<int>((site >> 2) & 1u)};
  }

  /// Bitmask over bonds incident to `site`.
  std::uint32_t incident_bonds(std::uint32_t site) const {
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < bonds_.size(); ++k) {
      if (bonds_[k].a == site || bonds_[k].b == site) mask |= 1u << k;
    }
    return mask;
  }

 private:
  friend CellGeometry make_cell(int dimension);
  int dimension_ = 0;
  std::vector<Bond> bonds_;
  std::vector<Face> faces_;
  Rational multiplicity_;
};

inline CellGeometry make_cell(int dimension) {
  check_dimension(dimension);
  CellGeometry cell;
  cell.dimension_ = dimension;
  const std::uint32_t sites = 1u << dimension;
  for (std::uint32_t s = 0; s < sites; ++s) {
    for (int axis = 0; axis < dimension; ++axis) {
      if ((s >> axis) & 1u) continue;
      cell.bonds_.push_back({s, s | (1u << axis), axis});
    }
  }

  // Each face: the 4 bonds lying in the plane normal_axis = offset.
  const int lowest_normal = dimension == 2 ? 2 : 0;
  const int offsets = dimension == 2 ? 1 : 2;
  for (int normal = 2; normal >= lowest_normal; --normal) {
    for (int offset = 0; offset < offsets; ++offset) {
      Face face{{}, normal, offset};
      std::size_t found = 0;
      for (std::uint32_t k = 0; k < cell.bonds_.size(); ++k) {
        const Bond& bond = cell.bonds_[k];
        if (bond.axis == normal) continue;
        if (static_cast<int>((bond.a >> normal) & 1u) != offset) continue;
        face.bonds[found++] = k;
      }
      cell.faces_.push_back(face);
    }
  }
  cell.multiplicity_ = dimension == 2 ? Rational(1, 2) : Rational(1, 4);
  return cell;
}

/// A finite L_x × L_y (× L_z) lattice.
class FiniteLattice {
 public:
  int dimension() const { return dimension_; }
  std::span<const int> side_lengths() const { return sides_; }
  Boundary boundary() const { return boundary_; }
  std::size_t site_count() const { return site_count_; }
  std::span<const Bond> bonds() const { return bonds_; }

  std::array<int, 3> coords(std::uint32_t site) const {
    std::array<int, 3> c{0, 0, 0};
    for (int axis = 0; axis < dimension_; ++axis) {
      c[axis] = static_cast<int>(site % static_cast<std::uint32_t>(sides_[axis]));
      site /= static_cast<std::uint32_t>(sides_[axis]);
    }
    return c;
  }

  std::uint32_t site_index(std::array<int, 3> c) const {
    std::uint32_t index = 0;
    for (int axis = dimension_ - 1; axis >= 0; --axis) {
      index = index * static_cast<std::uint32_t>(sides_[axis]) + static_cast<std::uint32_t>(c[axis]);
    }
    return index;
  }

  /// Site reached from `site` by one step along +axis, if it exists.
  std::optional<std::uint32_t> neighbor(std::uint32_t site, int axis) const {
    auto c = coords(site);
    if (c[axis] + 1 < sides_[axis]) {
      ++c[axis];
    } else if (boundary_ == Boundary::periodic) {
      c[axis] = 0;
    } else {
      return std::nullopt;
    }
    return site_index(c);
  }

  /// Index of the bond anchored at `site` along `axis`, if it exists.
  std::optional<std::uint32_t> bond_index(std::uint32_t site, int axis) const {
    const std::int64_t k = bond_lookup_[static_cast<std::size_t>(site) * dimension_ + axis];
    if (k < 0) return std::nullopt;
    return static_cast<std::uint32_t>(k);
  }

 private:
  friend FiniteLattice make_lattice(int dimension, std::vector<int> side_lengths, Boundary boundary);
  int dimension_ = 0;
  std::vector<int> sides_;
  Boundary boundary_ = Boundary::periodic;
  std::size_t site_count_ = 0;
  std::vector<Bond> bonds_;
  std::vector<std::int64_t> bond_lookup_;
};

inline FiniteLattice make_lattice(int dimension, std::vector<int> side_lengths, Boundary boundary) {
  check_dimension(dimension);
  if (side_lengths.size() != static_cast<std::size_t>(dimension)) {
    throw ConfigError("expected " + std::to_string(dimension) + " side lengths, got " +
                      std::to_string(side_lengths.size()));
  }
  const int minimum = boundary == Boundary::periodic ? 3 : 2;
  std::size_t sites = 1;
  for (int side : side_lengths) {
    if (side < minimum) {
      throw ConfigError("side length " + std::to_string(side) + " below minimum " +
                        std::to_string(minimum) + " for " + to_string(boundary) + " boundary");
    }
    sites *= static_cast<std::size_t>(side);
    if (sites > (std::size_t{1} << 31)) throw GuardError("lattice too large");
  }

  FiniteLattice lattice;
  lattice.dimension_ = dimension;
  lattice.sides_ = std::move(side_lengths);
  lattice.boundary_ = boundary;
  lattice.site_count_ = sites;
  lattice.bond_lookup_.assign(sites * static_cast<std::size_t>(dimension), -1);
  for (std::uint32_t s = 0; s < sites; ++s) {
    for (int axis = 0; axis < dimension; ++axis) {
      if (auto t = lattice.neighbor(s, axis)) {
        lattice.bond_lookup_[static_cast<std::size_t>(s) * dimension + axis] =
            static_cast<std::int64_t>(lattice.bonds_.size());
        lattice.bonds_.push_back({s, *t, axis});
      }
    }
  }
  return lattice;
}

/// One translated unit cell inside a periodic lattice.
struct CellInstance {
  std::uint32_t anchor;
  std::vector<std::uint32_t> sites;  ///< lattice site of each cell site
  std::vector<std::uint32_t> bonds;  ///< lattice bond of each cell bond
};

/// The N cells Λ_n, one anchored at every site of a periodic lattice.
class CellCover {
 public:
  const FiniteLattice& lattice() const { return lattice_; }
  const CellGeometry& cell() const { return cell_; }
  std::span<const CellInstance> cells() const { return cells_; }

  /// Number of (cell, cell-bond) incidences per lattice bond.
  std::vector<int> bond_coverage() const {
    std::vector<int> count(lattice_.bonds().size(), 0);
    for (const auto& inst : cells_) {
      for (auto b : inst.bonds) ++count[b];
    }
    return count;
  }

 private:
  friend CellCover make_cover(const FiniteLattice& lattice);
  FiniteLattice lattice_;
  CellGeometry cell_;
  std::vector<CellInstance> cells_;
};

inline CellCover make_cover(const FiniteLattice& lattice) {
  if (lattice.boundary() != Boundary::periodic) {
    throw ConfigError("cell cover requires a periodic lattice");
  }
  CellCover cover;
  cover.lattice_ = lattice;
  cover.cell_ = make_cell(lattice.dimension());
  const auto& cell = cover.cell_;
  cover.cells_.reserve(lattice.site_count());
  for (std::uint32_t n = 0; n < lattice.site_count(); ++n) {
    CellInstance inst{n, {}, {}};
    const auto origin = lattice.coords(n);
    for (std::uint32_t s = 0; s < cell.site_count(); ++s) {
      auto c = origin;
      const auto offset = CellGeometry::site_coords(s);
      for (int axis = 0; axis < lattice.dimension(); ++axis) {
        c[axis] = (c[axis] + offset[axis]) % lattice.side_lengths()[axis];
      }
      inst.sites.push_back(lattice.site_index(c));
    }
    for (const Bond& bond : cell.bonds()) {
      inst.bonds.push_back(*lattice.bond_index(inst.sites[bond.a], bond.axis));
    }
    cover.cells_.push_back(std::move(inst));
  }
  return cover;
}

}  // namespace ea

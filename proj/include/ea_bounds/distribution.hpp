#pragma once

// Coupling distributions P_0: exact discrete laws with rational atoms, and
// continuous samplers for the (non-rigorous) Monte Carlo estimator.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ea_bounds/errors.hpp"
#include "ea_bounds/rational.hpp"

namespace ea {

struct Atom {
  Rational value;
  Rational probability;
};

/// Whether a non-zero mean is an error (the bound assumes Av J = 0).
enum class Centering { required, allow_noncentered };

class DiscreteDistribution {
 public:
  /// Validates positivity and exact normalization, and centering unless waived.
  static DiscreteDistribution make(std::vector<Atom> atoms, Centering centering, std::string label) {
    if (atoms.empty()) throw ConfigError("distribution has no atoms");
    Rational total = 0;
    Rational mean = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].probability <= 0) {
        throw ConfigError("atom probability must be positive, got " + to_fraction_string(atoms[i].probability));
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (atoms[j].value == atoms[i].value) {
          throw ConfigError("duplicate atom value " + to_fraction_string(atoms[i].value));
        }
      }
      total += atoms[i].probability;
      mean += atoms[i].value * atoms[i].probability;
    }
    if (total != 1) {
      throw ConfigError("probabilities sum to " + to_fraction_string(total) + ", not 1");
    }
    if (mean != 0 && centering == Centering::required) {
      throw ConfigError("distribution has mean " + to_fraction_string(mean) +
                        "; couplings must be centered (pass --allow-noncentered to override)");
    }
    DiscreteDistribution d;
    d.atoms_ = std::move(atoms);
    d.mean_ = mean;
    d.label_ = std::move(label);
    d.prepare_sampler();
    return d;
  }

  std::span<const Atom> atoms() const { return atoms_; }
  const Rational& mean() const { return mean_; }
  bool centered() const { return mean_ == 0; }
  const std::string& label() const { return label_; }

  Rational mean_abs() const {
    Rational m = 0;
    for (const auto& a : atoms_) m += (a.value < 0 ? Rational(-a.value) : a.value) * a.probability;
    return m;
  }

  /// True for a two-point law {+v, -v} with equal weights.
  bool is_symmetric_two_point() const {
    return atoms_.size() == 2 && atoms_[0].value == -atoms_[1].value && atoms_[0].value != 0 &&
           atoms_[0].probability == atoms_[1].probability;
  }

  /// "{-1: 1/2, 1: 1/2}"
  std::string atoms_text() const {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (i) out += ", ";
      out += to_fraction_string(atoms_[i].value) + ": " + to_fraction_string(atoms_[i].probability);
    }
    return out + "}";
  }

  /// Draws an atom index exactly: a uniform integer over the common
  /// denominator of the probabilities, bucketed by cumulative numerators.
  template <class Engine>
  std::size_t draw_index(Engine& rng) const {
    if (sampler_denominator_ == 0) throw GuardError("probability denominators too large for exact sampling");
    std::uniform_int_distribution<std::uint64_t> uniform(0, sampler_denominator_ - 1);
    const std::uint64_t u = uniform(rng);
    for (std::size_t i = 0; i < cumulative_.size(); ++i) {
      if (u < cumulative_[i]) return i;
    }
    return cumulative_.size() - 1;
  }

 private:
  void prepare_sampler() {
    std::vector<Rational> probs;
    for (const auto& a : atoms_) probs.push_back(a.probability);
    const BigInt d = common_denominator(probs);
    if (d > BigInt(std::numeric_limits<std::uint64_t>::max())) return;  // sampling unsupported
    sampler_denominator_ = d.convert_to<std::uint64_t>();
    std::uint64_t acc = 0;
    for (const auto& a : atoms_) {
      acc += (num(a.probability) * (d / den(a.probability))).convert_to<std::uint64_t>();
      cumulative_.push_back(acc);
    }
  }

  std::vector<Atom> atoms_;
  Rational mean_;
  std::string label_;
  std::uint64_t sampler_denominator_ = 0;
  std::vector<std::uint64_t> cumulative_;
};

/// P_0 = ½(δ_J + δ_{-J}).
inline DiscreteDistribution bernoulli(const Rational& J = 1) {
  if (J <= 0) throw ConfigError("Bernoulli scale J must be positive, got " + to_fraction_string(J));
  return DiscreteDistribution::make({{J, Rational(1, 2)}, {-J, Rational(1, 2)}}, Centering::required,
                                    "bernoulli(" + to_fraction_string(J) + ")");
}

inline DiscreteDistribution point_mass(const Rational& value, Centering centering) {
  return DiscreteDistribution::make({{value, 1}}, centering, "point(" + to_fraction_string(value) + ")");
}

/// Reads a `value probability` table; both columns are exact fractions.
/// Blank lines and text after '#' are ignored.
inline DiscreteDistribution parse_distribution_table(std::istream& in, Centering centering, std::string label) {
  std::vector<Atom> atoms;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string value_text;
    std::string prob_text;
    std::string extra;
    if (!(fields >> value_text)) continue;
    if (!(fields >> prob_text) || (fields >> extra)) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'value probability'");
    }
    atoms.push_back({parse_rational(value_text), parse_rational(prob_text)});
  }
  return DiscreteDistribution::make(std::move(atoms), centering, std::move(label));
}

inline DiscreteDistribution load_distribution_file(const std::string& path, Centering centering) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open distribution file '" + path + "'");
  return parse_distribution_table(in, centering, "file(" + path + ")");
}

/// A law that is only sampled, never enumerated.
struct SampledDistribution {
  enum class Law { normal, uniform, discrete };

  Law law = Law::normal;
  double scale = 1.0;  ///< standard deviation (normal) or half-width (uniform)
  std::optional<DiscreteDistribution> discrete;
  std::uint64_t seed = 0;

  static SampledDistribution normal(double sigma, std::uint64_t seed) {
    if (!(sigma > 0) || !std::isfinite(sigma)) throw ConfigError("normal sigma must be positive and finite");
    return {Law::normal, sigma, std::nullopt, seed};
  }
  static SampledDistribution uniform(double half_width, std::uint64_t seed) {
    if (!(half_width > 0) || !std::isfinite(half_width)) {
      throw ConfigError("uniform half-width must be positive and finite");
    }
    return {Law::uniform, half_width, std::nullopt, seed};
  }
  static SampledDistribution from_discrete(DiscreteDistribution d, std::uint64_t seed) {
    return {Law::discrete, 1.0, std::move(d), seed};
  }

  bool centered() const { return law != Law::discrete || discrete->centered(); }

  std::string label() const {
    std::ostringstream out;
    out.precision(17);
    switch (law) {
      case Law::normal: out << "normal(sigma=" << scale << ")"; break;
      case Law::uniform: out << "uniform(-" << scale << "," << scale << ")"; break;
      case Law::discrete: out << "sampled " << discrete->label(); break;
    }
    return out.str();
  }

  template <class Engine>
  double draw(Engine& rng) const {
    switch (law) {
      case Law::normal: return std::normal_distribution<double>(0.0, scale)(rng);
      case Law::uniform: return std::uniform_real_distribution<double>(-scale, scale)(rng);
      case Law::discrete: return to_double(discrete->atoms()[discrete->draw_index(rng)].value);
    }
    return 0.0;
  }
};

using CouplingDistribution = std::variant<DiscreteDistribution, SampledDistribution>;

/// One i.i.d. draw per bond.
template <class Engine>
std::vector<Rational> draw_couplings(const DiscreteDistribution& dist, std::size_t bonds, Engine& rng) {
  std::vector<Rational> values;
  values.reserve(bonds);
  for (std::size_t k = 0; k < bonds; ++k) values.push_back(dist.atoms()[dist.draw_index(rng)].value);
  return values;
}

/// Deterministic substream for task `index` of a run seeded with `seed`.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace ea

#include <gtest/gtest.h>

#include <ea_bounds/bounds.hpp>

#include <sstream>

#include "oracles.hpp"

using ea::Centering;
using ea::DiscreteDistribution;
using ea::Rational;

namespace {

// Σ over all atom assignments of (∏ p) × brute-force cell minimum, in exact
// rationals. Uses coordinate-derived bonds; any bond order gives the same
// average because the couplings are i.i.d.
Rational naive_average(int d, const DiscreteDistribution& dist) {
  const auto pairs = oracle::cell_pairs(d);
  const std::size_t k = dist.atoms().size();
  std::size_t total = 1;
  for (std::size_t b = 0; b < pairs.size(); ++b) total *= k;
  Rational sum = 0;
  std::vector<Rational> J(pairs.size());
  for (std::size_t idx = 0; idx < total; ++idx) {
    Rational weight = 1;
    std::size_t rest = idx;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      const auto& atom = dist.atoms()[rest % k];
      rest /= k;
      J[b] = atom.value;
      weight *= atom.probability;
    }
    sum += weight * oracle::brute_force_minimum<Rational>(1 << d, pairs, J);
  }
  return sum;
}

DiscreteDistribution three_point() {
  return DiscreteDistribution::make({{-2, Rational(1, 4)}, {0, Rational(1, 2)}, {2, Rational(1, 4)}},
                                    Centering::required, "three-point");
}

DiscreteDistribution skewed_two_point() {
  return DiscreteDistribution::make({{2, Rational(1, 3)}, {-1, Rational(2, 3)}}, Centering::required, "skewed");
}

}  // namespace

TEST(Distribution, BernoulliAtoms) {
  const auto b = ea::bernoulli(1);
  ASSERT_EQ(b.atoms().size(), 2u);
  EXPECT_EQ(b.atoms()[0].value, 1);
  EXPECT_EQ(b.atoms()[0].probability, Rational(1, 2));
  EXPECT_EQ(b.atoms()[1].value, -1);
  EXPECT_EQ(b.mean(), 0);
  EXPECT_EQ(ea::bernoulli(2).atoms()[1].value, -2);
  EXPECT_THROW(ea::bernoulli(0), ea::ConfigError);
  EXPECT_THROW(ea::bernoulli(-1), ea::ConfigError);
}

TEST(Distribution, Validation) {
  EXPECT_THROW(DiscreteDistribution::make({{1, Rational(1, 2)}, {-1, Rational(1, 3)}}, Centering::required, "x"),
               ea::ConfigError);
  EXPECT_THROW(DiscreteDistribution::make({{1, Rational(1, 2)}, {1, Rational(1, 2)}}, Centering::required, "x"),
               ea::ConfigError);
  EXPECT_THROW(DiscreteDistribution::make({{1, 0}, {-1, 1}}, Centering::allow_noncentered, "x"), ea::ConfigError);
  EXPECT_THROW(ea::point_mass(1, Centering::required), ea::ConfigError);
  EXPECT_NO_THROW(ea::point_mass(1, Centering::allow_noncentered));
  EXPECT_THROW(DiscreteDistribution::make({}, Centering::required, "x"), ea::ConfigError);
}

TEST(Distribution, TableParsing) {
  std::istringstream good("# comment\n-1 1/2\n\n1 0.5  # trailing\n");
  const auto d = ea::parse_distribution_table(good, Centering::required, "t");
  EXPECT_TRUE(d.is_symmetric_two_point());
  std::istringstream unnormalized("-1 1/2\n1 1/4\n");
  EXPECT_THROW(ea::parse_distribution_table(unnormalized, Centering::required, "t"), ea::ConfigError);
  std::istringstream malformed("-1\n");
  EXPECT_THROW(ea::parse_distribution_table(malformed, Centering::required, "t"), ea::ConfigError);
  EXPECT_THROW(ea::load_distribution_file("/nonexistent/table.txt", Centering::required), ea::ConfigError);
}

TEST(Distribution, ExactSamplerFrequencies) {
  const auto d = skewed_two_point();
  auto rng = ea::substream(9, 0);
  int first = 0;
  const int n = 30000;
  for (int i = 0; i < n; ++i) first += d.draw_index(rng) == 0 ? 1 : 0;
  // P = 1/3, sd of the count is sqrt(n p q) ≈ 82
  EXPECT_NEAR(first, n / 3.0, 5 * 82.0);
}

TEST(ExactAverage, SpecExamples) {
  const auto square = ea::make_cell(2);
  const auto cube = ea::make_cell(3);
  const auto sq = ea::exact_cell_average(square, ea::bernoulli(1));
  EXPECT_EQ(sq.average, -3);
  EXPECT_EQ(sq.configurations, 16u);
  EXPECT_EQ(*sq.equiprobable_sum, -48);
  const auto cb = ea::exact_cell_average(cube, ea::bernoulli(1));
  EXPECT_EQ(*cb.equiprobable_sum, -36096);
  EXPECT_EQ(cb.average, Rational(-36096, 4096));
  EXPECT_EQ(ea::to_double(cb.average), -8.8125);
  EXPECT_EQ(ea::exact_cell_average(square, ea::point_mass(1, Centering::allow_noncentered)).average, -4);
}

TEST(ExactAverage, CubeSumMatchesIndependentBruteForce) {
  EXPECT_EQ(ea::exact_cell_average(ea::make_cell(3), ea::bernoulli(1)).average * 4096,
            Rational(oracle::bernoulli_minimum_sum(3)));
}

TEST(ExactAverage, GeneralLawsMatchNaiveEnumeration) {
  const auto square = ea::make_cell(2);
  for (const auto& dist : {three_point(), skewed_two_point(), ea::bernoulli(Rational(3, 7))}) {
    EXPECT_EQ(ea::exact_cell_average(square, dist).average, naive_average(2, dist)) << dist.label();
  }
  EXPECT_EQ(ea::exact_cell_average(ea::make_cell(3), skewed_two_point()).average,
            naive_average(3, skewed_two_point()));
}

TEST(ExactAverage, ScalingCovariance) {
  for (int d : {2, 3}) {
    const auto cell = ea::make_cell(d);
    const auto base = ea::exact_cell_average(cell, ea::bernoulli(1)).average;
    for (const Rational& J : {Rational(1, 2), Rational(2), Rational(3)}) {
      EXPECT_EQ(ea::exact_cell_average(cell, ea::bernoulli(J)).average, J * base);
    }
  }
}

TEST(ExactAverage, SignFlipOfOneBondLeavesAverageUnchanged) {
  // For a sign-symmetric law, negating bond k in every configuration permutes the configurations.
  const auto cube = ea::make_cell(3);
  const ea::CellSolver solver(cube);
  for (int k = 0; k < 12; ++k) {
    long long sum = 0;
    for (std::uint32_t s = 0; s < 4096; ++s) sum += solver.ground_energy(s ^ (1u << k));
    EXPECT_EQ(sum, -36096);
  }
}

TEST(ExactAverage, ThreadCountDoesNotChangeResult) {
  const auto cube = ea::make_cell(3);
  const auto one = ea::exact_cell_average(cube, ea::bernoulli(1), 1);
  for (unsigned t : {2u, 3u, 8u}) {
    EXPECT_EQ(ea::exact_cell_average(cube, ea::bernoulli(1), t).average, one.average);
    EXPECT_EQ(ea::exact_cell_average(ea::make_cell(2), three_point(), t).average,
              ea::exact_cell_average(ea::make_cell(2), three_point(), 1).average);
  }
}

TEST(ExactAverage, EnumerationGuard) {
  std::vector<ea::Atom> atoms;
  for (int v = -3; v <= 3; ++v) atoms.push_back({v, Rational(1, 7)});
  const auto seven = DiscreteDistribution::make(atoms, Centering::required, "seven");
  // 7^12 ≈ 1.4e10 > 1e8
  EXPECT_THROW(ea::exact_cell_average(ea::make_cell(3), seven), ea::GuardError);
  EXPECT_NO_THROW(ea::exact_cell_average(ea::make_cell(2), seven));
}

TEST(MonteCarlo, BernoulliSamplerAgreesWithExactAverage) {
  const auto est = ea::mc_cell_average(ea::make_cell(2), ea::SampledDistribution::from_discrete(ea::bernoulli(1), 42),
                                       100000);
  EXPECT_GT(est.standard_error, 0.0);
  EXPECT_LE(std::abs(est.mean - (-3.0)), 4 * est.standard_error) << est.mean << " +- " << est.standard_error;
}

TEST(MonteCarlo, PointMassHasZeroError) {
  const auto est = ea::mc_cell_average(
      ea::make_cell(3), ea::SampledDistribution::from_discrete(ea::point_mass(1, Centering::allow_noncentered), 5),
      1000);
  EXPECT_EQ(est.mean, -12.0);
  EXPECT_EQ(est.standard_error, 0.0);
}

TEST(MonteCarlo, QuadratureOraclesAgree) {
  const double reduced = oracle::square_normal_average_1d();
  EXPECT_NEAR(reduced, -2.929455962917275, 1e-9);
  EXPECT_NEAR(oracle::square_normal_average_extrapolated(), reduced, 1e-3);
}

TEST(MonteCarlo, NormalSamplerAgreesWithQuadrature) {
  const double oracle_value = oracle::square_normal_average_extrapolated();
  const auto est = ea::mc_cell_average(ea::make_cell(2), ea::SampledDistribution::normal(1.0, 42), 100000);
  EXPECT_LE(std::abs(est.mean - oracle_value), 4 * est.standard_error) << est.mean << " +- " << est.standard_error;
  EXPECT_LE(std::abs(est.mean - oracle::square_normal_average_1d()), 4 * est.standard_error);
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  const auto dist = ea::SampledDistribution::normal(1.0, 7);
  const auto a = ea::mc_cell_average(ea::make_cell(3), dist, 5000, 1);
  const auto b = ea::mc_cell_average(ea::make_cell(3), dist, 5000, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.standard_error, b.standard_error);
}

TEST(MonteCarlo, RejectsTooFewSamples) {
  EXPECT_THROW(ea::mc_cell_average(ea::make_cell(2), ea::SampledDistribution::normal(1.0, 1), 1), ea::ConfigError);
  EXPECT_THROW(ea::SampledDistribution::normal(0.0, 1), ea::ConfigError);
  EXPECT_THROW(ea::SampledDistribution::uniform(-1.0, 1), ea::ConfigError);
}

TEST(LowerBound, SpecExamples) {
  const auto d2 = ea::lower_bound(ea::make_cell(2), ea::bernoulli(1));
  EXPECT_EQ(*d2.lower_bound, Rational(-3, 2));
  EXPECT_EQ(*d2.lower_bound, d2.multiplicity_factor * *d2.cell_average);
  EXPECT_EQ(d2.method, ea::Method::exact_enumeration);
  EXPECT_FALSE(d2.mc_stderr.has_value());
  EXPECT_FALSE(d2.mc_lower_bound.has_value());

  const auto d3 = ea::lower_bound(ea::make_cell(3), ea::bernoulli(1));
  EXPECT_EQ(*d3.lower_bound, Rational(-9024, 4096));
  EXPECT_EQ(*d3.lower_bound, Rational(-1, 4) * Rational(36096, 4096));
  EXPECT_EQ(ea::to_decimal(*d3.lower_bound).text, "-2.203125");
  bool flagged = false;
  for (const auto& n : d3.notes) flagged = flagged || n.find("-2.204") != std::string::npos;
  EXPECT_TRUE(flagged);

  const auto ferro = ea::lower_bound(ea::make_cell(2), ea::point_mass(1, Centering::allow_noncentered));
  EXPECT_EQ(*ferro.lower_bound, -2);
  EXPECT_FALSE(ferro.centered);
  EXPECT_FALSE(ferro.notes.empty());
}

TEST(LowerBound, MonteCarloReportIsLabelled) {
  ea::BoundOptions options;
  options.mc_samples = 2000;
  const auto r = ea::lower_bound(ea::make_cell(2), ea::SampledDistribution::normal(1.0, 3), options);
  EXPECT_EQ(r.method, ea::Method::monte_carlo);
  EXPECT_FALSE(r.lower_bound.has_value());
  ASSERT_TRUE(r.mc_stderr.has_value());
  EXPECT_DOUBLE_EQ(*r.mc_lower_bound, 0.5 * *r.mc_cell_average);
  EXPECT_NE(std::find(r.notes.begin(), r.notes.end(), std::string(ea::kMonteCarloBanner)), r.notes.end());
}

TEST(Misfit, SpecExamples) {
  EXPECT_EQ(ea::misfit_lower_bound(Rational(-3, 2), -2), Rational(1, 4));
  EXPECT_EQ(ea::misfit_lower_bound(Rational(-9024, 4096), -3), Rational(17, 64));
  EXPECT_EQ(ea::to_double(Rational(17, 64)), 0.265625);
  EXPECT_EQ(ea::misfit_lower_bound(-2, -2), 0);
  EXPECT_THROW(ea::misfit_lower_bound(-1, 0), ea::ConfigError);
  EXPECT_EQ(ea::ideal_energy_per_site(2, ea::bernoulli(1)), -2);
  EXPECT_EQ(ea::ideal_energy_per_site(3, ea::bernoulli(1)), -3);
  EXPECT_EQ(*ea::lower_bound(ea::make_cell(3), ea::bernoulli(1)).misfit_bound, Rational(17, 64));
}

TEST(Comparison, TablesAndSandwich) {
  const auto t2 = ea::comparison_table(2);
  const auto t3 = ea::comparison_table(3);
  EXPECT_THROW(ea::comparison_table(4), ea::ConfigError);
  auto value_of = [](const auto& table, ea::ConstantRole role) {
    for (const auto& c : table) {
      if (c.role == role) return c.value;
    }
    return std::string();
  };
  EXPECT_EQ(value_of(t2, ea::ConstantRole::upper), "-1.39");
  EXPECT_EQ(value_of(t2, ea::ConstantRole::lower), "-1.560");
  EXPECT_EQ(value_of(t2, ea::ConstantRole::estimate), "-1.4");
  EXPECT_EQ(value_of(t3, ea::ConstantRole::upper), "-1.759");
  EXPECT_EQ(value_of(t3, ea::ConstantRole::lower), "-1.956");
  EXPECT_EQ(value_of(t3, ea::ConstantRole::heuristic_lower), "-2.25");
  EXPECT_EQ(value_of(t3, ea::ConstantRole::estimate), "-1.9");

  const auto b2 = *ea::lower_bound(ea::make_cell(2), ea::bernoulli(1)).lower_bound;
  const auto b3 = *ea::lower_bound(ea::make_cell(3), ea::bernoulli(1)).lower_bound;
  EXPECT_LT(ea::to_double(b2), std::stod(value_of(t2, ea::ConstantRole::upper)));
  EXPECT_LT(ea::to_double(b3), std::stod(value_of(t3, ea::ConstantRole::upper)));
  EXPECT_LE(b3, b2);
}

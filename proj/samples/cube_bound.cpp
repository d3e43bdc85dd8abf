// Library usage: exact lower bounds for the square and cube cells under a
// few coupling laws, then a short anisotropy sweep on the square.

#include <iostream>
#include <vector>

#include <ea_bounds/bounds.hpp>
#include <ea_bounds/quantum_cell.hpp>

int main() {
  using namespace ea;

  for (int d : {2, 3}) {
    const auto cell = make_cell(d);
    const auto report = lower_bound(cell, bernoulli(1));
    std::cout << "d=" << d << " bernoulli(1): " << to_fraction_string(*report.lower_bound) << " ("
              << to_decimal(*report.lower_bound).text << ")\n";
  }

  // A three-point law: J in {-2, 0, 2} with P(0) = 1/2.
  const auto three = DiscreteDistribution::make(
      {{Rational(-2), Rational(1, 4)}, {Rational(0), Rational(1, 2)}, {Rational(2), Rational(1, 4)}},
      Centering::required, "three-point");
  const auto report = lower_bound(make_cell(2), three);
  std::cout << "d=2 three-point: " << to_fraction_string(*report.lower_bound) << "\n";

  const std::vector<double> grid{0.0, 0.5, 1.0};
  for (const auto& row : anisotropy_sweep(make_cell(2), bernoulli(1), grid)) {
    std::cout << "alpha_x=" << row.alpha_x << " lower bound " << row.lower_bound << "\n";
  }
}

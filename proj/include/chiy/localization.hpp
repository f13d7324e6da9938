#pragma once

// Per-degree localization sums
//
//   S_i(t) = sum_p sigma_i(t^{w_p1}, ..., t^{w_pn}) / prod_j (1 - t^{w_pj}),
//
// which are constant, equal to (-1)^i N^i, for data coming from a circle
// action with isolated fixed points.

#include <optional>
#include <vector>

#include "chiy/fpdata.hpp"
#include "chiy/poly.hpp"

namespace chiy {

/// Degree-i contribution of a single point, as a normalized rational function.
RationalFunction point_contribution(const FixedPoint& p, std::size_t degree);

/// All sums S_0..S_n over one shared denominator
///
///   D(t) = prod_m (1 - t^m)^{e_m},  e_m = max_p #{j : |w_pj| = m},
///
/// so that every numerator is an ordinary polynomial and D(0) = 1.
struct LocalizationSums {
  LaurentPolynomial denominator;
  std::vector<LaurentPolynomial> numerators;
  /// S_i when it is constant; since D(0) = 1 a constant is always an integer.
  std::vector<std::optional<Integer>> constants;

  RationalFunction sum(std::size_t degree) const {
    return RationalFunction(numerators[degree], denominator);
  }
};

LocalizationSums localization_sums(const FixedPointDatum& d);

/// Reference route: accumulates point_contribution with RationalFunction
/// addition one point at a time.
std::vector<RationalFunction> localization_sums_reference(const FixedPointDatum& d);

/// Evaluates every S_i modulo the prime 2^61 - 1 at a few fixed t and
/// compares against (-1)^i N^i. A false result proves that some S_i differs
/// from (-1)^i N^i; true is inconclusive.
bool rigidity_plausible_mod_p(const FixedPointDatum& d);

}  // namespace chiy

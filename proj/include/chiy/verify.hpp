#pragma once

// Necessary conditions, structure results and fixed-point lower bounds,
// each evaluated as a predicate on a FixedPointDatum.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiy/error.hpp"
#include "chiy/fpdata.hpp"

namespace chiy {

/// chi^0, ..., chi^n of the chi_y-genus.
using ChiVector = std::vector<long long>;

/// Raised by chi_vector when the degree-i localization sum is not an
/// integer constant.
class NotConstantError : public Error {
 public:
  NotConstantError(std::size_t degree, std::string residual, bool non_integer_constant);

  std::size_t degree() const { return degree_; }
  const std::string& residual() const { return residual_; }
  bool non_integer_constant() const { return non_integer_; }

 private:
  std::size_t degree_;
  std::string residual_;
  bool non_integer_;
};

enum class CheckStatus {
  Pass,
  Fail,
  NotApplicable,  // hypothesis does not hold; counts as a pass
  Skipped,        // precondition failed; counts as a pass
};

const char* to_string(CheckStatus status);

struct CheckReport {
  std::string check_name;
  CheckStatus status = CheckStatus::Pass;
  /// Structured diagnostic; always present on failure.
  nlohmann::json witness;

  bool passed() const { return status != CheckStatus::Fail; }
};

void to_json(nlohmann::json& j, const CheckReport& r);

/// Certifies every degree-i localization sum constant and returns the
/// constants. Throws NotConstantError, or InvalidArgument for an empty datum.
ChiVector chi_vector(const FixedPointDatum& d);

/// chi_vector succeeds, chi^i = (-1)^i N^i, and N^i = N^{n-i}.
CheckReport check_rigidity(const FixedPointDatum& d);

enum class PairingMode {
  Existence,  // every occurring w has -w occurring somewhere
  Strict,     // additionally total multiplicities of w and -w agree
};

CheckReport check_weight_pairing(const FixedPointDatum& d, PairingMode mode = PairingMode::Existence);

/// With w the smallest positive weight, for each 0 <= i < n:
///   sum_{n_p = i} N_p(w) = sum_{n_p = i+1} N_p(-w).
/// Vacuous when no weight occurs; fails when weights occur but none is positive.
CheckReport check_smallest_weight_pairing(const FixedPointDatum& d);

/// For data with a single weight type: point count l * 2^n and
/// N^i = l * C(n, i). Throws NotSingleType otherwise.
CheckReport check_single_weight_structure(const FixedPointDatum& d);

/// If N_p(w) + N_p(-w) >= 3 dim / 8 at every point (w the smallest positive
/// weight), some point has i negative weights for floor(n/4) <= i <= ceil(3n/4).
CheckReport check_smallest_weight_density(const FixedPointDatum& d);

/// floor(dim / 4) + 1. Rejects odd or negative dim.
long long kosniowski_bound(long long dim);

CheckReport check_kosniowski(const FixedPointDatum& d);

struct TheoremScope {
  std::set<Weight> weight_types;
  bool single_type = false;         // every weight is +-w
  bool two_types = false;           // every weight is +-a or +-b, a != b
  bool coprime_types_bound = false;  // l types > 1, pairwise coprime, l small w.r.t. dim
  bool three_coprime_types = false;  // three types > 1, pairwise coprime
  bool bound_holds = false;          // point count >= kosniowski_bound(dim)

  bool any_applies() const { return single_type || two_types || coprime_types_bound || three_coprime_types; }
};

void to_json(nlohmann::json& j, const TheoremScope& s);

TheoremScope theorem_scope(const FixedPointDatum& d);

/// Exact test of dim < 4 * 2^{dim / (2 l)} for dim > 4, the form of
/// l < dim / (2 (log2 dim - 2)) used by the coprime-types bound.
bool coprime_types_inequality(long long dim, long long type_count);

/// {i : N^i != 0} is a contiguous interval.
CheckReport check_crowded(const NVector& counts);
CheckReport check_crowded(const FixedPointDatum& d);

/// N^i > 0 for floor(n/3) <= i <= ceil(2n/3).
CheckReport check_middle_range(const NVector& counts);
CheckReport check_middle_range(const FixedPointDatum& d);

/// Crowdedness in dimension <= 6, plus the dimension-6 dichotomy
/// (N^1 = N^2 > 0, N^0 = N^3 = 0) or all N^i > 0. Throws DimensionTooLarge
/// for n > 3.
CheckReport check_dim6_crowding(const FixedPointDatum& d);

/// Per point, the weights divisible by b.
std::vector<std::vector<Weight>> restrict_to_divisor(const FixedPointDatum& d, Weight b);

struct CheckOptions {
  PairingMode pairing = PairingMode::Existence;
};

/// Runs, in order: weight_pairing, rigidity, smallest_weight_pairing,
/// single_weight_structure, smallest_weight_density, kosniowski, crowded, middle_range,
/// dim6_crowding, theorem_scope. Checks whose preconditions fail are
/// reported as Skipped with the reason.
std::vector<CheckReport> run_all_checks(const FixedPointDatum& d, const CheckOptions& options = {});

}  // namespace chiy

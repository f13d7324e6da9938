#pragma once

// Exhaustive search for fixed point data satisfying the necessary
// conditions, within bounds on dimension, point count and weight size.

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiy/fpdata.hpp"
#include "chiy/poly.hpp"
#include "chiy/verify.hpp"

namespace chiy {

enum class Filter {
  Rigidity,
  WeightPairing,
  SmallestWeightPairing,
};

const char* to_string(Filter f);

struct EnumerationQuery {
  std::size_t half_dim = 1;
  std::size_t point_count = 1;
  Weight max_weight = 1;
  bool effective_only = true;
  bool dedup_sign_flip = false;
  std::set<Filter> filters{Filter::Rigidity, Filter::WeightPairing, Filter::SmallestWeightPairing};
  /// 0 selects the machine's parallelism.
  int worker_count = 0;
  std::uint64_t candidate_ceiling = 1'000'000'000;
};

/// Largest supported weight bound; weights are tracked in 64-bit masks.
inline constexpr Weight kMaxWeightBound = 31;

/// Throws InvalidArgument for out-of-range parameters.
void validate(const EnumerationQuery& q);

struct DatumDiagnostics {
  ChiVector chi;
  NVector counts;
  std::set<Weight> types;
  Weight gcd = 0;
  TheoremScope scope;
  bool rigidity = false;
  bool weight_pairing = false;
  bool smallest_weight_pairing = false;
  bool kosniowski = false;
  bool crowded = false;       // open question on contiguous chi support
  bool middle_range = false;  // open question on middle negative counts
};

DatumDiagnostics diagnose(const FixedPointDatum& d);

struct AdmissibleDatum {
  FixedPointDatum datum;
  DatumDiagnostics diagnostics;
};

struct EnumerationCounters {
  std::uint64_t nodes = 0;       // partial and complete candidates visited
  std::uint64_t candidates = 0;  // complete candidates
  std::uint64_t pruned_pairing = 0;
  std::uint64_t pruned_symmetry = 0;
  std::uint64_t rejected_effective = 0;
  std::uint64_t rejected_pairing = 0;
  std::uint64_t rejected_symmetry = 0;
  std::uint64_t rejected_smallest_pairing = 0;
  std::uint64_t rejected_rigidity_mod_p = 0;
  std::uint64_t rejected_rigidity = 0;
  std::uint64_t rejected_sign_flip = 0;

  EnumerationCounters& operator+=(const EnumerationCounters& o);
};

struct Finding {
  std::string kind;
  FixedPointDatum datum;
  nlohmann::json detail;
};

struct EnumerationReport {
  EnumerationQuery query;
  /// Canonical, sorted, duplicate-free.
  std::vector<AdmissibleDatum> admissible;
  EnumerationCounters counters;
  /// Admissible data violating the fixed-point lower bound.
  std::vector<Finding> findings;
  double wall_seconds = 0.0;
};

/// Pruned search, split across workers at the first point. Output does not
/// depend on worker_count. Throws ResourceLimit past the candidate ceiling.
EnumerationReport enumerate_admissible(const EnumerationQuery& q);

/// Unpruned serial oracle: every multiset of points, filters applied after
/// the fact through the verify checks. Throws ResourceLimit when the
/// candidate space exceeds 10^7.
EnumerationReport brute_force_admissible(const EnumerationQuery& q);

inline constexpr std::uint64_t kBruteForceCeiling = 10'000'000;

/// Number of multisets of k points drawn from the per-point weight multisets.
Integer candidate_space(std::size_t half_dim, std::size_t point_count, Weight max_weight);

struct ClassificationRow {
  std::size_t half_dim = 0;
  std::vector<FixedPointDatum> admissible;
  /// Whether the dimension may carry data with this many points.
  bool dimension_allowed = false;
  /// Admissible data not of the expected normal form.
  std::vector<FixedPointDatum> unmatched;

  bool consistent() const { return unmatched.empty() && (dimension_allowed || admissible.empty()); }
};

struct ClassificationReport {
  std::size_t point_count = 0;
  Weight max_weight = 0;
  std::vector<ClassificationRow> rows;

  bool consistent() const;
};

/// Two points occur only in dimension 2 ({-w},{w}) and dimension 6 (S^6
/// weights). Emptiness is only established up to max_weight.
ClassificationReport classify_two_points(Weight max_weight, std::span<const std::size_t> half_dims,
                                         int worker_count = 0);

/// Three points occur only in dimension 4 with CP^2 weights.
ClassificationReport classify_three_points(Weight max_weight, std::span<const std::size_t> half_dims,
                                           int worker_count = 0);

struct OpenQuestionReport {
  EnumerationQuery query;
  std::size_t examined = 0;
  /// Each violator with the failing check report.
  std::vector<Finding> violators;
};

/// Runs the contiguity and middle-range checks on every admissible datum.
OpenQuestionReport experiment_open_questions(const EnumerationQuery& q);
OpenQuestionReport experiment_open_questions(const EnumerationReport& report);

struct BoundRow {
  long long dim = 0;
  long long bound = 0;
  long long known_minimum = 0;
  /// Products of S^2, S^6 and CP^m attaining known_minimum, e.g. "CP^2 x S^6".
  std::vector<std::string> realizations;
};

std::vector<BoundRow> bound_table(std::size_t max_half_dim);

/// Builds a datum for a realization string from bound_table, using S^2 at
/// speed 1, S^6 with a = 1, b = 2, and CP^m with exponents 0..m.
FixedPointDatum realize(const std::string& realization);

}  // namespace chiy

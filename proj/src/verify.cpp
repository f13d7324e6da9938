#include "chiy/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "chiy/localization.hpp"

namespace chiy {

using nlohmann::json;

NotConstantError::NotConstantError(std::size_t degree, std::string residual, bool non_integer_constant)
    : Error(ErrorKind::NotConstant,
            "degree " + std::to_string(degree) + " localization sum " +
                (non_integer_constant ? "is a non-integer constant " : "is not constant: ") + residual),
      degree_(degree),
      residual_(std::move(residual)),
      non_integer_(non_integer_constant) {}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not_applicable";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

void to_json(json& j, const CheckReport& r) {
  j = json{{"check", r.check_name}, {"passed", r.passed()}, {"status", to_string(r.status)}};
  if (!r.witness.is_null()) j["witness"] = r.witness;
}

namespace {

CheckReport pass(std::string name, json witness = nullptr) {
  return {std::move(name), CheckStatus::Pass, std::move(witness)};
}

CheckReport fail(std::string name, json witness) {
  return {std::move(name), CheckStatus::Fail, std::move(witness)};
}

CheckReport status(std::string name, CheckStatus s, std::string reason) {
  return {std::move(name), s, json{{"reason", std::move(reason)}}};
}

long long binomial(long long n, long long k) {
  long long r = 1;
  for (long long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

bool has_any_weight(const FixedPointDatum& d) { return d.half_dim() > 0 && !d.empty(); }

}  // namespace

ChiVector chi_vector(const FixedPointDatum& d) {
  if (d.empty()) throw Error(ErrorKind::InvalidArgument, "chi vector of a datum without fixed points");
  const LocalizationSums sums = localization_sums(d);
  ChiVector chi;
  for (std::size_t i = 0; i < sums.constants.size(); ++i) {
    if (!sums.constants[i]) {
      const RationalFunction residual = sums.sum(i);
      const ConstantTest t = test_constant(residual);
      throw NotConstantError(i, residual.to_string(), t.kind == ConstantTest::Kind::NonIntegerConstant);
    }
    chi.push_back(sums.constants[i]->get_si());
  }
  return chi;
}

CheckReport check_rigidity(const FixedPointDatum& d) {
  const std::string name = "rigidity";
  if (d.empty()) return status(name, CheckStatus::Skipped, "no fixed points");
  ChiVector chi;
  try {
    chi = chi_vector(d);
  } catch (const NotConstantError& e) {
    json degrees = json::array();
    const LocalizationSums sums = localization_sums(d);
    for (std::size_t i = 0; i < sums.constants.size(); ++i) {
      if (!sums.constants[i]) degrees.push_back(i);
    }
    return fail(name, json{{"reason", e.non_integer_constant() ? "non_integer_constant" : "not_constant"},
                           {"degree", e.degree()},
                           {"nonconstant_degrees", std::move(degrees)},
                           {"residual", e.residual()}});
  }
  const NVector counts = n_vector(d);
  const std::size_t n = d.half_dim();
  for (std::size_t i = 0; i <= n; ++i) {
    const long long expected = (i % 2 == 0 ? 1 : -1) * counts[i];
    if (chi[i] != expected) {
      return fail(name, json{{"reason", "chi_mismatch"}, {"degree", i}, {"chi", chi[i]}, {"expected", expected}});
    }
    if (counts[i] != counts[n - i]) {
      return fail(name, json{{"reason", "n_vector_asymmetric"}, {"degree", i}, {"n_vector", counts}});
    }
  }
  return pass(name, json{{"chi", chi}});
}

CheckReport check_weight_pairing(const FixedPointDatum& d, PairingMode mode) {
  const std::string name = mode == PairingMode::Strict ? "weight_pairing_strict" : "weight_pairing";
  std::map<Weight, long long> total;
  for (const auto& p : d.points()) {
    for (Weight w : p.weights()) ++total[w];
  }
  for (auto [w, count] : total) {
    auto it = total.find(-w);
    if (it == total.end()) return fail(name, json{{"reason", "missing_opposite"}, {"weight", w}});
    if (mode == PairingMode::Strict && it->second != count) {
      // Strict mode is stronger than the existence statement.
      return fail(name, json{{"reason", "multiplicity_mismatch"},
                             {"weight", w},
                             {"count", count},
                             {"opposite_count", it->second},
                             {"note", "strict mode exceeds the existence statement"}});
    }
  }
  return pass(name);
}

CheckReport check_smallest_weight_pairing(const FixedPointDatum& d) {
  const std::string name = "smallest_weight_pairing";
  if (!has_any_weight(d)) return status(name, CheckStatus::NotApplicable, "no weights occur");
  if (!has_positive_weight(d)) return fail(name, json{{"reason", "no_positive_weight"}});
  const Weight w = smallest_positive_weight(d);
  const std::size_t n = d.half_dim();
  std::vector<long long> plus(n + 1, 0);
  std::vector<long long> minus(n + 1, 0);
  for (const auto& p : d.points()) {
    plus[p.negative_count()] += static_cast<long long>(p.multiplicity(w));
    minus[p.negative_count()] += static_cast<long long>(p.multiplicity(-w));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (plus[i] != minus[i + 1]) {
      return fail(name, json{{"weight", w}, {"i", i}, {"plus_count", plus[i]}, {"minus_count", minus[i + 1]}});
    }
  }
  return pass(name, json{{"weight", w}});
}

CheckReport check_single_weight_structure(const FixedPointDatum& d) {
  const std::string name = "single_weight_structure";
  const auto types = weight_types(d);
  if (types.size() != 1) {
    throw Error(ErrorKind::NotSingleType, std::to_string(types.size()) + " weight types occur");
  }
  const std::size_t n = d.half_dim();
  const long long block = 1LL << n;
  const auto k = static_cast<long long>(d.point_count());
  if (k == 0 || k % block != 0) {
    return fail(name, json{{"reason", "point_count"}, {"points", k}, {"block", block}});
  }
  const long long l = k / block;
  const NVector counts = n_vector(d);
  for (std::size_t i = 0; i <= n; ++i) {
    const long long expected = l * binomial(static_cast<long long>(n), static_cast<long long>(i));
    if (counts[i] != expected) {
      return fail(name, json{{"reason", "n_vector"}, {"i", i}, {"count", counts[i]}, {"expected", expected}});
    }
  }
  return pass(name, json{{"l", l}, {"weight", *types.begin()}});
}

CheckReport check_smallest_weight_density(const FixedPointDatum& d) {
  const std::string name = "smallest_weight_density";
  if (!has_positive_weight(d)) return status(name, CheckStatus::NotApplicable, "no positive weight");
  const Weight w = smallest_positive_weight(d);
  const auto n = static_cast<long long>(d.half_dim());
  // N_p(w) + N_p(-w) >= 3 * (2n) / 8  <=>  4 (N_p(w) + N_p(-w)) >= 3n.
  for (std::size_t k = 0; k < d.point_count(); ++k) {
    const auto& p = d.points()[k];
    const auto c = static_cast<long long>(p.multiplicity(w) + p.multiplicity(-w));
    if (4 * c < 3 * n) {
      return {name, CheckStatus::NotApplicable,
              json{{"reason", "hypothesis fails"}, {"weight", w}, {"point", k}, {"count", c}}};
    }
  }
  const NVector counts = n_vector(d);
  const long long lo = n / 4;
  const long long hi = (3 * n + 3) / 4;
  for (long long i = lo; i <= hi; ++i) {
    if (counts[static_cast<std::size_t>(i)] == 0) {
      return fail(name, json{{"weight", w}, {"missing_i", i}, {"range", {lo, hi}}});
    }
  }
  return pass(name, json{{"weight", w}, {"range", {lo, hi}}});
}

long long kosniowski_bound(long long dim) {
  if (dim < 0 || dim % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "dimension must be even and non-negative, got " + std::to_string(dim));
  }
  return dim / 4 + 1;
}

CheckReport check_kosniowski(const FixedPointDatum& d) {
  const std::string name = "kosniowski";
  if (d.empty()) return status(name, CheckStatus::Skipped, "no fixed points");
  const long long bound = kosniowski_bound(static_cast<long long>(d.dim()));
  const auto k = static_cast<long long>(d.point_count());
  json w{{"points", k}, {"bound", bound}};
  return k >= bound ? pass(name, w) : fail(name, w);
}

bool coprime_types_inequality(long long dim, long long type_count) {
  if (dim <= 4 || type_count < 1) return false;
  // dim < 4 * 2^{dim/(2l)}  <=>  dim^{2l} < 2^{dim + 4l}
  Integer lhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(dim), static_cast<unsigned long>(2 * type_count));
  Integer rhs;
  mpz_ui_pow_ui(rhs.get_mpz_t(), 2, static_cast<unsigned long>(dim + 4 * type_count));
  return lhs < rhs;
}

void to_json(json& j, const TheoremScope& s) {
  j = json{{"weight_types", s.weight_types},
           {"single_type", s.single_type},
           {"two_types", s.two_types},
           {"coprime_types_bound", s.coprime_types_bound},
           {"three_coprime_types", s.three_coprime_types},
           {"bound_holds", s.bound_holds}};
}

TheoremScope theorem_scope(const FixedPointDatum& d) {
  TheoremScope s;
  s.weight_types = weight_types(d);
  const std::vector<Weight> types(s.weight_types.begin(), s.weight_types.end());
  s.single_type = types.size() == 1;
  s.two_types = types.size() == 2;
  bool coprime = !types.empty() && types.front() > 1;
  for (std::size_t a = 0; a < types.size() && coprime; ++a) {
    for (std::size_t b = a + 1; b < types.size() && coprime; ++b) coprime = std::gcd(types[a], types[b]) == 1;
  }
  const auto dim = static_cast<long long>(d.dim());
  s.coprime_types_bound = coprime && coprime_types_inequality(dim, static_cast<long long>(types.size()));
  s.three_coprime_types = coprime && types.size() == 3;
  s.bound_holds = !d.empty() && static_cast<long long>(d.point_count()) >= kosniowski_bound(dim);
  return s;
}

CheckReport check_crowded(const NVector& counts) {
  const std::string name = "crowded";
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != 0) support.push_back(i);
  }
  for (std::size_t k = 1; k < support.size(); ++k) {
    if (support[k] != support[k - 1] + 1) {
      return fail(name, json{{"n_vector", counts}, {"gap_after", support[k - 1]}, {"gap_before", support[k]}});
    }
  }
  return pass(name);
}

CheckReport check_crowded(const FixedPointDatum& d) { return check_crowded(n_vector(d)); }

CheckReport check_middle_range(const NVector& counts) {
  const std::string name = "middle_range";
  const auto n = static_cast<long long>(counts.size()) - 1;
  const long long lo = n / 3;
  const long long hi = (2 * n + 2) / 3;
  for (long long i = lo; i <= hi; ++i) {
    if (counts[static_cast<std::size_t>(i)] == 0) {
      return fail(name, json{{"n_vector", counts}, {"missing_i", i}, {"range", {lo, hi}}});
    }
  }
  return pass(name, json{{"range", {lo, hi}}});
}

CheckReport check_middle_range(const FixedPointDatum& d) { return check_middle_range(n_vector(d)); }

CheckReport check_dim6_crowding(const FixedPointDatum& d) {
  const std::string name = "dim6_crowding";
  if (d.half_dim() > 3) {
    throw Error(ErrorKind::DimensionTooLarge, "dimension " + std::to_string(d.dim()) + " exceeds 6");
  }
  const NVector counts = n_vector(d);
  CheckReport crowded = check_crowded(counts);
  if (!crowded.passed()) return fail(name, crowded.witness);
  if (d.half_dim() == 3) {
    const bool sphere_like = counts[1] == counts[2] && counts[1] > 0 && counts[0] == 0 && counts[3] == 0;
    const bool all_positive = std::all_of(counts.begin(), counts.end(), [](long long c) { return c > 0; });
    if (sphere_like) return pass(name, json{{"branch", 1}});
    if (all_positive) return pass(name, json{{"branch", 2}});
    return fail(name, json{{"reason", "dichotomy"}, {"n_vector", counts}});
  }
  return pass(name);
}

std::vector<std::vector<Weight>> restrict_to_divisor(const FixedPointDatum& d, Weight b) {
  if (b < 2) throw Error(ErrorKind::InvalidArgument, "divisor must be at least 2");
  std::vector<std::vector<Weight>> out;
  for (const auto& p : d.points()) {
    std::vector<Weight> kept;
    for (Weight w : p.weights()) {
      if (w % b == 0) kept.push_back(w);
    }
    out.push_back(std::move(kept));
  }
  return out;
}

std::vector<CheckReport> run_all_checks(const FixedPointDatum& d, const CheckOptions& options) {
  std::vector<CheckReport> out;
  const bool empty = d.empty();

  out.push_back(check_weight_pairing(d, options.pairing));
  out.push_back(check_rigidity(d));
  const bool rigid = out.back().status == CheckStatus::Pass;

  out.push_back(check_smallest_weight_pairing(d));

  if (weight_types(d).size() == 1) {
    out.push_back(check_single_weight_structure(d));
  } else {
    out.push_back(status("single_weight_structure", CheckStatus::Skipped, "not exactly one weight type"));
  }

  out.push_back(check_smallest_weight_density(d));
  out.push_back(check_kosniowski(d));

  if (empty) {
    out.push_back(status("crowded", CheckStatus::Skipped, "no fixed points"));
    out.push_back(status("middle_range", CheckStatus::Skipped, "no fixed points"));
  } else if (!rigid) {
    out.push_back(status("crowded", CheckStatus::Skipped, "rigidity failed"));
    out.push_back(status("middle_range", CheckStatus::Skipped, "rigidity failed"));
  } else {
    out.push_back(check_crowded(d));
    out.push_back(check_middle_range(d));
  }

  if (d.half_dim() > 3) {
    out.push_back(status("dim6_crowding", CheckStatus::Skipped, "dimension exceeds 6"));
  } else if (empty || !rigid) {
    out.push_back(status("dim6_crowding", CheckStatus::Skipped, empty ? "no fixed points" : "rigidity failed"));
  } else {
    out.push_back(check_dim6_crowding(d));
  }

  if (empty) {
    out.push_back(status("theorem_scope", CheckStatus::Skipped, "no fixed points"));
  } else {
    const TheoremScope scope = theorem_scope(d);
    CheckReport r{"theorem_scope", CheckStatus::Pass, json(scope)};
    if (!scope.any_applies()) {
      r.status = CheckStatus::NotApplicable;
    } else if (!scope.bound_holds) {
      r.status = CheckStatus::Fail;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace chiy

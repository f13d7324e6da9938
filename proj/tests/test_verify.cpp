#include <random>

#include <doctest.h>

#include "chiy/error.hpp"
#include "chiy/localization.hpp"
#include "chiy/verify.hpp"
#include "oracle.hpp"

using namespace chiy;

namespace {

using Points = std::vector<std::vector<Weight>>;

mpq_class evaluate(const LaurentPolynomial& p, const mpq_class& t) {
  mpq_class total = 0;
  for (const auto& term : p.terms()) total += mpq_class(term.coefficient) * test::rational_pow(t, static_cast<int>(term.exponent));
  return total;
}

mpq_class evaluate(const RationalFunction& f, const mpq_class& t) {
  return evaluate(f.numerator(), t) / evaluate(f.denominator(), t);
}

const CheckReport& find(const std::vector<CheckReport>& reports, const std::string& name) {
  for (const auto& r : reports) {
    if (r.check_name == name) return r;
  }
  FAIL("missing check " << name);
  return reports.front();
}

ChiVector convolve(const ChiVector& a, const ChiVector& b) {
  ChiVector out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Random datum with arbitrary weights; almost never rigid.
FixedPointDatum random_raw_datum(std::mt19937& rng, std::size_t n, std::size_t k, int max_weight) {
  std::uniform_int_distribution<int> w(-max_weight, max_weight - 1);
  Points pts(k);
  for (auto& p : pts) {
    for (std::size_t j = 0; j < n; ++j) {
      int v = w(rng);
      if (v >= 0) ++v;
      p.push_back(v);
    }
  }
  return FixedPointDatum(n, pts);
}

}  // namespace

TEST_CASE("chi vectors of generators") {
  CHECK(chi_vector(gen_s2(1)) == ChiVector{1, -1});
  CHECK(chi_vector(gen_s6(1, 2)) == ChiVector{0, -1, 1, 0});
  CHECK(chi_vector(gen_s6(2, 3)) == ChiVector{0, -1, 1, 0});
  const std::vector<Weight> e013{0, 1, 3};
  CHECK(chi_vector(gen_cpn(e013)) == ChiVector{1, -1, 1});
  CHECK(chi_vector(gen_point()) == ChiVector{1});
  CHECK_THROWS_AS(chi_vector(FixedPointDatum(2, Points{})), Error);
}

TEST_CASE("non-constant sums are reported") {
  const FixedPointDatum bad(1, Points{{1}, {1}});
  CHECK_THROWS_AS(chi_vector(bad), NotConstantError);
  try {
    chi_vector(bad);
  } catch (const NotConstantError& e) {
    CHECK(e.degree() == 0);
    CHECK_FALSE(e.residual().empty());
    CHECK_FALSE(e.non_integer_constant());
  }
}

TEST_CASE("rigidity regression fixture") {
  const FixedPointDatum d(2, Points{{1, 2}, {-1, -2}});
  const auto r = check_rigidity(d);
  CHECK(r.status == CheckStatus::Fail);
  CHECK(r.witness["reason"] == "not_constant");
  const auto degrees = r.witness["nonconstant_degrees"].get<std::vector<std::size_t>>();
  CHECK(std::find(degrees.begin(), degrees.end(), 1u) != degrees.end());
  CHECK(r.witness.contains("residual"));
}

TEST_CASE("rigidity on generators") {
  CHECK(check_rigidity(gen_s6(1, 2)).status == CheckStatus::Pass);
  CHECK(check_rigidity(gen_s6(1, 2)).witness["chi"] == nlohmann::json({0, -1, 1, 0}));
  CHECK(check_rigidity(FixedPointDatum(1, Points{})).status == CheckStatus::Skipped);
}

TEST_CASE("weight pairing") {
  CHECK(check_weight_pairing(gen_s6(1, 2)).passed());
  const FixedPointDatum lonely(1, Points{{1}, {1}});
  const auto r = check_weight_pairing(lonely);
  CHECK(r.status == CheckStatus::Fail);
  CHECK(r.witness["weight"] == 1);

  // Existence holds but multiplicities differ.
  const FixedPointDatum uneven(2, Points{{1, 1}, {-1, 2}, {-2, 3}, {-3, 4}, {-4, 5}, {-5, -1}});
  CHECK(check_weight_pairing(uneven).passed());
  const auto strict = check_weight_pairing(FixedPointDatum(2, Points{{1, 1}, {-1, 2}, {-2, 1}}), PairingMode::Strict);
  CHECK(strict.check_name == "weight_pairing_strict");
  CHECK(strict.status == CheckStatus::Fail);
}

TEST_CASE("smallest weight pairing") {
  CHECK(check_smallest_weight_pairing(gen_s6(1, 2)).passed());
  CHECK(check_smallest_weight_pairing(gen_s6(1, 2)).witness["weight"] == 1);
  CHECK(check_smallest_weight_pairing(gen_point()).status == CheckStatus::NotApplicable);
  CHECK(check_smallest_weight_pairing(FixedPointDatum(1, Points{{-1}})).status == CheckStatus::Fail);
  const auto r = check_smallest_weight_pairing(FixedPointDatum(1, Points{{1}, {1}}));
  CHECK(r.status == CheckStatus::Fail);
}

TEST_CASE("single weight structure") {
  const auto cube = product(product(gen_s2(2), gen_s2(2)), gen_s2(2));
  const auto r = check_single_weight_structure(cube);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.witness["l"] == 1);
  const auto two = disjoint_union(cube, cube);
  CHECK(check_single_weight_structure(two).witness["l"] == 2);
  CHECK(check_single_weight_structure(FixedPointDatum(1, Points{{1}, {1}})).status == CheckStatus::Fail);
  try {
    check_single_weight_structure(gen_s6(1, 2));
    FAIL("expected NotSingleType");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSingleType);
  }
}

TEST_CASE("smallest weight density") {
  const auto sq = product(gen_s2(1), gen_s2(1));
  CHECK(check_smallest_weight_density(sq).status == CheckStatus::Pass);
  // Points with few +-1 weights make the hypothesis fail.
  const auto mixed = product(gen_s2(1), gen_s6(2, 3));
  CHECK(check_smallest_weight_density(mixed).status == CheckStatus::NotApplicable);
}

TEST_CASE("kosniowski bound") {
  CHECK(kosniowski_bound(2) == 1);
  CHECK(kosniowski_bound(4) == 2);
  CHECK(kosniowski_bound(6) == 2);
  CHECK(kosniowski_bound(8) == 3);
  CHECK(kosniowski_bound(12) == 4);
  CHECK_THROWS_AS(kosniowski_bound(5), Error);
  CHECK(check_kosniowski(gen_s6(1, 2)).passed());
  CHECK(check_kosniowski(FixedPointDatum(4, Points{{1, 1, 1, 1}})).status == CheckStatus::Fail);
  CHECK(check_kosniowski(FixedPointDatum(2, Points{})).status == CheckStatus::Skipped);
}

TEST_CASE("theorem scope") {
  CHECK_FALSE(coprime_types_inequality(16, 4));
  CHECK(coprime_types_inequality(16, 3));
  CHECK_FALSE(coprime_types_inequality(4, 1));
  CHECK(coprime_types_inequality(6, 1));

  const auto s = theorem_scope(product(gen_s2(2), gen_s2(3)));
  CHECK(s.two_types);
  CHECK(s.coprime_types_bound == coprime_types_inequality(4, 2));
  CHECK(s.bound_holds);
  const auto s6 = theorem_scope(gen_s6(2, 3));
  CHECK(s6.three_coprime_types);
  CHECK(s6.weight_types == std::set<Weight>{2, 3, 5});
  CHECK_FALSE(theorem_scope(gen_s6(1, 2)).three_coprime_types);
}

TEST_CASE("crowded and middle range") {
  CHECK(check_crowded(NVector{0, 1, 1, 0}).passed());
  const auto gap = check_crowded(NVector{1, 0, 1});
  CHECK(gap.status == CheckStatus::Fail);
  CHECK(gap.witness["gap_after"] == 0);
  CHECK(check_middle_range(NVector{1, 0, 0, 1}).status == CheckStatus::Fail);
  CHECK(check_middle_range(NVector{0, 1, 1, 0}).passed());
  CHECK(check_middle_range(NVector{1, 1}).passed());
}

TEST_CASE("dimension six crowding") {
  CHECK(check_dim6_crowding(gen_s6(1, 2)).witness["branch"] == 1);
  const std::vector<Weight> e{0, 1, 2, 3};
  CHECK(check_dim6_crowding(gen_cpn(e)).witness["branch"] == 2);
  CHECK(check_dim6_crowding(FixedPointDatum(3, Points{{1, 2, 3}, {-1, -2, -3}})).status == CheckStatus::Fail);
  try {
    check_dim6_crowding(product(gen_s6(1, 2), gen_s2(1)));
    FAIL("expected DimensionTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionTooLarge);
  }
}

TEST_CASE("restriction to a divisor") {
  CHECK(restrict_to_divisor(gen_s6(2, 4), 2) == Points{{-6, 2, 4}, {-4, -2, 6}});
  CHECK(restrict_to_divisor(gen_s6(1, 2), 3) == Points{{-3}, {3}});
  CHECK_THROWS_AS(restrict_to_divisor(gen_s6(1, 2), 1), Error);
}

TEST_CASE("run_all_checks order and skips") {
  const auto reports = run_all_checks(gen_s6(1, 2));
  const std::vector<std::string> names{"weight_pairing", "rigidity",     "smallest_weight_pairing",
                                       "single_weight_structure", "smallest_weight_density", "kosniowski",
                                       "crowded",        "middle_range", "dim6_crowding", "theorem_scope"};
  REQUIRE(reports.size() == names.size());
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(reports[i].check_name == names[i]);
  for (const auto& r : reports) CHECK(r.passed());

  const auto bad = run_all_checks(FixedPointDatum(2, Points{{1, 2}, {-1, -2}}));
  CHECK(find(bad, "rigidity").status == CheckStatus::Fail);
  CHECK(find(bad, "crowded").status == CheckStatus::Skipped);
  CHECK(find(bad, "dim6_crowding").status == CheckStatus::Skipped);
}

TEST_CASE("generator data pass every check") {
  std::mt19937 rng(31337);
  for (int iter = 0; iter < 120; ++iter) {
    const auto d = test::random_generator_datum(rng, 6, 4);
    for (const auto& r : run_all_checks(d)) {
      INFO(d.to_string() << " " << r.check_name << " " << r.witness.dump());
      CHECK(r.passed());
    }
  }
}

TEST_CASE("chi is multiplicative and additive") {
  std::mt19937 rng(8);
  for (int iter = 0; iter < 100; ++iter) {
    const auto a = test::random_generator_datum(rng, 3, 4);
    const auto b = test::random_generator_datum(rng, 3, 4);
    CHECK(chi_vector(product(a, b)) == convolve(chi_vector(a), chi_vector(b)));
    const auto a2 = test::random_generator_datum(rng, a.half_dim(), 4);
    if (a2.half_dim() == a.half_dim()) {
      ChiVector sum = chi_vector(a);
      const ChiVector other = chi_vector(a2);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += other[i];
      CHECK(chi_vector(disjoint_union(a, a2)) == sum);
    }
  }
}

TEST_CASE("chi alternates and counts points") {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 100; ++iter) {
    const auto d = test::random_generator_datum(rng, 5, 4);
    const ChiVector chi = chi_vector(d);
    long long total = 0;
    for (std::size_t i = 0; i < chi.size(); ++i) {
      CHECK((i % 2 == 0 ? chi[i] >= 0 : chi[i] <= 0));
      total += chi[i] < 0 ? -chi[i] : chi[i];
    }
    CHECK(total == static_cast<long long>(d.point_count()));
    CHECK(chi_vector(scale_weights(d, 3)) == chi);
    CHECK(chi_vector(sign_flip(d)) == chi);
  }
}

TEST_CASE("fast kernel, reference route and rational evaluation agree") {
  std::mt19937 rng(2718);
  const auto samples = test::default_samples();
  for (int iter = 0; iter < 150; ++iter) {
    const FixedPointDatum d = iter % 2 == 0 ? test::random_generator_datum(rng, 4, 3)
                                            : random_raw_datum(rng, 1 + iter % 3, 1 + iter % 4, 3);
    const auto fast = localization_sums(d);
    const auto ref = localization_sums_reference(d);
    REQUIRE(ref.size() == d.half_dim() + 1);
    for (std::size_t i = 0; i <= d.half_dim(); ++i) {
      INFO(d.to_string() << " degree " << i);
      CHECK(fast.sum(i) == ref[i]);
      CHECK(fast.constants[i] == constant_value(ref[i]));
      for (std::size_t s = 0; s < 3; ++s) {
        CHECK(evaluate(ref[i], samples[s]) == test::evaluate_sum(d, i, samples[s]));
      }
      const auto sampled = test::sampled_constant(d, i, samples);
      if (fast.constants[i]) {
        CHECK(sampled == fast.constants[i]->get_si());
      } else {
        CHECK_FALSE(sampled.has_value());
      }
    }
    if (!rigidity_plausible_mod_p(d)) CHECK(check_rigidity(d).status == CheckStatus::Fail);
  }
}

TEST_CASE("oracle proof samples certify generator chi vectors") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 20; ++iter) {
    const auto d = test::random_generator_datum(rng, 3, 2);
    const ChiVector chi = chi_vector(d);
    for (std::size_t i = 0; i < chi.size(); ++i) CHECK(test::sampled_constant(d, i, test::proof_samples(d)) == chi[i]);
  }
}

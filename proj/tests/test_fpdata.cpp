#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include <doctest.h>

#include "chiy/error.hpp"
#include "chiy/fpdata.hpp"
#include "oracle.hpp"

using namespace chiy;

namespace {

using Points = std::vector<std::vector<Weight>>;

Points weights_of(const FixedPointDatum& d) {
  Points out;
  for (const auto& p : d.points()) out.push_back(p.weights());
  return out;
}

NVector convolve(const NVector& a, const NVector& b) {
  NVector out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("new datum validation") {
  const FixedPointDatum s6(3, Points{{-3, 1, 2}, {-1, -2, 3}});
  CHECK(s6.point_count() == 2);
  CHECK(s6.dim() == 6);
  CHECK(weights_of(s6) == Points{{-3, 1, 2}, {-2, -1, 3}});

  const FixedPointDatum point(0, Points{{}});
  CHECK(point.point_count() == 1);

  CHECK(kind_of([] { FixedPointDatum(2, Points{{1, 0}}); }) == ErrorKind::ZeroWeight);
  CHECK(kind_of([] { FixedPointDatum(3, Points{{1, 2}}); }) == ErrorKind::WrongArity);
}

TEST_CASE("negative counts and multiplicities") {
  CHECK(n_p(FixedPoint({-3, 1, 2})) == 1);
  CHECK(n_p(FixedPoint({-1, -2, 3})) == 2);
  CHECK(n_p(FixedPoint(std::vector<Weight>{})) == 0);
  CHECK(multiplicity(FixedPoint({-1, -1, 2}), -1) == 2);
  CHECK(multiplicity(FixedPoint({-3, 1, 2}), 1) == 1);
  CHECK(multiplicity(FixedPoint({-3, 1, 2}), 5) == 0);
  CHECK_THROWS_AS(multiplicity(FixedPoint({1}), 0), Error);
}

TEST_CASE("n vector") {
  CHECK(n_vector(gen_s6(1, 2)) == NVector{0, 1, 1, 0});
  const std::vector<Weight> exps{0, 1, 3};
  CHECK(n_vector(gen_cpn(exps)) == NVector{1, 1, 1});
  CHECK(n_vector(gen_point()) == NVector{1});
}

TEST_CASE("smallest positive weight") {
  CHECK(smallest_positive_weight(gen_s6(2, 3)) == 2);
  CHECK(smallest_positive_weight(gen_s2(4)) == 4);
  const FixedPointDatum none(1, Points{{-1}, {-2}});
  CHECK(kind_of([&] { smallest_positive_weight(none); }) == ErrorKind::NoPositiveWeight);
}

TEST_CASE("weight types and effectiveness") {
  CHECK(weight_types(gen_s6(1, 2)) == std::set<Weight>{1, 2, 3});
  CHECK(weight_types(gen_s2(7)) == std::set<Weight>{7});
  CHECK(weight_types(FixedPointDatum(2, Points{})).empty());

  CHECK_FALSE(is_effective(FixedPointDatum(2, Points{{2, 4}, {-2, -4}})));
  CHECK(is_effective(gen_s6(1, 2)));
  CHECK_FALSE(is_effective(gen_s2(3)));
  CHECK(is_effective(gen_point()));
}

TEST_CASE("S^6 generator") {
  CHECK(weights_of(gen_s6(1, 1)) == Points{{-2, 1, 1}, {-1, -1, 2}});
  CHECK(weights_of(gen_s6(1, 2)) == Points{{-3, 1, 2}, {-2, -1, 3}});
  CHECK(weights_of(gen_s6(2, 3)) == Points{{-5, 2, 3}, {-3, -2, 5}});
  CHECK_THROWS_AS(gen_s6(0, 1), Error);
}

TEST_CASE("CP^n generator") {
  const std::vector<Weight> e01{0, 1};
  CHECK(weights_of(gen_cpn(e01)) == Points{{1}, {-1}});
  const std::vector<Weight> e013{0, 1, 3};
  CHECK(weights_of(gen_cpn(e013)) == Points{{1, 3}, {-1, 2}, {-3, -2}});
  const std::vector<Weight> dup{0, 1, 1};
  CHECK(kind_of([&] { gen_cpn(dup); }) == ErrorKind::DuplicateExponent);
  const std::vector<Weight> desc{3, 1};
  CHECK(kind_of([&] { gen_cpn(desc); }) == ErrorKind::DuplicateExponent);
}

TEST_CASE("S^2 generator") {
  CHECK(weights_of(gen_s2(1)) == Points{{1}, {-1}});
  CHECK(weights_of(gen_s2(5)) == Points{{5}, {-5}});
  CHECK_THROWS_AS(gen_s2(0), Error);
}

TEST_CASE("product") {
  const auto sq = product(gen_s2(1), gen_s2(1));
  CHECK(sq.half_dim() == 2);
  CHECK(weights_of(sq) == Points{{1, 1}, {-1, 1}, {-1, 1}, {-1, -1}});
  CHECK(n_vector(sq) == NVector{1, 2, 1});

  const auto s6 = gen_s6(1, 2);
  CHECK(product(s6, gen_point()) == s6);

  const auto s2s6 = product(gen_s6(1, 1), gen_s2(1));
  CHECK(s2s6.point_count() == 4);
  CHECK(s2s6.half_dim() == 4);
}

TEST_CASE("disjoint union") {
  const auto two = disjoint_union(gen_s2(1), gen_s2(1));
  CHECK(two.point_count() == 4);
  CHECK(two.half_dim() == 1);
  CHECK(kind_of([] { disjoint_union(gen_s2(1), product(gen_s2(1), gen_s2(1))); }) == ErrorKind::DimensionMismatch);
  CHECK(disjoint_union(gen_s6(1, 2), FixedPointDatum(3, Points{})) == gen_s6(1, 2));
  CHECK(disjoint_union(gen_s6(1, 2), FixedPointDatum()) == gen_s6(1, 2));
}

TEST_CASE("canonical form") {
  const FixedPointDatum raw(3, Points{{2, -3, 1}, {3, -1, -2}});
  CHECK(weights_of(canonicalize(raw)) == Points{{-3, 1, 2}, {-2, -1, 3}});
  CHECK(canonicalize(canonicalize(raw)) == canonicalize(raw));
  CHECK(canonicalize(FixedPointDatum(1, Points{{1}, {-1}})) == canonicalize(FixedPointDatum(1, Points{{-1}, {1}})));
}

TEST_CASE("canonical form is permutation invariant and idempotent") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    const auto d = test::random_generator_datum(rng, 5);
    const auto c = canonicalize(d);
    CHECK(canonicalize(c) == c);
    std::vector<FixedPoint> shuffled = d.points();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(canonicalize(FixedPointDatum(d.half_dim(), shuffled)) == c);
    CHECK(std::is_sorted(c.points().begin(), c.points().end()));
  }
}

TEST_CASE("product and union statistics") {
  std::mt19937 rng(4242);
  for (int iter = 0; iter < 200; ++iter) {
    const auto a = test::random_generator_datum(rng, 3);
    const auto b = test::random_generator_datum(rng, 3);
    const auto ab = product(a, b);
    CHECK(n_vector(ab) == convolve(n_vector(a), n_vector(b)));

    auto types = weight_types(a);
    const auto tb = weight_types(b);
    types.insert(tb.begin(), tb.end());
    CHECK(weight_types(ab) == types);

    const auto a2 = test::random_generator_datum(rng, a.half_dim());
    if (a2.half_dim() == a.half_dim()) {
      const auto u = disjoint_union(a, a2);
      NVector sum = n_vector(a);
      const NVector other = n_vector(a2);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += other[i];
      CHECK(n_vector(u) == sum);
    }
  }
}

TEST_CASE("CP^n has one point of each negative count") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> len(2, 8);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Weight> pool(11);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Weight> exps(pool.begin(), pool.begin() + len(rng));
    std::sort(exps.begin(), exps.end());
    const auto d = gen_cpn(exps);
    for (std::size_t i = 0; i < d.point_count(); ++i) CHECK(n_p(d.points()[i]) == i);
    CHECK(n_vector(d) == NVector(exps.size(), 1));
  }
}

TEST_CASE("sign flip and scaling") {
  const auto s6 = gen_s6(1, 2);
  CHECK(canonicalize(sign_flip(s6)) == canonicalize(s6));
  CHECK(weights_of(scale_weights(gen_s2(1), 3)) == Points{{3}, {-3}});
  CHECK_THROWS_AS(scale_weights(s6, 0), Error);
}

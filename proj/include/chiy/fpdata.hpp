#pragma once

// Fixed point data of a circle action with isolated fixed points: for each
// fixed point, the multiset of n nonzero weights of the isotropy
// representation on the tangent space (manifold dimension 2n).

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace chiy {

using Weight = int;

class FixedPoint {
 public:
  FixedPoint() = default;
  /// Sorts the weights; rejects zero.
  explicit FixedPoint(std::vector<Weight> weights);

  const std::vector<Weight>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

  /// Number of strictly negative weights.
  std::size_t negative_count() const;
  /// Multiplicity of w. Rejects w = 0.
  std::size_t multiplicity(Weight w) const;

  friend auto operator<=>(const FixedPoint&, const FixedPoint&) = default;
  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;

 private:
  std::vector<Weight> weights_;
};

/// N^0, ..., N^n: number of fixed points with exactly i negative weights.
using NVector = std::vector<long long>;

class FixedPointDatum {
 public:
  FixedPointDatum() = default;
  /// Validates arity and nonzero weights. Point order is preserved.
  FixedPointDatum(std::size_t half_dim, std::vector<std::vector<Weight>> points);
  FixedPointDatum(std::size_t half_dim, std::vector<FixedPoint> points);

  std::size_t half_dim() const { return half_dim_; }
  std::size_t dim() const { return 2 * half_dim_; }
  const std::vector<FixedPoint>& points() const { return points_; }
  std::size_t point_count() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  friend bool operator==(const FixedPointDatum&, const FixedPointDatum&) = default;
  /// Lexicographic on (half_dim, points); meaningful on canonical data.
  friend auto operator<=>(const FixedPointDatum&, const FixedPointDatum&) = default;

  std::string to_string() const;

 private:
  std::size_t half_dim_ = 0;
  std::vector<FixedPoint> points_;
};

inline std::size_t n_p(const FixedPoint& p) { return p.negative_count(); }
inline std::size_t multiplicity(const FixedPoint& p, Weight w) { return p.multiplicity(w); }

NVector n_vector(const FixedPointDatum& d);

/// Smallest positive weight over all points; throws NoPositiveWeight.
Weight smallest_positive_weight(const FixedPointDatum& d);
bool has_positive_weight(const FixedPointDatum& d);

/// Absolute values of all occurring weights.
std::set<Weight> weight_types(const FixedPointDatum& d);

/// gcd of all occurring |w| (0 when no weight occurs).
Weight weight_gcd(const FixedPointDatum& d);
/// gcd of weights equals 1; vacuously true when no weight occurs.
bool is_effective(const FixedPointDatum& d);

// Generators for the standard example families.

/// Rotation of S^6 = G_2/SU(3): {-a-b, a, b} and {-a, -b, a+b}.
FixedPointDatum gen_s6(Weight a, Weight b);
/// Linear action on CP^n with strictly increasing exponents a_0 < ... < a_n;
/// point i has weights {a_j - a_i : j != i}.
FixedPointDatum gen_cpn(std::span<const Weight> exponents);
/// Rotation of S^2 at speed w: {w} and {-w}.
FixedPointDatum gen_s2(Weight w);
/// The point, n = 0.
FixedPointDatum gen_point();

/// Diagonal action on a product: one point per pair, weights concatenated.
FixedPointDatum product(const FixedPointDatum& a, const FixedPointDatum& b);
/// Disjoint union; half dimensions must agree unless one side has no points.
FixedPointDatum disjoint_union(const FixedPointDatum& a, const FixedPointDatum& b);

/// Points sorted lexicographically (weights are always sorted).
FixedPointDatum canonicalize(const FixedPointDatum& d);

/// Negates every weight at every point.
FixedPointDatum sign_flip(const FixedPointDatum& d);

/// Multiplies every weight by c > 0.
FixedPointDatum scale_weights(const FixedPointDatum& d, Weight c);

}  // namespace chiy

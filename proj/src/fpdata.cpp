#include "chiy/fpdata.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "chiy/error.hpp"

namespace chiy {

FixedPoint::FixedPoint(std::vector<Weight> weights) : weights_(std::move(weights)) {
  if (std::find(weights_.begin(), weights_.end(), 0) != weights_.end()) {
    throw Error(ErrorKind::ZeroWeight, "weights must be nonzero");
  }
  std::sort(weights_.begin(), weights_.end());
}

std::size_t FixedPoint::negative_count() const {
  return static_cast<std::size_t>(
      std::lower_bound(weights_.begin(), weights_.end(), 0) - weights_.begin());
}

std::size_t FixedPoint::multiplicity(Weight w) const {
  if (w == 0) throw Error(ErrorKind::ZeroWeight, "multiplicity of weight 0");
  auto [lo, hi] = std::equal_range(weights_.begin(), weights_.end(), w);
  return static_cast<std::size_t>(hi - lo);
}

FixedPointDatum::FixedPointDatum(std::size_t half_dim, std::vector<std::vector<Weight>> points)
    : half_dim_(half_dim) {
  points_.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].size() != half_dim) {
      throw Error(ErrorKind::WrongArity, "point " + std::to_string(k) + " has " +
                                             std::to_string(points[k].size()) + " weights, expected " +
                                             std::to_string(half_dim));
    }
    points_.emplace_back(std::move(points[k]));
  }
}

FixedPointDatum::FixedPointDatum(std::size_t half_dim, std::vector<FixedPoint> points)
    : half_dim_(half_dim), points_(std::move(points)) {
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (points_[k].size() != half_dim) {
      throw Error(ErrorKind::WrongArity, "point " + std::to_string(k) + " has " +
                                             std::to_string(points_[k].size()) + " weights, expected " +
                                             std::to_string(half_dim));
    }
  }
}

std::string FixedPointDatum::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (k) os << ",";
    os << "{";
    const auto& w = points_[k].weights();
    for (std::size_t j = 0; j < w.size(); ++j) os << (j ? "," : "") << w[j];
    os << "}";
  }
  os << "]";
  return os.str();
}

NVector n_vector(const FixedPointDatum& d) {
  NVector counts(d.half_dim() + 1, 0);
  for (const auto& p : d.points()) ++counts[p.negative_count()];
  return counts;
}

bool has_positive_weight(const FixedPointDatum& d) {
  return std::any_of(d.points().begin(), d.points().end(),
                     [](const FixedPoint& p) { return !p.weights().empty() && p.weights().back() > 0; });
}

Weight smallest_positive_weight(const FixedPointDatum& d) {
  Weight best = 0;
  for (const auto& p : d.points()) {
    auto it = std::upper_bound(p.weights().begin(), p.weights().end(), 0);
    if (it != p.weights().end() && (best == 0 || *it < best)) best = *it;
  }
  if (best == 0) throw Error(ErrorKind::NoPositiveWeight, "no positive weight occurs");
  return best;
}

std::set<Weight> weight_types(const FixedPointDatum& d) {
  std::set<Weight> types;
  for (const auto& p : d.points()) {
    for (Weight w : p.weights()) types.insert(w < 0 ? -w : w);
  }
  return types;
}

Weight weight_gcd(const FixedPointDatum& d) {
  Weight g = 0;
  for (const auto& p : d.points()) {
    for (Weight w : p.weights()) g = std::gcd(g, w);
  }
  return g;
}

bool is_effective(const FixedPointDatum& d) {
  const Weight g = weight_gcd(d);
  return g == 0 || g == 1;
}

FixedPointDatum gen_s6(Weight a, Weight b) {
  if (a < 1 || b < 1) throw Error(ErrorKind::InvalidArgument, "S^6 speeds must be positive");
  return FixedPointDatum(3, std::vector<std::vector<Weight>>{{-a - b, a, b}, {-a, -b, a + b}});
}

FixedPointDatum gen_cpn(std::span<const Weight> exponents) {
  if (exponents.empty()) throw Error(ErrorKind::InvalidArgument, "CP^n needs at least one exponent");
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] < 0) throw Error(ErrorKind::InvalidArgument, "exponents must be non-negative");
    if (k > 0 && exponents[k] <= exponents[k - 1]) {
      throw Error(ErrorKind::DuplicateExponent, "exponents must be strictly increasing");
    }
  }
  const std::size_t n = exponents.size() - 1;
  std::vector<std::vector<Weight>> points;
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<Weight> w;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j != i) w.push_back(exponents[j] - exponents[i]);
    }
    points.push_back(std::move(w));
  }
  return FixedPointDatum(n, std::move(points));
}

FixedPointDatum gen_s2(Weight w) {
  if (w < 1) throw Error(ErrorKind::InvalidArgument, "S^2 speed must be positive");
  return FixedPointDatum(1, std::vector<std::vector<Weight>>{{w}, {-w}});
}

FixedPointDatum gen_point() { return FixedPointDatum(0, std::vector<std::vector<Weight>>{{}}); }

FixedPointDatum product(const FixedPointDatum& a, const FixedPointDatum& b) {
  std::vector<FixedPoint> points;
  points.reserve(a.point_count() * b.point_count());
  for (const auto& p : a.points()) {
    for (const auto& q : b.points()) {
      std::vector<Weight> w = p.weights();
      w.insert(w.end(), q.weights().begin(), q.weights().end());
      points.emplace_back(std::move(w));
    }
  }
  return FixedPointDatum(a.half_dim() + b.half_dim(), std::move(points));
}

FixedPointDatum disjoint_union(const FixedPointDatum& a, const FixedPointDatum& b) {
  if (a.half_dim() != b.half_dim()) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    throw Error(ErrorKind::DimensionMismatch, "cannot unite data of dimensions " +
                                                  std::to_string(a.dim()) + " and " +
                                                  std::to_string(b.dim()));
  }
  std::vector<FixedPoint> points = a.points();
  points.insert(points.end(), b.points().begin(), b.points().end());
  return FixedPointDatum(a.half_dim(), std::move(points));
}

FixedPointDatum canonicalize(const FixedPointDatum& d) {
  std::vector<FixedPoint> points = d.points();
  std::sort(points.begin(), points.end());
  return FixedPointDatum(d.half_dim(), std::move(points));
}

FixedPointDatum sign_flip(const FixedPointDatum& d) {
  std::vector<FixedPoint> points;
  for (const auto& p : d.points()) {
    std::vector<Weight> w = p.weights();
    for (auto& x : w) x = -x;
    points.emplace_back(std::move(w));
  }
  return FixedPointDatum(d.half_dim(), std::move(points));
}

FixedPointDatum scale_weights(const FixedPointDatum& d, Weight c) {
  if (c < 1) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
  std::vector<FixedPoint> points;
  for (const auto& p : d.points()) {
    std::vector<Weight> w = p.weights();
    for (auto& x : w) x *= c;
    points.emplace_back(std::move(w));
  }
  return FixedPointDatum(d.half_dim(), std::move(points));
}

}  // namespace chiy

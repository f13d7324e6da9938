#include "chiy/localization.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>

namespace chiy {

RationalFunction point_contribution(const FixedPoint& p, std::size_t degree) {
  LaurentPolynomial den(1);
  for (Weight w : p.weights()) den *= one_minus_t_pow(w);
  return RationalFunction(elementary_symmetric(degree, p.weights()), den);
}

std::vector<RationalFunction> localization_sums_reference(const FixedPointDatum& d) {
  std::vector<RationalFunction> sums(d.half_dim() + 1);
  for (const auto& p : d.points()) {
    for (std::size_t i = 0; i <= d.half_dim(); ++i) sums[i] = sums[i] + point_contribution(p, i);
  }
  return sums;
}

namespace {

using Dense = std::vector<Integer>;

// a <- a * (1 - t^m), growing a by m slots.
void mul_one_minus_t_pow(Dense& a, std::size_t m) {
  a.resize(a.size() + m);
  for (std::size_t k = a.size(); k-- > m;) a[k] -= a[k - m];
}

LaurentPolynomial to_poly(const Dense& a) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (sgn(a[k]) != 0) terms.push_back({static_cast<Exponent>(k), a[k]});
  }
  return LaurentPolynomial::from_terms(std::move(terms));
}

}  // namespace

LocalizationSums localization_sums(const FixedPointDatum& d) {
  const std::size_t n = d.half_dim();

  // Largest multiplicity of each |w| at any single point.
  std::map<std::size_t, std::size_t> exponent_of;
  for (const auto& p : d.points()) {
    std::map<std::size_t, std::size_t> local;
    for (Weight w : p.weights()) ++local[static_cast<std::size_t>(w < 0 ? -w : w)];
    for (auto [m, e] : local) exponent_of[m] = std::max(exponent_of[m], e);
  }

  Dense denom{Integer(1)};
  for (auto [m, e] : exponent_of) {
    for (std::size_t r = 0; r < e; ++r) mul_one_minus_t_pow(denom, m);
  }

  std::vector<Dense> total(n + 1, Dense(denom.size()));
  for (const auto& p : d.points()) {
    std::size_t neg_sum = 0;
    std::size_t abs_sum = 0;
    std::map<std::size_t, std::size_t> local;
    for (Weight w : p.weights()) {
      const auto a = static_cast<std::size_t>(w < 0 ? -w : w);
      if (w < 0) neg_sum += a;
      abs_sum += a;
      ++local[a];
    }
    // e[j] = t^{neg_sum} * sigma_j(t^w), stored densely from exponent 0.
    std::vector<Dense> e(n + 1, Dense(abs_sum + 1));
    e[0][neg_sum] = 1;
    for (Weight w : p.weights()) {
      for (std::size_t j = n; j >= 1; --j) {
        for (std::size_t k = 0; k <= abs_sum; ++k) {
          const auto src = static_cast<std::ptrdiff_t>(k) - w;
          if (src < 0 || src > static_cast<std::ptrdiff_t>(abs_sum)) continue;
          const Integer& c = e[j - 1][static_cast<std::size_t>(src)];
          if (sgn(c) != 0) e[j][k] += c;
        }
      }
    }
    const bool negate = p.negative_count() % 2 == 1;
    for (std::size_t i = 0; i <= n; ++i) {
      Dense num = std::move(e[i]);
      // Cofactor D / prod_j (1 - t^{|w_j|}).
      for (auto [m, emax] : exponent_of) {
        const std::size_t have = local.count(m) ? local[m] : 0;
        for (std::size_t r = have; r < emax; ++r) mul_one_minus_t_pow(num, m);
      }
      auto& acc = total[i];
      for (std::size_t k = 0; k < num.size() && k < acc.size(); ++k) {
        if (negate) {
          acc[k] -= num[k];
        } else {
          acc[k] += num[k];
        }
      }
    }
  }

  LocalizationSums out;
  out.denominator = to_poly(denom);
  for (std::size_t i = 0; i <= n; ++i) {
    const Integer c = total[i][0];
    bool constant = true;
    for (std::size_t k = 0; k < denom.size() && constant; ++k) {
      constant = total[i][k] == c * denom[k];
    }
    out.constants.push_back(constant ? std::optional<Integer>(c) : std::nullopt);
    out.numerators.push_back(to_poly(total[i]));
  }
  return out;
}

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, base);
    base = mul_mod(base, base);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

}  // namespace

bool rigidity_plausible_mod_p(const FixedPointDatum& d) {
  const std::size_t n = d.half_dim();
  const NVector counts = n_vector(d);
  static constexpr std::array<std::uint64_t, 2> kSamples{3, 5};

  for (std::uint64_t t0 : kSamples) {
    std::vector<std::uint64_t> sums(n + 1, 0);
    bool degenerate = false;
    std::vector<std::uint64_t> e(n + 1);
    for (const auto& p : d.points()) {
      std::fill(e.begin(), e.end(), 0);
      e[0] = 1;
      std::uint64_t den = 1;
      for (Weight w : p.weights()) {
        std::uint64_t x = pow_mod(t0, static_cast<std::uint64_t>(w < 0 ? -w : w));
        if (w < 0) x = inv_mod(x);
        const std::uint64_t factor = add_mod(1, kPrime - x);
        if (factor == 0) {
          degenerate = true;
          break;
        }
        den = mul_mod(den, factor);
        for (std::size_t j = n; j >= 1; --j) e[j] = add_mod(e[j], mul_mod(e[j - 1], x));
      }
      if (degenerate) break;
      const std::uint64_t inv = inv_mod(den);
      for (std::size_t i = 0; i <= n; ++i) sums[i] = add_mod(sums[i], mul_mod(e[i], inv));
    }
    if (degenerate) continue;
    for (std::size_t i = 0; i <= n; ++i) {
      const auto c = static_cast<std::uint64_t>(counts[i]) % kPrime;
      const std::uint64_t expected = (i % 2 == 0 || c == 0) ? c : kPrime - c;
      if (sums[i] != expected) return false;
    }
  }
  return true;
}

}  // namespace chiy

#include "chiy/poly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "chiy/error.hpp"

namespace chiy {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::NoPositiveWeight: return "NoPositiveWeight";
    case ErrorKind::DuplicateExponent: return "DuplicateExponent";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSingleType: return "NotSingleType";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NotConstant: return "NotConstant";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

using Dense = std::vector<Integer>;  // coefficient of t^k at index k

Dense to_dense(const LaurentPolynomial& p) {
  if (p.is_zero()) return {};
  Dense out(static_cast<std::size_t>(p.max_exponent() + 1));
  for (const auto& term : p.terms()) out[static_cast<std::size_t>(term.exponent)] = term.coefficient;
  return out;
}

LaurentPolynomial from_dense(const Dense& d) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (sgn(d[k]) != 0) terms.push_back({static_cast<Exponent>(k), d[k]});
  }
  return LaurentPolynomial::from_terms(std::move(terms));
}

void trim(Dense& d) {
  while (!d.empty() && sgn(d.back()) == 0) d.pop_back();
}

Integer dense_content(const Dense& d) {
  Integer g = 0;
  for (const auto& c : d) {
    if (sgn(c) != 0) g = gcd(g, c);
  }
  return g;
}

Dense primitive_part(Dense d) {
  trim(d);
  if (d.empty()) return d;
  Integer g = dense_content(d);
  if (sgn(d.back()) < 0) g = -g;
  for (auto& c : d) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return d;
}

// a <- lc(b)^k * a mod b, then trimmed.
Dense pseudo_remainder(Dense a, const Dense& b) {
  const Integer& lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const Integer top = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lead;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= top * b[k];
    trim(a);
  }
  return a;
}

void check_ordinary(const LaurentPolynomial& p, const char* what) {
  if (!p.is_zero() && p.min_exponent() < 0) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " requires non-negative exponents");
  }
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(Integer constant) {
  if (sgn(constant) != 0) terms_.push_back({0, std::move(constant)});
}

LaurentPolynomial LaurentPolynomial::monomial(Integer coefficient, Exponent exponent) {
  LaurentPolynomial p;
  if (sgn(coefficient) != 0) p.terms_.push_back({exponent, std::move(coefficient)});
  return p;
}

LaurentPolynomial LaurentPolynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  LaurentPolynomial p;
  for (auto& term : terms) {
    if (!p.terms_.empty() && p.terms_.back().exponent == term.exponent) {
      p.terms_.back().coefficient += term.coefficient;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coefficient) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(term));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coefficient) == 0) p.terms_.pop_back();
  return p;
}

Integer LaurentPolynomial::coefficient(Exponent e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, Exponent x) { return t.exponent < x; });
  if (it != terms_.end() && it->exponent == e) return it->coefficient;
  return 0;
}

Integer LaurentPolynomial::lowest_coefficient() const {
  return terms_.empty() ? Integer(0) : terms_.front().coefficient;
}

Integer LaurentPolynomial::content() const {
  Integer g = 0;
  for (const auto& term : terms_) g = gcd(g, term.coefficient);
  return g;
}

LaurentPolynomial LaurentPolynomial::shifted(Exponent by) const {
  LaurentPolynomial p = *this;
  for (auto& term : p.terms_) term.exponent += by;
  return p;
}

LaurentPolynomial LaurentPolynomial::scaled(const Integer& factor) const {
  if (sgn(factor) == 0) return {};
  LaurentPolynomial p = *this;
  for (auto& term : p.terms_) term.coefficient *= factor;
  return p;
}

LaurentPolynomial LaurentPolynomial::divided_exact(const Integer& divisor) const {
  LaurentPolynomial p = *this;
  for (auto& term : p.terms_) {
    mpz_divexact(term.coefficient.get_mpz_t(), term.coefficient.get_mpz_t(), divisor.get_mpz_t());
  }
  return p;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial p = *this;
  for (auto& term : p.terms_) term.coefficient = -term.coefficient;
  return p;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& rhs) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end() || (a != terms_.end() && a->exponent < b->exponent)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exponent < a->exponent) {
      merged.push_back(*b++);
    } else {
      Integer c = a->coefficient + b->coefficient;
      if (sgn(c) != 0) merged.push_back({a->exponent, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& rhs) {
  return *this += -rhs;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Exponent lo = a.min_exponent() + b.min_exponent();
  const Exponent span = a.max_exponent() + b.max_exponent() - lo + 1;
  const auto products = static_cast<Exponent>(a.term_count() * b.term_count());
  if (span <= 4 * products + 64) {
    std::vector<Integer> dense(static_cast<std::size_t>(span));
    for (const auto& x : a.terms()) {
      for (const auto& y : b.terms()) {
        mpz_addmul(dense[static_cast<std::size_t>(x.exponent + y.exponent - lo)].get_mpz_t(),
                   x.coefficient.get_mpz_t(), y.coefficient.get_mpz_t());
      }
    }
    std::vector<Term> terms;
    for (std::size_t k = 0; k < dense.size(); ++k) {
      if (sgn(dense[k]) != 0) terms.push_back({lo + static_cast<Exponent>(k), std::move(dense[k])});
    }
    LaurentPolynomial p;
    p.terms_ = std::move(terms);
    return p;
  }
  std::vector<Term> terms;
  terms.reserve(a.term_count() * b.term_count());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) terms.push_back({x.exponent + y.exponent, x.coefficient * y.coefficient});
  }
  return LaurentPolynomial::from_terms(std::move(terms));
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& term : terms_) {
    Integer c = term.coefficient;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    if (term.exponent == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    os << "t";
    if (term.exponent != 1) os << "^" << term.exponent;
  }
  return os.str();
}

LaurentPolynomial one_minus_t_pow(Exponent w) {
  if (w == 0) throw Error(ErrorKind::ZeroWeight, "1 - t^0 vanishes identically");
  return LaurentPolynomial(1) - LaurentPolynomial::monomial(1, w);
}

LaurentPolynomial elementary_symmetric(std::size_t i, std::span<const int> weights) {
  if (i > weights.size()) {
    throw Error(ErrorKind::InvalidArgument, "elementary symmetric degree exceeds variable count");
  }
  // e[j] accumulates sigma_j over the weights processed so far.
  std::vector<LaurentPolynomial> e(i + 1);
  e[0] = LaurentPolynomial(1);
  for (int w : weights) {
    const auto x = LaurentPolynomial::monomial(1, w);
    for (std::size_t j = i; j >= 1; --j) e[j] += e[j - 1] * x;
  }
  return e[i];
}

LaurentPolynomial polynomial_gcd(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  check_ordinary(a, "polynomial_gcd");
  check_ordinary(b, "polynomial_gcd");
  Dense x = to_dense(a);
  Dense y = to_dense(b);
  trim(x);
  trim(y);
  if (x.empty()) return from_dense(primitive_part(y)).scaled(dense_content(y));
  if (y.empty()) return from_dense(primitive_part(x)).scaled(dense_content(x));
  const Integer scale = gcd(dense_content(x), dense_content(y));
  x = primitive_part(std::move(x));
  y = primitive_part(std::move(y));
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    Dense r = primitive_part(pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return from_dense(x).scaled(scale);
}

LaurentPolynomial polynomial_divide_exact(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  check_ordinary(a, "polynomial_divide_exact");
  check_ordinary(b, "polynomial_divide_exact");
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  Dense rem = to_dense(a);
  const Dense den = to_dense(b);
  trim(rem);
  if (rem.empty()) return {};
  if (rem.size() < den.size()) throw Error(ErrorKind::InvalidArgument, "inexact polynomial division");
  Dense quot(rem.size() - den.size() + 1);
  const Integer& lead = den.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Integer& top = rem[k + den.size() - 1];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
      throw Error(ErrorKind::InvalidArgument, "inexact polynomial division");
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= q * den[j];
    quot[k] = std::move(q);
  }
  trim(rem);
  if (!rem.empty()) throw Error(ErrorKind::InvalidArgument, "inexact polynomial division");
  return from_dense(quot);
}

RationalFunction::RationalFunction(LaurentPolynomial numerator)
    : RationalFunction(normalize(std::move(numerator), LaurentPolynomial(1), false)) {}

RationalFunction::RationalFunction(LaurentPolynomial numerator, LaurentPolynomial denominator)
    : RationalFunction(normalize(std::move(numerator), std::move(denominator), false)) {}

RationalFunction RationalFunction::normalize(LaurentPolynomial num, LaurentPolynomial den,
                                             bool force_gcd) {
  if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (num.is_zero()) return RationalFunction(LaurentPolynomial(), LaurentPolynomial(1), Normalized{});

  const Exponent shift = -std::min(num.min_exponent(), den.min_exponent());
  if (shift != 0) {
    num = num.shifted(shift);
    den = den.shifted(shift);
  }
  if (force_gcd || num.term_count() + den.term_count() > kGcdThreshold) {
    const LaurentPolynomial g = polynomial_gcd(num, den);
    if (g.max_exponent() > 0) {
      num = polynomial_divide_exact(num, g);
      den = polynomial_divide_exact(den, g);
    }
  }
  Integer common = gcd(num.content(), den.content());
  if (sgn(den.lowest_coefficient()) < 0) common = -common;
  if (common != 1) {
    num = num.divided_exact(common);
    den = den.divided_exact(common);
  }
  return RationalFunction(std::move(num), std::move(den), Normalized{});
}

RationalFunction RationalFunction::simplified() const {
  return normalize(numerator_, denominator_, true);
}

RationalFunction RationalFunction::operator-() const {
  return RationalFunction(-numerator_, denominator_, Normalized{});
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.denominator_ == b.denominator_) {
    return RationalFunction::normalize(a.numerator_ + b.numerator_, a.denominator_, false);
  }
  return RationalFunction::normalize(a.numerator_ * b.denominator_ + b.numerator_ * a.denominator_,
                                     a.denominator_ * b.denominator_, false);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction::normalize(a.numerator_ * b.numerator_, a.denominator_ * b.denominator_,
                                     false);
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.numerator_ * b.denominator_ == b.numerator_ * a.denominator_;
}

std::string RationalFunction::to_string() const {
  if (denominator_ == LaurentPolynomial(1)) return numerator_.to_string();
  return "(" + numerator_.to_string() + ")/(" + denominator_.to_string() + ")";
}

ConstantTest test_constant(const RationalFunction& f) {
  ConstantTest out;
  const auto& num = f.numerator();
  const auto& den = f.denominator();
  if (num.is_zero()) {
    out.kind = ConstantTest::Kind::Constant;
    out.value = 0;
    return out;
  }
  // num = (p/q) * den forces equal exponent supports, so compare aligned terms.
  if (num.term_count() != den.term_count() || num.min_exponent() != den.min_exponent()) return out;
  const Integer& p = num.lowest_coefficient();
  const Integer& q = den.lowest_coefficient();
  for (std::size_t k = 0; k < num.term_count(); ++k) {
    const auto& x = num.terms()[k];
    const auto& y = den.terms()[k];
    if (x.exponent != y.exponent || x.coefficient * q != y.coefficient * p) return out;
  }
  if (mpz_divisible_p(p.get_mpz_t(), q.get_mpz_t())) {
    out.kind = ConstantTest::Kind::Constant;
    mpz_divexact(out.value.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  } else {
    out.kind = ConstantTest::Kind::NonIntegerConstant;
    const Integer g = gcd(p, q);
    out.numerator = p / g;
    out.denominator = q / g;
  }
  return out;
}

std::optional<Integer> constant_value(const RationalFunction& f) {
  auto r = test_constant(f);
  if (r.kind == ConstantTest::Kind::Constant) return r.value;
  return std::nullopt;
}

}  // namespace chiy

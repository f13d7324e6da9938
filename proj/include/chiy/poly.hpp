#pragma once

// Exact Laurent polynomials and rational functions in one indeterminate t
// with arbitrary-precision integer coefficients.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace chiy {

using Integer = mpz_class;
using Exponent = std::int64_t;

struct Term {
  Exponent exponent;
  Integer coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse Laurent polynomial. Terms are kept sorted by exponent and no
/// stored coefficient is zero, so structural equality is value equality.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(Integer constant);  // NOLINT(google-explicit-constructor)
  LaurentPolynomial(int constant) : LaurentPolynomial(Integer(constant)) {}  // NOLINT

  static LaurentPolynomial monomial(Integer coefficient, Exponent exponent);
  /// Builds from arbitrary (exponent, coefficient) pairs; like terms are merged.
  static LaurentPolynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Lowest and highest exponents. Undefined for the zero polynomial.
  Exponent min_exponent() const { return terms_.front().exponent; }
  Exponent max_exponent() const { return terms_.back().exponent; }

  Integer coefficient(Exponent e) const;
  /// Coefficient at the lowest exponent; zero for the zero polynomial.
  Integer lowest_coefficient() const;
  /// gcd of all coefficients (non-negative); zero for the zero polynomial.
  Integer content() const;

  LaurentPolynomial shifted(Exponent by) const;
  LaurentPolynomial scaled(const Integer& factor) const;
  /// Exact division of every coefficient; the divisor must divide the content.
  LaurentPolynomial divided_exact(const Integer& divisor) const;

  LaurentPolynomial operator-() const;
  LaurentPolynomial& operator+=(const LaurentPolynomial& rhs);
  LaurentPolynomial& operator-=(const LaurentPolynomial& rhs);
  LaurentPolynomial& operator*=(const LaurentPolynomial& rhs);

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// 1 - t^w. Rejects w = 0.
LaurentPolynomial one_minus_t_pow(Exponent w);

/// sigma_i(t^{w_1}, ..., t^{w_n}); sigma_0 = 1. Rejects i > n.
LaurentPolynomial elementary_symmetric(std::size_t i, std::span<const int> weights);

/// Greatest common divisor in Z[t] of two ordinary polynomials (non-negative
/// exponents), normalized to positive leading coefficient. Primitive
/// remainder sequence; intended for modest degrees.
LaurentPolynomial polynomial_gcd(const LaurentPolynomial& a, const LaurentPolynomial& b);

/// Exact quotient a / b in Z[t]; throws if b does not divide a.
LaurentPolynomial polynomial_divide_exact(const LaurentPolynomial& a, const LaurentPolynomial& b);

/// Quotient of Laurent polynomials kept in a normal form: numerator and
/// denominator are ordinary polynomials sharing no factor of t, their common
/// integer content is removed, and the lowest coefficient of the denominator
/// is positive. Zero is 0/1.
class RationalFunction {
 public:
  /// Above this combined term count, normalization also cancels the
  /// polynomial gcd of numerator and denominator.
  static constexpr std::size_t kGcdThreshold = 512;

  RationalFunction() : numerator_(), denominator_(1) {}
  RationalFunction(LaurentPolynomial numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(LaurentPolynomial numerator, LaurentPolynomial denominator);

  const LaurentPolynomial& numerator() const { return numerator_; }
  const LaurentPolynomial& denominator() const { return denominator_; }
  bool is_zero() const { return numerator_.is_zero(); }

  /// Cancels the full polynomial gcd regardless of size.
  RationalFunction simplified() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);

  /// Cross-multiplication equality.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  std::string to_string() const;

 private:
  struct Normalized {};
  RationalFunction(LaurentPolynomial numerator, LaurentPolynomial denominator, Normalized)
      : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {}
  static RationalFunction normalize(LaurentPolynomial numerator, LaurentPolynomial denominator,
                                    bool force_gcd);

  LaurentPolynomial numerator_;
  LaurentPolynomial denominator_;
};

struct ConstantTest {
  enum class Kind { Constant, NonIntegerConstant, NotConstant };
  Kind kind = Kind::NotConstant;
  Integer value;        // the constant when kind == Constant
  Integer numerator;    // p/q when kind == NonIntegerConstant
  Integer denominator;
};

/// Decides whether a rational function is a constant, and whether that
/// constant is an integer.
ConstantTest test_constant(const RationalFunction& f);

/// The integer c with f = c, or nothing (non-integer constants included).
std::optional<Integer> constant_value(const RationalFunction& f);

}  // namespace chiy

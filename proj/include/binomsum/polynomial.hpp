#pragma once

#include <string>
#include <vector>

#include "binomsum/numtheory.hpp"

namespace binomsum {

/// Dense univariate polynomial over Q, coefficients stored by ascending power.
/// Trailing zero coefficients are stripped on construction, so the zero
/// polynomial has no coefficients and equality is coefficientwise.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial constant(const Rational& c);
  /// c * x^k
  static Polynomial monomial(std::size_t k, const Rational& c = 1);
  /// (x + a)^k expanded with binomial coefficients.
  static Polynomial binomial_power(const Rational& a, std::size_t k);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; 0 for the zero polynomial.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^k (zero past the degree).
  Rational coefficient(std::size_t k) const;
  Rational leading_coefficient() const;

  Rational operator()(const Rational& x) const;

  Polynomial derivative() const;
  /// P(x + y)
  Polynomial shifted(const Rational& y) const;
  /// x^n P(1/x); requires n >= degree().
  Polynomial reciprocal(std::size_t n) const;
  /// lcm of the coefficient denominators (1 for the zero polynomial).
  Integer denominator() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

}  // namespace binomsum

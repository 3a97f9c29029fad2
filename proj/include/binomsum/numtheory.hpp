#pragma once

// Integer and rational helpers shared by every other part of the library:
// binomials, base-p digit sums, p-adic valuations, factorization of binomial
// coefficients, deterministic 64-bit primality and prime location.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace binomsum {

using Integer = mpz_class;
/// Exact fraction. GMP keeps results of arithmetic in canonical form
/// (coprime parts, positive denominator, zero as 0/1); use make_rational()
/// when building one from a raw numerator/denominator pair.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// p-adic valuation of a nonzero value. An empty optional stands for the
/// valuation of zero (+infinity) and must never be used as a number.
using Valuation = std::optional<long>;

/// p^exponent, as an entry in a factorization.
struct PrimePower {
  std::uint64_t prime = 0;
  long exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

Integer binomial(std::uint64_t m, std::uint64_t k);
/// m (m-1) ... (m-k+1); zero once k > m.
Integer falling_factorial(std::uint64_t m, std::uint64_t k);

/// Sum of the base-p digits of m. Throws std::invalid_argument unless p is prime.
std::uint64_t digit_sum(std::uint64_t p, std::uint64_t m);

Valuation ord_p(std::uint64_t p, const Integer& m);
Valuation ord_p(std::uint64_t p, const Rational& q);

/// ord_p(m!) by Legendre's formula (m - s_p(m)) / (p - 1).
std::uint64_t factorial_valuation(std::uint64_t p, std::uint64_t m);

/// ord_p(C(m, k)) from digit sums (Kummer); requires k <= m.
std::uint64_t binom_valuation(std::uint64_t p, std::uint64_t m, std::uint64_t k);

/// Prime factorization of C(m, k), ascending primes, exponents >= 1.
std::vector<PrimePower> factor_binomial(std::uint64_t m, std::uint64_t k);

/// Deterministic for the whole 64-bit range (fixed witness set).
bool is_prime(std::uint64_t m);
/// Same test for arbitrary-precision input; throws std::out_of_range for m >= 2^64.
bool is_prime(const Integer& m);

/// True when m = p^e for a prime p and e >= 1; sets *base to p.
bool is_prime_power(std::uint64_t m, std::uint64_t* base = nullptr);

/// Least prime p with lo < p < hi.
std::optional<std::uint64_t> prime_in_open_interval(std::uint64_t lo, std::uint64_t hi);

/// All primes p > bound dividing C(r + n, n), ascending.
std::vector<std::uint64_t> large_prime_divisors(std::uint64_t r, std::uint64_t n,
                                                const Rational& bound);

/// Primes up to at least `limit`, ascending. The table is process-wide and
/// only ever grows; returned snapshots stay valid after later growth.
std::shared_ptr<const std::vector<std::uint64_t>> primes_up_to(std::uint64_t limit);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Canonical residue of v modulo m in [0, m).
std::uint64_t reduce_mod(const Integer& v, std::uint64_t m);

bool fits_u64(const Integer& v);
std::uint64_t to_u64(const Integer& v);
Integer from_u64(std::uint64_t v);
Integer from_i64(std::int64_t v);

}  // namespace binomsum

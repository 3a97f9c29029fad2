#pragma once

// Reference routines for the tests. They follow the definitions literally
// (term-by-term sums, trial division, repeated division) and share no code
// with the library beyond GMP's arithmetic.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

// Canonical a/b; the two-argument mpq_class constructor does not reduce.
inline mpq_class Q(const mpz_class& a, const mpz_class& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

inline mpz_class choose(long m, long k) {
  if (k < 0 || k > m) return 0;
  mpz_class c = 1;
  for (long i = 1; i <= k; ++i) c = c * (m - k + i) / i;
  return c;
}

inline mpz_class ipow(const mpz_class& b, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

// sum_{k=0}^{n} C(n,k) (-1)^k x^(n-k) / C(r+k, r)
inline mpq_class s_value(long r, long n, const mpq_class& x) {
  mpq_class sum = 0, xp = 1;
  std::vector<mpq_class> powers(n + 1);
  for (long i = 0; i <= n; ++i) {
    powers[i] = xp;
    xp *= x;
  }
  for (long k = 0; k <= n; ++k) {
    const mpq_class term = mpq_class(choose(n, k)) * powers[n - k] / mpq_class(choose(r + k, r));
    sum += (k % 2 ? -term : term);
  }
  return sum;
}

inline long ord(std::uint64_t p, mpz_class m) {
  if (m == 0) return -1;
  long e = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    m /= p;
    ++e;
  }
  return e;
}

inline mpz_class factorial(long m) {
  mpz_class f = 1;
  for (long i = 2; i <= m; ++i) f *= i;
  return f;
}

inline bool prime_by_trial(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

inline std::vector<std::pair<std::uint64_t, long>> factor(mpz_class m) {
  std::vector<std::pair<std::uint64_t, long>> out;
  for (std::uint64_t p = 2; m > 1; ++p) {
    long e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  return out;
}

// Exceptions of a cell by exact evaluation of the defining sum.
inline bool integral(long r, long n, long ell) {
  return s_value(r, n, mpq_class(ell)).get_den() == 1;
}

// Deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  mpq_class rational(std::int64_t span) {
    std::int64_t num = range(-span, span);
    std::int64_t den = range(1, span);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle

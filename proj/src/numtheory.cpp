#include "binomsum/numtheory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

namespace binomsum {

namespace {

constexpr std::uint64_t kDefaultSieveLimit = 1u << 16;
constexpr std::uint64_t kSegmentSize = 1u << 15;

std::uint64_t initial_sieve_limit() {
  if (const char* env = std::getenv("BINOMSUM_SIEVE_LIMIT")) {
    try {
      const auto v = std::stoull(env);
      if (v >= 2) return v;
    } catch (const std::exception&) {
      // ignored: fall back to the default
    }
  }
  return kDefaultSieveLimit;
}

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Segmented sieve of Eratosthenes over [2, limit].
std::vector<std::uint64_t> segmented_sieve(std::uint64_t limit) {
  if (limit < 2) return {};
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const auto base = simple_sieve(root);
  std::vector<std::uint64_t> out;
  std::vector<char> seg(kSegmentSize);
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegmentSize) {
    const std::uint64_t hi = std::min(limit, lo + kSegmentSize - 1);
    std::fill(seg.begin(), seg.end(), 1);
    for (const auto p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = 0;
    }
    for (std::uint64_t i = lo; i <= hi; ++i)
      if (seg[i - lo]) out.push_back(i);
  }
  return out;
}

class PrimeTable {
 public:
  std::shared_ptr<const std::vector<std::uint64_t>> get(std::uint64_t limit) {
    std::lock_guard lock(mutex_);
    if (!primes_ || limit > limit_) {
      std::uint64_t next = std::max(limit_ == 0 ? initial_sieve_limit() : limit_ * 2, limit);
      primes_ = std::make_shared<const std::vector<std::uint64_t>>(segmented_sieve(next));
      limit_ = next;
    }
    return primes_;
  }

 private:
  std::mutex mutex_;
  std::uint64_t limit_ = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> primes_;
};

PrimeTable& prime_table() {
  static PrimeTable table;
  return table;
}

std::uint64_t digits(std::uint64_t p, std::uint64_t m) {
  std::uint64_t s = 0;
  while (m > 0) {
    s += m % p;
    m /= p;
  }
  return s;
}

std::uint64_t kummer(std::uint64_t p, std::uint64_t m, std::uint64_t k) {
  return (digits(p, k) + digits(p, m - k) - digits(p, m)) / (p - 1);
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool fits_u64(const Integer& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Integer& v) {
  if (!fits_u64(v)) throw std::out_of_range("value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

Integer from_u64(std::uint64_t v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

Integer from_i64(std::int64_t v) {
  const auto mag = v < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(v)
                         : static_cast<std::uint64_t>(v);
  Integer out = from_u64(mag);
  return v < 0 ? Integer(-out) : out;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce_mod(const Integer& v, std::uint64_t m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), from_u64(m).get_mpz_t());
  return to_u64(r);
}

Integer binomial(std::uint64_t m, std::uint64_t k) {
  Integer out;
  if (k > m) return out;
  mpz_bin_uiui(out.get_mpz_t(), m, k);
  return out;
}

Integer falling_factorial(std::uint64_t m, std::uint64_t k) {
  Integer out = 1;
  if (k > m) return 0;
  for (std::uint64_t i = 0; i < k; ++i) out *= from_u64(m - i);
  return out;
}

std::uint64_t digit_sum(std::uint64_t p, std::uint64_t m) {
  if (!is_prime(p)) throw std::invalid_argument("digit_sum: base must be prime");
  return digits(p, m);
}

Valuation ord_p(std::uint64_t p, const Integer& m) {
  if (m == 0) return std::nullopt;
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), from_u64(p).get_mpz_t()));
}

Valuation ord_p(std::uint64_t p, const Rational& q) {
  if (q == 0) return std::nullopt;
  return *ord_p(p, Integer(q.get_num())) - *ord_p(p, Integer(q.get_den()));
}

std::uint64_t factorial_valuation(std::uint64_t p, std::uint64_t m) {
  if (!is_prime(p)) throw std::invalid_argument("factorial_valuation: p must be prime");
  return (m - digits(p, m)) / (p - 1);
}

std::uint64_t binom_valuation(std::uint64_t p, std::uint64_t m, std::uint64_t k) {
  if (k > m) throw std::invalid_argument("binom_valuation: k > m");
  if (!is_prime(p)) throw std::invalid_argument("binom_valuation: p must be prime");
  return kummer(p, m, k);
}

std::vector<PrimePower> factor_binomial(std::uint64_t m, std::uint64_t k) {
  if (k > m) throw std::invalid_argument("factor_binomial: k > m");
  std::vector<PrimePower> out;
  const auto primes = primes_up_to(m);
  for (const auto p : *primes) {
    if (p > m) break;
    if (const auto e = kummer(p, m, k); e > 0)
      out.push_back({p, static_cast<long>(e)});
  }
  return out;
}

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                               17, 19, 23, 29, 31, 37};
  for (const auto p : kWitnesses) {
    if (m == p) return true;
    if (m % p == 0) return false;
  }
  // These twelve bases are a proven witness set for every n < 3.3e24.
  for (const auto a : kWitnesses)
    if (!strong_probable_prime(m, a)) return false;
  return true;
}

bool is_prime(const Integer& m) {
  if (sgn(m) < 0) return false;
  if (!fits_u64(m)) throw std::out_of_range("is_prime: argument >= 2^64");
  return is_prime(to_u64(m));
}

bool is_prime_power(std::uint64_t m, std::uint64_t* base) {
  if (m < 2) return false;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = m;
  while (m % p == 0) m /= p;
  if (m != 1) return false;
  if (base) *base = p;
  return true;
}

std::optional<std::uint64_t> prime_in_open_interval(std::uint64_t lo, std::uint64_t hi) {
  for (std::uint64_t c = lo + 1; c < hi; ++c)
    if (is_prime(c)) return c;
  return std::nullopt;
}

std::vector<std::uint64_t> large_prime_divisors(std::uint64_t r, std::uint64_t n,
                                                const Rational& bound) {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factor_binomial(r + n, n))
    if (Rational(from_u64(pp.prime)) > bound) out.push_back(pp.prime);
  return out;
}

std::shared_ptr<const std::vector<std::uint64_t>> primes_up_to(std::uint64_t limit) {
  return prime_table().get(limit);
}

}  // namespace binomsum

#include "binomsum/integrality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace binomsum {

namespace {

// Above this r + n the prime-set form of range condition (ii) is skipped
// rather than sieving that far.
constexpr std::uint64_t kPrimeSetLimit = 1'000'000;
// Below this n the prime-interval argument for range condition (i) is not
// applied (the remaining cases are only settled by enumeration).
constexpr std::uint32_t kRangeOneMinN = 25;
constexpr std::uint32_t kLogCubeMinN = 89'693;

const Integer kWordLimit = Integer(1) << 63;

Verdict nonintegral(Certificate cert) { return {Status::NonIntegral, std::move(cert)}; }

Certificate main_condition(int which) {
  Certificate c;
  c.kind = CertificateKind::MainCondition;
  c.condition = which;
  return c;
}

Certificate range_condition(int which) {
  Certificate c;
  c.kind = CertificateKind::RangeCondition;
  c.condition = which;
  return c;
}

// n > r >= n/5, or for very large n the sharper r > n / log^3 n (natural log).
bool range_one_ratio(std::uint32_t r, std::uint32_t n) {
  if (5ull * r >= n) return true;
  if (n < kLogCubeMinN) return false;
  const double l = std::log(static_cast<double>(n));
  return static_cast<double>(r) > static_cast<double>(n) / (l * l * l);
}

std::string roman(int v) {
  static const std::array<const char*, 7> names = {"", "i", "ii", "iii", "iv", "v", "vi"};
  return (v >= 1 && v <= 6) ? names[v] : std::to_string(v);
}

}  // namespace

bool is_small_ell(const Integer& ell) {
  return std::any_of(std::begin(kSmallEll), std::end(kSmallEll),
                     [&](std::int64_t v) { return ell == from_i64(v); });
}

CongruenceTable::CongruenceTable(const Params& params)
    : params_(params), modulus_(params.modulus()) {
  require_nontrivial(params, "CongruenceTable");
  const std::uint64_t m = std::uint64_t{params.r} + params.n;
  word_ = modulus_ < kWordLimit;
  if (word_) word_modulus_ = to_u64(modulus_);
  Integer c = 1;  // C(m, k)
  for (std::uint64_t k = 0; k < params.n; ++k) {
    const Integer residue = c % modulus_;
    if (word_)
      word_coeffs_.push_back(to_u64(residue));
    else
      big_coeffs_.push_back(residue);
    c = c * from_u64(m - k) / from_u64(k + 1);
  }
}

bool CongruenceTable::is_integral_residue(std::uint64_t ell_mod_b) const {
  const std::uint64_t b = word_modulus_;
  const std::uint64_t x = ell_mod_b == 0 ? 0 : b - ell_mod_b;  // -ell mod b
  std::uint64_t acc = 0;
  for (auto it = word_coeffs_.rbegin(); it != word_coeffs_.rend(); ++it) {
    acc = mul_mod(acc, x, b) + *it;
    if (acc >= b) acc -= b;
  }
  return acc == 0;
}

bool CongruenceTable::is_integral(const Integer& ell) const {
  if (word_) return is_integral_residue(reduce_mod(ell, word_modulus_));
  Integer x = -ell;
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  Integer acc = 0;
  for (auto it = big_coeffs_.rbegin(); it != big_coeffs_.rend(); ++it) {
    acc = acc * x + *it;
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), modulus_.get_mpz_t());
  }
  return acc == 0;
}

bool is_integral_congruence(const Params& params, const Integer& ell) {
  return CongruenceTable(params).is_integral(ell);
}

std::optional<std::uint32_t> witness_nonintegral(const Params& params, const Integer& ell) {
  require_nontrivial(params, "witness_nonintegral");
  if (ell == 0 || ell == 1)
    throw std::invalid_argument("witness_nonintegral: ell must not be 0 or 1");
  const std::uint64_t r = params.r, n = params.n;
  for (std::uint64_t d = 1; d <= r; ++d) {
    const std::uint64_t mod = n + d;
    std::uint64_t fact = 1 % mod;
    for (std::uint64_t i = 2; i <= r && fact != 0; ++i) fact = mul_mod(fact, i % mod, mod);
    if (fact == 0) continue;
    const std::uint64_t l = reduce_mod(ell, mod);
    const std::uint64_t lm1 = reduce_mod(ell - 1, mod);
    const std::uint64_t a = pow_mod(lm1, n + d, mod);
    const std::uint64_t c = pow_mod(l, n + d, mod);
    const std::uint64_t diff = a >= c ? a - c : a + (mod - c);
    const std::uint64_t v = mul_mod(mul_mod(fact, pow_mod(lm1, r - d, mod), mod), diff, mod);
    if (v != 0) return static_cast<std::uint32_t>(d);
  }
  return std::nullopt;
}

std::uint64_t diagonal_ord2(std::uint32_t n, const Integer& ell) {
  if (n == 0) throw std::invalid_argument("diagonal_ord2: n must be >= 1");
  if (mpz_odd_p(ell.get_mpz_t())) return 1;
  return digit_sum(2, n);
}

Verdict classify(const Params& params, const Integer& ell) {
  if (params.trivial()) {
    Certificate c;
    c.kind = CertificateKind::TrivialParams;
    return {Status::Integral, c};
  }
  const std::uint32_t r = params.r, n = params.n;
  const std::uint64_t m = std::uint64_t{r} + n;
  const Integer b = params.modulus();

  if (r == 1 || n == 1) return nonintegral(main_condition(1));

  if (r == n) {
    Certificate c;
    c.kind = CertificateKind::Diagonal;
    c.prime = 2;
    c.valuation = static_cast<long>(diagonal_ord2(n, ell));
    return nonintegral(c);
  }

  if (std::uint64_t p = 0; is_prime_power(m, &p)) {
    Certificate c = main_condition(3);
    c.prime = p;
    c.valuation = static_cast<long>(binom_valuation(p, m, r));
    return nonintegral(c);
  }

  if (r % 2 == 1 && n % 2 == 1 && mpz_even_p(ell.get_mpz_t())) {
    Certificate c = main_condition(4);
    c.prime = 2;
    c.valuation = static_cast<long>(binom_valuation(2, m, r));
    return nonintegral(c);
  }

  // ell = -1 is only certified where one member of the pair is known non-integral.
  const bool pair_case = (r + 1 == n) || (n + 1 == r);
  if (ell == 0 || ell == 1 || (ell == -1 && pair_case)) return nonintegral(main_condition(5));

  {
    Integer g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), ell.get_mpz_t());
    if (g > 1) {
      Certificate c = main_condition(6);
      for (const auto& pp : factor_binomial(m, r))
        if (mpz_divisible_ui_p(ell.get_mpz_t(), pp.prime)) c.prime_valuations.push_back(pp);
      c.gcd = g;
      return nonintegral(c);
    }
  }

  const Integer ell_minus_1 = ell - 1;
  const Integer dist = abs(ell_minus_1);

  if (n > r && r >= 2 && n >= kRangeOneMinN && dist <= n && range_one_ratio(r, n)) {
    if (const auto p = prime_in_open_interval(n, m)) {
      Certificate c = range_condition(1);
      c.prime = *p;
      c.witness = static_cast<std::uint32_t>(*p - n);
      return nonintegral(c);
    }
  }

  if (r > n && n >= 2) {
    if (Integer(3 * std::uint64_t{n}) >= 2 * dist) return nonintegral(range_condition(2));
    Integer g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), ell_minus_1.get_mpz_t());
    if (g == 1) {
      Certificate c = range_condition(2);
      c.gcd = g;
      return nonintegral(c);
    }
    if (m <= kPrimeSetLimit) {
      for (const auto& pp : factor_binomial(m, r)) {
        if (2 * pp.prime > 3 * std::uint64_t{n} &&
            !mpz_divisible_ui_p(ell_minus_1.get_mpz_t(), pp.prime)) {
          Certificate c = range_condition(2);
          c.prime = pp.prime;
          return nonintegral(c);
        }
      }
    }
  }

  if (is_small_ell(ell) && (r >= n || 5ull * r >= n)) {
    Certificate c;
    c.kind = CertificateKind::SmallEll;
    return nonintegral(c);
  }

  if (const auto d = witness_nonintegral(params, ell)) {
    Certificate c;
    c.kind = CertificateKind::Witness;
    c.witness = *d;
    return nonintegral(c);
  }

  Certificate exact;
  exact.kind = CertificateKind::ExactCongruence;
  const bool integral = CongruenceTable(params).is_integral(ell);
  return {integral ? Status::Integral : Status::NonIntegral, exact};
}

std::string to_string(Status status) {
  return status == Status::Integral ? "Integral" : "NonIntegral";
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::TrivialParams:
      return "TrivialParams";
    case CertificateKind::MainCondition:
      return "MainCondition";
    case CertificateKind::Diagonal:
      return "Diagonal";
    case CertificateKind::RangeCondition:
      return "RangeCondition";
    case CertificateKind::SmallEll:
      return "SmallEll";
    case CertificateKind::Witness:
      return "Witness";
    case CertificateKind::ExactCongruence:
      return "ExactCongruence";
  }
  return "Unknown";
}

std::string certificate_label(const Certificate& cert) {
  std::string out = to_string(cert.kind);
  if (cert.kind == CertificateKind::MainCondition || cert.kind == CertificateKind::RangeCondition)
    out += "(" + roman(cert.condition) + ")";
  else if (cert.kind == CertificateKind::Witness && cert.witness)
    out += "(" + std::to_string(*cert.witness) + ")";
  return out;
}

std::optional<Status> status_from_string(std::string_view s) {
  if (s == "Integral") return Status::Integral;
  if (s == "NonIntegral") return Status::NonIntegral;
  return std::nullopt;
}

std::optional<CertificateKind> certificate_kind_from_string(std::string_view s) {
  for (auto k : {CertificateKind::TrivialParams, CertificateKind::MainCondition,
                 CertificateKind::Diagonal, CertificateKind::RangeCondition,
                 CertificateKind::SmallEll, CertificateKind::Witness,
                 CertificateKind::ExactCongruence})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

}  // namespace binomsum

#include "binomsum/polycore.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace binomsum {

namespace {

Rational sign_power(std::uint64_t e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

Rational q(std::uint64_t v) { return Rational(from_u64(v)); }

// S_(0,n) = (x-1)^n, S_(r,0) = 1
Polynomial trivial_s(const Params& p) {
  if (p.n == 0) return Polynomial::constant(1);
  return Polynomial::binomial_power(-1, p.n);
}

Polynomial s_direct(const Params& p) {
  std::vector<Rational> c(p.n + 1);
  for (std::uint32_t k = 0; k <= p.n; ++k)
    c[p.n - k] = sign_power(k) * make_rational(binomial(p.n, k), binomial(std::uint64_t{p.r} + k, p.r));
  return Polynomial(std::move(c));
}

Polynomial s_row(const Params& p) {
  const Integer b = p.modulus();
  std::vector<Rational> c(p.n + 1);
  for (std::uint32_t k = 0; k <= p.n; ++k)
    c[k] = sign_power(p.n - k) * make_rational(binomial(std::uint64_t{p.r} + p.n, k), b);
  return Polynomial(std::move(c));
}

Polynomial s_identity(const Params& p) {
  Polynomial num = Polynomial::binomial_power(-1, std::size_t{p.r} + p.n) -
                   Polynomial::monomial(p.n + 1) * psi_poly(p, PsiForm::Shifted);
  return num * (sign_power(p.r) / Rational(p.modulus()));
}

}  // namespace

void require_nontrivial(const Params& params, const char* what) {
  if (params.trivial())
    throw std::invalid_argument(std::string(what) + ": requires r >= 1 and n >= 1");
}

Polynomial s_poly(const Params& params, SForm form) {
  if (params.trivial()) return trivial_s(params);
  switch (form) {
    case SForm::Direct:
      return s_direct(params);
    case SForm::Row:
      return s_row(params);
    case SForm::Identity:
      return s_identity(params);
  }
  throw std::invalid_argument("s_poly: unknown form");
}

Polynomial psi_poly(const Params& params, PsiForm form) {
  require_nontrivial(params, "psi_poly");
  const std::uint64_t r = params.r, n = params.n;
  Polynomial out;
  for (std::uint64_t k = 0; k < r; ++k) {
    const Rational sign = sign_power(k);
    if (form == PsiForm::Shifted)
      out += Polynomial::binomial_power(-1, r - 1 - k) * (sign * Rational(binomial(n + k, k)));
    else
      out += Polynomial::monomial(r - 1 - k, sign * Rational(binomial(n + r, k)));
  }
  return out;
}

Rational s_eval(const Params& params, const Integer& ell) {
  return s_poly(params)(Rational(ell));
}

Integer psi_eval(const Params& params, const Integer& ell) {
  require_nontrivial(params, "psi_eval");
  const std::uint64_t r = params.r, n = params.n;
  // Horner over (ell - 1): coefficient of (ell-1)^(r-1-k) is (-1)^k C(n+k, k)
  const Integer t = ell - 1;
  Integer acc = 0;
  for (std::uint64_t k = 0; k < r; ++k) {
    Integer c = binomial(n + k, k);
    if (k % 2) c = -c;
    acc = acc * t + c;
  }
  return acc;
}

Rational s_eval_ident(const Params& params, const Integer& ell) {
  if (params.trivial()) return s_eval(params, ell);
  Integer lm1_pow, ell_pow;
  const Integer lm1 = ell - 1;
  mpz_pow_ui(lm1_pow.get_mpz_t(), lm1.get_mpz_t(), std::uint64_t{params.r} + params.n);
  mpz_pow_ui(ell_pow.get_mpz_t(), ell.get_mpz_t(), std::uint64_t{params.n} + 1);
  Integer num = lm1_pow - ell_pow * psi_eval(params, ell);
  if (params.r % 2) num = -num;
  return make_rational(num, params.modulus());
}

Integer denom_poly(const Params& params) { return s_poly(params).denominator(); }

Integer denom_value(const Params& params, const Integer& ell) {
  return Integer(s_eval(params, ell).get_den());
}

bool IdentityReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const IdentityCheck* IdentityReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = {
      "construction_routes", "psi_forms",          "psi_recurrence", "derivative",
      "appell_shift",        "shifted_form",       "value_at_minus_one",
      "pair_reciprocity",    "row_sum",            "reciprocal_reciprocity",
      "recurrence_i",        "recurrence_ii",      "recurrence_iii", "recurrence_iv",
      "sign",                "diagonal_recurrence"};
  return names;
}

IdentityReport identity_suite(const Params& params, std::span<const std::int64_t> samples) {
  require_nontrivial(params, "identity_suite");
  const std::uint32_t r = params.r, n = params.n;
  const Polynomial x = Polynomial::monomial(1);
  const Polynomial xm1 = x - Polynomial::constant(1);
  const Rational rr = q(r), nn = q(n);
  const Rational b = Rational(params.modulus());
  const Polynomial S = s_poly(params);
  auto s_of = [](std::uint32_t rv, std::uint32_t nv) { return s_poly({rv, nv}); };

  IdentityReport report{params, {}};
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    report.checks.push_back({std::move(name), ok, ok ? std::string{} : std::move(detail)});
  };
  // Runs `holds` per sample; reports the first sample that fails.
  auto per_sample = [&](std::string name, const std::function<bool(std::int64_t)>& holds) {
    for (const auto s : samples) {
      if (!holds(s)) {
        add(std::move(name), false, "sample " + std::to_string(s));
        return;
      }
    }
    add(std::move(name), true);
  };

  add("construction_routes",
      S == s_poly(params, SForm::Row) && S == s_poly(params, SForm::Identity));

  const Polynomial psi = psi_poly(params, PsiForm::Shifted);
  add("psi_forms", psi == psi_poly(params, PsiForm::Power));
  {
    Rational c = sign_power(r) * Rational(binomial(std::uint64_t{n} + r, r));
    add("psi_recurrence", psi_poly({r + 1, n}, PsiForm::Shifted) == xm1 * psi + Polynomial::constant(c));
  }

  add("derivative", S.derivative() == s_of(r, n - 1) * nn);

  per_sample("appell_shift", [&](std::int64_t y) {
    const Rational yq(from_i64(y));
    Polynomial rhs;
    Rational ypow = 1;  // y^(n-k), built from k = n downward
    for (std::uint32_t k = n + 1; k-- > 0;) {
      rhs += s_of(r, k) * (Rational(binomial(n, k)) * ypow);
      ypow *= yq;
    }
    return S.shifted(yq) == rhs;
  });

  {
    Polynomial rhs;
    for (std::uint32_t k = 0; k <= n; ++k)
      rhs += Polynomial::monomial(n - k, Rational(binomial(n, k)) * rr / q(std::uint64_t{r} + k));
    add("shifted_form", S.shifted(1) == rhs);
  }

  Integer row_partial = 0;  // sum_{k<=n} C(r+n, k)
  for (std::uint32_t k = 0; k <= n; ++k) row_partial += binomial(std::uint64_t{r} + n, k);
  const Rational s_at_m1 = S(-1);
  add("value_at_minus_one", s_at_m1 == sign_power(n) * Rational(row_partial) / b,
      "S(-1) = " + s_at_m1.get_str());
  {
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, std::uint64_t{r} + n);
    const Rational lhs = sign_power(n) * s_at_m1 + sign_power(r) * s_of(n, r)(-1);
    add("pair_reciprocity", lhs == Rational(two_pow) / b + 1, "lhs = " + lhs.get_str());
  }

  {
    Rational sum = 0;
    for (std::uint32_t k = 0; k <= n; ++k) {
      Integer two_pow;
      mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n - k);
      sum += sign_power(k) * Rational(binomial(n, k) * two_pow) / q(std::uint64_t{r} + k);
    }
    add("row_sum", Rational(row_partial) == rr * b * sum);
  }

  {
    const Polynomial star = s_of(n, r).reciprocal(r);  // S*_(n,r)(x) = x^r S_(n,r)(1/x)
    const Polynomial xn = Polynomial::monomial(n);
    const Polynomial lhs = S + xn * star;
    const Polynomial rhs =
        Polynomial::binomial_power(-1, std::size_t{r} + n) * (sign_power(r) / b) + xn;
    add("reciprocal_reciprocity", lhs == rhs);
  }

  {
    const Polynomial prev = s_of(r, n - 1);
    const Polynomial up_prev = s_of(r + 1, n - 1);
    add("recurrence_i", S == xm1 * prev + up_prev * (rr / (rr + 1)));
    add("recurrence_ii", S == Polynomial::monomial(n) - up_prev * (nn / (rr + 1)));
    const Rational denom = rr + nn + 1;
    add("recurrence_iii",
        s_of(r + 1, n) == (Polynomial::monomial(n + 1) - xm1 * S) * ((rr + 1) / denom));
    add("recurrence_iv", s_of(r, n + 1) == Polynomial::monomial(n + 1, rr / denom) +
                                               xm1 * S * ((nn + 1) / denom));
  }

  per_sample("sign", [&](std::int64_t ell) {
    const Rational v = S(Rational(from_i64(ell)));
    if (ell >= 1) return sgn(v) > 0;
    return sgn(sign_power(n) * v) > 0;
  });

  if (r == n) {
    const Polynomial lhs = s_of(n + 1, n + 1) * Rational(2);
    const Polynomial rhs =
        xm1 * (Polynomial::monomial(n + 1) - xm1 * S) * ((nn + 1) / (2 * nn + 1)) +
        Polynomial::monomial(n + 1);
    add("diagonal_recurrence", lhs == rhs);
  }
  return report;
}

}  // namespace binomsum

#include <gtest/gtest.h>

#include <array>

#include "binomsum/polycore.hpp"
#include "oracle.hpp"

using namespace binomsum;

namespace {

Polynomial x_minus(const Rational& c) { return Polynomial({-c, Rational(1)}); }

std::array<std::int64_t, 9> kSamples = {-3, -2, -1, 0, 1, 2, 3, 4, 5};

}  // namespace

TEST(Polynomial, BasicArithmetic) {
  const Polynomial p({Rational(1), Rational(2), Rational(3)});  // 1 + 2x + 3x^2
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_EQ(p(Rational(2)), 17);
  EXPECT_EQ(p.derivative(), Polynomial({Rational(2), Rational(6)}));
  EXPECT_EQ(p.shifted(Rational(1))(Rational(0)), p(Rational(1)));
  EXPECT_EQ(p.reciprocal(3), Polynomial({Rational(0), Rational(3), Rational(2), Rational(1)}));
  EXPECT_EQ(Polynomial({oracle::Q(1, 2), oracle::Q(1, 3)}).denominator(), 6);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(Polynomial::binomial_power(Rational(-1), 3),
            Polynomial({Rational(-1), Rational(3), Rational(-3), Rational(1)}));
  EXPECT_EQ(Polynomial({Rational(1), Rational(0), Rational(0)}).degree(), 0u);
}

TEST(SPoly, TrivialFamilies) {
  for (std::uint32_t n = 0; n <= 10; ++n)
    EXPECT_EQ(s_poly({0, n}), Polynomial::binomial_power(Rational(-1), n));
  for (std::uint32_t r = 0; r <= 10; ++r) EXPECT_EQ(s_poly({r, 0}), Polynomial::constant(1));
}

TEST(SPoly, LinearCase) {
  EXPECT_EQ(s_poly({1, 1}), x_minus(oracle::Q(1, 2)));
  for (std::uint32_t r = 1; r <= 30; ++r) EXPECT_EQ(s_poly({r, 1}), x_minus(oracle::Q(1, r + 1)));
}

TEST(SPoly, RIsOne) {
  for (std::uint32_t n = 1; n <= 20; ++n) {
    const Polynomial want = (Polynomial::monomial(n + 1) - Polynomial::binomial_power(-1, n + 1)) *
                            oracle::Q(1, n + 1);
    EXPECT_EQ(s_poly({1, n}), want) << n;
  }
}

TEST(SPoly, MonicOfDegreeNAndMatchesOracleValues) {
  for (std::uint32_t r = 1; r <= 10; ++r)
    for (std::uint32_t n = 1; n <= 10; ++n) {
      const Polynomial s = s_poly({r, n});
      ASSERT_EQ(s.degree(), n);
      ASSERT_EQ(s.leading_coefficient(), 1);
      for (int x = -4; x <= 4; ++x) {
        const Rational xq = oracle::Q(x, 3);
        ASSERT_EQ(s(xq), oracle::s_value(r, n, xq)) << r << ' ' << n << ' ' << x;
      }
    }
}

TEST(SPoly, ConstructionRoutesAgree) {
  for (std::uint32_t r = 0; r <= 25; ++r)
    for (std::uint32_t n = 0; n <= 25; ++n) {
      const Params p{r, n};
      const Polynomial direct = s_poly(p, SForm::Direct);
      ASSERT_EQ(direct, s_poly(p, SForm::Row)) << r << ' ' << n;
      ASSERT_EQ(direct, s_poly(p, SForm::Identity)) << r << ' ' << n;
    }
}

TEST(PsiPoly, SmallR) {
  for (std::uint32_t n = 1; n <= 20; ++n) {
    EXPECT_EQ(psi_poly({1, n}), Polynomial::constant(1));
    EXPECT_EQ(psi_poly({2, n}), x_minus(Rational(n + 2)));
  }
}

TEST(PsiPoly, FormsAgreeRecurrenceAndIntegrality) {
  for (std::uint32_t r = 1; r <= 25; ++r)
    for (std::uint32_t n = 1; n <= 25; ++n) {
      const Polynomial psi = psi_poly({r, n}, PsiForm::Power);
      ASSERT_EQ(psi, psi_poly({r, n}, PsiForm::Shifted)) << r << ' ' << n;
      ASSERT_EQ(psi.denominator(), 1);
      const Polynomial next = x_minus(1) * psi + Polynomial::constant(Rational(
                                                     (r % 2 ? -1 : 1) * oracle::choose(n + r, r)));
      ASSERT_EQ(psi_poly({r + 1, n}), next) << r << ' ' << n;
    }
}

TEST(PsiPoly, EvalMatchesPolynomial) {
  for (std::uint32_t r = 1; r <= 12; ++r)
    for (std::uint32_t n = 1; n <= 12; ++n)
      for (int ell = -10; ell <= 10; ++ell)
        ASSERT_EQ(Rational(psi_eval({r, n}, ell)), psi_poly({r, n})(Rational(ell)));
}

// r! psi(ell) == r! ell^(d-1) (ell-1)^(r-d)  (mod n + d) for 1 <= d <= r.
TEST(PsiPoly, CongruenceAtEachShift) {
  for (long r = 1; r <= 12; ++r)
    for (long n = 1; n <= 12; ++n)
      for (long ell = -10; ell <= 10; ++ell) {
        const mpz_class lhs = oracle::factorial(r) * psi_eval({std::uint32_t(r), std::uint32_t(n)}, ell);
        for (long d = 1; d <= r; ++d) {
          const mpz_class rhs =
              oracle::factorial(r) * oracle::ipow(ell, d - 1) * oracle::ipow(ell - 1, r - d);
          const mpz_class diff = lhs - rhs;
          ASSERT_TRUE(mpz_divisible_ui_p(diff.get_mpz_t(), n + d)) << r << ' ' << n << ' ' << ell << ' ' << d;
        }
      }
}

TEST(SEval, Examples) {
  EXPECT_EQ(s_eval({2, 4}, 11), 12983);
  EXPECT_EQ(s_eval({3, 3}, 0), oracle::Q(-1, 20));
  EXPECT_EQ(s_eval_ident({3, 3}, 0), oracle::Q(-1, 20));
  EXPECT_EQ(s_eval({2, 4}, 1), oracle::Q(1, 3));
  EXPECT_EQ(s_eval({1, 3}, 0), oracle::Q(-1, 4));
  EXPECT_EQ(s_eval({3, 4}, 14), oracle::Q(1252539, 35));
  EXPECT_EQ(s_eval({9, 6}, Integer(1002)), Integer("1011454411016354563"));
}

TEST(SEval, SpecialValues) {
  for (std::uint32_t r = 1; r <= 30; ++r)
    for (std::uint32_t n = 1; n <= 30; ++n) {
      ASSERT_EQ(s_eval({r, n}, 1), oracle::Q(r, r + n));
      const Rational at0(n % 2 ? -1 : 1);
      ASSERT_EQ(s_eval({r, n}, 0), Rational(at0 / Rational(oracle::choose(r + n, r))));
    }
}

TEST(SEval, AtTwoClosedForms) {
  for (long r = 1; r <= 15; ++r)
    for (long n = 1; n <= 15; ++n) {
      Rational sum = 0;
      for (long k = 0; k <= n; ++k) sum += oracle::Q(oracle::choose(n, k) * r, r + k);
      mpz_class alt = 0;
      for (long k = 0; k < r; ++k) alt += (k % 2 ? -1 : 1) * oracle::choose(n + k, k);
      mpz_class rising = 1;
      for (long i = 1; i <= r; ++i) rising *= n + i;
      Rational closed = Rational(oracle::factorial(r) * (1 - oracle::ipow(2, n + 1) * alt)) / Rational(rising);
      if (r % 2) closed = -closed;
      const Params p{std::uint32_t(r), std::uint32_t(n)};
      ASSERT_EQ(s_eval(p, 2), sum);
      ASSERT_EQ(s_eval_ident(p, 2), closed);
    }
}

TEST(SEval, RoutesAgreeWithOracle) {
  for (std::uint32_t r = 1; r <= 12; ++r)
    for (std::uint32_t n = 1; n <= 12; ++n)
      for (long ell = -20; ell <= 20; ++ell) {
        const Rational want = oracle::s_value(r, n, ell);
        ASSERT_EQ(s_eval({r, n}, ell), want);
        ASSERT_EQ(s_eval_ident({r, n}, ell), want);
      }
  for (std::uint32_t n = 1; n <= 20; ++n)
    for (long ell = -20; ell <= 20; ++ell) {
      const Rational want = Rational(oracle::ipow(ell, n + 1) - oracle::ipow(ell - 1, n + 1)) / Rational(n + 1);
      ASSERT_EQ(s_eval_ident({1, n}, ell), want);
    }
}

TEST(SEval, TrivialParams) {
  EXPECT_EQ(s_eval({0, 3}, 5), 64);
  EXPECT_EQ(s_eval({4, 0}, -7), 1);
  EXPECT_EQ(s_eval_ident({0, 3}, 5), 64);
}

TEST(Denominators, PolynomialDenominatorIsBinomial) {
  EXPECT_EQ(denom_poly({2, 4}), 15);
  EXPECT_EQ(denom_poly({3, 18}), 1330);
  for (std::uint32_t n = 1; n <= 40; ++n) EXPECT_EQ(denom_poly({1, n}), n + 1);
  for (std::uint32_t r = 1; r <= 40; ++r)
    for (std::uint32_t n = 1; n <= 40; ++n) ASSERT_EQ(denom_poly({r, n}), oracle::choose(r + n, r));
}

TEST(Denominators, ValueDenominatorDividesBinomial) {
  EXPECT_EQ(denom_value({2, 4}, 11), 1);
  for (std::uint32_t r = 1; r <= 20; ++r)
    for (std::uint32_t n = 1; n <= 20; ++n) {
      const mpz_class b = oracle::choose(r + n, r);
      ASSERT_EQ(denom_value({r, n}, 1), (r + n) / std::gcd(r, r + n));
      for (long ell = -20; ell <= 20; ++ell) {
        const Integer d = denom_value({r, n}, ell);
        ASSERT_EQ(d, oracle::s_value(r, n, ell).get_den());
        ASSERT_TRUE(mpz_divisible_p(b.get_mpz_t(), d.get_mpz_t()));
      }
    }
}

TEST(Denominators, DiagonalEvenEll) {
  for (std::uint32_t n = 1; n <= 40; ++n)
    for (long ell : {2, -4, 6}) {
      const long want = __builtin_popcount(n);
      ASSERT_EQ(oracle::ord(2, denom_value({n, n}, ell)), want) << n << ' ' << ell;
    }
}

TEST(PartialFractions, AlternatingReciprocalSum) {
  for (long n = 0; n <= 15; ++n)
    for (long x = 1; x <= 30; ++x) {
      Rational lhs = 0;
      for (long k = 0; k <= n; ++k) lhs += oracle::Q((k % 2 ? -1 : 1) * oracle::choose(n, k), x + k);
      ASSERT_EQ(lhs, Rational(1) / Rational(x * oracle::choose(x + n, n)));
    }
}

TEST(Sign, PositiveRightOfOneAlternatingLeftOfZero) {
  for (std::uint32_t r = 1; r <= 15; ++r)
    for (std::uint32_t n = 1; n <= 15; ++n) {
      const Polynomial s = s_poly({r, n});
      for (int num = 2; num <= 60; ++num) ASSERT_GT(s(oracle::Q(num, 2)), 0);
      for (int num = 0; num <= 60; ++num) {
        const Rational v = s(oracle::Q(-num, 3));
        ASSERT_GT(n % 2 ? -v : v, 0) << r << ' ' << n << ' ' << -num << "/3";
      }
    }
}

TEST(IdentitySuite, ReportsEveryCheck) {
  const auto report = identity_suite({3, 5}, kSamples);
  EXPECT_TRUE(report.all_passed());
  for (const auto& name : identity_names()) {
    if (name == "diagonal_recurrence") {
      EXPECT_EQ(report.find(name), nullptr);
      continue;
    }
    ASSERT_NE(report.find(name), nullptr) << name;
  }
  const auto diag = identity_suite({4, 4}, kSamples);
  ASSERT_NE(diag.find("diagonal_recurrence"), nullptr);
  EXPECT_TRUE(diag.all_passed());
}

TEST(IdentitySuite, SmallestCase) {
  const std::array<std::int64_t, 1> zero = {0};
  const auto report = identity_suite({1, 1}, zero);
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  // (x - 1/2) + x (1 - x/2) = -(x - 1)^2 / 2 + x
  const Polynomial lhs = s_poly({1, 1}) + Polynomial::monomial(1) * s_poly({1, 1}).reciprocal(1);
  const Polynomial rhs = Polynomial::binomial_power(-1, 2) * oracle::Q(-1, 2) + Polynomial::monomial(1);
  EXPECT_EQ(lhs, rhs);
}

TEST(IdentitySuite, SweepAllPass) {
  for (std::uint32_t r = 1; r <= 10; ++r)
    for (std::uint32_t n = 1; n <= 10; ++n) {
      const auto report = identity_suite({r, n}, kSamples);
      for (const auto& c : report.checks) ASSERT_TRUE(c.passed) << r << ' ' << n << ' ' << c.name << ": " << c.detail;
    }
}

TEST(IdentitySuite, RejectsTrivialParams) {
  EXPECT_THROW(identity_suite({0, 2}, kSamples), std::invalid_argument);
}

TEST(Recurrences, AgainstOracleValues) {
  // Checked at rational points with the term-by-term oracle, independent of the suite.
  for (long r = 1; r <= 8; ++r)
    for (long n = 1; n <= 8; ++n)
      for (int t = -5; t <= 5; ++t) {
        const Rational x = oracle::Q(t, 2);
        const auto S = [&](long rr, long nn) { return oracle::s_value(rr, nn, x); };
        const Rational xn = Rational(oracle::ipow(t, n)) / Rational(oracle::ipow(2, n));
        const Rational xn1 = xn * x;
        ASSERT_EQ(S(r, n), (x - 1) * S(r, n - 1) + oracle::Q(r, r + 1) * S(r + 1, n - 1));
        ASSERT_EQ(S(r, n), xn - oracle::Q(n, r + 1) * S(r + 1, n - 1));
        ASSERT_EQ(S(r + 1, n), oracle::Q(r + 1, r + n + 1) * (xn1 - (x - 1) * S(r, n)));
        ASSERT_EQ(S(r, n + 1), oracle::Q(r, r + n + 1) * xn1 + oracle::Q(n + 1, r + n + 1) * (x - 1) * S(r, n));
      }
}

TEST(MinusOne, PairReciprocityAndDiagonal) {
  for (long r = 1; r <= 15; ++r)
    for (long n = 1; n <= 15; ++n) {
      const Rational a = oracle::s_value(r, n, -1), b = oracle::s_value(n, r, -1);
      const Rational lhs = (n % 2 ? -a : a) + (r % 2 ? -b : b);
      ASSERT_EQ(lhs, Rational(oracle::ipow(2, r + n)) / Rational(oracle::choose(r + n, r)) + 1);
    }
  for (std::uint32_t n = 1; n <= 30; ++n) EXPECT_NE(s_eval({n, n}, -1).get_den(), 1) << n;
}

#pragma once

// The generalized binomial sum
//
//   S_(r,n)(x) = sum_{k=0}^{n} C(n,k) (-1)^k x^(n-k) / C(r+k, r),
//
// a monic degree-n polynomial with rational coefficients, together with the
// integer companion polynomial psi_(r,n)(x) through which
//
//   S_(r,n)(x) = (-1)^r ((x-1)^(r+n) - x^(n+1) psi_(r,n)(x)) / C(r+n, r).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "binomsum/numtheory.hpp"
#include "binomsum/polynomial.hpp"

namespace binomsum {

/// Parameter pair (r, n). r = 0 or n = 0 are the trivial families
/// S_(0,n) = (x-1)^n and S_(r,0) = 1; most operations want both >= 1.
struct Params {
  std::uint32_t r = 0;
  std::uint32_t n = 0;

  bool trivial() const { return r == 0 || n == 0; }
  /// C(r+n, r)
  Integer modulus() const { return binomial(std::uint64_t{r} + n, r); }
  Params swapped() const { return {n, r}; }

  friend auto operator<=>(const Params&, const Params&) = default;
};

/// Throws std::invalid_argument unless r, n >= 1.
void require_nontrivial(const Params& params, const char* what);

enum class SForm {
  Direct,    // alternating sum with 1/C(r+k, r) weights
  Row,       // C(r+n,r)^-1 sum_{k<=n} C(r+n,k) (-1)^(n-k) x^k
  Identity,  // through psi_(r,n)
};

enum class PsiForm {
  Shifted,  // sum_{k<r} C(n+k,k) (-1)^k (x-1)^(r-1-k)
  Power,    // sum_{k<r} C(n+r,k) (-1)^k x^(r-1-k)
};

Polynomial s_poly(const Params& params, SForm form = SForm::Direct);
Polynomial psi_poly(const Params& params, PsiForm form = PsiForm::Power);

/// Exact S_(r,n)(ell) by Horner on the coefficient vector.
Rational s_eval(const Params& params, const Integer& ell);
/// Exact S_(r,n)(ell) through psi_(r,n)(ell), all in integers until the final
/// division by C(r+n, r). Trivial parameters fall back to s_eval.
Rational s_eval_ident(const Params& params, const Integer& ell);
/// psi_(r,n)(ell) as an integer, summed from the shifted form.
Integer psi_eval(const Params& params, const Integer& ell);

/// Denominator of the polynomial; C(r+n, r) for r, n >= 1.
Integer denom_poly(const Params& params);
/// Denominator of the reduced value S_(r,n)(ell).
Integer denom_value(const Params& params, const Integer& ell);

struct IdentityCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // first failing sample, empty on success
};

struct IdentityReport {
  Params params;
  std::vector<IdentityCheck> checks;

  bool all_passed() const;
  const IdentityCheck* find(std::string_view name) const;
};

/// Checks the structural identities of S_(r,n) for r, n >= 1. Identities
/// between polynomials are compared coefficientwise; value-level claims are
/// checked at each sample. See identity_names() for the list.
IdentityReport identity_suite(const Params& params, std::span<const std::int64_t> samples);
const std::vector<std::string>& identity_names();

}  // namespace binomsum

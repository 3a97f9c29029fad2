#pragma once

// Deciding whether S_(r,n)(ell) is an integer.
//
// The exact criterion: S_(r,n)(ell) is integral iff
//   sum_{k=0}^{n-1} C(r+n, k) (-ell)^k == 0  (mod C(r+n, r)).
// classify() tries the cheap sufficient conditions for non-integrality first
// and names the one that fired; the congruence is the final authority.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binomsum/numtheory.hpp"
#include "binomsum/polycore.hpp"

namespace binomsum {

/// The small values of ell for which non-integrality is known whenever
/// r >= n or n > r >= n/5.
inline constexpr std::int64_t kSmallEll[] = {-3, -2, -1, 2, 3, 4, 5};
bool is_small_ell(const Integer& ell);

/// Binomial row C(r+n, k) mod b = C(r+n, r), for k < n, prepared once per
/// (r, n). Uses 64-bit residues when b < 2^63 and GMP otherwise. Immutable
/// after construction, so one table can serve many threads.
class CongruenceTable {
 public:
  explicit CongruenceTable(const Params& params);

  const Params& params() const { return params_; }
  const Integer& modulus() const { return modulus_; }
  bool word_sized() const { return word_; }
  /// b as a machine word; only valid when word_sized().
  std::uint64_t word_modulus() const { return word_modulus_; }

  bool is_integral(const Integer& ell) const;
  /// Word path for ell given by its residue modulo b; requires word_sized().
  bool is_integral_residue(std::uint64_t ell_mod_b) const;

 private:
  Params params_;
  Integer modulus_;
  bool word_ = false;
  std::uint64_t word_modulus_ = 0;
  std::vector<std::uint64_t> word_coeffs_;
  std::vector<Integer> big_coeffs_;
};

/// Exact test via the binomial-row congruence. Requires r, n >= 1.
bool is_integral_congruence(const Params& params, const Integer& ell);

/// Least d in [1, r] with
///   r! (ell-1)^(r-d) ((ell-1)^(n+d) - ell^(n+d)) != 0  (mod n+d);
/// such a d proves non-integrality. Throws std::invalid_argument for ell in {0, 1}.
std::optional<std::uint32_t> witness_nonintegral(const Params& params, const Integer& ell);

/// 2-adic valuation of denom S_(n,n)(ell): 1 for odd ell, s_2(n) for even ell.
std::uint64_t diagonal_ord2(std::uint32_t n, const Integer& ell);

enum class Status { Integral, NonIntegral };

enum class CertificateKind {
  TrivialParams,   // r = 0 or n = 0: S is a polynomial with integer coefficients
  MainCondition,   // condition (i)..(vi) in `condition`
  Diagonal,        // r = n
  RangeCondition,  // condition (i) or (ii) in `condition`
  SmallEll,        // ell in kSmallEll with r >= n or n > r >= n/5
  Witness,         // `witness` holds d
  ExactCongruence,
};

struct Certificate {
  CertificateKind kind = CertificateKind::ExactCongruence;
  /// 1..6 for MainCondition, 1..2 for RangeCondition, 0 otherwise.
  int condition = 0;
  std::optional<std::uint64_t> prime;
  /// ord_2(denom) for Diagonal; ord_p(C(r+n, r)) where a single prime is named.
  std::optional<long> valuation;
  std::optional<std::uint32_t> witness;
  /// gcd(C(r+n, r), ell) for MainCondition(vi); gcd(C(r+n, r), ell - 1) for
  /// RangeCondition(ii) when that gcd is what decided.
  std::optional<Integer> gcd;
  /// For MainCondition(vi): every p | g with p^e exactly dividing the denominator.
  std::vector<PrimePower> prime_valuations;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Verdict {
  Status status = Status::NonIntegral;
  Certificate certificate;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Verdict classify(const Params& params, const Integer& ell);

std::string to_string(Status status);
std::string to_string(CertificateKind kind);
/// "MainCondition(vi)" style label.
std::string certificate_label(const Certificate& cert);
std::optional<Status> status_from_string(std::string_view s);
std::optional<CertificateKind> certificate_kind_from_string(std::string_view s);

}  // namespace binomsum

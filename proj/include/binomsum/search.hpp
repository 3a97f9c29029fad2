#pragma once

// Enumeration of exceptions: triples (r, n, ell) with S_(r,n)(ell) integral.
//
// For fixed (r, n) integrality depends only on ell mod b, b = C(r+n, r), so
// the exceptions of a cell are a finite set of residues a with 1 < a < b.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "binomsum/integrality.hpp"
#include "binomsum/numtheory.hpp"
#include "binomsum/polycore.hpp"

namespace binomsum {

struct ExceptionRecord {
  std::uint32_t r = 0;
  std::uint32_t n = 0;
  std::int64_t ell = 0;

  friend auto operator<=>(const ExceptionRecord&, const ExceptionRecord&) = default;
};

/// One residue class ell == a (mod b) of exceptions.
struct ResidueClass {
  std::uint32_t r = 0;
  std::uint32_t n = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend auto operator<=>(const ResidueClass&, const ResidueClass&) = default;
};

struct ResidueSet {
  Params params;
  std::uint64_t b = 0;
  std::vector<std::uint64_t> residues;  // ascending, each 1 < a < b

  std::vector<ResidueClass> classes() const;
  bool contains(const Integer& ell) const;
  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;
};

inline constexpr std::uint64_t kDefaultResidueBudget = 2'000'000;

class ScanBudgetExceeded : public std::runtime_error {
 public:
  ScanBudgetExceeded(const Params& params, const Integer& modulus, std::uint64_t budget);
  const Params& params() const { return params_; }
  std::uint64_t budget() const { return budget_; }

 private:
  Params params_;
  std::uint64_t budget_;
};

enum class ResidueMethod {
  /// Solve the congruence modulo each prime power p^e || b, then combine by CRT.
  LocalCrt,
  /// Test every 1 < a < b against the full modulus.
  Direct,
};

/// All exceptions with 1 <= r <= r_max, 1 <= n <= n_max, 1 <= |ell| <= ell_bound,
/// ordered by (r, n, ell). Output does not depend on `threads`.
std::vector<ExceptionRecord> scan_box(std::uint32_t r_max, std::uint32_t n_max,
                                      std::int64_t ell_bound, unsigned threads = 1);

/// Least 2 <= ell <= cap with S_(r,n)(ell) integral.
std::optional<std::uint64_t> least_positive_ell(const Params& params, std::uint64_t cap);

/// Throws ScanBudgetExceeded when b > budget.
ResidueSet residue_classes(const Params& params, std::uint64_t budget = kDefaultResidueBudget,
                           ResidueMethod method = ResidueMethod::LocalCrt);

/// n in [1, n_max] for which (r, n) has at least one exception class.
std::vector<std::uint32_t> exceptional_n(std::uint32_t r, std::uint32_t n_max,
                                         std::uint64_t budget = kDefaultResidueBudget,
                                         unsigned threads = 1);

/// Fraction of the C(m, 2) pairs r, n >= 1 with r + n <= m where
/// S_(r,n)(ell) is not integral (exact test).
Rational density(std::uint32_t m, const Integer& ell);
/// Fraction of the same pairs for which |ell| divides C(r+n, r).
Rational divisibility_density(std::uint32_t m, const Integer& ell);

/// Pascal's triangle mod 2, rows 0 .. rows-1; row m holds m + 1 bits.
struct ParityTriangle {
  std::uint32_t rows = 0;
  std::vector<bool> bits;

  bool at(std::uint32_t m, std::uint32_t k) const;
};

ParityTriangle parity_triangle(std::uint32_t rows);

}  // namespace binomsum

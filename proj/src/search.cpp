#include "binomsum/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace binomsum {

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers; the first
// exception thrown by any worker is rethrown here.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::uint64_t checked_modulus(const Params& params, std::uint64_t budget) {
  const Integer b = params.modulus();
  if (b > from_u64(budget) || !fits_u64(b)) throw ScanBudgetExceeded(params, b, budget);
  return to_u64(b);
}

// Roots of sum_{k<n} C(r+n,k) (-x)^k modulo q, for x in [0, q).
std::vector<std::uint64_t> local_roots(const std::vector<Integer>& row, std::uint64_t q) {
  std::vector<std::uint64_t> coeffs;
  coeffs.reserve(row.size());
  for (const auto& c : row) coeffs.push_back(reduce_mod(c, q));
  std::vector<std::uint64_t> roots;
  for (std::uint64_t x = 0; x < q; ++x) {
    const std::uint64_t neg = x == 0 ? 0 : q - x;
    std::uint64_t acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (mul_mod(acc, neg, q) + *it) % q;
    if (acc == 0) roots.push_back(x);
  }
  return roots;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), from_u64(a).get_mpz_t(), from_u64(m).get_mpz_t()) == 0)
    throw std::logic_error("inverse_mod: not invertible");
  return to_u64(inv);
}

// C(r+n, k) for k < n.
std::vector<Integer> binomial_row(const Params& params) {
  const std::uint64_t m = std::uint64_t{params.r} + params.n;
  std::vector<Integer> row;
  Integer c = 1;
  for (std::uint64_t k = 0; k < params.n; ++k) {
    row.push_back(c);
    c = c * from_u64(m - k) / from_u64(k + 1);
  }
  return row;
}

// Per prime power p^e || b, the roots modulo p^e. Stops early (returning an
// empty list for that factor) as soon as one factor has no roots.
std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> local_root_sets(
    const Params& params) {
  const auto row = binomial_row(params);
  std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> out;
  for (const auto& pp : factor_binomial(std::uint64_t{params.r} + params.n, params.r)) {
    std::uint64_t q = 1;
    for (long i = 0; i < pp.exponent; ++i) q *= pp.prime;
    auto roots = local_roots(row, q);
    const bool empty = roots.empty();
    out.emplace_back(q, std::move(roots));
    if (empty) break;
  }
  return out;
}

ResidueSet residues_crt(const Params& params, std::uint64_t b) {
  ResidueSet out{params, b, {}};
  std::vector<std::uint64_t> current = {0};
  std::uint64_t modulus = 1;
  for (const auto& [q, roots] : local_root_sets(params)) {
    if (roots.empty()) return out;
    const std::uint64_t inv = inverse_mod(modulus % q, q);
    std::vector<std::uint64_t> next;
    next.reserve(current.size() * roots.size());
    for (const auto u : current) {
      const std::uint64_t u_mod_q = u % q;
      for (const auto v : roots) {
        const std::uint64_t diff = v >= u_mod_q ? v - u_mod_q : v + q - u_mod_q;
        next.push_back(u + modulus * mul_mod(diff, inv, q));
      }
    }
    current = std::move(next);
    modulus *= q;
  }
  for (const auto a : current)
    if (a > 1) out.residues.push_back(a);
  std::sort(out.residues.begin(), out.residues.end());
  return out;
}

ResidueSet residues_direct(const Params& params, std::uint64_t b) {
  ResidueSet out{params, b, {}};
  const CongruenceTable table(params);
  for (std::uint64_t a = 2; a < b; ++a)
    if (table.is_integral_residue(a)) out.residues.push_back(a);
  return out;
}

}  // namespace

ScanBudgetExceeded::ScanBudgetExceeded(const Params& params, const Integer& modulus,
                                       std::uint64_t budget)
    : std::runtime_error("residue scan budget exceeded: C(" + std::to_string(params.r + params.n) +
                         ", " + std::to_string(params.r) + ") = " + modulus.get_str() + " > " +
                         std::to_string(budget)),
      params_(params),
      budget_(budget) {}

std::vector<ResidueClass> ResidueSet::classes() const {
  std::vector<ResidueClass> out;
  for (const auto a : residues) out.push_back({params.r, params.n, a, b});
  return out;
}

bool ResidueSet::contains(const Integer& ell) const {
  return std::binary_search(residues.begin(), residues.end(), reduce_mod(ell, b));
}

std::vector<ExceptionRecord> scan_box(std::uint32_t r_max, std::uint32_t n_max,
                                      std::int64_t ell_bound, unsigned threads) {
  std::vector<Params> cells;
  for (std::uint32_t r = 1; r <= r_max; ++r)
    for (std::uint32_t n = 1; n <= n_max; ++n) cells.push_back({r, n});

  std::vector<std::vector<ExceptionRecord>> found(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const CongruenceTable table(cells[i]);
    for (std::int64_t ell = -ell_bound; ell <= ell_bound; ++ell) {
      if (ell == 0) continue;
      bool hit;
      if (table.word_sized()) {
        const auto b = static_cast<std::int64_t>(table.word_modulus());
        hit = table.is_integral_residue(static_cast<std::uint64_t>(((ell % b) + b) % b));
      } else {
        hit = table.is_integral(from_i64(ell));
      }
      if (hit) found[i].push_back({cells[i].r, cells[i].n, ell});
    }
  });

  std::vector<ExceptionRecord> out;
  for (auto& cell : found) out.insert(out.end(), cell.begin(), cell.end());
  return out;
}

std::optional<std::uint64_t> least_positive_ell(const Params& params, std::uint64_t cap) {
  require_nontrivial(params, "least_positive_ell");
  const CongruenceTable table(params);
  if (table.word_sized()) {
    // Exceptions repeat with period b and never sit at 0 or 1 mod b.
    const std::uint64_t last = std::min(cap, table.word_modulus() - 1);
    for (std::uint64_t ell = 2; ell <= last; ++ell)
      if (table.is_integral_residue(ell)) return ell;
    return std::nullopt;
  }
  for (std::uint64_t ell = 2; ell <= cap; ++ell)
    if (table.is_integral(from_u64(ell))) return ell;
  return std::nullopt;
}

ResidueSet residue_classes(const Params& params, std::uint64_t budget, ResidueMethod method) {
  require_nontrivial(params, "residue_classes");
  const std::uint64_t b = checked_modulus(params, budget);
  return method == ResidueMethod::Direct ? residues_direct(params, b) : residues_crt(params, b);
}

std::vector<std::uint32_t> exceptional_n(std::uint32_t r, std::uint32_t n_max,
                                         std::uint64_t budget, unsigned threads) {
  if (r == 0) throw std::invalid_argument("exceptional_n: r must be >= 1");
  for (std::uint32_t n = 1; n <= n_max; ++n) checked_modulus({r, n}, budget);

  std::vector<char> hit(n_max + 1, 0);
  parallel_for(n_max, threads, [&](std::size_t i) {
    const auto n = static_cast<std::uint32_t>(i + 1);
    const auto sets = local_root_sets({r, n});
    hit[n] = std::all_of(sets.begin(), sets.end(), [](const auto& s) { return !s.second.empty(); });
  });

  std::vector<std::uint32_t> out;
  for (std::uint32_t n = 1; n <= n_max; ++n)
    if (hit[n]) out.push_back(n);
  return out;
}

Rational density(std::uint32_t m, const Integer& ell) {
  if (m < 2) throw std::invalid_argument("density: m must be >= 2");
  std::uint64_t nonintegral = 0;
  for (std::uint32_t s = 2; s <= m; ++s)
    for (std::uint32_t r = 1; r < s; ++r)
      if (!CongruenceTable({r, s - r}).is_integral(ell)) ++nonintegral;
  return make_rational(from_u64(nonintegral), binomial(m, 2));
}

Rational divisibility_density(std::uint32_t m, const Integer& ell) {
  if (m < 2) throw std::invalid_argument("divisibility_density: m must be >= 2");
  const Integer d = abs(ell);
  std::uint64_t count = 0;
  for (std::uint32_t s = 2; s <= m; ++s)
    for (std::uint32_t r = 1; r < s; ++r)
      if (d != 0 && mpz_divisible_p(binomial(s, r).get_mpz_t(), d.get_mpz_t())) ++count;
  return make_rational(from_u64(count), binomial(m, 2));
}

bool ParityTriangle::at(std::uint32_t m, std::uint32_t k) const {
  if (m >= rows || k > m) return false;
  return bits[std::size_t{m} * (m + 1) / 2 + k];
}

ParityTriangle parity_triangle(std::uint32_t rows) {
  if (rows == 0) throw std::invalid_argument("parity_triangle: rows must be >= 1");
  ParityTriangle out{rows, {}};
  out.bits.reserve(std::size_t{rows} * (rows + 1) / 2);
  // C(m, k) is odd iff k and m - k share no binary digit (no carries in base 2).
  for (std::uint32_t m = 0; m < rows; ++m)
    for (std::uint32_t k = 0; k <= m; ++k) out.bits.push_back((k & (m - k)) == 0);
  return out;
}

}  // namespace binomsum

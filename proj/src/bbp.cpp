#include "bbpkit/bbp.hpp"

#include <cstdlib>
#include <stdexcept>

#include "bbpkit/gaussian.hpp"

namespace bbpkit {

namespace {

void check_window(unsigned r) {
  if (r == 0) throw std::invalid_argument("extract: need at least one digit");
  if (r > kMaxWindowDigits) throw std::invalid_argument("extract: window larger than supported");
}

// Terms of the log2 series past n = d: 1/(2^(n-d) n). Counts how many exceed
// the cutoff 2^-(r+g+2).
unsigned long long log2_tail_terms(unsigned long long d, unsigned r, unsigned g) {
  const BigInt cutoff = ipow(2, r + g + 2);
  unsigned long long j = 0;
  BigInt pw = 1;
  while (true) {
    ++j;
    pw *= 2;
    if (pw * (d + j) > cutoff) return j - 1;
  }
}

// Guard digits sized to the term count, which itself depends on the guard
// size for tail-summed methods; iterate to a fixed point.
unsigned settle_guard(unsigned base, unsigned long long d, unsigned r,
                      unsigned long long (*tail_terms)(unsigned long long, unsigned, unsigned),
                      unsigned long long terms_per_position) {
  unsigned g = guard_digits(base, (d + r + 8) * terms_per_position);
  for (int i = 0; i < 10; ++i) {
    const unsigned long long total = (d + 1 + tail_terms(d, r, g)) * terms_per_position;
    const unsigned next = guard_digits(base, total);
    if (next == g) return g;
    g = next;
  }
  return g;
}

FixedFraction log2_finite_part(unsigned long long d, unsigned p) {
  return sum_terms(2, p, d, [&](std::size_t i) {
    const unsigned long long n = i + 1;
    const BigInt c = int_pow_mod(2, BigInt(d - n), BigInt(n));
    return FixedFraction::from_ratio(c, BigInt(n), 2, p);
  });
}

DigitWindow log2_extract(unsigned long long d, unsigned r, std::optional<unsigned> guard_override,
                         bool split) {
  check_window(r);
  unsigned g = guard_override ? *guard_override
               : split        ? guard_digits(2, d + 2 * r)
                              : settle_guard(2, d, r, log2_tail_terms, 1);
  for (int attempt = 0;; ++attempt) {
    const unsigned p = r + g;
    FixedFraction acc = log2_finite_part(d, p);
    if (split) {
      for (unsigned long long n = d + 1; n <= d + 2 * r; ++n) {
        acc = acc + FixedFraction::from_ratio(1, (BigInt(1) << unsigned(n - d)) * n, 2, p);
      }
    } else {
      const BigInt cutoff = ipow(2, r + g + 2);
      BigInt pw = 1;
      for (unsigned long long n = d + 1;; ++n) {
        pw *= 2;
        if (pw * n > cutoff) break;
        acc = acc + FixedFraction::from_ratio(1, pw * n, 2, p);
      }
    }
    const DigitWindow w = emit_digits(acc, r, d + 1);
    if (w.confident || guard_override || attempt >= 1) return w;
    g *= 2;
  }
}

constexpr struct {
  unsigned offset;
  int coef;
} kPiHexTerms[] = {{1, 4}, {4, -2}, {5, -1}, {6, -1}};

// Positions k > d contribute 4 terms coef/(16^(k-d) (8k+offset)); count the k
// with the largest of them above the cutoff 16^-(r+g+2).
unsigned long long pi_hex_tail_terms(unsigned long long d, unsigned r, unsigned g) {
  const BigInt cutoff = 4 * ipow(16, r + g + 2);
  unsigned long long j = 0;
  BigInt pw = 1;
  while (true) {
    ++j;
    pw *= 16;
    if (pw * (8 * (d + j) + 1) > cutoff) return j - 1;
  }
}

FixedFraction pi_hex_position(unsigned long long d, unsigned long long k, unsigned p) {
  FixedFraction acc(16, p);
  for (const auto& term : kPiHexTerms) {
    const BigInt m = 8 * BigInt(k) + term.offset;
    const BigInt c = BigInt(std::abs(term.coef)) * int_pow_mod(16, BigInt(d - k), m) % m;
    const FixedFraction f = FixedFraction::from_ratio(c, m, 16, p);
    acc = acc + (term.coef < 0 ? f.negated() : f);
  }
  return acc;
}

}  // namespace

DigitWindow log2_extract_direct(unsigned long long d, unsigned r,
                                std::optional<unsigned> guard_override) {
  return log2_extract(d, r, guard_override, /*split=*/false);
}

DigitWindow log2_extract_split(unsigned long long d, unsigned r,
                               std::optional<unsigned> guard_override) {
  return log2_extract(d, r, guard_override, /*split=*/true);
}

BigRat log2_split_tail_bound(unsigned long long d, unsigned r) {
  if (r == 0) throw std::invalid_argument("log2_split_tail_bound: need r >= 1");
  return BigRat(1, ipow(2, 2 * r) * (BigInt(d) + 2 * r + 1));
}

DigitWindow pi_hex_extract(unsigned long long d, unsigned r,
                           std::optional<unsigned> guard_override) {
  check_window(r);
  unsigned g = guard_override ? *guard_override : settle_guard(16, d, r, pi_hex_tail_terms, 4);
  for (int attempt = 0;; ++attempt) {
    const unsigned p = r + g;
    FixedFraction acc = sum_terms(16, p, d + 1, [&](std::size_t k) {
      return pi_hex_position(d, k, p);
    });
    const BigInt cutoff = 4 * ipow(16, r + g + 2);
    BigInt pw = 1;
    for (unsigned long long k = d + 1;; ++k) {
      pw *= 16;
      if (pw * (8 * BigInt(k) + 1) > cutoff) break;
      for (const auto& term : kPiHexTerms) {
        const FixedFraction f =
            FixedFraction::from_ratio(std::abs(term.coef), pw * (8 * BigInt(k) + term.offset), 16, p);
        acc = acc + (term.coef < 0 ? f.negated() : f);
      }
    }
    const DigitWindow w = emit_digits(acc, r, d + 1);
    if (w.confident || guard_override || attempt >= 1) return w;
    g *= 2;
  }
}

}  // namespace bbpkit

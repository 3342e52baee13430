#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bbpkit/fixed_fraction.hpp"
#include "bbpkit/gaussian.hpp"

namespace bbpkit {

// 2n+1 = 5^k * m with m coprime to 5.
struct TermDecomposition {
  unsigned long long n;
  unsigned k;
  BigInt m;

  bool operator==(const TermDecomposition&) const = default;
};

TermDecomposition decompose(unsigned long long n);

// 5^d >= 2d + 4r - 1: when this holds, every term of the truncated base-5 sum
// has 5^(d-k) >= m, the scale factor the per-term shortcut relies on.
bool check_condition(unsigned long long d, unsigned r);

enum class InverseRoute {
  kDirectInverse,   // conj(z) * norm(z)^-1 mod m
  kFifthRootTrick,  // (1-2i)^-1 = a(1+2i) mod m with a = 5^-1 mod m
};

// The per-term modular shortcut for position d: the components of
// 8 * 5^(d-k) * (1-2i)^-(2n+1) in Z[i]/(m), divided by m. Only a valid
// stand-in for the term's true fractional parts when 2n+1 <= d-k.
struct TermResidue {
  TermDecomposition decomposition;
  GaussianResidue residue;
  BigRat re_frac;
  BigRat im_frac;
};

TermResidue term_residue(unsigned long long n, unsigned long long d, InverseRoute route);

// Exact fractional parts of the components of
// 8 * 5^d * (1-2i)^-(2n+1) / (2n+1), for comparison against the shortcut.
std::pair<BigRat, BigRat> term_exact_frac(unsigned long long n, unsigned long long d);

// Upper bound on the magnitude of the omitted tail of the truncated base-5
// sum: 2 * (9/4) * 5^-2r / (2d+4r+1), with 9/4 over-approximating sqrt(5).
BigRat tail_bound_base5(unsigned long long d, unsigned r);

struct Base5Windows {
  DigitWindow re;
  DigitWindow im;

  bool operator==(const Base5Windows&) const = default;
};

// Truncated base-5 sum over n = 0 .. d+2r-1 using the per-term shortcut for
// every term, emitted verbatim: positions past the shortcut's validity range
// contribute garbage by design. Real part targets 2 log 2, imaginary part pi.
Base5Windows base5_extract_flawed(unsigned long long d, unsigned r,
                                  std::optional<unsigned> guard_override = std::nullopt);

// The same truncated sum with exact per-term fractional parts.
Base5Windows base5_extract_exact(unsigned long long d, unsigned r,
                                 std::optional<unsigned> guard_override = std::nullopt);

struct TermForensics {
  unsigned long long n;
  unsigned k;
  BigInt m;
  bool shortcut_valid;  // claimed fractional parts equal the exact ones
  BigRat claimed_re;
  BigRat claimed_im;
  BigRat exact_re;
  BigRat exact_im;

  bool operator==(const TermForensics&) const = default;
};

struct FlawReport {
  unsigned long long d = 0;
  unsigned r = 0;
  bool condition_ok = false;
  DigitWindow flawed_re;
  DigitWindow flawed_im;
  DigitWindow exact_re;
  DigitWindow exact_im;
  DigitWindow oracle_re;  // 2 log 2
  DigitWindow oracle_im;  // pi
  std::optional<unsigned> first_mismatch_im;  // 1-based index into the window
  std::vector<TermForensics> terms;

  bool operator==(const FlawReport&) const = default;
};

// Runs the flawed and exact extractions side by side with oracle windows and
// a per-term forensic record. Verifies internally that shortcut_valid agrees
// with the predicate 2n+1 <= d-k on every term.
FlawReport flaw_experiment(unsigned long long d, unsigned r);

// ---- Identity surface used by the verification suites ----

// Exact partial sum of 8 * sum_{n < n_terms} (1-2i)^-(2n+1) / (2n+1),
// returned as (re, im). The full series converges to (2 log 2, pi).
std::pair<BigRat, BigRat> series_partial_sum(unsigned n_terms);

// Componentwise tail bound for the partial sum: 2 * (9/4) * 5^-N / (2N+1).
BigRat series_tail_bound(unsigned n_terms);

// sum_{n <= n_max} b_n / ((2n+1) 5^(2n)); the full series converges to
// 5 pi / 16.
BigRat bn_series_partial(unsigned n_max);

// Tail bound for bn_series_partial: sum_{n > N} 2 * 5^-n / (2N+3).
BigRat bn_series_tail_bound(unsigned n_max);

}  // namespace bbpkit

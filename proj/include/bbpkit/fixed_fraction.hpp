#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bbpkit/numeric.hpp"

namespace bbpkit {

// Largest window any extractor will produce in one call.
inline constexpr unsigned kMaxWindowDigits = 10000;

// Fixed-point value in [0, 1): numerator / base^precision. Addition wraps
// mod 1, so a sum of terms is independent of evaluation order.
class FixedFraction {
 public:
  // Zero with the given spec.
  FixedFraction(unsigned base, unsigned precision);

  // floor(num * base^precision / den), i.e. num/den truncated to precision
  // digits. Requires den > 0 and 0 <= num < den.
  static FixedFraction from_ratio(const BigInt& num, const BigInt& den, unsigned base,
                                  unsigned precision);

  // Mod-1 sum; both operands must share base and precision.
  FixedFraction operator+(const FixedFraction& other) const;

  // Mod-1 negation: represents -value with the same one-sided truncation
  // convention as from_ratio.
  FixedFraction negated() const;

  bool same_spec(const FixedFraction& other) const {
    return base_ == other.base_ && precision_ == other.precision_;
  }

  unsigned base() const { return base_; }
  unsigned precision() const { return precision_; }
  const BigInt& numerator() const { return num_; }
  const BigInt& scale() const { return scale_; }  // base^precision

  bool operator==(const FixedFraction&) const = default;

 private:
  unsigned base_;
  unsigned precision_;
  BigInt scale_;
  BigInt num_;
};

// A run of digits of some constant in a fixed base, starting at a 1-based
// position after the radix point.
struct DigitWindow {
  unsigned base = 10;
  unsigned long long start_position = 1;
  std::vector<int> digits;
  bool confident = false;

  // Canonical rendering: "<start>: <digits> [confident|unconfident]".
  std::string str() const;

  bool operator==(const DigitWindow&) const = default;
};

// Digit characters 0-9 then a-z; bases above 36 are rejected.
std::string digits_to_string(unsigned base, const std::vector<int>& digits);
std::vector<int> digits_from_string(unsigned base, const std::string& text);

// Parses the canonical DigitWindow rendering; the base is not encoded in the
// line, so the caller supplies it.
DigitWindow parse_digit_window(unsigned base, const std::string& line);

// First r digits of acc. The window is flagged unconfident when the trailing
// precision-r guard digits are all 0 or all base-1 (an empty guard region
// counts as all-zero), since accumulated truncation error could then carry
// into the reported digits.
DigitWindow emit_digits(const FixedFraction& acc, unsigned r,
                        unsigned long long start_position = 1);

// Guard digit count for a sum of term_count truncated terms:
// ceil(log_base(term_count)) + 4.
unsigned guard_digits(unsigned base, unsigned long long term_count);

// Mod-1 sum of term(0) .. term(count-1), partitioned across threads
// (0 = hardware concurrency). Exact arithmetic makes the result identical to
// the sequential fold for every partitioning.
FixedFraction sum_terms(unsigned base, unsigned precision, std::size_t count,
                        const std::function<FixedFraction(std::size_t)>& term,
                        unsigned threads = 0);

}  // namespace bbpkit

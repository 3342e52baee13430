#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "bbpkit/fixed_fraction.hpp"

namespace bbpkit {

// Thrown when a value's error bound cannot pin down the digits asked for.
struct InsufficientPrecision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A nonnegative constant scaled to an integer: value = scaled / 10^precision,
// with |value - exact| <= err_ulps * 10^-precision.
class HighPrecisionValue {
 public:
  HighPrecisionValue(BigInt scaled, unsigned precision, unsigned err_ulps);

  const BigInt& scaled() const { return scaled_; }
  unsigned precision() const { return precision_; }
  unsigned err_ulps() const { return err_ulps_; }

  // Same value at lower precision (digits dropped, error bound adjusted).
  HighPrecisionValue truncated(unsigned precision) const;

  // Exact small-integer multiple; the error bound scales with it.
  HighPrecisionValue times_small(unsigned factor) const;

  // "3.14159..." with precision digits after the point.
  std::string decimal_string() const;

 private:
  BigInt scaled_;
  unsigned precision_;
  unsigned err_ulps_;
};

inline constexpr unsigned kOraclePrecisionCap = 100000;

// pi to p decimal digits, err_ulps <= 2. Every fresh computation evaluates two
// independent integer-series routes (Machin arctangents; the Gaussian-norm
// recurrence series) and requires agreement within their combined error
// bounds before the value is accepted or cached.
HighPrecisionValue pi_highprec(unsigned p);

// log 2 to p decimal digits, err_ulps <= 2; the 1/(n 2^n) series is checked
// against 2 atanh(1/3) the same way.
HighPrecisionValue log2_highprec(unsigned p);

// Base-base digits of {base^d * x} at positions d+1 .. d+r. Throws
// InsufficientPrecision when the error bound of x, or a carry hazard at the
// cut, prevents pinning every digit.
DigitWindow to_base_digits(const HighPrecisionValue& x, unsigned base, unsigned long long d,
                           unsigned r);

// A decimal precision sufficient for to_base_digits(x, base, d, r) given
// err_ulps <= 4.
unsigned required_precision(unsigned base, unsigned long long d, unsigned r);

// Reference windows at positions d+1 .. d+r, computed at automatically chosen
// precision (with one retry on an edge hazard).
DigitWindow oracle_digits_pi(unsigned base, unsigned long long d, unsigned r);
DigitWindow oracle_digits_log2(unsigned base, unsigned long long d, unsigned r);
DigitWindow oracle_digits_2log2(unsigned base, unsigned long long d, unsigned r);

// Optional on-disk cache of computed constants; see README for the format.
// Unset by default. The BBPKIT_ORACLE_CACHE handling lives in the CLI.
void set_oracle_cache_path(std::optional<std::filesystem::path> path);
std::optional<std::filesystem::path> oracle_cache_path();

// Drops in-memory cached values (testing hook; the disk cache is untouched).
void clear_oracle_memory_cache();

}  // namespace bbpkit

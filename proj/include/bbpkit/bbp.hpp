#pragma once

#include <optional>

#include "bbpkit/fixed_fraction.hpp"

namespace bbpkit {

// r binary digits of {2^d log 2} starting at position d+1. The finite part
// (n <= d) uses modular exponentiation; the tail is summed until a term drops
// below 2^-(r+g+2), where g is the guard digit count. An unconfident window
// triggers one automatic retry with g doubled unless guard_override is given.
DigitWindow log2_extract_direct(unsigned long long d, unsigned r,
                                std::optional<unsigned> guard_override = std::nullopt);

// Same digits via the three-way split: modular finite part, 2r exact
// reciprocals at n = d+1 .. d+2r, and an omitted tail whose magnitude is
// bounded by log2_split_tail_bound.
DigitWindow log2_extract_split(unsigned long long d, unsigned r,
                               std::optional<unsigned> guard_override = std::nullopt);

// 2^-2r / (d + 2r + 1): bound on the tail the split method omits.
BigRat log2_split_tail_bound(unsigned long long d, unsigned r);

// r hexadecimal digits of {16^d pi} starting at position d+1, via the 4-term
// base-16 series with coefficients (4, -2, -1, -1) at 8k+(1, 4, 5, 6).
DigitWindow pi_hex_extract(unsigned long long d, unsigned r,
                           std::optional<unsigned> guard_override = std::nullopt);

}  // namespace bbpkit

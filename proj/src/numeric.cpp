#include "bbpkit/numeric.hpp"

#include <stdexcept>

namespace bbpkit {

BigInt ipow(BigInt base, unsigned long long exp) {
  BigInt result = 1;
  while (exp != 0) {
    if (exp & 1) result *= base;
    exp >>= 1;
    if (exp != 0) base *= base;
  }
  return result;
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw std::invalid_argument("floor_div: denominator must be positive");
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

BigRat unit_frac(const BigRat& x) {
  const BigInt fl = floor_div(numerator(x), denominator(x));
  return x - BigRat(fl);
}

}  // namespace bbpkit

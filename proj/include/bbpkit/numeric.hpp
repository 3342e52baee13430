#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace bbpkit {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// base^exp by binary powering, exact.
BigInt ipow(BigInt base, unsigned long long exp);

// Floor division; den must be positive.
BigInt floor_div(const BigInt& num, const BigInt& den);

// x - floor(x), canonical representative in [0, 1).
BigRat unit_frac(const BigRat& x);

}  // namespace bbpkit

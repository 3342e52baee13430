#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "bbpkit/numeric.hpp"

namespace bbpkit {

// Element of Z[i] with arbitrary-precision components.
struct GaussianInt {
  BigInt re;
  BigInt im;

  bool operator==(const GaussianInt&) const = default;
};

GaussianInt operator+(const GaussianInt& a, const GaussianInt& b);
GaussianInt operator-(const GaussianInt& a, const GaussianInt& b);
GaussianInt operator*(const GaussianInt& a, const GaussianInt& b);
GaussianInt conj(const GaussianInt& z);

// re^2 + im^2; multiplicative over products.
BigInt norm(const GaussianInt& z);

// Prints "a+bi" / "a-bi".
std::ostream& operator<<(std::ostream& os, const GaussianInt& z);

// z^n by square-and-multiply.
GaussianInt gauss_pow(const GaussianInt& z, unsigned long long n);

// z^n via the order-2 recurrence x_j = 2*re(z)*x_{j-1} - norm(z)*x_{j-2},
// applied componentwise from (1, z). Kept as an independent route for
// cross-checking gauss_pow.
GaussianInt gauss_pow_recurrence(const GaussianInt& z, unsigned long long n);

// Element of Z[i]/(m) with components reduced into [0, m). The modulus must be
// positive, odd and coprime to 5.
class GaussianResidue {
 public:
  GaussianResidue(BigInt re, BigInt im, BigInt mod);

  const BigInt& re() const { return re_; }
  const BigInt& im() const { return im_; }
  const BigInt& mod() const { return mod_; }

  bool operator==(const GaussianResidue&) const = default;

 private:
  BigInt re_;
  BigInt im_;
  BigInt mod_;
};

std::ostream& operator<<(std::ostream& os, const GaussianResidue& z);

GaussianResidue reduce(const GaussianInt& z, const BigInt& m);
GaussianResidue gauss_mul_mod(const GaussianResidue& a, const GaussianResidue& b);
GaussianResidue scalar_mul_mod(const BigInt& c, const GaussianResidue& z);
GaussianResidue gauss_pow_mod(const GaussianInt& z, unsigned long long n, const BigInt& m);

// Inverse in Z[i]/(m) via conj(z) * norm(z)^-1; throws std::domain_error when
// norm(z) shares a factor with m.
GaussianResidue gauss_inverse_mod(const GaussianResidue& z);

// base^exp mod m for nonnegative base and exp, m >= 1.
BigInt int_pow_mod(const BigInt& base, const BigInt& exp, const BigInt& m);

// Inverse of x mod m (m >= 1) by extended Euclid; throws std::domain_error
// when gcd(x, m) != 1.
BigInt mod_inverse(const BigInt& x, const BigInt& m);

using BnSequence = std::vector<BigInt>;

// b_0 .. b_n_max with b_0 = 1, b_1 = -1, b_n = -6 b_{n-1} - 25 b_{n-2}.
// Satisfies b_n = Im((1+2i)^(2n+1)) / 2 and |b_n| < 2 * 5^n.
BnSequence bn_sequence(std::size_t n_max);

}  // namespace bbpkit

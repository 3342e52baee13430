#include "bbpkit/gaussian.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace bbpkit {

namespace {

BigInt mod_reduce(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

void check_gauss_modulus(const BigInt& m) {
  if (m <= 0) throw std::invalid_argument("gaussian modulus must be positive");
  if (m % 2 == 0) throw std::invalid_argument("gaussian modulus must be odd");
  if (m % 5 == 0) throw std::invalid_argument("gaussian modulus must be coprime to 5");
}

}  // namespace

GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
  return {a.re + b.re, a.im + b.im};
}

GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
  return {a.re - b.re, a.im - b.im};
}

GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianInt conj(const GaussianInt& z) { return {z.re, -z.im}; }

BigInt norm(const GaussianInt& z) { return z.re * z.re + z.im * z.im; }

std::ostream& operator<<(std::ostream& os, const GaussianInt& z) {
  os << z.re.str();
  os << (z.im < 0 ? "-" : "+");
  BigInt a = abs(z.im);
  os << a.str() << "i";
  return os;
}

GaussianInt gauss_pow(const GaussianInt& z, unsigned long long n) {
  GaussianInt result{1, 0};
  GaussianInt sq = z;
  while (n != 0) {
    if (n & 1) result = result * sq;
    n >>= 1;
    if (n != 0) sq = sq * sq;
  }
  return result;
}

GaussianInt gauss_pow_recurrence(const GaussianInt& z, unsigned long long n) {
  if (n == 0) return {1, 0};
  const BigInt trace = 2 * z.re;
  const BigInt nrm = norm(z);
  GaussianInt prev{1, 0};
  GaussianInt cur = z;
  for (unsigned long long j = 1; j < n; ++j) {
    GaussianInt next{trace * cur.re - nrm * prev.re, trace * cur.im - nrm * prev.im};
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

GaussianResidue::GaussianResidue(BigInt re, BigInt im, BigInt mod)
    : re_(std::move(re)), im_(std::move(im)), mod_(std::move(mod)) {
  check_gauss_modulus(mod_);
  re_ = mod_reduce(re_, mod_);
  im_ = mod_reduce(im_, mod_);
}

std::ostream& operator<<(std::ostream& os, const GaussianResidue& z) {
  os << z.re().str() << "+" << z.im().str() << "i mod " << z.mod().str();
  return os;
}

GaussianResidue reduce(const GaussianInt& z, const BigInt& m) {
  return GaussianResidue(z.re, z.im, m);
}

GaussianResidue gauss_mul_mod(const GaussianResidue& a, const GaussianResidue& b) {
  if (a.mod() != b.mod()) throw std::invalid_argument("gauss_mul_mod: mismatched moduli");
  const BigInt& m = a.mod();
  return GaussianResidue((a.re() * b.re() - a.im() * b.im()) % m,
                         (a.re() * b.im() + a.im() * b.re()) % m, m);
}

GaussianResidue scalar_mul_mod(const BigInt& c, const GaussianResidue& z) {
  const BigInt& m = z.mod();
  return GaussianResidue((c % m) * z.re() % m, (c % m) * z.im() % m, m);
}

GaussianResidue gauss_pow_mod(const GaussianInt& z, unsigned long long n, const BigInt& m) {
  GaussianResidue result(1, 0, m);
  GaussianResidue sq = reduce(z, m);
  while (n != 0) {
    if (n & 1) result = gauss_mul_mod(result, sq);
    n >>= 1;
    if (n != 0) sq = gauss_mul_mod(sq, sq);
  }
  return result;
}

GaussianResidue gauss_inverse_mod(const GaussianResidue& z) {
  const BigInt& m = z.mod();
  const BigInt nrm = (z.re() * z.re() + z.im() * z.im()) % m;
  BigInt nrm_inv;
  try {
    nrm_inv = mod_inverse(nrm, m);
  } catch (const std::domain_error&) {
    throw std::domain_error("gauss_inverse_mod: norm shares a factor with the modulus");
  }
  return GaussianResidue(z.re() * nrm_inv % m, (m - z.im()) * nrm_inv % m, m);
}

BigInt int_pow_mod(const BigInt& base, const BigInt& exp, const BigInt& m) {
  if (base < 0) throw std::invalid_argument("int_pow_mod: base must be nonnegative");
  if (exp < 0) throw std::invalid_argument("int_pow_mod: exponent must be nonnegative");
  if (m < 1) throw std::invalid_argument("int_pow_mod: modulus must be >= 1");
  if (m == 1) return 0;
  BigInt result = 1;
  BigInt sq = base % m;
  BigInt e = exp;
  while (e != 0) {
    if (bit_test(e, 0)) result = result * sq % m;
    e >>= 1;
    if (e != 0) sq = sq * sq % m;
  }
  return result;
}

BigInt mod_inverse(const BigInt& x, const BigInt& m) {
  if (m < 1) throw std::invalid_argument("mod_inverse: modulus must be >= 1");
  if (m == 1) return 0;
  // Extended Euclid on (x mod m, m), tracking only the coefficient of x.
  BigInt a = mod_reduce(x, m);
  BigInt b = m;
  BigInt s0 = 1, s1 = 0;
  while (b != 0) {
    BigInt q = a / b;
    BigInt t = a - q * b;
    a = std::move(b);
    b = std::move(t);
    BigInt s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (a != 1) throw std::domain_error("mod_inverse: argument shares a factor with the modulus");
  return mod_reduce(s0, m);
}

BnSequence bn_sequence(std::size_t n_max) {
  BnSequence b;
  b.reserve(n_max + 1);
  b.emplace_back(1);
  if (n_max >= 1) b.emplace_back(-1);
  for (std::size_t n = 2; n <= n_max; ++n) {
    b.emplace_back(-6 * b[n - 1] - 25 * b[n - 2]);
  }
  return b;
}

}  // namespace bbpkit

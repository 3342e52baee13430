#include "bbpkit/base5.hpp"

#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bbpkit/oracle.hpp"

namespace bbpkit {

namespace {

void check_applicability(unsigned long long d, unsigned r) {
  if (r == 0) throw std::invalid_argument("base5_extract: need at least one digit");
  if (r > kMaxWindowDigits) throw std::invalid_argument("base5_extract: window larger than supported");
  if (!check_condition(d, r)) {
    std::ostringstream os;
    os << "base5_extract: condition 5^d >= 2d+4r-1 fails for d=" << d << ", r=" << r
       << "; the truncated sum cannot place the window";
    throw std::invalid_argument(os.str());
  }
}

std::pair<FixedFraction, FixedFraction> term_pair(unsigned long long n, unsigned long long d,
                                                  unsigned p, bool exact) {
  if (exact) {
    const auto [re, im] = term_exact_frac(n, d);
    return {FixedFraction::from_ratio(numerator(re), denominator(re), 5, p),
            FixedFraction::from_ratio(numerator(im), denominator(im), 5, p)};
  }
  const TermResidue t = term_residue(n, d, InverseRoute::kDirectInverse);
  return {FixedFraction::from_ratio(t.residue.re(), t.residue.mod(), 5, p),
          FixedFraction::from_ratio(t.residue.im(), t.residue.mod(), 5, p)};
}

Base5Windows base5_extract(unsigned long long d, unsigned r, std::optional<unsigned> guard_override,
                           bool exact) {
  check_applicability(d, r);
  const std::size_t count = d + 2 * std::size_t(r);
  unsigned g = guard_override ? *guard_override : guard_digits(5, count);
  for (int attempt = 0;; ++attempt) {
    const unsigned p = r + g;
    const std::pair<FixedFraction, FixedFraction> zero{FixedFraction(5, p), FixedFraction(5, p)};
    std::vector<std::pair<FixedFraction, FixedFraction>> terms(count, zero);
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
    if (workers <= 1 || count < 64) {
      for (std::size_t i = 0; i < count; ++i) terms[i] = term_pair(i, d, p, exact);
    } else {
      std::vector<std::future<void>> parts;
      const std::size_t chunk = (count + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        parts.push_back(std::async(std::launch::async, [&, lo, hi] {
          for (std::size_t i = lo; i < hi; ++i) terms[i] = term_pair(i, d, p, exact);
        }));
      }
      for (auto& part : parts) part.get();
    }
    FixedFraction re_acc(5, p), im_acc(5, p);
    for (const auto& [re, im] : terms) {
      re_acc = re_acc + re;
      im_acc = im_acc + im;
    }
    Base5Windows w{emit_digits(re_acc, r, d + 1), emit_digits(im_acc, r, d + 1)};
    if ((w.re.confident && w.im.confident) || guard_override || attempt >= 1) return w;
    g *= 2;
  }
}

}  // namespace

TermDecomposition decompose(unsigned long long n) {
  unsigned long long v = 2 * n + 1;
  unsigned k = 0;
  while (v % 5 == 0) {
    v /= 5;
    ++k;
  }
  return {n, k, BigInt(v)};
}

bool check_condition(unsigned long long d, unsigned r) {
  if (r == 0) throw std::invalid_argument("check_condition: need r >= 1");
  return ipow(5, d) >= 2 * BigInt(d) + 4 * BigInt(r) - 1;
}

TermResidue term_residue(unsigned long long n, unsigned long long d, InverseRoute route) {
  const TermDecomposition dec = decompose(n);
  if (dec.k > d) {
    throw std::invalid_argument("term_residue: 5^(d-k) is no integer scale for this term");
  }
  const BigInt& m = dec.m;
  GaussianResidue res(0, 0, m);
  if (m != 1) {
    const BigInt scale = 8 * int_pow_mod(5, BigInt(d - dec.k), m) % m;
    if (route == InverseRoute::kDirectInverse) {
      const GaussianResidue zp = gauss_pow_mod({1, -2}, 2 * n + 1, m);
      res = scalar_mul_mod(scale, gauss_inverse_mod(zp));
    } else {
      const BigInt a = mod_inverse(5, m);
      const BigInt scale2 = scale * int_pow_mod(a, BigInt(2 * n + 1), m) % m;
      res = scalar_mul_mod(scale2, gauss_pow_mod({1, 2}, 2 * n + 1, m));
    }
  }
  BigRat re_frac(res.re(), m);
  BigRat im_frac(res.im(), m);
  return {dec, res, std::move(re_frac), std::move(im_frac)};
}

std::pair<BigRat, BigRat> term_exact_frac(unsigned long long n, unsigned long long d) {
  // (1-2i)^-(2n+1) = (1+2i)^(2n+1) / 5^(2n+1)
  const GaussianInt w = gauss_pow({1, 2}, 2 * n + 1);
  const BigInt scale = 8 * ipow(5, d);
  const BigInt den = BigInt(2 * n + 1) * ipow(5, 2 * n + 1);
  return {unit_frac(BigRat(scale * w.re, den)), unit_frac(BigRat(scale * w.im, den))};
}

BigRat tail_bound_base5(unsigned long long d, unsigned r) {
  if (r == 0) throw std::invalid_argument("tail_bound_base5: need r >= 1");
  return BigRat(9, 2 * ipow(5, 2 * r) * (2 * BigInt(d) + 4 * r + 1));
}

Base5Windows base5_extract_flawed(unsigned long long d, unsigned r,
                                  std::optional<unsigned> guard_override) {
  return base5_extract(d, r, guard_override, /*exact=*/false);
}

Base5Windows base5_extract_exact(unsigned long long d, unsigned r,
                                 std::optional<unsigned> guard_override) {
  return base5_extract(d, r, guard_override, /*exact=*/true);
}

FlawReport flaw_experiment(unsigned long long d, unsigned r) {
  check_applicability(d, r);
  FlawReport rep;
  rep.d = d;
  rep.r = r;
  rep.condition_ok = true;
  const Base5Windows flawed = base5_extract_flawed(d, r);
  const Base5Windows exact = base5_extract_exact(d, r);
  rep.flawed_re = flawed.re;
  rep.flawed_im = flawed.im;
  rep.exact_re = exact.re;
  rep.exact_im = exact.im;
  rep.oracle_re = oracle_digits_2log2(5, d, r);
  rep.oracle_im = oracle_digits_pi(5, d, r);
  const unsigned long long count = d + 2 * (unsigned long long)(r);
  rep.terms.reserve(count);
  for (unsigned long long n = 0; n < count; ++n) {
    const TermResidue t = term_residue(n, d, InverseRoute::kDirectInverse);
    const auto [exact_re, exact_im] = term_exact_frac(n, d);
    TermForensics f{n,
                    t.decomposition.k,
                    t.decomposition.m,
                    t.re_frac == exact_re && t.im_frac == exact_im,
                    t.re_frac,
                    t.im_frac,
                    exact_re,
                    exact_im};
    const bool predicted = d >= t.decomposition.k && 2 * n + 1 <= d - t.decomposition.k;
    if (f.shortcut_valid != predicted) {
      std::ostringstream os;
      os << "flaw_experiment: validity frontier violated at n=" << n << " (d=" << d
         << ", k=" << t.decomposition.k << ")";
      throw std::logic_error(os.str());
    }
    rep.terms.push_back(std::move(f));
  }
  for (unsigned i = 0; i < r; ++i) {
    if (rep.flawed_im.digits[i] != rep.oracle_im.digits[i]) {
      rep.first_mismatch_im = i + 1;
      break;
    }
  }
  return rep;
}

std::pair<BigRat, BigRat> series_partial_sum(unsigned n_terms) {
  BigRat re = 0, im = 0;
  const GaussianInt w{1, 2};
  const GaussianInt wsq = w * w;
  GaussianInt cur = w;  // (1+2i)^(2n+1)
  BigInt p5 = 5;        // 5^(2n+1)
  for (unsigned n = 0; n < n_terms; ++n) {
    const BigInt den = BigInt(2 * n + 1) * p5;
    re += BigRat(8 * cur.re, den);
    im += BigRat(8 * cur.im, den);
    cur = cur * wsq;
    p5 *= 25;
  }
  return {re, im};
}

BigRat series_tail_bound(unsigned n_terms) {
  return BigRat(9, 2 * ipow(5, n_terms) * (2 * BigInt(n_terms) + 1));
}

BigRat bn_series_partial(unsigned n_max) {
  const BnSequence b = bn_sequence(n_max);
  BigRat sum = 0;
  BigInt p5 = 1;  // 5^(2n)
  for (unsigned n = 0; n <= n_max; ++n) {
    sum += BigRat(b[n], BigInt(2 * n + 1) * p5);
    p5 *= 25;
  }
  return sum;
}

BigRat bn_series_tail_bound(unsigned n_max) {
  return BigRat(1, 2 * (2 * BigInt(n_max) + 3) * ipow(5, n_max));
}

}  // namespace bbpkit

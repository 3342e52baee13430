#include "bbpkit/fixed_fraction.hpp"

#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bbpkit {

namespace {

void check_spec(unsigned base, unsigned precision) {
  if (base < 2) throw std::invalid_argument("FixedFraction: base must be >= 2");
  if (base > 36) throw std::invalid_argument("FixedFraction: base must be <= 36");
  if (precision == 0) throw std::invalid_argument("FixedFraction: precision must be >= 1");
}

char digit_to_char(int d) { return d < 10 ? char('0' + d) : char('a' + d - 10); }

int char_to_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

}  // namespace

FixedFraction::FixedFraction(unsigned base, unsigned precision)
    : base_(base), precision_(precision), scale_(ipow(base, precision)), num_(0) {
  check_spec(base, precision);
}

FixedFraction FixedFraction::from_ratio(const BigInt& num, const BigInt& den, unsigned base,
                                        unsigned precision) {
  if (den <= 0) throw std::invalid_argument("from_ratio: denominator must be positive");
  if (num < 0 || num >= den) throw std::invalid_argument("from_ratio: need 0 <= num < den");
  FixedFraction f(base, precision);
  f.num_ = num * f.scale_ / den;
  return f;
}

FixedFraction FixedFraction::operator+(const FixedFraction& other) const {
  if (!same_spec(other)) throw std::invalid_argument("FixedFraction: mismatched specs");
  FixedFraction f(base_, precision_);
  f.num_ = num_ + other.num_;
  if (f.num_ >= scale_) f.num_ -= scale_;
  return f;
}

FixedFraction FixedFraction::negated() const {
  FixedFraction f(base_, precision_);
  if (num_ != 0) f.num_ = scale_ - num_;
  return f;
}

std::string DigitWindow::str() const {
  std::ostringstream os;
  os << start_position << ": " << digits_to_string(base, digits) << " ["
     << (confident ? "confident" : "unconfident") << "]";
  return os.str();
}

std::string digits_to_string(unsigned base, const std::vector<int>& digits) {
  if (base < 2 || base > 36) throw std::invalid_argument("digits_to_string: base must be in [2, 36]");
  std::string s;
  s.reserve(digits.size());
  for (int d : digits) {
    if (d < 0 || d >= int(base)) throw std::invalid_argument("digits_to_string: digit out of range");
    s.push_back(digit_to_char(d));
  }
  return s;
}

std::vector<int> digits_from_string(unsigned base, const std::string& text) {
  if (base < 2 || base > 36) throw std::invalid_argument("digits_from_string: base must be in [2, 36]");
  std::vector<int> digits;
  digits.reserve(text.size());
  for (char c : text) {
    int d = char_to_digit(c);
    if (d < 0 || d >= int(base)) throw std::invalid_argument("digits_from_string: bad digit character");
    digits.push_back(d);
  }
  return digits;
}

DigitWindow parse_digit_window(unsigned base, const std::string& line) {
  const auto colon = line.find(": ");
  if (colon == std::string::npos) throw std::invalid_argument("parse_digit_window: missing position");
  const auto lbracket = line.rfind(" [");
  if (lbracket == std::string::npos || lbracket <= colon || line.back() != ']')
    throw std::invalid_argument("parse_digit_window: missing confidence marker");
  DigitWindow w;
  w.base = base;
  w.start_position = std::stoull(line.substr(0, colon));
  w.digits = digits_from_string(base, line.substr(colon + 2, lbracket - colon - 2));
  const std::string marker = line.substr(lbracket + 2, line.size() - lbracket - 3);
  if (marker == "confident") {
    w.confident = true;
  } else if (marker == "unconfident") {
    w.confident = false;
  } else {
    throw std::invalid_argument("parse_digit_window: bad confidence marker");
  }
  return w;
}

DigitWindow emit_digits(const FixedFraction& acc, unsigned r, unsigned long long start_position) {
  if (r == 0) throw std::invalid_argument("emit_digits: need at least one digit");
  if (r > acc.precision()) throw std::invalid_argument("emit_digits: window exceeds precision");
  DigitWindow w;
  w.base = acc.base();
  w.start_position = start_position;
  w.digits.reserve(r);
  const unsigned guard = acc.precision() - r;
  const BigInt guard_scale = ipow(acc.base(), guard);
  BigInt head = acc.numerator() / guard_scale;  // top r digits
  const BigInt guard_num = acc.numerator() % guard_scale;
  w.confident = guard_num != 0 && guard_num != guard_scale - 1;
  w.digits.assign(r, 0);
  for (unsigned i = r; i-- > 0;) {
    w.digits[i] = int(head % acc.base());
    head /= acc.base();
  }
  return w;
}

unsigned guard_digits(unsigned base, unsigned long long term_count) {
  unsigned g = 0;
  BigInt pw = 1;
  while (pw < term_count) {
    pw *= base;
    ++g;
  }
  return g + 4;
}

FixedFraction sum_terms(unsigned base, unsigned precision, std::size_t count,
                        const std::function<FixedFraction(std::size_t)>& term,
                        unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  FixedFraction total(base, precision);
  if (count == 0) return total;
  const std::size_t workers = std::min<std::size_t>(threads, count);
  if (workers <= 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) total = total + term(i);
    return total;
  }
  std::vector<std::future<FixedFraction>> parts;
  parts.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    parts.push_back(std::async(std::launch::async, [&, lo, hi] {
      FixedFraction part(base, precision);
      for (std::size_t i = lo; i < hi; ++i) part = part + term(i);
      return part;
    }));
  }
  for (auto& p : parts) total = total + p.get();
  return total;
}

}  // namespace bbpkit

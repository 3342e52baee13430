#include "bbpkit/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace bbpkit {

namespace {

// ---- Integer series routes ----
//
// Each route returns the constant scaled by `scale` (= 10^q) together with an
// upper bound, in ulps of that scale, on the accumulated truncation error.
// The routes deliberately share no code with the digit extractors they are
// used to check.

struct RouteResult {
  BigInt value;
  BigInt err_ulps;
};

// arccot(x) * scale = sum_k (-1)^k scale / ((2k+1) x^(2k+1)). Successive
// integer division keeps every term an exact floor of the true term.
RouteResult arccot_scaled(unsigned x, const BigInt& scale) {
  const BigInt x2 = BigInt(x) * x;
  BigInt u = scale / x;
  BigInt sum = 0;
  unsigned long long k = 0;
  while (u != 0) {
    const BigInt t = u / (2 * k + 1);
    if (k % 2 == 0)
      sum += t;
    else
      sum -= t;
    u /= x2;
    ++k;
  }
  return {sum, BigInt(k) + 2};
}

// pi = 16 arccot(5) - 4 arccot(239).
RouteResult pi_machin(const BigInt& scale) {
  const RouteResult a5 = arccot_scaled(5, scale);
  const RouteResult a239 = arccot_scaled(239, scale);
  return {16 * a5.value - 4 * a239.value, 16 * a5.err_ulps + 4 * a239.err_ulps + 1};
}

// pi = (16/5) sum_n b_n / ((2n+1) 5^(2n)) with b_0 = 1, b_1 = -1,
// b_n = -6 b_{n-1} - 25 b_{n-2}. The recurrence is restated here on purpose:
// this route must stay independent of the library's own sequence code.
RouteResult pi_recurrence_series(const BigInt& scale) {
  BigInt sum = scale;  // n = 0 term
  BigInt b_prev = 1, b_cur = -1;
  BigInt den_pow = 25;  // 5^(2n)
  unsigned long long n = 1;
  BigInt terms = 1;
  while (true) {
    const BigInt t = scale * b_cur / (BigInt(2 * n + 1) * den_pow);
    if (t == 0) break;
    sum += t;
    ++terms;
    const BigInt b_next = -6 * b_cur - 25 * b_prev;
    b_prev = std::move(b_cur);
    b_cur = b_next;
    den_pow *= 25;
    ++n;
  }
  // |b_n| < 2*5^n keeps every omitted term below 2 ulps in total.
  return {16 * sum / 5, 16 * (terms + 2) / 5 + 2};
}

// log 2 = sum_{n>=1} 1/(n 2^n).
RouteResult log2_direct_series(const BigInt& scale) {
  BigInt u = scale;
  BigInt sum = 0;
  unsigned long long n = 0;
  while (true) {
    u /= 2;  // u = floor(scale / 2^n), exact by nested flooring
    ++n;
    const BigInt t = u / n;
    if (t == 0) break;
    sum += t;
  }
  return {sum, BigInt(n) + 2};
}

// log 2 = 2 atanh(1/3) = 2 sum_{k>=0} 1/((2k+1) 3^(2k+1)).
RouteResult log2_atanh3(const BigInt& scale) {
  BigInt u = scale / 3;
  BigInt sum = 0;
  unsigned long long k = 0;
  while (u != 0) {
    sum += u / (2 * k + 1);
    u /= 9;
    ++k;
  }
  return {2 * sum, 2 * BigInt(k) + 5};
}

// ---- Caching ----

struct CacheEntry {
  BigInt scaled;
  unsigned precision = 0;
};

std::mutex g_mutex;
std::map<std::string, CacheEntry> g_memory;
std::optional<std::filesystem::path> g_cache_path;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string checksum_line(const std::string& name, unsigned precision, const std::string& digits) {
  std::ostringstream os;
  os << std::hex << fnv1a64(name + "|" + std::to_string(precision) + "|" + digits);
  return os.str();
}

std::map<std::string, CacheEntry> read_disk_cache(const std::filesystem::path& path) {
  std::map<std::string, CacheEntry> best;
  std::ifstream in(path);
  if (!in) return best;
  std::string line, name, digits;
  unsigned precision = 0;
  auto flush = [&](const std::string& checksum) {
    if (name.empty() || digits.empty() || precision == 0) return;
    if (checksum != checksum_line(name, precision, digits)) return;
    CacheEntry e{BigInt(digits), precision};
    auto it = best.find(name);
    if (it == best.end() || it->second.precision < e.precision) best[name] = std::move(e);
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto sep = line.find(": ");
    if (sep == std::string::npos) continue;
    const std::string key = line.substr(0, sep);
    const std::string value = line.substr(sep + 2);
    try {
      if (key == "constant") {
        name = value;
      } else if (key == "precision") {
        precision = unsigned(std::stoul(value));
      } else if (key == "digits") {
        digits = value;
      } else if (key == "checksum") {
        flush(value);
        name.clear();
        digits.clear();
        precision = 0;
      }
    } catch (const std::exception&) {
      name.clear();
      digits.clear();
      precision = 0;
    }
  }
  return best;
}

void write_disk_cache(const std::filesystem::path& path,
                      const std::map<std::string, CacheEntry>& entries) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;  // cache is best-effort; computation already succeeded
    out << "# bbpkit oracle cache v1\n";
    for (const auto& [name, e] : entries) {
      const std::string digits = e.scaled.str();
      out << "constant: " << name << "\n"
          << "precision: " << e.precision << "\n"
          << "digits: " << digits << "\n"
          << "checksum: " << checksum_line(name, e.precision, digits) << "\n\n";
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
}

HighPrecisionValue compute_checked(const std::string& name, unsigned p) {
  const unsigned q = p + 12;
  const BigInt scale = ipow(10, q);
  RouteResult primary, check;
  if (name == "pi") {
    primary = pi_machin(scale);
    check = pi_recurrence_series(scale);
  } else {
    primary = log2_direct_series(scale);
    check = log2_atanh3(scale);
  }
  if (abs(primary.value - check.value) > primary.err_ulps + check.err_ulps) {
    throw std::logic_error("oracle: independent routes for " + name +
                           " disagree beyond their combined error bounds");
  }
  return HighPrecisionValue(primary.value / ipow(10, 12), p, 2);
}

HighPrecisionValue oracle_constant(const std::string& name, unsigned p) {
  if (p == 0) throw std::invalid_argument("oracle: precision must be >= 1");
  if (p > kOraclePrecisionCap) {
    throw InsufficientPrecision("oracle: requested " + std::to_string(p) +
                                " digits, cap is " + std::to_string(kOraclePrecisionCap));
  }
  std::lock_guard<std::mutex> lock(g_mutex);
  if (auto it = g_memory.find(name); it != g_memory.end() && it->second.precision >= p) {
    return HighPrecisionValue(it->second.scaled, it->second.precision, 2).truncated(p);
  }
  if (g_cache_path) {
    auto disk = read_disk_cache(*g_cache_path);
    if (auto it = disk.find(name); it != disk.end() && it->second.precision >= p) {
      g_memory[name] = it->second;
      return HighPrecisionValue(it->second.scaled, it->second.precision, 2).truncated(p);
    }
  }
  HighPrecisionValue v = compute_checked(name, p);
  g_memory[name] = CacheEntry{v.scaled(), p};
  if (g_cache_path) {
    auto disk = read_disk_cache(*g_cache_path);
    auto it = disk.find(name);
    if (it == disk.end() || it->second.precision < p) {
      disk[name] = CacheEntry{v.scaled(), p};
      write_disk_cache(*g_cache_path, disk);
    }
  }
  return v;
}

}  // namespace

HighPrecisionValue::HighPrecisionValue(BigInt scaled, unsigned precision, unsigned err_ulps)
    : scaled_(std::move(scaled)), precision_(precision), err_ulps_(err_ulps) {
  if (scaled_ < 0) throw std::invalid_argument("HighPrecisionValue: value must be nonnegative");
  if (precision_ == 0) throw std::invalid_argument("HighPrecisionValue: precision must be >= 1");
}

HighPrecisionValue HighPrecisionValue::truncated(unsigned precision) const {
  if (precision > precision_)
    throw std::invalid_argument("HighPrecisionValue: cannot truncate to higher precision");
  if (precision == precision_) return *this;
  const BigInt pw = ipow(10, precision_ - precision);
  const BigInt dropped_err = (BigInt(err_ulps_) + pw - 1) / pw;
  return HighPrecisionValue(scaled_ / pw, precision,
                            1 + dropped_err.convert_to<unsigned>());
}

HighPrecisionValue HighPrecisionValue::times_small(unsigned factor) const {
  if (factor == 0) throw std::invalid_argument("HighPrecisionValue: factor must be >= 1");
  return HighPrecisionValue(scaled_ * factor, precision_, err_ulps_ * factor);
}

std::string HighPrecisionValue::decimal_string() const {
  const BigInt pw = ipow(10, precision_);
  const BigInt integral = scaled_ / pw;
  std::string frac = BigInt(scaled_ % pw).str();
  frac.insert(0, precision_ - frac.size(), '0');
  return integral.str() + "." + frac;
}

HighPrecisionValue pi_highprec(unsigned p) { return oracle_constant("pi", p); }

HighPrecisionValue log2_highprec(unsigned p) { return oracle_constant("log2", p); }

DigitWindow to_base_digits(const HighPrecisionValue& x, unsigned base, unsigned long long d,
                           unsigned r) {
  if (base < 2 || base > 36) throw std::invalid_argument("to_base_digits: base must be in [2, 36]");
  if (r == 0) throw std::invalid_argument("to_base_digits: need at least one digit");
  // y = frac(base^d * x) * base^r; the window is floor(y). With the value
  // known to +-e, floor(y) is pinned exactly when the remainder of y keeps a
  // distance of at least e*base^(d+r) from both integer boundaries.
  const BigInt m = ipow(10, x.precision());
  const BigInt y_scaled = x.scaled() * ipow(base, d) % m * ipow(base, r);
  const BigInt slack = x.err_ulps() * ipow(base, d + r);
  if (slack >= m) {
    throw InsufficientPrecision("to_base_digits: error bound too coarse for the window");
  }
  const BigInt remainder = y_scaled % m;
  if (remainder < slack || remainder + slack >= m) {
    throw InsufficientPrecision("to_base_digits: window sits on a carry boundary");
  }
  BigInt head = y_scaled / m;
  DigitWindow w;
  w.base = base;
  w.start_position = d + 1;
  w.confident = true;
  w.digits.assign(r, 0);
  for (unsigned i = r; i-- > 0;) {
    w.digits[i] = (head % base).convert_to<int>();
    head /= base;
  }
  return w;
}

namespace {

DigitWindow oracle_window(const std::string& name, unsigned factor, unsigned base,
                          unsigned long long d, unsigned r) {
  unsigned p = required_precision(base, d, r);
  for (int attempt = 0;; ++attempt) {
    const HighPrecisionValue v = oracle_constant(name, p);
    try {
      return to_base_digits(factor == 1 ? v : v.times_small(factor), base, d, r);
    } catch (const InsufficientPrecision&) {
      if (attempt >= 1 || p + 40 > kOraclePrecisionCap) throw;
      p += 40;
    }
  }
}

}  // namespace

DigitWindow oracle_digits_pi(unsigned base, unsigned long long d, unsigned r) {
  return oracle_window("pi", 1, base, d, r);
}

DigitWindow oracle_digits_log2(unsigned base, unsigned long long d, unsigned r) {
  return oracle_window("log2", 1, base, d, r);
}

DigitWindow oracle_digits_2log2(unsigned base, unsigned long long d, unsigned r) {
  return oracle_window("log2", 2, base, d, r);
}

unsigned required_precision(unsigned base, unsigned long long d, unsigned r) {
  if (base < 2 || base > 36) throw std::invalid_argument("required_precision: base must be in [2, 36]");
  // to_base_digits needs 10^p comfortably above err_ulps * base^(d+r); the
  // extra digits make a spurious carry-boundary refusal astronomically rare.
  const long double digits_needed =
      (static_cast<long double>(d) + r + 2) * std::log10(static_cast<long double>(base));
  return static_cast<unsigned>(digits_needed) + 7;
}

void set_oracle_cache_path(std::optional<std::filesystem::path> path) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_cache_path = std::move(path);
}

std::optional<std::filesystem::path> oracle_cache_path() {
  std::lock_guard<std::mutex> lock(g_mutex);
  return g_cache_path;
}

void clear_oracle_memory_cache() {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_memory.clear();
}

}  // namespace bbpkit

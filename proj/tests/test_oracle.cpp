#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbpkit/oracle.hpp"

using namespace bbpkit;

namespace {

// 50 published digits each.
constexpr const char* kPiPrefix = "3.14159265358979323846264338327950288419716939937510";
constexpr const char* kLog2Prefix = "0.69314718055994530941723212145817656807550013436025";

struct CacheGuard {
  ~CacheGuard() { set_oracle_cache_path(std::nullopt); }
};

}  // namespace

TEST_CASE("pi matches the published decimal expansion") {
  CHECK(pi_highprec(20).decimal_string() == "3.14159265358979323846");
  const HighPrecisionValue v = pi_highprec(100);
  CHECK(v.err_ulps() <= 2);
  CHECK(v.decimal_string().substr(0, 52) == kPiPrefix);
}

TEST_CASE("log 2 matches the published decimal expansion") {
  CHECK(log2_highprec(20).decimal_string() == "0.69314718055994530941");
  const HighPrecisionValue v = log2_highprec(100);
  CHECK(v.err_ulps() <= 2);
  CHECK(v.decimal_string().substr(0, 52) == kLog2Prefix);
}

TEST_CASE("values truncate consistently across precisions") {
  const HighPrecisionValue big = pi_highprec(200);
  const HighPrecisionValue small = pi_highprec(50);
  CHECK(small.scaled() == big.truncated(50).scaled());
  CHECK(big.truncated(200).scaled() == big.scaled());
  CHECK_THROWS_AS(small.truncated(60), std::invalid_argument);
}

TEST_CASE("precision requests are validated against the cap") {
  CHECK_THROWS_AS(pi_highprec(0), std::invalid_argument);
  CHECK_THROWS_AS(pi_highprec(kOraclePrecisionCap + 1), InsufficientPrecision);
}

TEST_CASE("small multiples scale the value and the error bound") {
  const HighPrecisionValue twice = log2_highprec(40).times_small(2);
  CHECK(twice.decimal_string().substr(0, 22) == "1.38629436111989061883");
  CHECK(twice.err_ulps() == 4);
  CHECK_THROWS_AS(twice.times_small(0), std::invalid_argument);
}

TEST_CASE("windows in standard bases match known digit runs") {
  CHECK(to_base_digits(log2_highprec(40), 2, 0, 8).digits ==
        std::vector<int>{1, 0, 1, 1, 0, 0, 0, 1});
  CHECK(to_base_digits(pi_highprec(40), 16, 0, 6).digits ==
        std::vector<int>{2, 4, 3, 15, 6, 10});
  CHECK(to_base_digits(pi_highprec(40), 5, 0, 10).digits ==
        std::vector<int>{0, 3, 2, 3, 2, 2, 1, 4, 3, 0});
  CHECK(to_base_digits(pi_highprec(40), 10, 0, 10).digits ==
        std::vector<int>{1, 4, 1, 5, 9, 2, 6, 5, 3, 5});
  const DigitWindow w = to_base_digits(pi_highprec(40), 16, 0, 6);
  CHECK(w.confident);
  CHECK(w.start_position == 1);
  CHECK(w.base == 16);
}

TEST_CASE("dropping the first digit shifts the window") {
  const HighPrecisionValue v = pi_highprec(80);
  for (unsigned long long d : {0ull, 7ull, 31ull}) {
    const DigitWindow wide = to_base_digits(v, 16, d, 12);
    const DigitWindow shifted = to_base_digits(v, 16, d + 1, 11);
    CHECK(std::vector<int>(wide.digits.begin() + 1, wide.digits.end()) == shifted.digits);
  }
}

TEST_CASE("window conversion agrees with a direct radix conversion") {
  const HighPrecisionValue v = pi_highprec(60);
  for (unsigned base : {3u, 7u, 36u}) {
    const DigitWindow w = to_base_digits(v, base, 0, 8);
    BigInt frac = v.scaled() % ipow(10, 60);
    std::vector<int> expected;
    for (int i = 0; i < 8; ++i) {
      frac *= base;
      expected.push_back((frac / ipow(10, 60)).convert_to<int>());
      frac %= ipow(10, 60);
    }
    CHECK(w.digits == expected);
  }
}

TEST_CASE("windows beyond the error bound are refused") {
  const HighPrecisionValue coarse(314, 2, 2);
  CHECK_THROWS_AS(to_base_digits(coarse, 16, 0, 4), InsufficientPrecision);
  CHECK_THROWS_AS(to_base_digits(pi_highprec(20), 16, 100, 8), InsufficientPrecision);
}

TEST_CASE("required_precision is sufficient for the helper windows") {
  CHECK(oracle_digits_pi(16, 100, 8).digits.size() == 8);
  CHECK(oracle_digits_log2(2, 500, 16).confident);
  CHECK(oracle_digits_2log2(5, 30, 5).start_position == 31);
}

TEST_CASE("disk cache round-trips, detects corruption, and repairs itself") {
  CacheGuard guard;
  const auto path = std::filesystem::temp_directory_path() / "bbpkit_oracle_test_cache.txt";
  std::filesystem::remove(path);
  set_oracle_cache_path(path);
  clear_oracle_memory_cache();
  const HighPrecisionValue fresh = pi_highprec(60);
  REQUIRE(std::filesystem::exists(path));

  clear_oracle_memory_cache();
  CHECK(pi_highprec(50).scaled() == fresh.truncated(50).scaled());

  // Flip one digit; the checksum must reject the entry and force a recompute.
  std::stringstream buffer;
  buffer << std::ifstream(path).rdbuf();
  std::string contents = buffer.str();
  const auto pos = contents.find("digits: 3");
  REQUIRE(pos != std::string::npos);
  contents[pos + 9] = contents[pos + 9] == '1' ? '2' : '1';
  std::ofstream(path, std::ios::trunc) << contents;

  clear_oracle_memory_cache();
  CHECK(pi_highprec(60).scaled() == fresh.scaled());

  // The rewrite on recompute must leave a clean file behind.
  clear_oracle_memory_cache();
  CHECK(pi_highprec(60).scaled() == fresh.scaled());
  std::filesystem::remove(path);
}

TEST_CASE("cache entries at higher precision serve lower requests") {
  CacheGuard guard;
  const auto path = std::filesystem::temp_directory_path() / "bbpkit_oracle_test_cache2.txt";
  std::filesystem::remove(path);
  set_oracle_cache_path(path);
  clear_oracle_memory_cache();
  const HighPrecisionValue big = log2_highprec(80);
  clear_oracle_memory_cache();
  CHECK(log2_highprec(30).scaled() == big.truncated(30).scaled());
  CHECK(log2_highprec(30).decimal_string().substr(0, 12) == "0.6931471805");
  std::filesystem::remove(path);
}

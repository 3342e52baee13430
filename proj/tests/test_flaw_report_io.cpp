#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bbpkit/flaw_report_io.hpp"

using namespace bbpkit;

namespace {

FlawReport tiny_report() {
  FlawReport rep;
  rep.d = 2;
  rep.r = 3;
  rep.condition_ok = true;
  DigitWindow w;
  w.base = 5;
  w.start_position = 3;
  w.digits = {1, 2, 3};
  w.confident = true;
  rep.flawed_re = rep.flawed_im = w;
  w.confident = false;
  rep.exact_re = rep.exact_im = w;
  rep.oracle_re = rep.oracle_im = w;
  rep.first_mismatch_im = std::nullopt;
  TermForensics t;
  t.n = 4;
  t.k = 1;
  t.m = 9;
  t.shortcut_valid = false;
  t.claimed_re = BigRat(1, 3);
  t.claimed_im = BigRat(2, 9);
  t.exact_re = BigRat(4, 9);
  t.exact_im = BigRat(2, 9);
  rep.terms.push_back(t);
  return rep;
}

}  // namespace

TEST_CASE("structured rendering round-trips a real report") {
  const FlawReport rep = flaw_experiment(30, 5);
  const std::string text = render_flaw_report_structured(rep);
  CHECK(text.substr(0, 24) == "schema: flaw-report/1\nd:");
  const FlawReport parsed = parse_flaw_report_structured(text);
  CHECK(parsed == rep);
}

TEST_CASE("structured rendering round-trips hand-built edge cases") {
  const FlawReport rep = tiny_report();
  const FlawReport parsed = parse_flaw_report_structured(render_flaw_report_structured(rep));
  CHECK(parsed == rep);
  CHECK_FALSE(parsed.first_mismatch_im.has_value());
  CHECK(parsed.terms.at(0).claimed_re == BigRat(1, 3));
}

TEST_CASE("text rendering carries the same forensic data") {
  const FlawReport rep = flaw_experiment(30, 5);
  const std::string text = render_flaw_report_text(rep);
  CHECK(text.find("d=30, r=5") != std::string::npos);
  CHECK(text.find("window at positions 31..35") != std::string::npos);
  CHECK(text.find("40 terms, 25 invalid") != std::string::npos);
  CHECK(text.find(digits_to_string(5, rep.flawed_im.digits)) != std::string::npos);
  CHECK(text.find(digits_to_string(5, rep.oracle_im.digits)) != std::string::npos);
  // Every forensic record appears with its exact fractions.
  for (const auto& t : rep.terms) {
    const std::string frac = numerator(t.claimed_im).str() + "/" +
                             denominator(t.claimed_im).str();
    CHECK(text.find(frac) != std::string::npos);
  }
}

TEST_CASE("parser rejects malformed input") {
  const std::string good = render_flaw_report_structured(tiny_report());
  CHECK_THROWS_AS(parse_flaw_report_structured("schema: flaw-report/2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_flaw_report_structured(good + "extra: line\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_flaw_report_structured(good.substr(0, good.size() / 2)),
                  std::invalid_argument);
  std::string broken = good;
  const auto pos = broken.find("claimed_re=1/3");
  broken.replace(pos, 14, "claimed_re=1:3");
  CHECK_THROWS_AS(parse_flaw_report_structured(broken), std::invalid_argument);
}

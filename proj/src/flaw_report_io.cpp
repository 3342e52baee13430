#include "bbpkit/flaw_report_io.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace bbpkit {

namespace {

constexpr const char* kSchema = "flaw-report/1";

std::string rat_str(const BigRat& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

BigRat parse_rat(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
    throw std::invalid_argument("flaw report: malformed rational '" + s + "'");
  return BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  // Next nonempty line; throws at end of input.
  std::string next() {
    std::string line;
    while (std::getline(in_, line)) {
      if (!line.empty()) return line;
    }
    throw std::invalid_argument("flaw report: unexpected end of input");
  }

  bool exhausted() {
    std::string line;
    while (std::getline(in_, line)) {
      if (!line.empty()) return false;
    }
    return true;
  }

 private:
  std::istringstream in_;
};

// "key: rest-of-line" with an exact expected key.
std::string expect_field(LineReader& reader, const std::string& key) {
  const std::string line = reader.next();
  const std::string prefix = key + ": ";
  if (line.rfind(prefix, 0) != 0)
    throw std::invalid_argument("flaw report: expected '" + key + "' line, got '" + line + "'");
  return line.substr(prefix.size());
}

bool parse_bool(const std::string& s, const std::string& what) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("flaw report: bad " + what + " value '" + s + "'");
}

// "name=value" token at the front of a stream-like remainder.
std::string take_token(std::istringstream& in, const std::string& name) {
  std::string token;
  if (!(in >> token)) throw std::invalid_argument("flaw report: truncated term record");
  const std::string prefix = name + "=";
  if (token.rfind(prefix, 0) != 0)
    throw std::invalid_argument("flaw report: expected '" + name + "=' in term record");
  return token.substr(prefix.size());
}

}  // namespace

std::string render_flaw_report_text(const FlawReport& report) {
  std::ostringstream os;
  const unsigned long long first = report.d + 1;
  const unsigned long long last = report.d + report.r;
  os << "base-5 digit experiment: d=" << report.d << ", r=" << report.r
     << " (window at positions " << first << ".." << last << ")\n";
  os << "applicability condition 5^d >= 2d+4r-1: "
     << (report.condition_ok ? "holds" : "fails") << "\n\n";
  auto window_cell = [](const DigitWindow& w) {
    return digits_to_string(w.base, w.digits) + (w.confident ? " [confident]" : " [unconfident]");
  };
  os << std::left << std::setw(8) << "window" << std::setw(26) << "re (targets 2 log 2)"
     << "im (targets pi)\n";
  os << std::setw(8) << "flawed" << std::setw(26) << window_cell(report.flawed_re)
     << window_cell(report.flawed_im) << "\n";
  os << std::setw(8) << "exact" << std::setw(26) << window_cell(report.exact_re)
     << window_cell(report.exact_im) << "\n";
  os << std::setw(8) << "oracle" << std::setw(26) << window_cell(report.oracle_re)
     << window_cell(report.oracle_im) << "\n\n";
  if (report.first_mismatch_im) {
    os << "first flawed-vs-oracle mismatch in im window: digit " << *report.first_mismatch_im
       << "\n";
  } else {
    os << "first flawed-vs-oracle mismatch in im window: none\n";
  }
  std::size_t invalid = 0;
  for (const auto& t : report.terms) invalid += t.shortcut_valid ? 0 : 1;
  os << "term forensics (shortcut valid iff 2n+1 <= d-k): " << report.terms.size()
     << " terms, " << invalid << " invalid\n";
  os << std::right << std::setw(6) << "n" << std::setw(4) << "k" << std::setw(8) << "m"
     << "  valid  claimed_re / exact_re | claimed_im / exact_im\n";
  for (const auto& t : report.terms) {
    os << std::setw(6) << t.n << std::setw(4) << t.k << std::setw(8) << t.m.str() << "  "
       << (t.shortcut_valid ? "yes  " : "no   ") << "  " << rat_str(t.claimed_re) << " / "
       << rat_str(t.exact_re) << " | " << rat_str(t.claimed_im) << " / " << rat_str(t.exact_im)
       << "\n";
  }
  return os.str();
}

std::string render_flaw_report_structured(const FlawReport& report) {
  std::ostringstream os;
  os << "schema: " << kSchema << "\n";
  os << "d: " << report.d << "\n";
  os << "r: " << report.r << "\n";
  os << "condition_ok: " << (report.condition_ok ? "true" : "false") << "\n";
  os << "flawed_re: " << report.flawed_re.str() << "\n";
  os << "flawed_im: " << report.flawed_im.str() << "\n";
  os << "exact_re: " << report.exact_re.str() << "\n";
  os << "exact_im: " << report.exact_im.str() << "\n";
  os << "oracle_re: " << report.oracle_re.str() << "\n";
  os << "oracle_im: " << report.oracle_im.str() << "\n";
  if (report.first_mismatch_im) {
    os << "first_mismatch_im: " << *report.first_mismatch_im << "\n";
  } else {
    os << "first_mismatch_im: none\n";
  }
  os << "terms: " << report.terms.size() << "\n";
  for (const auto& t : report.terms) {
    os << "term: n=" << t.n << " k=" << t.k << " m=" << t.m.str()
       << " valid=" << (t.shortcut_valid ? "true" : "false")
       << " claimed_re=" << rat_str(t.claimed_re) << " claimed_im=" << rat_str(t.claimed_im)
       << " exact_re=" << rat_str(t.exact_re) << " exact_im=" << rat_str(t.exact_im) << "\n";
  }
  return os.str();
}

FlawReport parse_flaw_report_structured(const std::string& text) {
  LineReader reader(text);
  if (expect_field(reader, "schema") != kSchema)
    throw std::invalid_argument("flaw report: unsupported schema");
  FlawReport rep;
  rep.d = std::stoull(expect_field(reader, "d"));
  rep.r = unsigned(std::stoul(expect_field(reader, "r")));
  rep.condition_ok = parse_bool(expect_field(reader, "condition_ok"), "condition_ok");
  rep.flawed_re = parse_digit_window(5, expect_field(reader, "flawed_re"));
  rep.flawed_im = parse_digit_window(5, expect_field(reader, "flawed_im"));
  rep.exact_re = parse_digit_window(5, expect_field(reader, "exact_re"));
  rep.exact_im = parse_digit_window(5, expect_field(reader, "exact_im"));
  rep.oracle_re = parse_digit_window(5, expect_field(reader, "oracle_re"));
  rep.oracle_im = parse_digit_window(5, expect_field(reader, "oracle_im"));
  const std::string mismatch = expect_field(reader, "first_mismatch_im");
  if (mismatch != "none") rep.first_mismatch_im = unsigned(std::stoul(mismatch));
  const std::size_t n_terms = std::stoull(expect_field(reader, "terms"));
  rep.terms.reserve(n_terms);
  for (std::size_t i = 0; i < n_terms; ++i) {
    std::istringstream in(expect_field(reader, "term"));
    TermForensics t;
    t.n = std::stoull(take_token(in, "n"));
    t.k = unsigned(std::stoul(take_token(in, "k")));
    t.m = BigInt(take_token(in, "m"));
    t.shortcut_valid = parse_bool(take_token(in, "valid"), "valid");
    t.claimed_re = parse_rat(take_token(in, "claimed_re"));
    t.claimed_im = parse_rat(take_token(in, "claimed_im"));
    t.exact_re = parse_rat(take_token(in, "exact_re"));
    t.exact_im = parse_rat(take_token(in, "exact_im"));
    rep.terms.push_back(std::move(t));
  }
  if (!reader.exhausted()) throw std::invalid_argument("flaw report: trailing content");
  return rep;
}

}  // namespace bbpkit

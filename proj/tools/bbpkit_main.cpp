#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bbpkit/base5.hpp"
#include "bbpkit/bbp.hpp"
#include "bbpkit/flaw_report_io.hpp"
#include "bbpkit/gaussian.hpp"
#include "bbpkit/oracle.hpp"

namespace {

using namespace bbpkit;

// Exit status contract (also documented in the README):
//   0  success; every emitted window confident, every comparison matched
//   1  internal error
//   2  usage or validation error
//   3  a window came back unconfident
//   4  extracted digits disagree with the oracle (expected for --variant flawed)
//   5  a request exceeded the oracle's precision cap or error bound
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kUnconfident = 3,
  kMismatch = 4,
  kPrecision = 5,
};

struct ExtractArgs {
  std::string constant;
  unsigned base = 0;
  unsigned long long pos = 0;
  unsigned count = 0;
  std::string method = "direct";
  std::string variant = "exact";
  std::optional<unsigned> guard;
};

struct VerifyArgs {
  std::string constant;
  unsigned base = 0;
  std::vector<unsigned long long> pos_list;
  unsigned count = 16;
  std::string method = "both";
  std::string variant = "exact";
};

struct FlawArgs {
  unsigned long long pos = 0;
  unsigned count = 0;
};

struct BnTableArgs {
  unsigned max_n = 40;
};

void check_combination(const std::string& constant, unsigned base, const std::string& variant) {
  if (constant == "log2") {
    if (base != 2) throw CLI::ValidationError("--base", "log2 extraction works in base 2");
  } else {
    if (base != 16 && base != 5)
      throw CLI::ValidationError("--base", "pi extraction works in base 16 or base 5");
  }
  if (variant == "flawed" && !(constant == "pi" && base == 5))
    throw CLI::ValidationError("--variant", "flawed applies to pi in base 5 only");
}

DigitWindow run_extraction(const std::string& constant, unsigned base, unsigned long long pos,
                           unsigned count, const std::string& method, const std::string& variant,
                           std::optional<unsigned> guard) {
  if (constant == "log2") {
    return method == "split" ? log2_extract_split(pos, count, guard)
                             : log2_extract_direct(pos, count, guard);
  }
  if (base == 16) return pi_hex_extract(pos, count, guard);
  const Base5Windows w = variant == "flawed" ? base5_extract_flawed(pos, count, guard)
                                             : base5_extract_exact(pos, count, guard);
  return w.im;
}

DigitWindow oracle_window(const std::string& constant, unsigned base, unsigned long long pos,
                          unsigned count) {
  return constant == "pi" ? oracle_digits_pi(base, pos, count)
                          : oracle_digits_log2(base, pos, count);
}

int cmd_extract(const ExtractArgs& args, const std::string& format) {
  check_combination(args.constant, args.base, args.variant);
  if (args.constant == "log2" && args.method != "direct" && args.method != "split")
    throw CLI::ValidationError("--method", "extract needs direct or split");
  const DigitWindow w = run_extraction(args.constant, args.base, args.pos, args.count,
                                       args.method, args.variant, args.guard);
  if (format == "structured") {
    std::cout << "schema: digit-window/1\n";
    std::cout << "constant: " << args.constant << "\n";
    std::cout << "base: " << args.base << "\n";
    std::cout << "pos: " << args.pos << "\n";
    std::cout << "count: " << args.count << "\n";
    if (args.constant == "log2") std::cout << "method: " << args.method << "\n";
    if (args.constant == "pi" && args.base == 5) std::cout << "variant: " << args.variant << "\n";
    std::cout << "window: " << w.str() << "\n";
  } else {
    std::cout << w.str() << "\n";
  }
  return w.confident ? kOk : kUnconfident;
}

int cmd_verify(const VerifyArgs& args, const std::string& format) {
  check_combination(args.constant, args.base, args.variant);
  const bool both_methods = args.constant == "log2" && args.method == "both";
  unsigned matched = 0, mismatched = 0, unconfident = 0;
  std::vector<std::string> rows;
  for (const unsigned long long pos : args.pos_list) {
    const DigitWindow got = run_extraction(args.constant, args.base, pos, args.count,
                                           both_methods ? "direct" : args.method, args.variant,
                                           std::nullopt);
    const DigitWindow ref = oracle_window(args.constant, args.base, pos, args.count);
    bool match = got.digits == ref.digits;
    bool confident = got.confident;
    std::string extra;
    if (both_methods) {
      const DigitWindow split = run_extraction(args.constant, args.base, pos, args.count,
                                               "split", args.variant, std::nullopt);
      match = match && split.digits == ref.digits;
      confident = confident && split.confident;
      extra = " split=" + digits_to_string(split.base, split.digits);
    }
    if (match) ++matched;
    if (!match) ++mismatched;
    if (!confident) ++unconfident;
    std::string row = "pos=" + std::to_string(pos) +
                      " extracted=" + digits_to_string(got.base, got.digits) + extra +
                      " oracle=" + digits_to_string(ref.base, ref.digits) +
                      " match=" + (match ? "true" : "false") +
                      " confident=" + (confident ? "true" : "false");
    rows.push_back(std::move(row));
  }
  if (format == "structured") {
    std::cout << "schema: verify/1\n";
    std::cout << "constant: " << args.constant << "\n";
    std::cout << "base: " << args.base << "\n";
    std::cout << "count: " << args.count << "\n";
    if (args.constant == "pi" && args.base == 5) std::cout << "variant: " << args.variant << "\n";
    for (const auto& row : rows) std::cout << "row: " << row << "\n";
    std::cout << "summary: tested=" << args.pos_list.size() << " matched=" << matched
              << " mismatched=" << mismatched << " unconfident=" << unconfident << "\n";
  } else {
    std::cout << "verify " << args.constant << " base " << args.base << ", " << args.count
              << " digits per window\n";
    for (const auto& row : rows) std::cout << "  " << row << "\n";
    std::cout << "summary: " << args.pos_list.size() << " tested, " << matched << " matched, "
              << mismatched << " mismatched, " << unconfident << " unconfident\n";
  }
  if (mismatched > 0) return kMismatch;
  if (unconfident > 0) return kUnconfident;
  return kOk;
}

int cmd_flaw_report(const FlawArgs& args, const std::string& format) {
  const FlawReport rep = flaw_experiment(args.pos, args.count);
  std::cout << (format == "structured" ? render_flaw_report_structured(rep)
                                       : render_flaw_report_text(rep));
  return kOk;
}

int cmd_bn_table(const BnTableArgs& args, const std::string& format) {
  const BnSequence seq = bn_sequence(args.max_n);
  bool bound_violated = false;
  BigInt bound = 2;  // 2 * 5^n
  if (format == "structured") {
    std::cout << "schema: bn-table/1\n";
    std::cout << "max_n: " << args.max_n << "\n";
  } else {
    std::cout << "n, b_n, |b_n|/5^n, |b_n| < 2*5^n\n";
  }
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const bool ok = abs(seq[n]) < bound;
    bound_violated = bound_violated || !ok;
    const double ratio = BigRat(abs(seq[n]), bound / 2).convert_to<double>();
    char ratio_text[32];
    std::snprintf(ratio_text, sizeof(ratio_text), "%.6f", ratio);
    if (format == "structured") {
      std::cout << "row: n=" << n << " b=" << seq[n].str() << " ratio=" << ratio_text
                << " bound_ok=" << (ok ? "true" : "false") << "\n";
    } else {
      std::cout << n << ", " << seq[n].str() << ", " << ratio_text << ", "
                << (ok ? "yes" : "BOUND VIOLATION") << "\n";
    }
    bound *= 5;
  }
  if (format != "structured") {
    std::cout << (bound_violated ? "bound check: FAILED\n" : "bound check: all rows ok\n");
  }
  return bound_violated ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digit extraction toolkit: log 2 and pi windows, base-5 experiment, "
               "high-precision oracle"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string cache_path;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_option("--oracle-cache", cache_path,
                 "path of the on-disk oracle cache (created on first use)")
      ->envname("BBPKIT_ORACLE_CACHE");

  ExtractArgs extract;
  CLI::App* extract_cmd = app.add_subcommand("extract", "compute one digit window");
  extract_cmd->fallthrough();
  extract_cmd->add_option("--constant", extract.constant, "constant to extract")
      ->required()
      ->check(CLI::IsMember({"log2", "pi"}));
  extract_cmd->add_option("--base", extract.base, "digit base")->required();
  extract_cmd->add_option("--pos", extract.pos,
                          "digits before the window; the window starts at position pos+1")
      ->required();
  extract_cmd->add_option("--count", extract.count, "window length")
      ->required()
      ->check(CLI::Range(1u, kMaxWindowDigits));
  extract_cmd->add_option("--method", extract.method, "log2 summation method")
      ->check(CLI::IsMember({"direct", "split"}))
      ->capture_default_str();
  extract_cmd->add_option("--variant", extract.variant, "base-5 pi variant")
      ->check(CLI::IsMember({"exact", "flawed"}))
      ->capture_default_str();
  unsigned guard_value = 0;
  CLI::Option* guard_opt =
      extract_cmd->add_option("--guard", guard_value, "override the guard digit count")
          ->check(CLI::Range(1u, 10000u));

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "compare windows against the oracle");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--constant", verify.constant, "constant to verify")
      ->required()
      ->check(CLI::IsMember({"log2", "pi"}));
  verify_cmd->add_option("--base", verify.base, "digit base")->required();
  verify_cmd->add_option("--pos", verify.pos_list, "comma-separated window offsets")
      ->required()
      ->delimiter(',');
  verify_cmd->add_option("--count", verify.count, "window length")
      ->check(CLI::Range(1u, kMaxWindowDigits))
      ->capture_default_str();
  verify_cmd->add_option("--method", verify.method, "log2 summation method")
      ->check(CLI::IsMember({"direct", "split", "both"}))
      ->capture_default_str();
  verify_cmd->add_option("--variant", verify.variant, "base-5 pi variant")
      ->check(CLI::IsMember({"exact", "flawed"}))
      ->capture_default_str();

  FlawArgs flaw;
  CLI::App* flaw_cmd =
      app.add_subcommand("flaw-report", "run the base-5 experiment and dump the forensics");
  flaw_cmd->fallthrough();
  flaw_cmd->add_option("--pos", flaw.pos, "digits before the window")->required();
  flaw_cmd->add_option("--count", flaw.count, "window length")
      ->required()
      ->check(CLI::Range(1u, kMaxWindowDigits));

  BnTableArgs bn;
  CLI::App* bn_cmd = app.add_subcommand("bn-table", "print the recurrence sequence with bounds");
  bn_cmd->fallthrough();
  bn_cmd->add_option("--max-n", bn.max_n, "largest index to print")
      ->check(CLI::Range(0u, 10000u))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (!cache_path.empty()) set_oracle_cache_path(std::filesystem::path(cache_path));
    if (guard_opt->count() > 0) extract.guard = guard_value;
    if (extract_cmd->parsed()) return cmd_extract(extract, format);
    if (verify_cmd->parsed()) return cmd_verify(verify, format);
    if (flaw_cmd->parsed()) return cmd_flaw_report(flaw, format);
    if (bn_cmd->parsed()) return cmd_bn_table(bn, format);
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InsufficientPrecision& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecision;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "bbpkit/base5.hpp"
#include "bbpkit/flaw_report_io.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr combined
};

std::string cli_path() {
  const char* path = std::getenv("BBPKIT_CLI");
  REQUIRE_MESSAGE(path != nullptr, "BBPKIT_CLI must point at the bbpkit binary");
  return path;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

}  // namespace

TEST_CASE("extract prints a canonical window line") {
  const RunResult r = run("extract --constant log2 --base 2 --pos 0 --count 8");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "1: 10110001 [confident]\n");
}

TEST_CASE("extract structured output is schema tagged") {
  const RunResult r =
      run("extract --constant pi --base 16 --pos 0 --count 16 --format structured");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("schema: digit-window/1\n") == 0);
  CHECK(r.output.find("window: 1: 243f6a8885a308d3 [confident]\n") != std::string::npos);
}

TEST_CASE("extract maps an unconfident window to exit 3") {
  const RunResult r = run("extract --constant log2 --base 2 --pos 0 --count 8 --guard 1");
  CHECK(r.exit_code == 3);
  CHECK(r.output == "1: 10110000 [unconfident]\n");
}

TEST_CASE("usage and validation errors exit 2") {
  CHECK(run("extract --constant log2 --base 2 --pos 0 --count 0").exit_code == 2);
  CHECK(run("extract --constant pi --base 2 --pos 0 --count 4").exit_code == 2);
  CHECK(run("extract --constant log2 --base 2 --pos 0 --count 4 --variant flawed").exit_code == 2);
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("extract --constant log2 --base 2").exit_code == 2);
  const RunResult condition = run("flaw-report --pos 0 --count 1");
  CHECK(condition.exit_code == 2);
  CHECK(condition.output.find("5^d >= 2d+4r-1") != std::string::npos);
}

TEST_CASE("help exits 0") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("extract --help").exit_code == 0);
}

TEST_CASE("base-5 variants expose the divergence") {
  const RunResult flawed =
      run("extract --constant pi --base 5 --pos 30 --count 5 --variant flawed");
  const RunResult exact = run("extract --constant pi --base 5 --pos 30 --count 5");
  CHECK(flawed.exit_code == 0);
  CHECK(exact.exit_code == 0);
  CHECK(flawed.output == "31: 14023 [confident]\n");
  CHECK(exact.output == "31: 31421 [confident]\n");
}

TEST_CASE("verify exits clean when windows match the oracle") {
  const RunResult r = run("verify --constant log2 --base 2 --pos 0,10,100 --count 16");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("3 tested, 3 matched, 0 mismatched, 0 unconfident") != std::string::npos);
}

TEST_CASE("verify reports the designed mismatch of the flawed variant") {
  const RunResult r =
      run("verify --constant pi --base 5 --pos 30 --count 5 --variant flawed --format structured");
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("schema: verify/1\n") == 0);
  CHECK(r.output.find("match=false") != std::string::npos);
  CHECK(r.output.find("summary: tested=1 matched=0 mismatched=1 unconfident=0") !=
        std::string::npos);
}

TEST_CASE("flaw-report structured output parses back to the library's report") {
  const RunResult r = run("flaw-report --pos 30 --count 5 --format structured");
  CHECK(r.exit_code == 0);
  const bbpkit::FlawReport parsed = bbpkit::parse_flaw_report_structured(r.output);
  CHECK(parsed == bbpkit::flaw_experiment(30, 5));
}

TEST_CASE("bn-table prints rows with the bound column") {
  const RunResult r = run("bn-table --max-n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0, 1, 1.000000, yes\n") != std::string::npos);
  CHECK(r.output.find("1, -1, 0.200000, yes\n") != std::string::npos);
  CHECK(r.output.find("2, -19, 0.760000, yes\n") != std::string::npos);
  CHECK(r.output.find("bound check: all rows ok") != std::string::npos);
  const RunResult structured = run("bn-table --max-n 1 --format structured");
  CHECK(structured.output.find("schema: bn-table/1\n") == 0);
  CHECK(structured.output.find("row: n=1 b=-1 ratio=0.200000 bound_ok=true\n") !=
        std::string::npos);
}

TEST_CASE("oracle cache flag and environment variable create the cache file") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto flag_path = dir / "bbpkit_cli_cache_flag.txt";
  const auto env_path = dir / "bbpkit_cli_cache_env.txt";
  std::filesystem::remove(flag_path);
  std::filesystem::remove(env_path);

  const RunResult first = run("verify --constant pi --base 16 --pos 20 --count 8 --oracle-cache " +
                              flag_path.string());
  CHECK(first.exit_code == 0);
  CHECK(std::filesystem::exists(flag_path));

  const RunResult second = run("verify --constant pi --base 16 --pos 20 --count 8",
                               "BBPKIT_ORACLE_CACHE=" + env_path.string() + " ");
  CHECK(second.exit_code == 0);
  CHECK(std::filesystem::exists(env_path));

  std::filesystem::remove(flag_path);
  std::filesystem::remove(env_path);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string command = std::string(MOMEXT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("exit codes are the API") {
  CHECK(run("verify --d 3 --q 7").exit_code == 0);
  CHECK(run("verify --d 3 --q 7 --method both").exit_code == 0);
  CHECK(run("verify --d 3 --q 3").exit_code == 2);   // q <= d
  CHECK(run("verify --d 1 --q 5").exit_code == 2);   // d < 2
  CHECK(run("verify --q 5").exit_code == 2);         // missing flag
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("oracle --d 3 --p 3 --trials 5").exit_code == 2);   // p <= d
  CHECK(run("oracle --d 3 --p 9 --trials 5").exit_code == 2);   // not prime
  CHECK(run("oracle --d 5 --p 101 --trials 5").exit_code == 2); // over budget
  CHECK(run("check-cert /nonexistent.cert").exit_code == 2);
  CHECK(run("threshold --d 3").exit_code == 0);
  CHECK(run("threshold").exit_code == 2);
}

TEST_CASE("verify --json matches the golden file byte for byte") {
  const RunResult result = run("verify --d 3 --q 7 --method both --json");
  REQUIRE(result.exit_code == 0);
  const std::string golden = slurp(std::string(MOMEXT_TEST_DATA_DIR) + "/golden_verify_d3_q7.json");
  CHECK(result.output == golden);
}

TEST_CASE("verify --json carries the exact rational constant") {
  const RunResult result = run("verify --d 4 --q 5 --json");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.output);
  CHECK(j["A"] == "1577/125");
  CHECK(j["holds"] == true);
  CHECK(j["verdicts"]["flow"] == "holds");
}

TEST_CASE("sweep json is deterministic across thread counts") {
  const RunResult one = run("sweep --d-min 2 --d-max 9 --threads 1 --json");
  const RunResult four = run("sweep --d-min 2 --d-max 9 --threads 4 --json");
  REQUIRE(one.exit_code == 0);
  REQUIRE(four.exit_code == 0);
  CHECK(one.output == four.output);

  const auto j = nlohmann::json::parse(one.output);
  CHECK(j["all_hold"] == true);
  CHECK(j["rows"].size() == 8);
  CHECK(j["rows"][0]["explicit_range_empty"] == true);
}

TEST_CASE("sweep with the subsets method alone") {
  const RunResult result = run("sweep --d-min 4 --d-max 7 --method subsets --json");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.output);
  CHECK(j["all_hold"] == true);
  CHECK(j["subset_enumeration_skipped"] == 0);
}

TEST_CASE("sweep with both methods reports agreement") {
  const RunResult result = run("sweep --d-min 2 --d-max 8 --method both --json");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.output);
  CHECK(j["methods_agree"] == true);
  CHECK(j["all_hold"] == true);
}

TEST_CASE("empty explicit range is reported as covered") {
  const RunResult result = run("sweep --d-min 3 --d-max 3 --json");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.output);
  CHECK(j["rows"][0]["explicit_range_empty"] == true);
  CHECK(j["rows"][0]["checked"] == 0);
  CHECK(j["total_checked"] == 0);
}

TEST_CASE("oracle json is reproducible for a fixed seed") {
  const RunResult a = run("oracle --d 2 --p 5 --trials 40 --seed 42 --threads 1 --json");
  const RunResult b = run("oracle --d 2 --p 5 --trials 40 --seed 42 --threads 4 --json");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.output == b.output);
  const auto j = nlohmann::json::parse(a.output);
  CHECK(j["all_pass"] == true);
  CHECK(j["w_counts"][0]["bruteforce"] == 5);
  CHECK(j["w_counts"][1]["bruteforce"] == 10);
}

TEST_CASE("certificate emission, checking and tamper detection") {
  const std::string cert_path = "/tmp/momext_cli_test.cert";
  REQUIRE(run("verify --d 20 --q 21 --emit-cert " + cert_path).exit_code == 0);
  CHECK(run("check-cert " + cert_path).exit_code == 0);

  const std::string original = slurp(cert_path);

  SUBCASE("tampered tau value") {
    auto j = nlohmann::json::parse(original);
    j["tau"][0]["value"] = "1/3";
    spit(cert_path, j.dump(2) + "\n");
    CHECK(run("check-cert " + cert_path).exit_code == 1);
  }
  SUBCASE("tampered omega value") {
    auto j = nlohmann::json::parse(original);
    j["omega"][3] = "12345/7";
    spit(cert_path, j.dump(2) + "\n");
    CHECK(run("check-cert " + cert_path).exit_code == 1);
  }
  SUBCASE("tampered partition list") {
    auto j = nlohmann::json::parse(original);
    std::swap(j["partitions"][0], j["partitions"][1]);
    spit(cert_path, j.dump(2) + "\n");
    CHECK(run("check-cert " + cert_path).exit_code == 1);
  }
  SUBCASE("header inconsistent with the partition list length") {
    auto j = nlohmann::json::parse(original);
    j["d"] = 19;  // partitions keep d = 20 entries
    spit(cert_path, j.dump(2) + "\n");
    CHECK(run("check-cert " + cert_path).exit_code == 2);
  }
  SUBCASE("not json") {
    spit(cert_path, "certainly not json");
    CHECK(run("check-cert " + cert_path).exit_code == 2);
  }

  std::remove(cert_path.c_str());
}

TEST_CASE("selftest passes and is quiet about it") {
  const RunResult result = run("selftest --json");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.output);
  CHECK(j["all_pass"] == true);
}

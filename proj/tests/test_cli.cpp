#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// End-to-end runs of the fia binary (path in FIA_BIN), checking exit codes
// and byte-stable output.

namespace {

std::string fia_bin() {
  const char* p = std::getenv("FIA_BIN");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = fia_bin() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "fia_cli_test";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream out(path);
  out << content;
  return path;
}

const char* kDiamond = R"({"elements": ["0","a","b","1"],
  "covers": [["0","a"],["0","b"],["a","1"],["b","1"]]})";
const char* kCrown = R"({"elements": ["x","y","a","b"],
  "covers": [["x","a"],["x","b"],["y","a"],["y","b"]]})";
const char* kChain2 = R"({"elements": ["1","2"], "covers": [["1","2"]]})";
const char* kRho13 = R"({"lambda": {"0":"1","1":"0","a":"a","b":"b"},
  "epsilon": {"a":"1","b":"3"}})";
const char* kRho515 = R"({"lambda": {"0":"1","1":"0","a":"a","b":"b"},
  "epsilon": {"a":"5","b":"15"}})";
const char* kRho11 = R"({"lambda": {"0":"1","1":"0","a":"a","b":"b"}})";

}  // namespace

TEST_CASE("validate") {
  auto dia = write_temp("diamond.json", kDiamond);
  auto res = run("validate " + dia.string());
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("\"connected\": true") != std::string::npos);
  REQUIRE(res.output.find("\"center_dimension\": 1") != std::string::npos);
  REQUIRE(res.output.find("\"trivial\": true") != std::string::npos);

  auto cr = write_temp("crown.json", kCrown);
  auto res2 = run("validate " + cr.string());
  REQUIRE(res2.exit_code == 1);  // H^1 obstruction flagged
  REQUIRE(res2.output.find("\"trivial\": false") != std::string::npos);

  auto bad = write_temp("bad.json", R"({"elements": ["a"], "covers": [["a"]]})");
  REQUIRE(run("validate " + bad.string()).exit_code == 2);

  auto cyc = write_temp("cyc.json", R"({"elements": ["a","b"],
    "covers": [["a","b"],["b","a"]]})");
  REQUIRE(run("validate " + cyc.string()).exit_code == 2);
}

TEST_CASE("classify") {
  auto dia = write_temp("diamond.json", kDiamond);
  auto r13 = write_temp("r13.json", kRho13);
  auto r515 = write_temp("r515.json", kRho515);
  auto r11 = write_temp("r11.json", kRho11);

  auto pos = run("classify " + r13.string() + " " + r515.string() + " --poset " +
                 dia.string() + " --field qi --inner-only");
  REQUIRE(pos.exit_code == 0);
  REQUIRE(pos.output.find("\"verdict\": \"equivalent\"") != std::string::npos);
  REQUIRE(pos.output.find("\"checked\": true") != std::string::npos);

  auto neg = run("classify " + r11.string() + " " + r13.string() + " --poset " +
                 dia.string() + " --field qi");
  REQUIRE(neg.exit_code == 1);
  REQUIRE(neg.output.find("\"kind\": \"coset_mismatch\"") != std::string::npos);
  REQUIRE(neg.output.find("\"at\": \"b\"") != std::string::npos);
  REQUIRE(neg.output.find("\"ratio\": \"3\"") != std::string::npos);

  // byte-for-byte reproducibility
  auto again = run("classify " + r11.string() + " " + r13.string() + " --poset " +
                   dia.string() + " --field qi");
  REQUIRE(again.output == neg.output);
}

TEST_CASE("decompose") {
  auto dia = write_temp("diamond.json", kDiamond);
  auto r13 = write_temp("r13.json", kRho13);
  auto res = run("decompose " + r13.string() + " --poset " + dia.string() + " --field qi");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("\"lambda\"") != std::string::npos);
  REQUIRE(res.output.find("\"sigma\"") != std::string::npos);
  REQUIRE(res.output.find("\"scalar_action\": \"star\"") != std::string::npos);
}

TEST_CASE("oracle") {
  auto c2 = write_temp("chain2.json", kChain2);
  auto res = run("oracle " + c2.string() + " --field gf:3");
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("\"check\":\"general_classification\"") != std::string::npos);
  REQUIRE(res.output.find("\"status\":\"fail\"") == std::string::npos);

  auto cr = write_temp("crown.json", kCrown);
  auto res2 = run("oracle " + cr.string() + " --field gf:3");
  REQUIRE(res2.exit_code == 0);  // skips, no failures
  REQUIRE(res2.output.find("H1Obstruction") != std::string::npos);

  // oracle needs a finite field
  REQUIRE(run("oracle " + c2.string() + " --field qi").exit_code == 2);

  // tiny budget trips the cap
  auto dia = write_temp("diamond.json", kDiamond);
  REQUIRE(run("oracle " + dia.string() + " --field gf:3 --budget 5").exit_code == 3);
}

TEST_CASE("bad flags and files are input errors") {
  auto dia = write_temp("diamond.json", kDiamond);
  REQUIRE(run("validate " + dia.string() + " --no-such-flag").exit_code == 2);
  REQUIRE(run("validate /nonexistent/poset.json").exit_code == 2);
  REQUIRE(run("frobnicate " + dia.string()).exit_code == 2);
}

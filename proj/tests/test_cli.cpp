#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded unless asked for.
Run run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string("'") + RAUZY_CLI + "' " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kBase = "'1->21;2->31;3->1'";
const std::string kTribonacci = "'1->12;2->13;3->1'";
const std::string kSplitTau = "'1->4213121;2->213124;3->3421;4->4213121'";

}  // namespace

TEST_CASE("check reports the classification") {
  const Run r = run("check " + kTribonacci);
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("schema") == "rauzy-report/1");
  CHECK(std::abs(j.at("beta").get<double>() - 1.839287) < 1e-6);
  CHECK(j.at("pisot") == true);
  CHECK(j.at("primitive") == true);
  CHECK(j.at("unimodular") == true);
  CHECK(j.at("irreducible") == true);
  CHECK(j.at("degree") == 3);
  CHECK(j.at("characteristic_polynomial") == json::array({1, -1, -1, -1}));
}

TEST_CASE("forced drill prints theta") {
  const Run r = run("drill " + kBase + " -k 1 --force-N 3 --force-I '(1;7)'");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("theta").at("images") == json::array({"121314", "213121", "3121", "213121121314"}));
  CHECK(j.at("tau").at("images") == json::array({"1213124", "213121", "3121", "1213124"}));
  CHECK(j.at("I_text") == "(1;7)");
  CHECK(j.at("b") == 4);
  CHECK(j.at("c") == 2);

  // byte-identical on a rerun
  CHECK(run("drill " + kBase + " -k 1 --force-N 3 --force-I '(1;7)'").out == r.out);
}

TEST_CASE("split, power, occ and conjugate print text") {
  const Run s = run("split '1->1213121;2->213121;3->3121' -a 1 -I '(1;1),(2;6),(3;2)'");
  CHECK(s.code == 0);
  CHECK(s.out == "1->4213121; 2->213124; 3->3421; 4->4213121\n");

  CHECK(run("power " + kBase + " -n 3").out == "1->1213121; 2->213121; 3->3121\n");
  CHECK(run("occ '1->1213121;2->213121;3->3121' -i 1").out == "(1;1),(1;3),(1;5),(1;7),(2;2),(2;4),(2;6),(3;2),(3;4)\n");

  const Run c = run("conjugate '1->1213124;2->213121;3->3121;4->1213124' -c 2 -b 4");
  CHECK(c.code == 0);
  CHECK(c.out == "1->121314; 2->213121; 3->3121; 4->213121121314\n");
}

TEST_CASE("conjugate reports the offending occurrence") {
  const Run r = run("conjugate " + kSplitTau + " -c 2 -b 4", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("(1;1)") != std::string::npos);
}

TEST_CASE("verify exit code follows the report") {
  const Run ok = run("verify " + kTribonacci + " --points 20000");
  CHECK(ok.code == 0);
  const json j = json::parse(ok.out);
  CHECK(j.at("pass") == true);

  const Run bad = run("verify " + kTribonacci + " --points 20000 --perturb 0.05");
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out).at("pass") == false);

  const Run split = run("verify '1->1213121;2->213121;3->3121' --pipeline split -a 1 -I '(1;1),(2;6),(3;2)' --points 20000");
  CHECK(split.code == 0);
}

TEST_CASE("render writes an image") {
  const auto dir = std::filesystem::temp_directory_path() / "rauzy_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto png = dir / "t.png";
  const Run r = run("render " + kTribonacci + " --size 128x96 --points 3000 --out '" + png.string() + "'");
  CHECK(r.code == 0);
  std::ifstream in(png, std::ios::binary);
  char sig[4] = {};
  in.read(sig, 4);
  CHECK(std::string(sig + 1, 3) == "PNG");

  const auto svg = dir / "t.svg";
  CHECK(run("render " + kTribonacci + " --points 500 --out '" + svg.string() + "'").code == 0);
  CHECK(std::filesystem::file_size(svg) > 100);
  std::filesystem::remove_all(dir);
}

TEST_CASE("bad input exits with 2") {
  CHECK(run("check '1->2x'").code == 2);
  CHECK(run("check '1->21;2->31;3->4'").code == 2);
  CHECK(run("split " + kBase + " -a 1 -I '(1;1)'").code == 2);
  CHECK(run("power " + kBase + " -n 0").code == 2);
  CHECK(run("render " + kTribonacci + " --size 12").code == 2);
  CHECK(run("nonsense").code == 2);
  CHECK(run("--help").code == 0);
}

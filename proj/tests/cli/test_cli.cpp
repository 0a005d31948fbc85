#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "derksen/polynomial.hpp"

using namespace derksen;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(DERKSEN_LAB) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const char* name) { return std::string(DERKSEN_FIXTURE_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string temp_file(const char* name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t pos; (pos = s.find(", ", start)) != std::string::npos; start = pos + 2)
    out.push_back(s.substr(start, pos - start));
  out.push_back(s.substr(start));
  return out;
}

}  // namespace

TEST(Cli, DerksenCommand) {
  EXPECT_EQ(run("derksen " + fixture("example4_3.toml")).out, "y1^2 - x1^2, y2 - x2\n");
  EXPECT_EQ(run("derksen " + fixture("trivial.toml")).out, "y1 - x1, y2 - x2\n");
  Result r = run("derksen " + fixture("diag_3_2_gf7.toml"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "y1^3 - x1^3, y2^2 - x2^2\n");
  auto j = nlohmann::ordered_json::parse(run("derksen --json " + fixture("example4_3.toml")).out);
  EXPECT_EQ(j["group_order"], 2);
  EXPECT_EQ(j["derksen_ideal"], (nlohmann::ordered_json{"y1^2 - x1^2", "y2 - x2"}));
}

TEST(Cli, CheckCommand) {
  Result r = run("check " + fixture("example4_3.toml") + " --n 1..3 --json");
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  for (unsigned n = 1; n <= 3; ++n) {
    auto j = nlohmann::ordered_json::parse(ls[n - 1]);
    EXPECT_EQ(j["n"], n);
    EXPECT_EQ(j["verdict"], "Equal");
    EXPECT_EQ(j["mode"], "Global");
  }
  Result one = run("check " + fixture("sign_j2_d3.toml") + " --n 1..1 --json");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(nlohmann::ordered_json::parse(one.out)["verdict"], "Equal");

  Result local = run("check " + fixture("scalar_t3_d2_gf7.toml") + " --n 2..3 --local --json");
  EXPECT_EQ(local.code, 0);
  for (const auto& l : lines(local.out)) {
    auto j = nlohmann::ordered_json::parse(l);
    EXPECT_EQ(j["verdict"], "Equal");
    EXPECT_EQ(j["mode"], "PuncturedSpectrum");
  }
  Result table = run("check " + fixture("example4_3.toml"));
  EXPECT_EQ(lines(table.out).size(), 5u);  // header, column titles, n = 1..3 from the file
}

TEST(Cli, FirstPowerIsAlwaysEqual) {
  for (const auto& e : std::filesystem::directory_iterator(DERKSEN_FIXTURE_DIR)) {
    Result r = run("check --n 1..1 --json " + e.path().string());
    EXPECT_EQ(r.code, 0) << e.path();
    EXPECT_EQ(nlohmann::ordered_json::parse(r.out)["verdict"], "Equal") << e.path();
  }
}

TEST(Cli, InvariantsCommand) {
  EXPECT_EQ(run("invariants " + fixture("example4_3.toml")).out, "zero_fiber: x1^2, x2\ninvariants: x1^2, x2\n");
  EXPECT_EQ(run("invariants " + fixture("trivial.toml")).out, "zero_fiber: x1, x2\ninvariants: x1, x2\n");
  Result r = run("invariants " + fixture("jordan_j1_d2_gf2.toml"));
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(lines(r.out).size(), 1u);
}

TEST(Cli, ExitCodesForErrors) {
  EXPECT_EQ(run("derksen " + temp_file("bad.toml", "field = \"QQ\"\nd = 2\ngenerators = [[[1, 0]]]\n")).code, 2);
  EXPECT_EQ(run("derksen /nonexistent.toml").code, 2);
  EXPECT_EQ(run("frobnicate " + fixture("trivial.toml")).code, 2);
  EXPECT_EQ(run("check " + fixture("trivial.toml") + " --n 3..1").code, 2);
  EXPECT_EQ(run("derksen " + temp_file("singular.toml", "field = \"QQ\"\ngenerators = [[[1, 1], [1, 1]]]\n")).code, 2);
  EXPECT_EQ(run("derksen --max-basis 1 " + fixture("scalar_t3_d2_gf7.toml")).code, 3);
  Result inconclusive = run("check --max-pairs 2 --json " + fixture("scalar_t5_d2_gf11.toml") + " --n 2..2");
  EXPECT_EQ(inconclusive.code, 3);
  EXPECT_EQ(nlohmann::ordered_json::parse(inconclusive.out)["verdict"], "Inconclusive");
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* f : {"example4_3.toml", "diag_2_2_2_gf7.toml", "scalar_t3_d2_gf7.toml"}) {
    for (const char* cmd : {"derksen", "check", "check --json", "invariants --json"}) {
      std::string args = std::string(cmd) + " " + fixture(f);
      EXPECT_EQ(run(args).out, run(args).out) << args;
    }
  }
}

TEST(Cli, PrintedPolynomialsRoundTrip) {
  for (const char* f : {"example4_3.toml", "sign_j1_d3.toml", "jordan_j2_d3_gf2.toml", "diag_3_2_d3_gf13.toml",
                        "cyclic_t6_gf13.toml", "scalar_t5_d2_gf11.toml"}) {
    auto j = nlohmann::ordered_json::parse(run("derksen --json " + fixture(f)).out);
    FieldSpec field = FieldSpec::parse(j["field"].get<std::string>());
    auto ring = RingSpec::derksen(field, j["d"].get<std::size_t>());
    ASSERT_FALSE(j["derksen_ideal"].empty()) << f;
    for (const auto& text : j["derksen_ideal"]) {
      Polynomial p = Polynomial::parse(ring, text.get<std::string>());
      EXPECT_EQ(p.to_string(), text.get<std::string>()) << f;
      EXPECT_EQ(Polynomial::parse(ring, p.to_string()).terms(), p.terms()) << f;
    }
    Result inv = run("invariants " + fixture(f));
    auto affine = RingSpec::affine(field, j["d"].get<std::size_t>());
    for (const auto& l : lines(inv.out)) {
      std::string list = l.substr(l.find(": ") + 2);
      for (const auto& text : split_list(list)) EXPECT_EQ(Polynomial::parse(affine, text).to_string(), text) << f;
    }
  }
}

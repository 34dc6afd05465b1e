#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Outcome {
  int exit_code;
  std::string out;
};

/// Runs the CLI through the shell; stderr is folded into out when `merge` is set.
Outcome qpl(const std::string& args, bool merge = false) {
  const std::string cmd = std::string(QPL_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string& name) { return std::string(QPL_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("qpl-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_F(CliTest, AnalyzeMrdCode) {
  const Outcome r = qpl("code analyze " + fx("ex-2-17-c1.code"));
  EXPECT_EQ(r.exit_code, 0);
  for (const char* line : {"k: 5\n", "d: 2\n", "mrd: yes\n", "rho(E): 5/2\n", "mu_principal: 2\n"})
    EXPECT_TRUE(contains(r.out, line)) << line;
}

TEST_F(CliTest, AnalyzeSmallCodeMachine) {
  const Outcome r = qpl("code analyze " + fx("ex-3-3a.code") + " --machine");
  EXPECT_EQ(r.exit_code, 0);
  for (const char* line : {"k=3\n", "rho(E)=1\n", "mu_principal=3\n"}) EXPECT_TRUE(contains(r.out, line)) << line;
  EXPECT_FALSE(contains(r.out, ": "));
}

TEST_F(CliTest, AnalyzeExportsTheShippedTable) {
  const std::string out = path("c.qpm");
  EXPECT_EQ(qpl("code analyze " + fx("ex-3-8.code") + " -o " + out).exit_code, 0);
  EXPECT_EQ(slurp(out), slurp(fx("ex-3-8.qpm")));
}

TEST_F(CliTest, MalformedCodeFiles) {
  EXPECT_EQ(qpl("code analyze " + write("empty.code", "")).exit_code, 2);
  const Outcome r = qpl("code analyze " + write("bad.code", "q 2 n 2 m 2 k 1\n10\n0z\n"), true);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(contains(r.out, "line 3")) << r.out;
  EXPECT_EQ(qpl("code analyze " + path("missing.code")).exit_code, 2);
}

TEST_F(CliTest, Circuits) {
  const Outcome r = qpl("qpm circuits " + fx("ex-3-8.qpm") + " --mu 2/1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "total 497; dim 1: 1; dim 4: 496")) << r.out;
}

TEST_F(CliTest, ListFlagPrintsKeys) {
  const Outcome r = qpl("qpm loops " + fx("ex-3-8.qpm") + " --list");
  EXPECT_EQ(r.exit_code, 0);
  const Outcome plain = qpl("qpm loops " + fx("ex-3-8.qpm"));
  EXPECT_GT(r.out.size(), plain.out.size());
}

TEST_F(CliTest, EquivalenceVerdicts) {
  const Outcome no = qpl("qpm equiv " + fx("ex-2-17-c1.qpm") + " " + fx("ex-2-17-c2.qpm"));
  EXPECT_EQ(no.exit_code, 1);
  EXPECT_TRUE(contains(no.out, "NOT EQUIVALENT (fingerprint dim 2)")) << no.out;
  const Outcome yes = qpl("qpm equiv " + fx("ex-3-3a.qpm") + " " + fx("ex-3-3a.qpm"));
  EXPECT_EQ(yes.exit_code, 0);
  EXPECT_TRUE(contains(yes.out, "EQUIVALENT\n"));
  const Outcome scaled = qpl("qpm equiv " + fx("ex-2-17-c1.qpm") + " " + fx("ex-2-17-c2.qpm") + " --scaling");
  EXPECT_EQ(scaled.exit_code, 1);
  EXPECT_EQ(qpl("qpm equiv " + fx("ex-3-3a.qpm") + " " + fx("u2-4.qpm")).exit_code, 2);
  EXPECT_EQ(qpl("qpm equiv " + fx("ex-3-3a.qpm")).exit_code, 2);
}

TEST_F(CliTest, DualOfSelfDualUniform) {
  const Outcome r = qpl("qpm dual " + fx("u2-4.qpm"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, slurp(fx("u2-4.qpm")));
  const std::string out = path("d.qpm");
  EXPECT_EQ(qpl("qpm dual " + fx("ex-3-3a.qpm") + " -o " + out).exit_code, 0);
  const Outcome back = qpl("qpm dual " + out);
  EXPECT_EQ(back.out, slurp(fx("ex-3-3a.qpm")));
}

TEST_F(CliTest, DualWithGram) {
  const std::string g = write("g.mat", "q 2 rows 3 cols 3\n100\n001\n010\n");
  const std::string bad = write("bad.mat", "q 2 rows 3 cols 3\n111\n111\n111\n");
  EXPECT_EQ(qpl("qpm dual " + fx("ex-3-3a.qpm") + " --gram " + g).exit_code, 0);
  EXPECT_EQ(qpl("qpm dual " + fx("ex-3-3a.qpm") + " --gram " + bad).exit_code, 2);
}

TEST_F(CliTest, AxiomsCleanAndViolated) {
  EXPECT_EQ(qpl("qpm axioms " + fx("u2-4.qpm")).exit_code, 0);
  const std::string broken = write("broken.qpm", "q 2 n 1 D 1\n- 0\n1 2\n");
  const Outcome r = qpl("qpm axioms " + broken);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(contains(r.out, "R1")) << r.out;
}

TEST_F(CliTest, MalformedQpmFiles) {
  EXPECT_EQ(qpl("qpm axioms " + write("short.qpm", "q 2 n 1 D 1\n- 0\n")).exit_code, 2);
  EXPECT_EQ(qpl("qpm axioms " + write("empty.qpm", "")).exit_code, 2);
}

TEST_F(CliTest, MuValidation) {
  EXPECT_EQ(qpl("qpm independents " + fx("ex-3-3a.qpm") + " --mu 2/1").exit_code, 2);
  EXPECT_EQ(qpl("qpm independents " + fx("ex-3-3a.qpm") + " --mu x").exit_code, 2);
  EXPECT_EQ(qpl("qpm independents " + fx("ex-3-3a.qpm") + " --mu 6/2").exit_code, 0);
}

TEST_F(CliTest, ClassificationCommands) {
  for (const char* sub : {"independents", "circuits", "loops", "bases", "spanning", "strong", "aux"})
    EXPECT_EQ(qpl(std::string("qpm ") + sub + " " + fx("ex-4-6c.qpm")).exit_code, 0) << sub;
  const Outcome bases = qpl("qpm bases " + fx("ex-4-6c.qpm"));
  EXPECT_TRUE(contains(bases.out, "total 15; dim 3: 15")) << bases.out;
}

TEST_F(CliTest, CandidateCommands) {
  const Outcome bad = qpl("qpm crypto-check " + fx("ex-4-8.cand"));
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_TRUE(contains(bad.out, "C: [110;001]")) << bad.out;
  const std::string ext = path("ext.qpm");
  EXPECT_EQ(qpl("qpm crypto-check " + fx("ex-4-8.cand") + " -o " + ext).exit_code, 1);
  EXPECT_EQ(slurp(ext), slurp(fx("ex-3-3a.qpm")));
  const std::string cand = path("built.cand");
  EXPECT_EQ(qpl("qpm crypto-build " + fx("ex-3-3a.qpm") + " -o " + cand).exit_code, 0);
  const Outcome good = qpl("qpm crypto-check " + cand);
  EXPECT_EQ(good.exit_code, 0);
  EXPECT_TRUE(contains(good.out, "roundtrip: equal")) << good.out;
}

TEST_F(CliTest, PaperRunner) {
  const Outcome one = qpl("paper ex-5-3");
  EXPECT_EQ(one.exit_code, 0);
  EXPECT_TRUE(contains(one.out, "ex-5-3: all checks pass")) << one.out;
  EXPECT_FALSE(contains(one.out, "FAIL"));
  const Outcome all = qpl("paper all");
  EXPECT_EQ(all.exit_code, 0);
  EXPECT_FALSE(contains(all.out, "FAIL"));
  const Outcome unknown = qpl("paper ex-1-1", true);
  EXPECT_EQ(unknown.exit_code, 2);
  EXPECT_TRUE(contains(unknown.out, "ex-3-10b")) << unknown.out;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(qpl("").exit_code, 2);
  EXPECT_EQ(qpl("bogus").exit_code, 2);
  EXPECT_EQ(qpl("qpm").exit_code, 2);
  EXPECT_EQ(qpl("qpm frobnicate " + fx("u2-4.qpm")).exit_code, 2);
  EXPECT_EQ(qpl("qpm loops " + fx("u2-4.qpm") + " --nope").exit_code, 2);
  EXPECT_EQ(qpl("code analyze").exit_code, 2);
  EXPECT_EQ(qpl("--help").exit_code, 0);
}

TEST_F(CliTest, BudgetLimitsAreInputErrors) {
  EXPECT_EQ(qpl("qpm axioms " + fx("ex-3-8.qpm") + " --budget 100").exit_code, 2);
}

TEST_F(CliTest, RepeatRunsAreByteIdentical) {
  for (const std::string& args : std::vector<std::string>{"code analyze " + fx("ex-3-8.code"), "qpm circuits " + fx("ex-3-8.qpm") + " --list",
                                  "qpm equiv " + fx("ex-4-6c.qpm") + " " + fx("ex-4-6cprime.qpm"),
                                  "qpm spanning " + fx("ex-2-17-c1.qpm") + " --list --machine", "paper ex-3-8"}) {
    const Outcome a = qpl(args), b = qpl(args);
    EXPECT_EQ(a.exit_code, b.exit_code) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}

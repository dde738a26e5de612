#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "markovdf/io.hpp"

using namespace markovdf;
namespace fs = std::filesystem;

namespace {

const std::string samples = MARKOVDF_SAMPLES;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("markovdf_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) {
    const std::string cmd = std::string(MARKOVDF_CLI) + " " + args + " > " + path("stdout") + " 2> " +
                            path("stderr");
    const int rc = std::system(cmd.c_str());
    out = read_text(path("stdout"));
    err = read_text(path("stderr"));
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }

  void write(const std::string& name, const std::string& text) { std::ofstream(path(name)) << text; }

  std::string out, err;
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, VerifySuites) {
  EXPECT_EQ(run("verify finstoch --cases 100 --seed 7"), 0) << err;
  const json j = parse_json(out, "stdout");
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["seed"], 7);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_EQ(run("verify all --cases 20 --out " + path("all.json")), 0) << err;
  EXPECT_EQ(parse_json(read_text(path("all.json")), "all")["suites"].size(), 3u);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("verify nope"), 1);
  EXPECT_EQ(run("verify finstoch --cases many"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, ReportsAreByteIdenticalWithoutTiming) {
  ASSERT_EQ(run("verify lemmas --cases 30 --seed 3 --no-timing --out " + path("a.json")), 0);
  ASSERT_EQ(run("verify lemmas --cases 30 --seed 3 --no-timing --out " + path("b.json")), 0);
  EXPECT_EQ(read_text(path("a.json")), read_text(path("b.json")));

  ASSERT_EQ(run("simulate " + samples + "/polya_1_1.json " + path("p.json")), 0);
  ASSERT_EQ(run("analyze " + path("p.json") + " --no-timing --out " + path("r1.json")), 0);
  ASSERT_EQ(run("analyze " + path("p.json") + " --no-timing --out " + path("r2.json")), 0);
  EXPECT_EQ(read_text(path("r1.json")), read_text(path("r2.json")));
  const json with = parse_json(read_text(path("r1.json")), "r1");
  EXPECT_FALSE(with.contains("timing"));
  EXPECT_EQ(with["input_digest"], digest(read_text(path("p.json"))));
}

TEST_F(Cli, SimulateExamples) {
  EXPECT_EQ(run("simulate " + samples + "/polya_1_1.json " + path("p.json")), 0) << err;
  EXPECT_NE(out.find("40 levels, count form"), std::string::npos) << out;
  EXPECT_EQ(run("simulate " + samples + "/iid_0.3.json " + path("i.json")), 0) << err;
  EXPECT_NE(out.find("400 levels, count form"), std::string::npos) << out;
  EXPECT_EQ(run("simulate " + samples + "/urn_2_2.json " + path("u.json")), 0) << err;
  EXPECT_NE(out.find("4 levels, count form"), std::string::npos) << out;
  const auto fam = family_from_json(parse_json(read_text(path("u.json")), "u"));
  EXPECT_EQ(fam.depth(), 4u);
}

TEST_F(Cli, SimulateErrors) {
  write("bad.json", R"({"process":"polya","alpha":1,"depth":4})");
  EXPECT_EQ(run("simulate " + path("bad.json") + " " + path("o.json")), 1);
  write("junk.json", "{not json");
  EXPECT_EQ(run("simulate " + path("junk.json") + " " + path("o.json")), 1);
  EXPECT_EQ(run("simulate " + path("missing.json") + " " + path("o.json")), 1);
  EXPECT_EQ(run("simulate " + samples + "/polya_1_1.json " + path("no/such/dir/o.json")), 3);
}

TEST_F(Cli, AnalyzeVerdicts) {
  ASSERT_EQ(run("simulate " + samples + "/polya_1_1.json " + path("p.json")), 0);
  EXPECT_EQ(run("analyze " + path("p.json")), 0) << err;
  const json j = parse_json(out, "stdout");
  EXPECT_TRUE(j["verdict"]["extendable"].get<bool>());
  EXPECT_TRUE(j["checks"]["consistency"]["holds"].get<bool>());
  EXPECT_EQ(j["moments"].size(), 41u);
  EXPECT_EQ(j["reconstruction"]["hausdorff"]["measure"].size(), 41u);
  // Uniform mixing: the Hausdorff weights at order 40 are all 1/41.
  for (const auto& a : j["reconstruction"]["hausdorff"]["measure"])
    EXPECT_NEAR(a["weight"].get<double>(), 1.0 / 41, 1e-9);
  EXPECT_FALSE(j["tail"]["tail_shift_deviation"].empty());
  EXPECT_FALSE(j["tail"]["conditionally_iid_error"].empty());

  ASSERT_EQ(run("simulate " + samples + "/urn_2_2.json " + path("u.json")), 0);
  EXPECT_EQ(run("analyze " + path("u.json") + " --out " + path("u_report.json")), 4);
  const json u = parse_json(read_text(path("u_report.json")), "u");
  EXPECT_FALSE(u["verdict"]["extendable"].get<bool>());
  EXPECT_GT(u["reconstruction"]["grid_match"]["residual"].get<double>(), 1e-3);

  EXPECT_EQ(run("analyze " + samples + "/perturbed_dense.json"), 5);
  EXPECT_NE(err.find("level 3"), std::string::npos) << err;
}

TEST_F(Cli, AnalyzeErrors) {
  write("bad.json", R"({"alphabet":["0","1"],"depth":2,"form":"dense","levels":{"1":[0.5,0.5]}})");
  EXPECT_EQ(run("analyze " + path("bad.json")), 1);
  ASSERT_EQ(run("simulate " + samples + "/urn_2_2.json " + path("u.json")), 0);
  EXPECT_EQ(run("analyze " + path("u.json") + " --max-level 9"), 1);
  EXPECT_EQ(run("analyze " + path("u.json") + " --order 0"), 1);
}

TEST_F(Cli, DiagramScripts) {
  EXPECT_EQ(run("diagram " + samples + "/counit.mkv --lhs left --rhs plain"), 0) << err;
  EXPECT_EQ(out.substr(0, 6), "EQUAL\n");
  EXPECT_NE(out.find("left: id[X]"), std::string::npos) << out;
  EXPECT_EQ(run("diagram " + samples + "/copy_naturality.mkv --lhs copy_after --rhs copy_before"), 4);
  EXPECT_EQ(out.substr(0, 10), "NOT-EQUAL\n");
  EXPECT_EQ(run("diagram " + samples + "/copy_naturality.mkv --lhs discard_after --rhs discard_before"), 0);
  EXPECT_EQ(run("diagram " + samples + "/counit.mkv --check-axioms"), 0) << out;
}

TEST_F(Cli, DiagramErrors) {
  write("syntax.mkv", "object X\ncopy[X] ; ; id[X]\n");
  EXPECT_EQ(run("diagram " + path("syntax.mkv")), 1);
  EXPECT_NE(err.find(":2:11:"), std::string::npos) << err;
  write("types.mkv", "object X\ngen f : X -> X\ndef a = f\ndef b = copy[X]\n");
  EXPECT_EQ(run("diagram " + path("types.mkv") + " --lhs a --rhs b"), 1);
  EXPECT_NE(err.find("type error"), std::string::npos) << err;
  EXPECT_EQ(run("diagram " + samples + "/counit.mkv --lhs left --rhs nothing"), 1);
  EXPECT_EQ(run("diagram " + samples + "/counit.mkv --lhs left"), 1);
}

TEST_F(Cli, ThreadCapDoesNotChangeResults) {
  ASSERT_EQ(run("simulate " + samples + "/polya_1_1.json " + path("p.json")), 0);
  ASSERT_EQ(run("analyze " + path("p.json") + " --no-timing --out " + path("a.json")), 0);
  ASSERT_EQ(::setenv("MARKOVDF_THREADS", "1", 1), 0);
  ASSERT_EQ(run("analyze " + path("p.json") + " --no-timing --out " + path("b.json")), 0);
  ::unsetenv("MARKOVDF_THREADS");
  EXPECT_EQ(read_text(path("a.json")), read_text(path("b.json")));
}

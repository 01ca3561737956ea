#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "agler/io.hpp"

using namespace agler;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    std::string tmpl = (fs::temp_directory_path() / "agler_cli_XXXXXX").string();
    ASSERT_NE(mkdtemp(tmpl.data()), nullptr);
    dir_ = tmpl;
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Exit code of `agler args`, stdout captured into out_.
  int run(const std::string& args) {
    const std::string cmd = std::string(AGLER_CLI_PATH) + " " + args + " 2>" + path("stderr.txt");
    FILE* pipe = popen(cmd.c_str(), "r");
    out_.clear();
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out_.append(buf, got);
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  void write(const std::string& name, const std::string& text) {
    std::ofstream(path(name)) << text;
  }
  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // First entry of the value list printed by eval.
  cplx first_value(const std::string& object, const std::string& points_json) {
    write("pts.json", points_json);
    EXPECT_EQ(run("eval " + path(object) + " " + path("pts.json")), 0);
    const json j = json::parse(out_);
    return matrix_from_json(j.at(0))(0, 0);
  }

  fs::path dir_;
  std::string out_;
};

}  // namespace

TEST_F(Cli, ShiftEval) {
  ASSERT_EQ(run("gen --preset shift --out " + path("s.json")), 0);
  const cplx v = first_value("s.json", "[[[0.25, 0.0]]]");
  EXPECT_LT(std::abs(v - 0.25), 1e-15);
}

TEST_F(Cli, OneOverW) {
  ASSERT_EQ(run("gen --preset one-over-w --out " + path("p.json")), 0);
  EXPECT_LT(std::abs(first_value("p.json", "[[[2.0, 0.0]]]") - 0.5), 1e-15);
}

TEST_F(Cli, HerglotzRepAtOrigin) {
  write("rep.json", R"({"type":"herglotz_rep","d":1,
    "dims":{"n":1,"q":1,"decomposition":"spectral"},
    "blocks":{"R":{"rows":1,"cols":1,"data":[[0,0]]},
              "U":{"rows":1,"cols":1,"data":[[1,0]]},
              "V":{"rows":1,"cols":1,"data":[[1,0]]},
              "P":[{"rows":1,"cols":1,"data":[[1,0]]}]}})");
  EXPECT_LT(std::abs(first_value("rep.json", "[[[0.0, 0.0]]]") - 1.0), 1e-14);
}

TEST_F(Cli, TupleGenerationIsDeterministic) {
  const std::string args = "gen tuple --d 2 --m 3 --margin 0.2 --seed 7";
  ASSERT_EQ(run(args), 0);
  const std::string first = out_;
  ASSERT_EQ(run(args), 0);
  EXPECT_EQ(first, out_);
  EXPECT_FALSE(first.empty());
}

TEST_F(Cli, ConvertChain) {
  ASSERT_EQ(run("gen --preset shift --out " + path("s.json")), 0);
  ASSERT_EQ(run("convert " + path("s.json") + " herglotz_rep --out " + path("r.json")), 0);
  ASSERT_EQ(run("convert " + path("r.json") + " pencil --out " + path("p.json")), 0);
  EXPECT_LT(std::abs(first_value("p.json", "[[[3.0, 0.0]]]") - 3.0), 1e-12);

  ASSERT_EQ(run("gen --preset cayley-minus-one --out " + path("c.json")), 0);
  ASSERT_EQ(run("convert " + path("c.json") + " nevanlinna"), 0);
  const json nv = json::parse(out_);
  EXPECT_EQ(nv["type"], "nevanlinna");
  ASSERT_EQ(nv["blocks"]["atoms"].size(), 1u);
  EXPECT_NEAR(nv["blocks"]["atoms"][0]["mass"].get<double>(), 1.0, 1e-12);
}

TEST_F(Cli, SingularIminusDIsAnError) {
  write("id.json", R"({"type":"schur_gr","d":1,
    "dims":{"n":1,"p":1,"q":1,"metric":"unitary","decomposition":"spectral"},
    "blocks":{"A":{"rows":1,"cols":1,"data":[[1,0]]},
              "B":{"rows":1,"cols":1,"data":[[0,0]]},
              "C":{"rows":1,"cols":1,"data":[[0,0]]},
              "D":{"rows":1,"cols":1,"data":[[1,0]]},
              "P":[{"rows":1,"cols":1,"data":[[1,0]]}]}})");
  EXPECT_EQ(run("convert " + path("id.json") + " herglotz_rep"), 2);
  EXPECT_NE(slurp("stderr.txt").find("SingularIminusD"), std::string::npos);
}

TEST_F(Cli, VerifyExitCodes) {
  ASSERT_EQ(run("gen --preset shift --out " + path("s.json")), 0);
  EXPECT_EQ(run("verify " + path("s.json") + " --suite all"), 0);
  json j = json::parse(slurp("s.json"));
  j["blocks"]["D"]["data"][0][0] = 0.5;
  write("bad.json", j.dump());
  EXPECT_EQ(run("verify " + path("bad.json") + " --suite kernels"), 1);
  ASSERT_EQ(run("gen --preset one-over-w --out " + path("p.json")), 0);
  EXPECT_EQ(run("verify " + path("p.json") + " --suite pencil_class"), 0);
  EXPECT_EQ(run("verify " + path("s.json") + " --suite pencil_class"), 2);
  EXPECT_EQ(run("verify " + path("s.json") + " --suite bogus"), 2);
}

TEST_F(Cli, Realize) {
  ASSERT_EQ(run("gen --preset shift-samples --out " + path("samp.json")), 0);
  EXPECT_EQ(run("realize " + path("samp.json") + " --out " + path("col.json")), 0);
  EXPECT_LT(std::abs(first_value("col.json", "[[[0.77, 0.0]]]") - 0.77), 1e-10);
  json j = json::parse(slurp("samp.json"));
  j["blocks"]["samples"][1]["value"]["data"][0][0] = 0.35;
  write("pert.json", j.dump());
  EXPECT_EQ(run("realize " + path("pert.json")), 1);
}

TEST_F(Cli, MalformedInput) {
  write("junk.json", "{ this is not json");
  EXPECT_EQ(run("verify " + path("junk.json")), 2);
  EXPECT_EQ(run("eval " + path("missing.json") + " " + path("junk.json")), 2);
  EXPECT_EQ(run("gen pencil --d 0"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
}

// Copyright 2026 The Panmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "panmap/pgm.h"
#include "test_util.h"

namespace panmap {
namespace {

using ::panmap::testing::ScratchDir;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "panmap");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new std::filesystem::path(ScratchDir("cli"));
    const Result sim =
        Invoke({"simulate", "--preset", "demo", "--frames", "6", "--out",
                (*dir_ / "ds").string(), "--gt-cloud", "frames"});
    ASSERT_EQ(sim.code, 0) << sim.err;
  }
  static void TearDownTestSuite() {
    std::filesystem::remove_all(*dir_);
    delete dir_;
  }
  static std::string Path(const std::string& name) {
    return (*dir_ / name).string();
  }
  static std::filesystem::path* dir_;
};

std::filesystem::path* CliTest::dir_ = nullptr;

TEST_F(CliTest, MapWithDefaultFlags) {
  const Result r =
      Invoke({"map", "--dataset", Path("ds"), "--out", Path("default.pndt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("frames=6"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("global_ids=3"), std::string::npos) << r.out;
  EXPECT_TRUE(std::filesystem::exists(Path("default.pndt")));
}

TEST_F(CliTest, RejectsInvertedMatchThresholds) {
  const Result r =
      Invoke({"map", "--dataset", Path("ds"), "--out", Path("bad.pndt"),
              "--theta-m", "0.05", "--theta-n", "0.1"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("theta_match"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(Path("bad.pndt")));
}

TEST_F(CliTest, UnknownFlagFails) {
  EXPECT_NE(Invoke({"map", "--no-such-flag"}).code, 0);
  EXPECT_NE(Invoke({"frobnicate"}).code, 0);
}

TEST_F(CliTest, MissingDatasetFails) {
  const Result r =
      Invoke({"map", "--dataset", Path("nope"), "--out", Path("x.pndt")});
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(r.err.rfind("panmap: ", 0), 0u) << r.err;
}

TEST_F(CliTest, EvaluationReportsAllMetrics) {
  ASSERT_EQ(Invoke({"map", "--dataset", Path("ds"), "--out", Path("e.pndt"),
                    "--voxel-size", "0.1"})
                .code,
            0);
  const Result r2 = Invoke({"eval2d", "--map", Path("e.pndt"), "--dataset",
                            Path("ds"), "--records", Path("e2d.txt")});
  ASSERT_EQ(r2.code, 0) << r2.err;
  const std::string records = "\n" + ReadFileBytes(Path("e2d.txt"));
  for (const char* key : {"miou=", "miou_panoptic=", "pq=", "sq=", "rq=",
                          "ap50=", "tp=", "fp=", "fn="}) {
    EXPECT_NE(records.find(std::string("\n") + key), std::string::npos)
        << key << records;
  }
  const Result text =
      Invoke({"eval2d", "--map", Path("e.pndt"), "--dataset", Path("ds")});
  ASSERT_EQ(text.code, 0) << text.err;
  EXPECT_NE(text.out.find("mIoU"), std::string::npos) << text.out;
  EXPECT_NE(text.out.find("AP50"), std::string::npos) << text.out;

  const Result r3 = Invoke({"eval3d", "--map", Path("e.pndt"), "--dataset",
                            Path("ds"), "--records", Path("e3d.txt")});
  ASSERT_EQ(r3.code, 0) << r3.err;
  EXPECT_NE(ReadFileBytes(Path("e3d.txt")).find("matched_fraction="),
            std::string::npos);
}

TEST_F(CliTest, DeterministicOutputs) {
  for (const char* name : {"a.pndt", "b.pndt"}) {
    ASSERT_EQ(Invoke({"map", "--dataset", Path("ds"), "--out", Path(name),
                      "--voxel-size", "0.1"})
                  .code,
              0);
  }
  EXPECT_EQ(ReadFileBytes(Path("a.pndt")), ReadFileBytes(Path("b.pndt")));
  for (const char* name : {"a.ply", "b.ply"}) {
    ASSERT_EQ(Invoke({"export-ply", "--map", Path("a.pndt"), "--out",
                      Path(name), "--mode", "panoptic"})
                  .code,
              0);
  }
  EXPECT_EQ(ReadFileBytes(Path("a.ply")), ReadFileBytes(Path("b.ply")));
  for (const char* name : {"a.pndt", "b.pndt"}) {
    ASSERT_EQ(Invoke({"eval2d", "--map", Path(name), "--dataset", Path("ds"),
                      "--records", Path(std::string(name) + ".txt")})
                  .code,
              0);
  }
  EXPECT_EQ(ReadFileBytes(Path("a.pndt.txt")),
            ReadFileBytes(Path("b.pndt.txt")));
}

TEST_F(CliTest, RenderWritesRasters) {
  ASSERT_EQ(Invoke({"map", "--dataset", Path("ds"), "--out", Path("r.pndt"),
                    "--voxel-size", "0.1"})
                .code,
            0);
  const Result r =
      Invoke({"render", "--map", Path("r.pndt"), "--dataset", Path("ds"),
              "--frame", "2", "--out", Path("render")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f :
       {"semantic.pgm", "panoptic_class.pgm", "instance.pgm", "depth.pgm"}) {
    const auto img = ReadPgm(std::filesystem::path(Path("render")) / f);
    EXPECT_EQ(img.width(), 160);
    EXPECT_EQ(img.height(), 120);
  }
}

TEST_F(CliTest, SimulateIsDeterministic) {
  for (const char* name : {"s1", "s2"}) {
    ASSERT_EQ(Invoke({"simulate", "--preset", "demo", "--frames", "2",
                      "--flip-prob", "0.2", "--depth-sigma", "0.01", "--seed",
                      "3", "--out", Path(name)})
                  .code,
              0);
  }
  for (const char* sub : {"depth", "semantic", "semantic_score"}) {
    const auto f = std::filesystem::path(sub) / "000001.pgm";
    EXPECT_EQ(ReadFileBytes(std::filesystem::path(Path("s1")) / f),
              ReadFileBytes(std::filesystem::path(Path("s2")) / f));
  }
}

}  // namespace
}  // namespace panmap

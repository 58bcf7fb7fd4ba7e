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

#include "panmap/panoptic_frame.h"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "test_util.h"

namespace panmap {
namespace {

using namespace ::panmap::testing;

Raster<ClassId> Row(std::initializer_list<ClassId> v) {
  Raster<ClassId> r(static_cast<int>(v.size()), 1);
  std::size_t i = 0;
  for (ClassId c : v) r[i++] = c;
  return r;
}

Raster<LocalInstanceId> InstRow(std::initializer_list<LocalInstanceId> v) {
  Raster<LocalInstanceId> r(static_cast<int>(v.size()), 1);
  std::size_t i = 0;
  for (LocalInstanceId z : v) r[i++] = z;
  return r;
}

TEST(MergePanopticTest, InstanceTakesModeClass) {
  const auto img = MergePanoptic(Row({kChair, kChair, kChair, kSofa, kSofa}),
                                 InstRow({5, 5, 5, 5, 5}), SmallTable());
  for (int u = 0; u < 5; ++u) {
    EXPECT_EQ(img.at(u, 0), (PanopticLabel2D{kChair, 5}));
  }
}

TEST(MergePanopticTest, StuffPixelWithoutInstance) {
  const auto img = MergePanoptic(Row({kWall}), InstRow({0}), SmallTable());
  EXPECT_EQ(img.at(0, 0), (PanopticLabel2D{kWall, 0}));
}

TEST(MergePanopticTest, StuffModeDissolvesInstance) {
  const auto img = MergePanoptic(Row({kFloor, kFloor, kChair}),
                                 InstRow({9, 9, 9}), SmallTable());
  EXPECT_EQ(img.at(0, 0), (PanopticLabel2D{kFloor, 0}));
  EXPECT_EQ(img.at(1, 0), (PanopticLabel2D{kFloor, 0}));
  EXPECT_EQ(img.at(2, 0), (PanopticLabel2D{kChair, 0}));
}

TEST(MergePanopticTest, VoidPixelsNeverJoin) {
  const auto img = MergePanoptic(Row({kVoidClass, kVoidClass, kTable}),
                                 InstRow({2, 2, 2}), SmallTable());
  EXPECT_EQ(img.at(0, 0), (PanopticLabel2D{kVoidClass, 0}));
  EXPECT_EQ(img.at(2, 0), (PanopticLabel2D{kTable, 2}));
}

TEST(MergePanopticTest, TieGoesToLowerClass) {
  const auto img =
      MergePanoptic(Row({kTable, kSofa}), InstRow({1, 1}), SmallTable());
  EXPECT_EQ(img.at(0, 0), (PanopticLabel2D{kSofa, 1}));
  EXPECT_EQ(img.at(1, 0), (PanopticLabel2D{kSofa, 1}));
}

TEST(MergePanopticTest, Errors) {
  EXPECT_THROW(MergePanoptic(Row({kWall, kWall}), InstRow({0}), SmallTable()),
               std::invalid_argument);
  EXPECT_THROW(MergePanoptic(Row({42}), InstRow({0}), SmallTable()),
               std::invalid_argument);
}

TEST(MergePanopticTest, ConsistencyAndIdempotenceProperty) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> cls(0, 5);
  std::uniform_int_distribution<int> inst(0, 4);
  const ClassTable t = SmallTable();
  for (int trial = 0; trial < 200; ++trial) {
    Raster<ClassId> sem(8, 6);
    Raster<LocalInstanceId> ins(8, 6);
    for (std::size_t i = 0; i < sem.size(); ++i) {
      sem[i] = static_cast<ClassId>(cls(rng));
      ins[i] = static_cast<LocalInstanceId>(inst(rng));
    }
    const PanopticImage a = MergePanoptic(sem, ins, t);
    std::map<LocalInstanceId, ClassId> class_of;
    for (std::size_t i = 0; i < sem.size(); ++i) {
      const LocalInstanceId z = a.instance_id[i];
      if (z == 0) continue;
      EXPECT_TRUE(t.IsThing(a.class_id[i]));
      auto [it, fresh] = class_of.emplace(z, a.class_id[i]);
      EXPECT_EQ(it->second, a.class_id[i]);
    }
    const PanopticImage b = MergePanoptic(a.class_id, a.instance_id, t);
    EXPECT_EQ(a.class_id, b.class_id);
    EXPECT_EQ(a.instance_id, b.instance_id);
  }
}

TEST(PanopticScoreTest, Product) {
  Raster<double> s(3, 1), z(3, 1);
  s[0] = 1.0;
  z[0] = 1.0;
  s[1] = 0.8;
  z[1] = 0.5;
  s[2] = 0.0;
  z[2] = 0.7;
  const Raster<double> p = PanopticScore(s, z, 3, 1);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  EXPECT_DOUBLE_EQ(p[1], 0.4);
  EXPECT_DOUBLE_EQ(p[2], 0.0);
  const Raster<double> ones = PanopticScore({}, {}, 2, 2);
  for (double v : ones.pixels()) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(PanopticFrameTest, ValidateChecksShapesAndScores) {
  PanopticFrame f =
      FlatFrame(Intrinsics{100, 100, 1.5, 1.0, 4, 3}, Pose(), 1.0, kWall);
  EXPECT_NO_THROW(f.Validate());
  f.semantic_score = Raster<double>(4, 3, 1.5);
  EXPECT_THROW(f.Validate(), std::invalid_argument);
  f.semantic_score = Raster<double>(4, 2, 1.0);
  EXPECT_THROW(f.Validate(), std::invalid_argument);
  f.semantic_score = {};
  f.depth = Raster<double>(3, 3, 1.0);
  EXPECT_THROW(f.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace panmap

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

#include "panmap/map_integrator.h"

#include <gtest/gtest.h>

#include <set>

#include "panmap/label_propagation.h"
#include "panmap/scene_simulator.h"
#include "test_util.h"

namespace panmap {
namespace {

using namespace ::panmap::testing;

// 3 x 1 frame of chair pixels, all mapped to one voxel.
struct Fixture {
  Fixture() : map(0.1, SmallTable()) {
    frame = FlatFrame(Intrinsics{100.0, 100.0, 0.0, 0.0, 3, 1}, Pose(), 1.05,
                      kChair);
    for (std::size_t i = 0; i < 3; ++i) frame.instance[i] = 1;
    cache = ForwardMap(frame, map, 20.0);
    labels = MergePanoptic(frame.semantic, frame.instance, map.class_table());
    decisions[1] = MatchDecision{1, MatchOutcome::kNew, 11, 0.0};
  }
  NdtVoxel& voxel() { return map.voxel(cache.touched.front()); }

  PanopticMap map;
  PanopticFrame frame;
  FrameVoxelCache cache;
  PanopticImage labels;
  MatchDecisions decisions;
};

TEST(UpdateInstancesTest, ScoreAtThresholdIsRejected) {
  Fixture f;
  const Raster<double> score(3, 1, 0.4);
  EXPECT_EQ(UpdateInstances(f.map, f.labels, score, f.cache, f.decisions, 0.4),
            0u);
  EXPECT_TRUE(f.voxel().instances.empty());
  EXPECT_EQ(f.voxel().instance_updates, 0u);
}

TEST(UpdateInstancesTest, IgnoredInstanceIsSkipped) {
  Fixture f;
  f.decisions[1] = MatchDecision{1, MatchOutcome::kIgnored, kNoInstance, 0.15};
  const Raster<double> score(3, 1, 1.0);
  EXPECT_EQ(UpdateInstances(f.map, f.labels, score, f.cache, f.decisions, 0.1),
            0u);
  EXPECT_TRUE(f.voxel().instances.empty());
}

TEST(UpdateInstancesTest, AccumulatesScores) {
  Fixture f;
  Raster<double> score(3, 1);
  score[0] = 0.9;
  score[1] = 0.8;
  score[2] = 0.7;
  EXPECT_EQ(UpdateInstances(f.map, f.labels, score, f.cache, f.decisions, 0.1),
            3u);
  EXPECT_NEAR(f.voxel().instances.mass(11), 2.4, 1e-12);
  EXPECT_EQ(f.voxel().instance_updates, 3u);
}

TEST(UpdateSemanticsTest, StrictScoreGate) {
  Fixture f;
  f.frame.semantic_score = Raster<double>(3, 1, 0.7);
  f.frame.semantic_score[2] = 0.71;
  EXPECT_EQ(UpdateSemantics(f.map, f.labels, f.frame, f.cache, 0.7), 1u);
  EXPECT_NEAR(f.voxel().semantic.mass(kChair), 0.71, 1e-12);
  EXPECT_EQ(f.voxel().semantic_updates, 1u);
}

TEST(UpdateSemanticsTest, VoidPixelsNeverUpdate) {
  Fixture f;
  f.frame.semantic = Raster<ClassId>(3, 1, kVoidClass);
  f.labels =
      MergePanoptic(f.frame.semantic, f.frame.instance, f.map.class_table());
  EXPECT_EQ(UpdateSemantics(f.map, f.labels, f.frame, f.cache, 0.0), 0u);
  EXPECT_TRUE(f.voxel().semantic.empty());
}

TEST(ProcessFrameTest, TenChairPixelsInOneVoxel) {
  PanopticMap map(0.1, SmallTable());
  PanopticFrame frame = FlatFrame(Intrinsics{1000.0, 1000.0, 0.0, 0.0, 10, 1},
                                  Pose(), 1.05, kChair);
  MappingParams params;
  const FrameStats stats = ProcessFrame(map, frame, params);
  EXPECT_EQ(stats.pixels_integrated, 10u);
  EXPECT_EQ(stats.semantic_updates, 10u);
  const NdtVoxel* v = map.Find(Eigen::Vector3d(0.0, 0.0, 1.05));
  ASSERT_NE(v, nullptr);
  EXPECT_DOUBLE_EQ(v->semantic.mass(kChair), 10.0);
  EXPECT_EQ(v->semantic_updates, 10u);
  EXPECT_EQ(map.frame_counter(), 1u);
}

TEST(ProcessFrameTest, EmptyFrame) {
  PanopticMap map(0.1, SmallTable());
  const PanopticFrame frame =
      FlatFrame(Intrinsics{100.0, 100.0, 3.5, 3.5, 8, 8}, Pose(), 0.0, kWall);
  const FrameStats stats = ProcessFrame(map, frame, MappingParams());
  EXPECT_EQ(stats.pixels_integrated, 0u);
  EXPECT_EQ(stats.voxels_touched, 0u);
  EXPECT_EQ(stats.instances_new + stats.instances_matched, 0u);
  EXPECT_EQ(stats.semantic_updates, 0u);
  EXPECT_EQ(map.size(), 0u);
}

TEST(ProcessFrameTest, RejectsMismatchedVoxelSize) {
  PanopticMap map(0.1, SmallTable());
  MappingParams params;
  params.voxel_size = 0.05;
  EXPECT_THROW(
      ProcessFrame(map, FlatFrame(Camera100(), Pose(), 1.0, kWall), params),
      std::invalid_argument);
}

SceneSpec OneBoxScene() {
  SceneSpec s;
  s.classes = SmallTable();
  s.room.bounds = Box{{-3.0, -3.0, 0.0}, {3.0, 3.0, 3.0}};
  s.room.wall = kWall;
  s.room.floor = kFloor;
  s.room.ceiling = kWall;
  s.objects.push_back(
      SceneObject{Box{{-0.3, -0.3, 0.0}, {0.3, 0.3, 0.6}}, kChair, 1});
  s.intrinsics = Intrinsics{80.0, 80.0, 39.5, 29.5, 80, 60};
  s.trajectory = Orbit({0.0, 0.0, 0.3}, 1.8, 1.2, 8);
  s.Validate();
  return s;
}

std::set<GlobalId> InstanceIds(const PanopticMap& map,
                               const MappingParams& params) {
  std::set<GlobalId> ids;
  for (const auto& r : ExportLabels(map, params)) {
    if (r.label.instance_id != kNoInstance) ids.insert(r.label.instance_id);
  }
  return ids;
}

TEST(ProcessFrameTest, SingleObjectGetsSingleId) {
  const SceneSpec scene = OneBoxScene();
  MappingParams params;
  PanopticMap map(params.voxel_size, scene.classes);
  std::size_t created = 0;
  for (std::size_t i = 0; i < scene.frame_count(); ++i) {
    created += ProcessFrame(map, RaycastFrame(scene, i, 5).frame, params)
                   .instances_new;
  }
  EXPECT_EQ(created, 1u);
  EXPECT_EQ(InstanceIds(map, params), std::set<GlobalId>{1});
}

TEST(ProcessFrameTest, RepeatedFrameAllocatesNoIds) {
  const SceneSpec scene = OneBoxScene();
  MappingParams params;
  PanopticMap map(params.voxel_size, scene.classes);
  const PanopticFrame frame = RaycastFrame(scene, 0).frame;
  ProcessFrame(map, frame, params);
  const GlobalId next = map.next_global_id();
  for (int i = 0; i < 3; ++i) {
    const FrameStats stats = ProcessFrame(map, frame, params);
    EXPECT_EQ(stats.instances_new, 0u);
    EXPECT_EQ(stats.instances_matched, 1u);
  }
  EXPECT_EQ(map.next_global_id(), next);
}

TEST(MappingParamsTest, Validate) {
  EXPECT_NO_THROW(MappingParams().Validate());
  EXPECT_NO_THROW(MappingParams::ApplicationProfile().Validate());
  MappingParams p;
  p.theta_match = 0.05;
  p.theta_new = 0.1;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = MappingParams();
  p.theta_semantic = 1.5;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = MappingParams();
  p.voxel_size = 0.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = MappingParams();
  p.k_sigma = -1.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

TEST(MappingParamsTest, Defaults) {
  const MappingParams p;
  EXPECT_DOUBLE_EQ(p.theta_stuff, 0.9);
  EXPECT_DOUBLE_EQ(p.theta_match, 0.2);
  EXPECT_DOUBLE_EQ(p.theta_new, 0.1);
  EXPECT_DOUBLE_EQ(p.theta_backproject, 0.8);
  EXPECT_DOUBLE_EQ(p.theta_semantic, 0.7);
  EXPECT_DOUBLE_EQ(p.theta_observation, 0.25);
  EXPECT_DOUBLE_EQ(p.max_depth, 20.0);
  const MappingParams a = MappingParams::ApplicationProfile();
  EXPECT_DOUBLE_EQ(a.theta_match, 0.3);
  EXPECT_DOUBLE_EQ(a.theta_new, 0.2);
}

}  // namespace
}  // namespace panmap

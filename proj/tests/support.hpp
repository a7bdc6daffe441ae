/*
 * Copyright (C) 2026 The rmtrack authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#pragma once

#include <rmtrack/instance.hpp>
#include <rmtrack/planner.hpp>

#include <filesystem>
#include <random>
#include <string>

namespace rmtrack::test {

inline std::string data_path(const std::string& rel)
{
  return std::string(RMTRACK_DATA_DIR) + "/" + rel;
}

inline Instance bundled(const std::string& name)
{
  return read_instance_file(data_path("instances/" + name + ".json"));
}

inline Instance with_radius(Instance inst, double r)
{
  inst.radius = r;
  return inst;
}

inline Instance make_instance(std::vector<std::vector<Point>> trajs, double radius,
                              Rect bounds = {-50, -50, 50, 50})
{
  Instance inst;
  inst.name = "handmade";
  inst.radius = radius;
  inst.workspace.bounds = bounds;
  for (auto& t : trajs)
    inst.trajectories.emplace_back(std::move(t));
  return inst;
}

/// Straight east-bound line from (x0, y) taking `steps` unit steps, then
/// holding until `horizon`.
inline std::vector<Point> line(double x0, double y, int steps, int horizon)
{
  std::vector<Point> pts;
  for (int t = 0; t <= horizon; ++t)
    pts.push_back(Point{x0 + std::min(t, steps), y});
  return pts;
}

inline Instance plan_on_map(const std::string& map, std::size_t n,
                            std::uint64_t seed, double radius = 0.3)
{
  const MapFile m = parse_map(read_text_file(data_path("maps/" + map + ".map")));
  ProblemSpec spec;
  spec.name = m.name + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
  spec.workspace = m.workspace;
  spec.n = n;
  spec.radius = radius;
  spec.cell_size = m.scale;
  spec.max_speed = m.scale;
  spec.seed = seed;
  return prioritized_plan(spec);
}

inline std::filesystem::path scratch_dir(const std::string& tag)
{
  auto dir = std::filesystem::temp_directory_path()
      / ("rmtrack-" + tag + "-" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace rmtrack::test

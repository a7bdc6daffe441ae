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

#include <rmtrack/instance.hpp>

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rmtrack {

namespace {

constexpr double speed_tolerance = 1e-9;

} // anonymous namespace

//==============================================================================
Trajectory::Trajectory(std::vector<Point> points)
  : _points(std::move(points))
{
  if (_points.empty())
    throw std::invalid_argument("trajectory must contain at least one point");

  PlanPos k = horizon();
  while (k > 0 && _points[k-1] == _points.back())
    --k;
  _completion = k;
}

//==============================================================================
Point Trajectory::at(PlanPos k) const
{
  if (k < 0)
    throw std::out_of_range("negative plan position");
  if (k > horizon())
    return _points.back();
  return _points[k];
}

//==============================================================================
PlanPos Instance::horizon() const
{
  if (trajectories.empty())
    return 0;
  return trajectories.front().horizon();
}

//==============================================================================
Point position_of(const Instance& inst, std::size_t robot, PlanPos x)
{
  if (robot >= inst.robot_count())
    throw std::out_of_range(fmt::format("robot index {} out of range", robot));
  const auto& traj = inst.trajectories[robot];
  if (x < 0 || x > traj.horizon())
    throw std::out_of_range(fmt::format(
        "plan position {} outside 0..{}", x, traj.horizon()));
  return traj.points()[x];
}

//==============================================================================
const char* to_string(Violation::Kind kind)
{
  switch (kind)
  {
    case Violation::Kind::NoRobots: return "no_robots";
    case Violation::Kind::BadRadius: return "bad_radius";
    case Violation::Kind::BadTimestep: return "bad_timestep";
    case Violation::Kind::DegenerateBounds: return "degenerate_bounds";
    case Violation::Kind::ObstacleNotSimple: return "obstacle_not_simple";
    case Violation::Kind::ObstacleOutOfBounds: return "obstacle_out_of_bounds";
    case Violation::Kind::HorizonMismatch: return "horizon_mismatch";
    case Violation::Kind::SpeedBound: return "speed_bound";
    case Violation::Kind::ObstacleClearance: return "obstacle_clearance";
    case Violation::Kind::PlannedCollision: return "planned_collision";
  }
  return "unknown";
}

//==============================================================================
std::string ValidationReport::summary() const
{
  if (violations.empty())
    return "ok";

  std::string out;
  for (const auto& v : violations)
  {
    out += fmt::format("{} (t={}, i={}, j={}): {}\n",
                       to_string(v.kind), v.t, v.i, v.j, v.message);
  }
  return out;
}

//==============================================================================
ValidationReport validate_instance(const Instance& inst)
{
  using Kind = Violation::Kind;
  ValidationReport report;
  auto add = [&](Kind kind, int t, int i, int j, std::string msg)
  {
    report.violations.push_back(Violation{kind, t, i, j, std::move(msg)});
  };

  if (!(inst.radius >= 0.0))
    add(Kind::BadRadius, -1, -1, -1, "radius must be non-negative");
  if (!(inst.timestep > 0.0) || !(inst.max_speed > 0.0))
    add(Kind::BadTimestep, -1, -1, -1, "timestep and max speed must be positive");

  const auto& ws = inst.workspace;
  if (ws.bounds.degenerate())
    add(Kind::DegenerateBounds, -1, -1, -1, "workspace bounds are degenerate");

  for (std::size_t k = 0; k < ws.obstacles.size(); ++k)
  {
    const auto& poly = ws.obstacles[k];
    if (!is_simple(poly))
      add(Kind::ObstacleNotSimple, -1, static_cast<int>(k), -1,
          fmt::format("obstacle {} is not a simple polygon", k));
    const bool inside = std::all_of(
        poly.vertices.begin(), poly.vertices.end(),
        [&](Point p) { return ws.bounds.contains(p); });
    if (!inside)
      add(Kind::ObstacleOutOfBounds, -1, static_cast<int>(k), -1,
          fmt::format("obstacle {} leaves the workspace bounds", k));
  }

  const std::size_t n = inst.robot_count();
  if (n == 0)
  {
    add(Kind::NoRobots, -1, -1, -1, "instance has no trajectories");
    return report;
  }

  const PlanPos T = inst.horizon();
  bool lengths_ok = true;
  for (std::size_t i = 0; i < n; ++i)
  {
    if (inst.trajectories[i].horizon() != T)
    {
      lengths_ok = false;
      add(Kind::HorizonMismatch, -1, static_cast<int>(i), -1,
          fmt::format("trajectory {} has horizon {}, expected {}",
                      i, inst.trajectories[i].horizon(), T));
    }
  }
  if (!lengths_ok)
    return report;

  const double max_step = inst.max_step_length();
  for (std::size_t i = 0; i < n; ++i)
  {
    const auto& pts = inst.trajectories[i].points();
    for (PlanPos t = 0; t < T; ++t)
    {
      const double step = distance(pts[t], pts[t+1]);
      if (step > max_step + speed_tolerance)
        add(Kind::SpeedBound, t, static_cast<int>(i), -1,
            fmt::format("step length {} exceeds {}", step, max_step));
    }
  }

  for (std::size_t i = 0; i < n; ++i)
  {
    const auto& pts = inst.trajectories[i].points();
    for (PlanPos t = 0; t <= T; ++t)
    {
      for (std::size_t k = 0; k < ws.obstacles.size(); ++k)
      {
        const double d = distance_to_polygon(pts[t], ws.obstacles[k]);
        if (d < inst.radius)
          add(Kind::ObstacleClearance, t, static_cast<int>(i),
              static_cast<int>(k),
              fmt::format("clearance {} to obstacle {} below radius", d, k));
      }
    }
  }

  for (PlanPos t = 0; t <= T; ++t)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = i + 1; j < n; ++j)
      {
        const Point a = inst.trajectories[i].points()[t];
        const Point b = inst.trajectories[j].points()[t];
        if (discs_overlap(a, b, inst.radius))
          add(Kind::PlannedCollision, t, static_cast<int>(i),
              static_cast<int>(j),
              fmt::format("planned distance {} below 2r = {}",
                          distance(a, b), 2.0*inst.radius));
      }
    }
  }

  return report;
}

//==============================================================================
ValidationError::ValidationError(ValidationReport report)
  : std::runtime_error(
      report.violations.empty()
        ? std::string("invalid instance")
        : fmt::format("invalid instance: {} at t={}, i={}, j={}: {}",
                      to_string(report.violations.front().kind),
                      report.violations.front().t,
                      report.violations.front().i,
                      report.violations.front().j,
                      report.violations.front().message)),
    _report(std::move(report))
{
}

//==============================================================================
namespace {

Point parse_point(const nlohmann::json& j)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a point [x, y]");
  return Point{j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point> parse_points(const nlohmann::json& j)
{
  if (!j.is_array())
    throw ParseError("expected a list of points");
  std::vector<Point> out;
  out.reserve(j.size());
  for (const auto& p : j)
    out.push_back(parse_point(p));
  return out;
}

double number_field(const nlohmann::json& j, const char* key, double fallback)
{
  if (!j.contains(key))
    return fallback;
  if (!j.at(key).is_number())
    throw ParseError(fmt::format("field '{}' must be a number", key));
  return j.at(key).get<double>();
}

std::string point_text(Point p)
{
  return fmt::format("[{},{}]", p.x, p.y);
}

std::string points_text(const std::vector<Point>& pts)
{
  std::string out = "[";
  for (std::size_t k = 0; k < pts.size(); ++k)
  {
    if (k > 0)
      out += ",";
    out += point_text(pts[k]);
  }
  return out + "]";
}

} // anonymous namespace

//==============================================================================
Instance parse_instance(std::string_view text)
{
  nlohmann::json doc;
  try
  {
    doc = nlohmann::json::parse(text);
  }
  catch (const nlohmann::json::parse_error& e)
  {
    throw ParseError(e.what());
  }

  if (!doc.is_object())
    throw ParseError("instance document must be an object");

  for (const char* key : {"radius", "workspace", "trajectories"})
  {
    if (!doc.contains(key))
      throw ParseError(fmt::format("missing field '{}'", key));
  }

  Instance inst;
  if (doc.contains("name"))
  {
    if (!doc["name"].is_string())
      throw ParseError("field 'name' must be a string");
    inst.name = doc["name"].get<std::string>();
  }
  inst.radius = number_field(doc, "radius", 0.0);
  inst.timestep = number_field(doc, "timestep", 1.0);
  inst.max_speed = number_field(doc, "max_speed", 1.0);

  const auto& ws = doc["workspace"];
  if (!ws.is_object() || !ws.contains("bounds"))
    throw ParseError("workspace must be an object with 'bounds'");
  const auto& b = ws["bounds"];
  if (!b.is_array() || b.size() != 4)
    throw ParseError("bounds must be [xmin, ymin, xmax, ymax]");
  for (const auto& v : b)
  {
    if (!v.is_number())
      throw ParseError("bounds must be numeric");
  }
  inst.workspace.bounds = Rect{b[0].get<double>(), b[1].get<double>(),
                               b[2].get<double>(), b[3].get<double>()};
  if (ws.contains("obstacles"))
  {
    if (!ws["obstacles"].is_array())
      throw ParseError("obstacles must be a list of polygons");
    for (const auto& poly : ws["obstacles"])
      inst.workspace.obstacles.push_back(Polygon{parse_points(poly)});
  }

  const auto& trajs = doc["trajectories"];
  if (!trajs.is_array())
    throw ParseError("trajectories must be a list");
  for (const auto& traj : trajs)
  {
    auto pts = parse_points(traj);
    if (pts.empty())
      throw ParseError("trajectory must contain at least one point");
    inst.trajectories.emplace_back(std::move(pts));
  }

  return inst;
}

//==============================================================================
Instance load_instance(std::string_view text)
{
  Instance inst = parse_instance(text);
  auto report = validate_instance(inst);
  if (!report.ok())
    throw ValidationError(std::move(report));
  return inst;
}

//==============================================================================
std::string save_instance(const Instance& inst)
{
  const auto& b = inst.workspace.bounds;
  std::string out = "{\n";
  out += fmt::format("  \"name\": {},\n", nlohmann::json(inst.name).dump());
  out += fmt::format("  \"radius\": {},\n", inst.radius);
  out += fmt::format("  \"timestep\": {},\n", inst.timestep);
  out += fmt::format("  \"max_speed\": {},\n", inst.max_speed);
  out += "  \"workspace\": {\n";
  out += fmt::format("    \"bounds\": [{},{},{},{}],\n",
                     b.xmin, b.ymin, b.xmax, b.ymax);
  out += "    \"obstacles\": [";
  for (std::size_t k = 0; k < inst.workspace.obstacles.size(); ++k)
  {
    out += k == 0 ? "\n      " : ",\n      ";
    out += points_text(inst.workspace.obstacles[k].vertices);
  }
  out += inst.workspace.obstacles.empty() ? "]\n" : "\n    ]\n";
  out += "  },\n";
  out += "  \"trajectories\": [";
  for (std::size_t i = 0; i < inst.trajectories.size(); ++i)
  {
    out += i == 0 ? "\n    " : ",\n    ";
    out += points_text(inst.trajectories[i].points());
  }
  out += inst.trajectories.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

//==============================================================================
std::string read_text_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

//==============================================================================
void write_text_file(const std::string& path, std::string_view content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

//==============================================================================
Instance read_instance_file(const std::string& path)
{
  return load_instance(read_text_file(path));
}

} // namespace rmtrack

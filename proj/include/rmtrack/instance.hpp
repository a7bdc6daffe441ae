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

#include <rmtrack/geometry.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmtrack {

/// Index of a step along a planned trajectory, in 0..T.
using PlanPos = int;

struct Workspace
{
  Rect bounds;
  std::vector<Polygon> obstacles;
};

/// Discrete-time trajectory sampled at every timestep 0..T. The robot holds
/// its final position after completion_index().
class Trajectory
{
public:
  Trajectory() = default;
  explicit Trajectory(std::vector<Point> points);

  const std::vector<Point>& points() const { return _points; }
  PlanPos horizon() const { return static_cast<PlanPos>(_points.size()) - 1; }

  /// Smallest index k such that points[k'] == points[k] for every k' >= k.
  PlanPos completion_index() const { return _completion; }

  /// Positions past the horizon evaluate to the final point.
  Point at(PlanPos k) const;

private:
  std::vector<Point> _points;
  PlanPos _completion = 0;
};

struct Instance
{
  std::string name;
  double radius = 0.0;
  double timestep = 1.0;
  double max_speed = 1.0;
  Workspace workspace;
  std::vector<Trajectory> trajectories;

  std::size_t robot_count() const { return trajectories.size(); }

  /// Common horizon T. Zero for an empty instance.
  PlanPos horizon() const;

  double max_step_length() const { return max_speed*timestep; }
};

/// pi_i(x). Throws std::out_of_range for a bad robot index or x outside 0..T.
Point position_of(const Instance& inst, std::size_t robot, PlanPos x);

struct Violation
{
  enum class Kind
  {
    NoRobots,
    BadRadius,
    BadTimestep,
    DegenerateBounds,
    ObstacleNotSimple,
    ObstacleOutOfBounds,
    HorizonMismatch,
    SpeedBound,
    ObstacleClearance,
    PlannedCollision,
  };

  Kind kind;
  int t = -1;
  int i = -1;
  int j = -1;
  std::string message;
};

const char* to_string(Violation::Kind kind);

struct ValidationReport
{
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_instance(const Instance& inst);

class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error
{
public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return _report; }

private:
  ValidationReport _report;
};

/// Parses and validates an instance document. Throws ParseError or
/// ValidationError.
Instance load_instance(std::string_view text);

/// Parses without validating.
Instance parse_instance(std::string_view text);

std::string save_instance(const Instance& inst);

Instance read_instance_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

} // namespace rmtrack

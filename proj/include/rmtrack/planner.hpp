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

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rmtrack {

struct Cell
{
  int col = 0;
  int row = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Grid moves in tie-break order.
enum class Move { East, North, West, South, Wait };

Cell apply(Cell c, Move m);

/// 4-connected lattice over the workspace bounds. Lattice points sit at
/// bounds.min + k * cell_size, boundaries included.
class Roadmap
{
public:
  Roadmap() = default;
  Roadmap(Rect bounds, double cell_size, int cols, int rows,
          std::vector<std::uint8_t> free);

  int cols() const { return _cols; }
  int rows() const { return _rows; }
  double cell_size() const { return _cell_size; }
  std::size_t size() const { return _free.size(); }

  bool in_grid(Cell c) const;
  bool is_free(Cell c) const;
  std::size_t index(Cell c) const;
  Cell cell(std::size_t index) const;
  Point center(Cell c) const;

  std::size_t free_count() const;
  std::vector<Cell> free_cells() const;

  /// Connected-component labels of free, unblocked cells; -1 elsewhere.
  /// `blocked` is indexed like the grid and may be empty.
  std::vector<int> components(const std::vector<std::uint8_t>& blocked = {}) const;
  std::size_t component_count() const;

  /// True when goal is reachable from start through free cells outside
  /// `blocked`.
  bool connected(Cell start, Cell goal,
                 const std::vector<std::uint8_t>& blocked = {}) const;

private:
  Rect _bounds;
  double _cell_size = 1.0;
  int _cols = 0;
  int _rows = 0;
  std::vector<std::uint8_t> _free;
};

/// A lattice point is free iff it clears every obstacle by at least `radius`.
/// Throws std::invalid_argument for degenerate bounds, a non-positive cell
/// size, or a cell size above `max_step`.
Roadmap build_roadmap(const Workspace& ws, double radius, double cell_size,
                      double max_step = 1.0);

/// Radius used for planning so that executing at `radius` keeps a one-step
/// margin around the diagonal of every pair: radius + max_step / 2.
double inflate_radius(double radius, double max_step = 1.0);

/// Trajectories already committed by higher-priority robots (each held at its
/// last point afterwards) and positions occupied for the whole plan by robots
/// not yet planned.
struct SpaceTimeObstacles
{
  std::vector<std::vector<Point>> committed;
  std::vector<Point> parked;
};

/// Minimum-arrival-time path through the space-time lattice, one cell per
/// timestep. Each visited (cell, t) keeps its disc of `plan_radius` clear of
/// every obstacle disc (distance > 2 * plan_radius), and the robot can hold at
/// the goal from its arrival onwards. Among minimum-arrival paths the search
/// prefers fewer moves, then places waits as early as possible, then breaks
/// ties by move order East, North, West, South, walking back from the goal.
///
/// Returns std::nullopt when no path exists within `step_budget` steps (0
/// picks a budget large enough for the lattice to settle).
std::optional<std::vector<Cell>> spacetime_shortest_path(
    const Roadmap& roadmap, Cell start, Cell goal,
    const SpaceTimeObstacles& obstacles, double plan_radius,
    int step_budget = 0);

class PlanningError : public std::runtime_error
{
public:
  PlanningError(int robot, const std::string& what)
    : std::runtime_error(what), _robot(robot) {}

  /// Index of the robot that could not be planned, or -1 when endpoint
  /// sampling failed.
  int robot() const { return _robot; }

private:
  int _robot;
};

using Endpoints = std::vector<std::pair<Cell, Cell>>;

struct ProblemSpec
{
  std::string name = "instance";
  Workspace workspace;
  std::size_t n = 1;
  double radius = 0.3;
  double cell_size = 1.0;
  double timestep = 1.0;
  double max_speed = 1.0;
  std::uint64_t seed = 0;
  /// Explicit (origin, destination) pairs; sampled when empty.
  Endpoints endpoints;
  int sample_attempts = 2000;

  double max_step() const { return max_speed*timestep; }
};

/// Every robot's origin can reach its destination on the roadmap while the
/// discs (radius 2 * plan_radius) around all other robots' endpoints are
/// removed, and endpoints of distinct robots are more than 2 * plan_radius
/// apart.
bool is_well_formed(const Roadmap& roadmap, const Endpoints& endpoints,
                    double plan_radius);

/// Draws well-formed endpoints from the free cells. Throws PlanningError
/// with robot -1 when the attempt budget runs out.
Endpoints sample_endpoints(const Roadmap& roadmap, const ProblemSpec& spec);

/// Plans robots in index order, each avoiding the trajectories of the robots
/// before it and the origins of the robots after it, and pads every path to
/// the common horizon. Throws PlanningError naming the failing robot.
Instance prioritized_plan(const ProblemSpec& spec);

struct MapFile
{
  std::string name;
  double scale = 1.0;
  Workspace workspace;
  int cols = 0;
  int rows = 0;
};

/// Text grid map: an optional `name <id>` line, a `scale <meters>` line, then
/// rows of '.' (free) and '#' (obstacle). The first grid row is the top of
/// the map. Lines starting with ';' are comments.
MapFile parse_map(std::string_view text);

} // namespace rmtrack

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

#include <rmtrack/planner.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

namespace rmtrack {

namespace {

constexpr Move grid_moves[] = {Move::East, Move::North, Move::West, Move::South};

Move opposite(Move m)
{
  switch (m)
  {
    case Move::East: return Move::West;
    case Move::North: return Move::South;
    case Move::West: return Move::East;
    case Move::South: return Move::North;
    case Move::Wait: return Move::Wait;
  }
  return m;
}

} // anonymous namespace

//==============================================================================
Cell apply(Cell c, Move m)
{
  switch (m)
  {
    case Move::East: return Cell{c.col + 1, c.row};
    case Move::North: return Cell{c.col, c.row + 1};
    case Move::West: return Cell{c.col - 1, c.row};
    case Move::South: return Cell{c.col, c.row - 1};
    case Move::Wait: return c;
  }
  return c;
}

//==============================================================================
Roadmap::Roadmap(Rect bounds, double cell_size, int cols, int rows,
                 std::vector<std::uint8_t> free)
  : _bounds(bounds),
    _cell_size(cell_size),
    _cols(cols),
    _rows(rows),
    _free(std::move(free))
{
  if (_free.size() != static_cast<std::size_t>(cols)*static_cast<std::size_t>(rows))
    throw std::invalid_argument("roadmap occupancy has the wrong size");
}

bool Roadmap::in_grid(Cell c) const
{
  return c.col >= 0 && c.row >= 0 && c.col < _cols && c.row < _rows;
}

bool Roadmap::is_free(Cell c) const
{
  return in_grid(c) && _free[index(c)];
}

std::size_t Roadmap::index(Cell c) const
{
  return static_cast<std::size_t>(c.row)*static_cast<std::size_t>(_cols)
      + static_cast<std::size_t>(c.col);
}

Cell Roadmap::cell(std::size_t index) const
{
  return Cell{static_cast<int>(index % _cols), static_cast<int>(index / _cols)};
}

Point Roadmap::center(Cell c) const
{
  return Point{_bounds.xmin + c.col*_cell_size, _bounds.ymin + c.row*_cell_size};
}

std::size_t Roadmap::free_count() const
{
  return static_cast<std::size_t>(std::count(_free.begin(), _free.end(), 1));
}

std::vector<Cell> Roadmap::free_cells() const
{
  std::vector<Cell> out;
  for (std::size_t k = 0; k < _free.size(); ++k)
  {
    if (_free[k])
      out.push_back(cell(k));
  }
  return out;
}

//==============================================================================
std::vector<int> Roadmap::components(const std::vector<std::uint8_t>& blocked) const
{
  auto open = [&](Cell c)
  {
    return is_free(c) && (blocked.empty() || !blocked[index(c)]);
  };

  std::vector<int> label(_free.size(), -1);
  int next = 0;
  std::deque<Cell> queue;
  for (std::size_t k = 0; k < _free.size(); ++k)
  {
    const Cell seed = cell(k);
    if (label[k] >= 0 || !open(seed))
      continue;

    label[k] = next;
    queue.push_back(seed);
    while (!queue.empty())
    {
      const Cell c = queue.front();
      queue.pop_front();
      for (Move m : grid_moves)
      {
        const Cell nb = apply(c, m);
        if (open(nb) && label[index(nb)] < 0)
        {
          label[index(nb)] = next;
          queue.push_back(nb);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t Roadmap::component_count() const
{
  const auto label = components();
  int count = 0;
  for (int l : label)
    count = std::max(count, l + 1);
  return static_cast<std::size_t>(count);
}

bool Roadmap::connected(Cell start, Cell goal,
                        const std::vector<std::uint8_t>& blocked) const
{
  const auto label = components(blocked);
  if (!in_grid(start) || !in_grid(goal))
    return false;
  const int a = label[index(start)];
  return a >= 0 && a == label[index(goal)];
}

//==============================================================================
Roadmap build_roadmap(const Workspace& ws, double radius, double cell_size,
                      double max_step)
{
  if (ws.bounds.degenerate())
    throw std::invalid_argument("cannot build a roadmap over degenerate bounds");
  if (!(cell_size > 0.0))
    throw std::invalid_argument("cell size must be positive");
  if (cell_size > max_step + 1e-12)
    throw std::invalid_argument(fmt::format(
        "cell size {} exceeds the per-step travel limit {}", cell_size, max_step));

  const auto& b = ws.bounds;
  const int cols = static_cast<int>(std::floor((b.xmax - b.xmin)/cell_size + 1e-9)) + 1;
  const int rows = static_cast<int>(std::floor((b.ymax - b.ymin)/cell_size + 1e-9)) + 1;

  std::vector<std::uint8_t> free(static_cast<std::size_t>(cols)*rows, 1);
  for (int r = 0; r < rows; ++r)
  {
    for (int c = 0; c < cols; ++c)
    {
      const Point p{b.xmin + c*cell_size, b.ymin + r*cell_size};
      for (const auto& poly : ws.obstacles)
      {
        if (distance_to_polygon(p, poly) < radius || point_in_polygon(p, poly))
        {
          free[static_cast<std::size_t>(r)*cols + c] = 0;
          break;
        }
      }
    }
  }
  return Roadmap(b, cell_size, cols, rows, std::move(free));
}

//==============================================================================
double inflate_radius(double radius, double max_step)
{
  return radius + max_step/2.0;
}

//==============================================================================
namespace {

bool too_close(Point a, Point b, double plan_radius)
{
  const double reach = 2.0*plan_radius;
  return squared_distance(a, b) <= reach*reach;
}

Point committed_at(const std::vector<Point>& traj, int t)
{
  return traj[std::min<std::size_t>(static_cast<std::size_t>(t), traj.size() - 1)];
}

} // anonymous namespace

//==============================================================================
std::optional<std::vector<Cell>> spacetime_shortest_path(
    const Roadmap& roadmap, Cell start, Cell goal,
    const SpaceTimeObstacles& obstacles, double plan_radius, int step_budget)
{
  if (!roadmap.is_free(start) || !roadmap.is_free(goal))
    throw std::invalid_argument("start and goal must be free roadmap cells");

  // After `settle` every obstacle is static.
  int settle = 0;
  for (const auto& traj : obstacles.committed)
  {
    if (traj.empty())
      throw std::invalid_argument("committed trajectory is empty");
    settle = std::max(settle, static_cast<int>(traj.size()) - 1);
  }

  const std::size_t cells = roadmap.size();
  if (step_budget <= 0)
    step_budget = settle + 2*static_cast<int>(cells) + 2;

  auto safe = [&](Cell c, int t)
  {
    const Point p = roadmap.center(c);
    for (const auto& q : obstacles.parked)
    {
      if (too_close(p, q, plan_radius))
        return false;
    }
    for (const auto& traj : obstacles.committed)
    {
      if (too_close(p, committed_at(traj, t), plan_radius))
        return false;
    }
    return true;
  };

  // The robot may stop at the goal only after the last time anything comes
  // near it.
  for (const auto& q : obstacles.parked)
  {
    if (too_close(roadmap.center(goal), q, plan_radius))
      return std::nullopt;
  }
  int goal_busy_until = -1;
  for (int t = 0; t <= settle; ++t)
  {
    if (!safe(goal, t))
      goal_busy_until = t;
  }
  if (goal_busy_until == settle)
    return std::nullopt;

  if (!safe(start, 0))
    return std::nullopt;

  // moves[t][cell]: fewest moves to stand safely on cell at time t, -1 when
  // unreachable.
  std::vector<std::vector<int>> moves;
  moves.emplace_back(cells, -1);
  moves[0][roadmap.index(start)] = 0;

  int arrival = -1;
  if (start == goal && goal_busy_until < 0)
    arrival = 0;

  for (int t = 1; arrival < 0 && t <= step_budget; ++t)
  {
    const auto& prev = moves.back();
    std::vector<int> layer(cells, -1);
    for (std::size_t k = 0; k < cells; ++k)
    {
      const Cell c = roadmap.cell(k);
      if (!roadmap.is_free(c) || !safe(c, t))
        continue;

      int best = prev[k];
      for (Move m : grid_moves)
      {
        const Cell from = apply(c, m);
        if (!roadmap.is_free(from))
          continue;
        const int v = prev[roadmap.index(from)];
        if (v >= 0 && (best < 0 || v + 1 < best))
          best = v + 1;
      }
      layer[k] = best;
    }

    const bool stalled = t > settle + 1 && layer == prev;
    moves.push_back(std::move(layer));
    if (moves.back()[roadmap.index(goal)] >= 0 && t > goal_busy_until)
      arrival = t;
    else if (stalled)
      return std::nullopt;
  }

  if (arrival < 0)
    return std::nullopt;

  // Walk back from the goal. Preferring a move over a wait at every step
  // pushes waits towards the start of the path.
  std::vector<Cell> path(static_cast<std::size_t>(arrival) + 1);
  Cell c = goal;
  path[arrival] = c;
  for (int t = arrival; t > 0; --t)
  {
    const int here = moves[t][roadmap.index(c)];
    const auto& prev = moves[t-1];
    std::optional<Cell> chosen;
    for (Move m : grid_moves)
    {
      // Arriving at c by moving m means coming from the opposite side.
      const Cell from = apply(c, opposite(m));
      if (roadmap.is_free(from) && prev[roadmap.index(from)] >= 0
          && prev[roadmap.index(from)] + 1 == here)
      {
        chosen = from;
        break;
      }
    }
    if (!chosen)
      chosen = c;
    c = *chosen;
    path[t-1] = c;
  }
  return path;
}

//==============================================================================
bool is_well_formed(const Roadmap& roadmap, const Endpoints& endpoints,
                    double plan_radius)
{
  const std::size_t n = endpoints.size();
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = i + 1; j < n; ++j)
    {
      for (Cell a : {endpoints[i].first, endpoints[i].second})
      {
        for (Cell b : {endpoints[j].first, endpoints[j].second})
        {
          if (too_close(roadmap.center(a), roadmap.center(b), plan_radius))
            return false;
        }
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k)
  {
    std::vector<std::uint8_t> blocked(roadmap.size(), 0);
    for (std::size_t idx = 0; idx < roadmap.size(); ++idx)
    {
      const Point p = roadmap.center(roadmap.cell(idx));
      for (std::size_t j = 0; j < n && !blocked[idx]; ++j)
      {
        if (j == k)
          continue;
        if (too_close(p, roadmap.center(endpoints[j].first), plan_radius)
            || too_close(p, roadmap.center(endpoints[j].second), plan_radius))
          blocked[idx] = 1;
      }
    }
    if (!roadmap.connected(endpoints[k].first, endpoints[k].second, blocked))
      return false;
  }
  return true;
}

//==============================================================================
Endpoints sample_endpoints(const Roadmap& roadmap, const ProblemSpec& spec)
{
  const double plan_radius = inflate_radius(spec.radius, spec.max_step());
  const auto free = roadmap.free_cells();
  if (spec.n == 0)
    return {};
  if (free.size() < spec.n)
    throw PlanningError(-1, fmt::format(
        "{} robots do not fit on {} free cells", spec.n, free.size()));

  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < spec.sample_attempts; ++attempt)
  {
    Endpoints endpoints;
    std::vector<Point> taken;
    bool ok = true;
    for (std::size_t i = 0; i < spec.n && ok; ++i)
    {
      std::pair<Cell, Cell> pair;
      for (int which = 0; which < 2; ++which)
      {
        std::vector<Cell> candidates;
        for (Cell c : free)
        {
          const Point p = roadmap.center(c);
          const bool clear = std::none_of(taken.begin(), taken.end(),
              [&](Point q) { return too_close(p, q, plan_radius); });
          if (clear)
            candidates.push_back(c);
        }
        if (candidates.empty())
        {
          ok = false;
          break;
        }
        const Cell pick = candidates[rng() % candidates.size()];
        (which == 0 ? pair.first : pair.second) = pick;
      }
      if (!ok)
        break;
      endpoints.push_back(pair);
      taken.push_back(roadmap.center(pair.first));
      taken.push_back(roadmap.center(pair.second));
    }

    if (ok && is_well_formed(roadmap, endpoints, plan_radius))
      return endpoints;
  }

  throw PlanningError(-1, fmt::format(
      "no well-formed endpoints for {} robots after {} attempts",
      spec.n, spec.sample_attempts));
}

//==============================================================================
Instance prioritized_plan(const ProblemSpec& spec)
{
  const double max_step = spec.max_step();
  const double plan_radius = inflate_radius(spec.radius, max_step);
  const Roadmap roadmap =
      build_roadmap(spec.workspace, spec.radius, spec.cell_size, max_step);

  Endpoints endpoints = spec.endpoints;
  if (endpoints.empty())
    endpoints = sample_endpoints(roadmap, spec);
  if (endpoints.size() != spec.n)
    throw std::invalid_argument(fmt::format(
        "expected {} endpoint pairs, got {}", spec.n, endpoints.size()));
  for (std::size_t i = 0; i < endpoints.size(); ++i)
  {
    if (!roadmap.is_free(endpoints[i].first) || !roadmap.is_free(endpoints[i].second))
      throw PlanningError(static_cast<int>(i),
                          fmt::format("robot {} has an endpoint off the roadmap", i));
  }

  std::vector<std::vector<Point>> paths;
  for (std::size_t k = 0; k < endpoints.size(); ++k)
  {
    SpaceTimeObstacles obstacles;
    obstacles.committed = paths;
    for (std::size_t j = k + 1; j < endpoints.size(); ++j)
      obstacles.parked.push_back(roadmap.center(endpoints[j].first));

    const auto cells = spacetime_shortest_path(
        roadmap, endpoints[k].first, endpoints[k].second, obstacles, plan_radius);
    if (!cells)
      throw PlanningError(static_cast<int>(k),
                          fmt::format("no collision-free path for robot {}", k));

    std::vector<Point> pts;
    pts.reserve(cells->size());
    for (Cell c : *cells)
      pts.push_back(roadmap.center(c));
    paths.push_back(std::move(pts));
  }

  std::size_t length = 1;
  for (const auto& p : paths)
    length = std::max(length, p.size());

  Instance inst;
  inst.name = spec.name;
  inst.radius = spec.radius;
  inst.timestep = spec.timestep;
  inst.max_speed = spec.max_speed;
  inst.workspace = spec.workspace;
  for (auto& p : paths)
  {
    p.resize(length, p.back());
    inst.trajectories.emplace_back(std::move(p));
  }
  return inst;
}

} // namespace rmtrack

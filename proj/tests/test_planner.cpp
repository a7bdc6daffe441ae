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

#include "support.hpp"

#include <rmtrack/coordspace.hpp>
#include <rmtrack/planner.hpp>

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace rmtrack;
using namespace rmtrack::test;

namespace {

Workspace open_square(double side)
{
  Workspace ws;
  ws.bounds = Rect{0, 0, side, side};
  return ws;
}

bool unsafe(Point p, const SpaceTimeObstacles& obs, int t, double pr)
{
  for (const auto& q : obs.parked)
    if (distance(p, q) <= 2*pr)
      return true;
  for (const auto& traj : obs.committed)
    if (distance(p, traj[std::min<std::size_t>(t, traj.size() - 1)]) <= 2*pr)
      return true;
  return false;
}

// Plain layered search over (cell, t). Returns the earliest t at which the
// goal is reached and stays safe for good, or -1.
int brute_arrival(const Roadmap& map, Cell start, Cell goal,
                  const SpaceTimeObstacles& obs, double pr, int horizon)
{
  int settle = 0;
  for (const auto& traj : obs.committed)
    settle = std::max<int>(settle, traj.size() - 1);

  auto holds_from = [&](int t)
  {
    for (int k = t; k <= std::max(t, settle); ++k)
      if (unsafe(map.center(goal), obs, k, pr))
        return false;
    return true;
  };

  std::set<Cell> layer;
  if (!unsafe(map.center(start), obs, 0, pr))
    layer.insert(start);
  for (int t = 0; t <= horizon && !layer.empty(); ++t)
  {
    if (layer.count(goal) && holds_from(t))
      return t;
    std::set<Cell> next;
    for (Cell c : layer)
    {
      const Cell cand[] = {c, {c.col + 1, c.row}, {c.col - 1, c.row},
                           {c.col, c.row + 1}, {c.col, c.row - 1}};
      for (Cell d : cand)
        if (map.is_free(d) && !unsafe(map.center(d), obs, t + 1, pr))
          next.insert(d);
    }
    layer = std::move(next);
  }
  return -1;
}

void check_path(const Roadmap& map, const std::vector<Cell>& path,
                const SpaceTimeObstacles& obs, double pr)
{
  for (std::size_t t = 0; t < path.size(); ++t)
  {
    CHECK(map.is_free(path[t]));
    CHECK_FALSE(unsafe(map.center(path[t]), obs, static_cast<int>(t), pr));
    if (t > 0)
    {
      const int step = std::abs(path[t].col - path[t-1].col)
          + std::abs(path[t].row - path[t-1].row);
      CHECK(step <= 1);
    }
  }
}

} // anonymous namespace

TEST_CASE("roadmap construction")
{
  const Roadmap open = build_roadmap(open_square(10), 0.3, 1.0);
  CHECK(open.cols() == 11);
  CHECK(open.rows() == 11);
  CHECK(open.free_count() == 121);
  CHECK(open.component_count() == 1);
  CHECK(open.center({3, 4}).x == doctest::Approx(3));
  CHECK(open.center({3, 4}).y == doctest::Approx(4));
  CHECK(open.cell(open.index({3, 4})) == Cell{3, 4});

  Workspace covered = open_square(4);
  covered.obstacles.push_back(make_box(-1, -1, 5, 5));
  CHECK(build_roadmap(covered, 0.3, 1.0).free_count() == 0);

  Workspace wall = open_square(10);
  wall.obstacles.push_back(make_box(4.6, -1, 5.4, 11));
  const Roadmap split = build_roadmap(wall, 0.3, 1.0);
  CHECK(split.component_count() == 2);
  CHECK_FALSE(split.connected({0, 0}, {10, 0}));
  CHECK(split.connected({0, 0}, {4, 10}));

  CHECK_THROWS_AS((void)build_roadmap(open_square(4), 0.3, 2.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)build_roadmap(open_square(4), 0.3, 0.0), std::invalid_argument);
}

TEST_CASE("inflate_radius")
{
  CHECK(inflate_radius(0.3) == doctest::Approx(0.8));
  CHECK(inflate_radius(0.3, 0.5) == doctest::Approx(0.55));
}

TEST_CASE("single robot paths")
{
  const Roadmap map = build_roadmap(open_square(10), 0.3, 1.0);
  const auto path = spacetime_shortest_path(map, {0, 0}, {5, 0}, {}, 0.8);
  REQUIRE(path);
  REQUIRE(path->size() == 6);
  for (int t = 0; t <= 5; ++t)
    CHECK((*path)[t] == Cell{t, 0});

  const auto still = spacetime_shortest_path(map, {2, 2}, {2, 2}, {}, 0.8);
  REQUIRE(still);
  CHECK(still->size() == 1);

  // Ties are broken from the goal backwards, East first.
  const auto diag = spacetime_shortest_path(map, {0, 0}, {2, 2}, {}, 0.8);
  REQUIRE(diag);
  CHECK(diag->size() == 5);
  CHECK((*diag)[3] == Cell{1, 2});
  CHECK((*diag)[1] == Cell{0, 1});
}

TEST_CASE("crossing a committed robot matches the brute-force arrival time")
{
  const Roadmap map = build_roadmap(open_square(10), 0.3, 1.0);
  SpaceTimeObstacles obs;
  std::vector<Point> other;
  for (int t = 0; t <= 10; ++t)
    other.push_back({static_cast<double>(t), 5});
  obs.committed.push_back(other);

  const auto path = spacetime_shortest_path(map, {5, 0}, {5, 10}, obs, 0.8);
  REQUIRE(path);
  check_path(map, *path, obs, 0.8);
  CHECK(static_cast<int>(path->size()) - 1
        == brute_arrival(map, {5, 0}, {5, 10}, obs, 0.8, 60));
  // The robot waits at its start rather than wandering.
  CHECK((*path)[1] == Cell{5, 0});
}

TEST_CASE("goal blocked forever yields no path")
{
  const Roadmap map = build_roadmap(open_square(6), 0.3, 1.0);
  SpaceTimeObstacles obs;
  obs.parked.push_back({3, 3});
  CHECK_FALSE(spacetime_shortest_path(map, {0, 0}, {3, 4}, obs, 0.8));
  CHECK(spacetime_shortest_path(map, {0, 0}, {5, 5}, obs, 0.8));
}

TEST_CASE("property: arrival time matches brute force on random obstacles")
{
  std::mt19937_64 rng(13);
  const Roadmap map = build_roadmap(open_square(7), 0.3, 1.0);
  auto random_cell = [&] {
    return Cell{static_cast<int>(rng() % 8), static_cast<int>(rng() % 8)};
  };
  int solved = 0;
  for (int iter = 0; iter < 150; ++iter)
  {
    SpaceTimeObstacles obs;
    const int movers = 1 + static_cast<int>(rng() % 2);
    for (int k = 0; k < movers; ++k)
    {
      std::vector<Point> traj;
      Cell c = random_cell();
      const int len = 2 + static_cast<int>(rng() % 10);
      for (int t = 0; t < len; ++t)
      {
        traj.push_back(map.center(c));
        const Cell next = apply(c, static_cast<Move>(rng() % 5));
        if (map.is_free(next))
          c = next;
      }
      obs.committed.push_back(traj);
    }
    const Cell start = random_cell();
    const Cell goal = random_cell();
    const int expect = brute_arrival(map, start, goal, obs, 0.8, 80);
    const auto path = spacetime_shortest_path(map, start, goal, obs, 0.8);
    if (expect < 0)
    {
      CHECK_FALSE(path);
      continue;
    }
    REQUIRE(path);
    ++solved;
    CHECK(static_cast<int>(path->size()) - 1 == expect);
    CHECK(path->front() == start);
    CHECK(path->back() == goal);
    check_path(map, *path, obs, 0.8);
  }
  CHECK(solved > 50);
}

TEST_CASE("prioritized_plan with one robot")
{
  ProblemSpec spec;
  spec.workspace = open_square(8);
  spec.endpoints = {{{1, 1}, {6, 3}}};
  const Instance inst = prioritized_plan(spec);
  REQUIRE(inst.robot_count() == 1);
  CHECK(inst.horizon() == 7);
  CHECK(inst.trajectories[0].at(0).x == doctest::Approx(1));
  CHECK(inst.trajectories[0].at(7).y == doctest::Approx(3));
  CHECK(inst.radius == doctest::Approx(0.3));
}

TEST_CASE("head-on through a corridor")
{
  const MapFile m = parse_map(read_text_file(data_path("maps/corridor.map")));
  ProblemSpec spec;
  spec.workspace = m.workspace;
  spec.n = 2;
  spec.endpoints = {{{4, 4}, {15, 4}}, {{15, 6}, {4, 6}}};
  const Instance inst = prioritized_plan(spec);
  REQUIRE(inst.robot_count() == 2);
  CHECK(validate_instance(inst).ok());
  CHECK(verify_margin(CollisionOracle(inst)).ok());

  const Trajectory& second = inst.trajectories[1];
  CHECK(second.at(1).x == doctest::Approx(15));
  CHECK(second.at(1).y == doctest::Approx(6));
  CHECK(second.completion_index() > 13);
  CHECK(inst.trajectories[0].completion_index() == 11);
}

TEST_CASE("planned instances are valid and keep the margin")
{
  for (const std::string map : {"hall", "corridor", "warehouse"})
    for (std::size_t n : {2, 4, 6})
      for (std::uint64_t seed : {1, 2, 3})
      {
        const Instance inst = plan_on_map(map, n, seed);
        CHECK(inst.robot_count() == n);
        CHECK(validate_instance(inst).ok());
        CHECK(verify_margin(CollisionOracle(inst)).ok());
      }
}

TEST_CASE("property: each robot is optimal against the robots planned before it")
{
  for (std::uint64_t seed : {4, 5, 6})
  {
    ProblemSpec spec;
    spec.workspace = parse_map(read_text_file(data_path("maps/hall.map"))).workspace;
    const Roadmap map = build_roadmap(spec.workspace, spec.radius, spec.cell_size);
    spec.n = 5;
    spec.seed = seed;
    const Endpoints eps = sample_endpoints(map, spec);
    spec.endpoints = eps;
    const Instance full = prioritized_plan(spec);
    const double pr = inflate_radius(spec.radius);

    for (std::size_t i = 0; i < eps.size(); ++i)
    {
      SpaceTimeObstacles obs;
      for (std::size_t k = 0; k < i; ++k)
        obs.committed.push_back(full.trajectories[k].points());
      for (std::size_t k = i + 1; k < eps.size(); ++k)
        obs.parked.push_back(map.center(eps[k].first));
      const int expect = brute_arrival(map, eps[i].first, eps[i].second, obs, pr, 200);
      CHECK(full.trajectories[i].completion_index() == expect);
    }
  }
}

TEST_CASE("endpoint sampling")
{
  ProblemSpec spec;
  spec.workspace = open_square(10);
  spec.n = 2;
  spec.seed = 3;
  const Roadmap map = build_roadmap(spec.workspace, spec.radius, spec.cell_size);
  const Endpoints eps = sample_endpoints(map, spec);
  REQUIRE(eps.size() == 2);
  CHECK(is_well_formed(map, eps, inflate_radius(spec.radius)));
  CHECK(sample_endpoints(map, spec) == eps);

  // Start inside a pocket sealed by another robot's endpoint disc.
  Workspace pocket = open_square(6);
  pocket.obstacles.push_back(make_box(0.5, -1, 1.5, 0.5));
  pocket.obstacles.push_back(make_box(0.5, 1.5, 1.5, 7));
  const Roadmap pm = build_roadmap(pocket, 0.3, 1.0);
  REQUIRE(pm.is_free({0, 1}));
  const Endpoints sealed = {{{0, 1}, {5, 5}}, {{2, 1}, {5, 1}}};
  CHECK_FALSE(is_well_formed(pm, sealed, 0.8));
  const Endpoints close = {{{0, 0}, {5, 5}}, {{1, 0}, {3, 3}}};
  CHECK_FALSE(is_well_formed(map, close, 0.8));

  ProblemSpec crowded = spec;
  crowded.workspace = open_square(2);
  crowded.n = 5;
  crowded.sample_attempts = 50;
  const Roadmap tiny = build_roadmap(crowded.workspace, crowded.radius, 1.0);
  try
  {
    (void)sample_endpoints(tiny, crowded);
    FAIL("expected a planning error");
  }
  catch (const PlanningError& e)
  {
    CHECK(e.robot() == -1);
  }
}

TEST_CASE("map parsing")
{
  const MapFile hall = parse_map(read_text_file(data_path("maps/hall.map")));
  CHECK(hall.name == "hall");
  CHECK(hall.cols == 12);
  CHECK(hall.rows == 10);
  CHECK(hall.workspace.obstacles.empty());
  CHECK(hall.workspace.bounds.xmax == doctest::Approx(11));

  const MapFile m = parse_map("scale 2\n#..\n...\n");
  REQUIRE(m.workspace.obstacles.size() == 1);
  // '#' at the top-left corner covers lattice point (0, 2).
  CHECK(point_in_polygon({0.5, 1.5}, m.workspace.obstacles[0]));
  CHECK_FALSE(point_in_polygon({3, 1}, m.workspace.obstacles[0]));

  CHECK_THROWS_AS((void)parse_map("..\n..\n"), ParseError);
  CHECK_THROWS_AS((void)parse_map("scale 1\n..\n.\n"), ParseError);
  CHECK_THROWS_AS((void)parse_map("scale 1\n.x\n..\n"), ParseError);
  CHECK_THROWS_AS((void)parse_map("scale -1\n..\n..\n"), ParseError);
  CHECK_THROWS_AS((void)parse_map("scale 1\n"), ParseError);
}

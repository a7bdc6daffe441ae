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

#include <rmtrack/coordspace.hpp>

#include <fmt/format.h>

#include <stdexcept>

namespace rmtrack {

//==============================================================================
CollisionOracle::CollisionOracle(const Instance& inst, bool memoize)
  : _inst(inst),
    _n(inst.robot_count()),
    _horizon(inst.horizon()),
    _memoize(memoize)
{
  if (_memoize)
    _rows.resize(_n*_n*static_cast<std::size_t>(_horizon + 1));
}

//==============================================================================
void CollisionOracle::check_pair(std::size_t i, std::size_t j) const
{
  if (i >= _n || j >= _n)
    throw std::out_of_range(fmt::format("robot pair ({}, {}) out of range", i, j));
  if (i == j)
    throw std::invalid_argument("collision queries need two distinct robots");
}

//==============================================================================
void CollisionOracle::check_pos(PlanPos p) const
{
  if (p < 0 || p > _horizon)
    throw std::out_of_range(
        fmt::format("plan position {} outside 0..{}", p, _horizon));
}

//==============================================================================
bool CollisionOracle::direct(
    std::size_t i, std::size_t j, PlanPos a, PlanPos b) const
{
  return discs_overlap(
      _inst.trajectories[i].points()[a],
      _inst.trajectories[j].points()[b],
      _inst.radius);
}

//==============================================================================
const std::vector<std::int32_t>& CollisionOracle::row(
    std::size_t i, std::size_t j, PlanPos a) const
{
  const std::size_t key =
      (i*_n + j)*static_cast<std::size_t>(_horizon + 1) + a;
  auto& slot = _rows[key];
  if (!slot)
  {
    auto prefix = std::make_unique<std::vector<std::int32_t>>(_horizon + 2, 0);
    for (PlanPos b = 0; b <= _horizon; ++b)
      (*prefix)[b+1] = (*prefix)[b] + (direct(i, j, a, b) ? 1 : 0);
    slot = std::move(prefix);
  }
  return *slot;
}

//==============================================================================
bool CollisionOracle::in_collision(
    std::size_t i, std::size_t j, PlanPos a, PlanPos b) const
{
  check_pair(i, j);
  check_pos(a);
  check_pos(b);
  if (!_memoize)
    return direct(i, j, a, b);

  const auto& prefix = row(i, j, a);
  return prefix[b+1] != prefix[b];
}

//==============================================================================
bool CollisionOracle::row_blocked(
    std::size_t i, std::size_t j, PlanPos a, PlanPos lo, PlanPos hi) const
{
  check_pair(i, j);
  check_pos(a);
  check_pos(lo);
  check_pos(hi);
  if (lo > hi)
    return false;

  if (!_memoize)
  {
    for (PlanPos k = lo; k <= hi; ++k)
    {
      if (direct(i, j, a, k))
        return true;
    }
    return false;
  }

  const auto& prefix = row(i, j, a);
  return prefix[hi+1] != prefix[lo];
}

//==============================================================================
bool CollisionOracle::segment_blocked(
    std::size_t i, std::size_t j, PlanPos xi, PlanPos xj) const
{
  if (xi < xj)
    throw std::invalid_argument(fmt::format(
        "segment query needs xi >= xj, got xi={} xj={}", xi, xj));
  if (xi + 1 > _horizon)
    throw std::out_of_range(fmt::format(
        "segment query needs xi + 1 <= T, got xi={} T={}", xi, _horizon));
  return row_blocked(i, j, xi + 1, xj, xi + 1);
}

//==============================================================================
std::size_t CollisionOracle::cached_rows() const
{
  std::size_t count = 0;
  for (const auto& r : _rows)
  {
    if (r)
      ++count;
  }
  return count;
}

//==============================================================================
std::size_t RegionBitmap::count() const
{
  std::size_t c = 0;
  for (auto b : _bits)
    c += b;
  return c;
}

//==============================================================================
RegionBitmap RegionBitmap::transposed() const
{
  RegionBitmap out(_side);
  for (std::size_t a = 0; a < _side; ++a)
  {
    for (std::size_t b = 0; b < _side; ++b)
      out.set(b, a, at(a, b));
  }
  return out;
}

//==============================================================================
std::string RegionBitmap::to_text() const
{
  std::string out;
  out.reserve(_side*(_side + 1));
  for (std::size_t a = 0; a < _side; ++a)
  {
    for (std::size_t b = 0; b < _side; ++b)
      out.push_back(at(a, b) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

//==============================================================================
RegionBitmap pairwise_region(
    const CollisionOracle& oracle, std::size_t i, std::size_t j)
{
  if (i == j)
    throw std::invalid_argument("pairwise region needs two distinct robots");

  const auto side = static_cast<std::size_t>(oracle.horizon() + 1);
  RegionBitmap bitmap(side);
  for (std::size_t a = 0; a < side; ++a)
  {
    for (std::size_t b = 0; b < side; ++b)
    {
      bitmap.set(a, b, oracle.in_collision(
          i, j, static_cast<PlanPos>(a), static_cast<PlanPos>(b)));
    }
  }
  return bitmap;
}

//==============================================================================
std::string MarginReport::summary() const
{
  if (violations.empty())
    return "ok";
  std::string out;
  for (const auto& v : violations)
  {
    const PlanPos a = v.leading_i ? v.t + 1 : v.t;
    const PlanPos b = v.leading_i ? v.t : v.t + 1;
    out += fmt::format("margin violated: t={} pair ({}, {}) cell ({}, {})\n",
                       v.t, v.i, v.j, a, b);
  }
  return out;
}

//==============================================================================
MarginReport verify_margin(const CollisionOracle& oracle)
{
  MarginReport report;
  const std::size_t n = oracle.robot_count();
  const PlanPos T = oracle.horizon();
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = i + 1; j < n; ++j)
    {
      for (PlanPos t = 0; t < T; ++t)
      {
        if (oracle.in_collision(i, j, t + 1, t))
          report.violations.push_back({t, i, j, true});
        if (oracle.in_collision(i, j, t, t + 1))
          report.violations.push_back({t, i, j, false});
      }
    }
  }
  return report;
}

} // namespace rmtrack

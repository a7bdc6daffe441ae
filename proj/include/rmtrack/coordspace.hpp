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

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace rmtrack {

/// Pairwise collision predicate over the coordination space.
///
/// in_collision(i, j, a, b) holds iff the disc of robot i at pi_i(a) overlaps
/// the disc of robot j at pi_j(b). Results are memoized lazily one row
/// (i, j, a) at a time; each row stores prefix counts over b so that range
/// queries along a row cost O(1).
///
/// The oracle keeps a reference to the instance, which must outlive it. The
/// cache is private to the oracle and not synchronized: use one oracle per
/// thread.
class CollisionOracle
{
public:
  explicit CollisionOracle(const Instance& inst, bool memoize = true);

  const Instance& instance() const { return _inst; }
  std::size_t robot_count() const { return _n; }
  PlanPos horizon() const { return _horizon; }
  bool memoized() const { return _memoize; }

  /// Throws std::invalid_argument when i == j and std::out_of_range for bad
  /// indices or positions.
  bool in_collision(std::size_t i, std::size_t j, PlanPos a, PlanPos b) const;

  /// True iff some k in [lo, hi] has in_collision(i, j, a, k).
  bool row_blocked(
      std::size_t i, std::size_t j, PlanPos a, PlanPos lo, PlanPos hi) const;

  /// The segment {xi + 1} x {xj, ..., xi + 1} intersects C_ij. Requires
  /// xi >= xj and xi + 1 <= T.
  bool segment_blocked(
      std::size_t i, std::size_t j, PlanPos xi, PlanPos xj) const;

  std::size_t cached_rows() const;

private:
  void check_pair(std::size_t i, std::size_t j) const;
  void check_pos(PlanPos p) const;
  bool direct(std::size_t i, std::size_t j, PlanPos a, PlanPos b) const;
  const std::vector<std::int32_t>& row(
      std::size_t i, std::size_t j, PlanPos a) const;

  const Instance& _inst;
  std::size_t _n;
  PlanPos _horizon;
  bool _memoize;
  mutable std::vector<std::unique_ptr<std::vector<std::int32_t>>> _rows;
};

/// Dense materialization of C_ij over {0..T}^2, indexed [a][b].
class RegionBitmap
{
public:
  RegionBitmap() = default;
  explicit RegionBitmap(std::size_t side)
    : _side(side), _bits(side*side, 0) {}

  std::size_t side() const { return _side; }
  bool at(std::size_t a, std::size_t b) const { return _bits[a*_side + b]; }
  void set(std::size_t a, std::size_t b, bool v) { _bits[a*_side + b] = v; }
  std::size_t count() const;

  RegionBitmap transposed() const;

  /// One row per a, one column per b, '#' for collision and '.' otherwise.
  std::string to_text() const;

  friend bool operator==(const RegionBitmap&, const RegionBitmap&) = default;

private:
  std::size_t _side = 0;
  std::vector<std::uint8_t> _bits;
};

RegionBitmap pairwise_region(
    const CollisionOracle& oracle, std::size_t i, std::size_t j);

struct MarginViolation
{
  PlanPos t;
  std::size_t i;
  std::size_t j;
  /// Which off-diagonal neighbor collides: (t+1, t) when true, else (t, t+1).
  bool leading_i;

  friend bool operator==(const MarginViolation&, const MarginViolation&) = default;
};

struct MarginReport
{
  std::vector<MarginViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks that every off-diagonal neighbor (t+1, t) and (t, t+1) of the
/// diagonal is collision-free for every ordered pair i < j.
MarginReport verify_margin(const CollisionOracle& oracle);

} // namespace rmtrack

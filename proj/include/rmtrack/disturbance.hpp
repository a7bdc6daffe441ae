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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rmtrack {

/// Rectangular 0/1 table, one row per robot and one column per step. Steps
/// past the table read as 1 (no disturbance).
class DisturbanceScript
{
public:
  DisturbanceScript() = default;
  explicit DisturbanceScript(std::vector<std::vector<std::uint8_t>> rows);

  /// Rows of '0'/'1' characters, one line per robot. Blank lines and lines
  /// starting with '#' are skipped.
  static DisturbanceScript parse(std::string_view text);
  std::string to_text() const;

  std::size_t robot_count() const { return _rows.size(); }
  std::size_t length() const { return _rows.empty() ? 0 : _rows.front().size(); }

  int value(std::size_t robot, int t) const;
  const std::vector<std::vector<std::uint8_t>>& rows() const { return _rows; }

  friend bool operator==(const DisturbanceScript&, const DisturbanceScript&) = default;

private:
  std::vector<std::vector<std::uint8_t>> _rows;
};

/// Source of the per-robot, per-step delay signal delta_i(t), where 0 forces
/// the robot to hold its plan position for that step.
class DisturbanceProcess
{
public:
  enum class Kind { None, BernoulliBlock, Scripted };

  static DisturbanceProcess none();

  /// Every block of `block_len` steps, each robot is independently stopped for
  /// the whole block with probability q. Decisions are a pure function of
  /// (seed, robot, block index).
  static DisturbanceProcess bernoulli(
      double q, std::uint64_t seed, int block_len = 1);

  static DisturbanceProcess scripted(DisturbanceScript script);

  Kind kind() const { return _kind; }
  double intensity() const { return _q; }
  int block_len() const { return _block_len; }
  std::uint64_t seed() const { return _seed; }
  const DisturbanceScript& script() const { return _script; }

  int delta(std::size_t robot, int t) const;

private:
  DisturbanceProcess() = default;

  Kind _kind = Kind::None;
  double _q = 0.0;
  int _block_len = 1;
  std::uint64_t _seed = 0;
  DisturbanceScript _script;
};

const char* to_string(DisturbanceProcess::Kind kind);

/// Uniform double in [0, 1) keyed by (seed, robot, block). Exposed for tests.
double block_uniform(std::uint64_t seed, std::uint64_t robot, std::uint64_t block);

/// Expected travel time of a robot that advances with probability 1 - q per
/// step: E(t_f) / (1 - q).
double lower_bound_expectation(double expected_travel, double q);

/// Expected travel time when the whole team advances only if no robot is
/// disturbed: E(t_f) / (1 - q)^n.
double allstop_expectation(double expected_travel, double q, std::size_t n);

/// Sufficient condition for non-prohibitive disturbances: every robot's row
/// ends in an all-ones suffix that starts no later than `horizon`. Always true
/// for Kind::None; throws std::invalid_argument for Kind::BernoulliBlock, which
/// is non-prohibitive almost surely for q < 1 but cannot be decided here.
bool is_non_prohibitive(const DisturbanceProcess& proc, int horizon);

} // namespace rmtrack

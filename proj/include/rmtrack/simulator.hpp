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

#include <rmtrack/disturbance.hpp>
#include <rmtrack/policies.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmtrack {

struct RunConfig
{
  /// Step cap. Zero selects default_max_steps(T).
  int max_steps = 0;
  bool record_trace = true;
  /// Count robot-robot collisions at every visited state.
  bool audit_online = false;
};

/// 40 x T, with a floor of one step.
int default_max_steps(PlanPos horizon);

struct TraceStep
{
  int t = 0;
  std::vector<PlanPos> x;
  std::vector<std::uint8_t> a;
  std::vector<std::uint8_t> d;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace
{
  std::string instance_name;
  std::string policy_name;
  std::string disturbance = "none";
  std::uint64_t seed = 0;
  double q = 0.0;
  int block_len = 1;
  PlanPos horizon = 0;

  /// Decisions and disturbances applied at each step, in order. Empty when
  /// the run was not recorded.
  std::vector<TraceStep> steps;
  SimState final_state;

  bool completed = false;
  std::vector<std::optional<int>> travel_times;
  std::optional<int> makespan;
  /// Collisions counted online; zero unless RunConfig::audit_online was set.
  std::size_t collisions = 0;

  /// x(0), ..., x(final) with their time stamps.
  std::vector<SimState> states() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

class MarginError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// x'_i = x_i + a_i * delta_i, t' = t + 1.
SimState step(const SimState& state, const Decision& decision,
              std::span<const std::uint8_t> delta);

/// Executes the instance from x = (0, ..., 0) until every robot reaches T or
/// the step cap is hit. Throws MarginError up front when the policy is
/// RMTRACK and the instance violates the 1-margin condition.
///
/// Passing an oracle lets callers reuse its cache across runs of the same
/// instance on one thread.
Trace run(const Instance& inst, PolicyKind policy,
          const DisturbanceProcess& proc, const RunConfig& cfg = {},
          const CollisionOracle* oracle = nullptr);

struct CollisionRecord
{
  int t;
  std::size_t i;
  std::size_t j;
  double distance;
};

struct DynamicsRecord
{
  int t;
  std::size_t robot;
  std::string message;
};

struct AuditReport
{
  std::vector<CollisionRecord> collisions;
  std::vector<DynamicsRecord> dynamics;
  bool completed = false;

  bool safe() const { return collisions.empty(); }
  bool consistent() const { return dynamics.empty(); }
  bool ok() const { return safe() && consistent(); }
  std::string summary() const;
};

/// Replays a recorded trace against the instance. Throws std::invalid_argument
/// when the trace does not belong to the instance (wrong team size or
/// positions outside 0..T).
AuditReport audit_trace(const Instance& inst, const Trace& trace);

struct Metrics
{
  std::vector<std::optional<int>> travel_times;
  std::optional<int> makespan;
  std::optional<int> flowtime;
  bool completed = false;
  std::size_t collisions = 0;

  /// Mean over robots, absent unless every robot finished.
  std::optional<double> mean_travel_time() const;
};

/// travel_time_i = min { t : x_i(t) >= completion_index_i }.
Metrics metrics(const Instance& inst, const Trace& trace);

/// One header line followed by one compact record per step and a final
/// state record.
std::string write_trace(const Trace& trace);
Trace parse_trace(std::string_view text);

} // namespace rmtrack

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

#include <rmtrack/simulator.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rmtrack {

struct BenchConfig
{
  std::vector<PolicyKind> policies = {
      PolicyKind::RmTrack, PolicyKind::AllStop, PolicyKind::FreeFlow};
  std::vector<double> q_grid = default_q_grid();
  int seeds = 20;
  std::uint64_t base_seed = 0;
  int block_len = 1;
  int max_steps = 0;
  int workers = 1;

  /// 0, 0.05, ..., 0.5.
  static std::vector<double> default_q_grid();
};

struct BenchRow
{
  std::string instance;
  PolicyKind policy = PolicyKind::RmTrack;
  double q = 0.0;
  std::uint64_t seed = 0;
  bool completed = false;
  std::optional<int> makespan;
  std::optional<double> mean_travel_time;
  /// Mean travel time of the free-flow run under the same disturbance
  /// realization.
  std::optional<double> lower_bound;
  /// Mean undisturbed travel time scaled by 1 / (1 - q)^n.
  double allstop_expectation = 0.0;
  std::size_t collisions = 0;
};

/// One row per (instance, policy, q, seed), ordered by instance, q, seed and
/// policy in the order given by the inputs. Seeds are base_seed + k and are
/// shared by all policies. Cells run on `workers` threads.
std::vector<BenchRow> run_bench(
    const std::vector<Instance>& instances, const BenchConfig& cfg);

/// Versioned header comment, column row, data rows, a blank line, then the
/// per-(instance, policy, q) summary block.
std::string format_bench_csv(
    const std::vector<Instance>& instances, const std::vector<BenchRow>& rows);

/// Mean undisturbed travel time: average completion index over robots.
double undisturbed_mean_travel(const Instance& inst);

} // namespace rmtrack

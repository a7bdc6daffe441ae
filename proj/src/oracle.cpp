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

#include <rmtrack/oracle.hpp>

#include <fmt/format.h>

#include <algorithm>

namespace rmtrack {

//==============================================================================
int exhaustive_step_cap(const Instance& inst, int window)
{
  const PlanPos T = inst.horizon();
  return T + window + static_cast<int>(inst.robot_count())*T;
}

//==============================================================================
VerificationResult exhaustive_verify(
    const Instance& inst, PolicyKind policy, int window)
{
  const std::size_t n = inst.robot_count();
  if (window < 0)
    throw GuardError("window must be non-negative");
  const std::size_t bits = n*static_cast<std::size_t>(window);
  if (bits > static_cast<std::size_t>(max_exhaustive_bits))
    throw GuardError(fmt::format(
        "exhaustive enumeration needs n * W <= {}, got {} * {} = {}",
        max_exhaustive_bits, n, window, bits));

  CollisionOracle oracle(inst);
  RunConfig cfg;
  cfg.max_steps = std::max(exhaustive_step_cap(inst, window), inst.horizon());
  cfg.record_trace = true;

  VerificationResult result;
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t code = 0; code < total; ++code)
  {
    std::vector<std::vector<std::uint8_t>> rows(
        n, std::vector<std::uint8_t>(static_cast<std::size_t>(window)));
    for (std::size_t cell = 0; cell < bits; ++cell)
    {
      // The first table cell is the most significant bit.
      const auto bit = (code >> (bits - 1 - cell)) & 1u;
      rows[cell / window][cell % window] = static_cast<std::uint8_t>(bit);
    }
    DisturbanceScript script(std::move(rows));
    const auto proc = DisturbanceProcess::scripted(script);

    Trace trace = run(inst, policy, proc, cfg, &oracle);
    const auto audit = audit_trace(inst, trace);
    ++result.branches;

    const int span = trace.makespan.value_or(trace.final_state.t);
    result.worst_makespan = std::max(result.worst_makespan, span);

    const bool safe = audit.safe();
    const bool live = trace.completed;
    result.safe = result.safe && safe;
    result.live = result.live && live;
    if ((!safe || !live) && !result.counterexample)
      result.counterexample = Counterexample{std::move(script), std::move(trace)};
  }
  return result;
}

//==============================================================================
CheckResult check_lemma1(const Instance& inst, const Trace& trace)
{
  const CollisionOracle oracle(inst);
  const std::size_t n = inst.robot_count();
  for (const auto& s : trace.states())
  {
    if (s.x.size() != n)
      return {false, s.t, "trace state does not match the team size"};

    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = 0; j < n; ++j)
      {
        if (i == j || s.x[i] < s.x[j])
          continue;
        if (oracle.row_blocked(i, j, s.x[i], s.x[j], s.x[i]))
          return {false, s.t, fmt::format(
              "C_{}{} meets {{{}}} x [{}, {}]", i, j, s.x[i], s.x[j], s.x[i])};
      }
    }
  }
  return {};
}

//==============================================================================
CheckResult check_progress(const Trace& trace)
{
  const PlanPos horizon = trace.horizon;
  for (const auto& st : trace.steps)
  {
    const auto& x = st.x;
    if (std::all_of(x.begin(), x.end(), [&](PlanPos v) { return v >= horizon; }))
      continue;

    bool someone = false;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      if (x[i] < horizon && st.a[i] == 1)
        someone = true;
    }
    if (!someone)
      return {false, st.t, "no unfinished robot is commanded to advance"};

    const PlanPos lowest = *std::min_element(x.begin(), x.end());
    bool laggard_moves = false;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      if (x[i] == lowest && x[i] < horizon && st.a[i] == 1)
        laggard_moves = true;
    }
    if (!laggard_moves)
      return {false, st.t, "no robot in argmin x is commanded to advance"};
  }
  return {};
}

} // namespace rmtrack

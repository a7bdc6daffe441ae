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

#include <rmtrack/simulator.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace rmtrack {

//==============================================================================
int default_max_steps(PlanPos horizon)
{
  return std::max(1, 40*horizon);
}

//==============================================================================
std::vector<SimState> Trace::states() const
{
  std::vector<SimState> out;
  out.reserve(steps.size() + 1);
  for (const auto& s : steps)
    out.push_back(SimState{s.t, s.x});
  out.push_back(final_state);
  return out;
}

//==============================================================================
SimState step(const SimState& state, const Decision& decision,
              std::span<const std::uint8_t> delta)
{
  const std::size_t n = state.x.size();
  if (decision.advance.size() != n || delta.size() != n)
    throw std::invalid_argument("decision and disturbance sizes must match");

  SimState next{state.t + 1, state.x};
  for (std::size_t i = 0; i < n; ++i)
    next.x[i] += decision.advance[i]*delta[i];
  return next;
}

//==============================================================================
namespace {

std::size_t count_collisions(const Instance& inst, const std::vector<PlanPos>& x)
{
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    for (std::size_t j = i + 1; j < x.size(); ++j)
    {
      if (discs_overlap(inst.trajectories[i].points()[x[i]],
                        inst.trajectories[j].points()[x[j]], inst.radius))
        ++count;
    }
  }
  return count;
}

} // anonymous namespace

//==============================================================================
Trace run(const Instance& inst, PolicyKind policy,
          const DisturbanceProcess& proc, const RunConfig& cfg,
          const CollisionOracle* oracle)
{
  const std::size_t n = inst.robot_count();
  const PlanPos T = inst.horizon();
  const int max_steps = cfg.max_steps > 0 ? cfg.max_steps : default_max_steps(T);
  if (max_steps < T)
    throw std::invalid_argument(
        fmt::format("max_steps {} is below the horizon {}", max_steps, T));

  std::optional<CollisionOracle> local;
  if (!oracle)
    oracle = &local.emplace(inst);
  else if (&oracle->instance() != &inst)
    throw std::invalid_argument("collision oracle belongs to another instance");

  if (policy == PolicyKind::RmTrack)
  {
    const auto margin = verify_margin(*oracle);
    if (!margin.ok())
      throw MarginError(fmt::format(
          "instance '{}' violates the 1-margin condition: {}",
          inst.name, margin.summary()));
  }

  Trace trace;
  trace.instance_name = inst.name;
  trace.policy_name = to_string(policy);
  trace.disturbance = to_string(proc.kind());
  trace.seed = proc.seed();
  trace.q = proc.intensity();
  trace.block_len = proc.block_len();
  trace.horizon = T;
  trace.travel_times.assign(n, std::nullopt);

  SimState state{0, std::vector<PlanPos>(n, 0)};
  auto note_arrivals = [&]()
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      if (!trace.travel_times[i]
          && state.x[i] >= inst.trajectories[i].completion_index())
        trace.travel_times[i] = state.t;
    }
  };
  auto all_done = [&]()
  {
    return std::all_of(state.x.begin(), state.x.end(),
                       [T](PlanPos v) { return v >= T; });
  };

  note_arrivals();
  if (cfg.audit_online)
    trace.collisions += count_collisions(inst, state.x);

  std::vector<std::uint8_t> delta(n);
  std::vector<std::uint8_t> blocked(n);
  while (!all_done() && state.t < max_steps)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      delta[i] = static_cast<std::uint8_t>(proc.delta(i, state.t));
      blocked[i] = delta[i] ? 0 : 1;
    }

    PolicyContext ctx{state, *oracle};
    if (policy == PolicyKind::AllStop)
      ctx.observed_block = std::span<const std::uint8_t>(blocked);
    Decision decision = decide(policy, ctx);

    if (cfg.record_trace)
      trace.steps.push_back(TraceStep{state.t, state.x, decision.advance, delta});

    state = step(state, decision, delta);
    note_arrivals();
    if (cfg.audit_online)
      trace.collisions += count_collisions(inst, state.x);
  }

  trace.final_state = state;
  trace.completed = all_done();
  if (std::all_of(trace.travel_times.begin(), trace.travel_times.end(),
                  [](const auto& v) { return v.has_value(); }) && n > 0)
  {
    int worst = 0;
    for (const auto& v : trace.travel_times)
      worst = std::max(worst, *v);
    trace.makespan = worst;
  }
  return trace;
}

//==============================================================================
std::string AuditReport::summary() const
{
  std::string out;
  for (const auto& c : collisions)
    out += fmt::format("collision at t={} between robots {} and {} (distance {})\n",
                       c.t, c.i, c.j, c.distance);
  for (const auto& d : dynamics)
    out += fmt::format("dynamics violated at t={} robot {}: {}\n",
                       d.t, d.robot, d.message);
  out += completed ? "run completed\n" : "run did not complete\n";
  return out;
}

//==============================================================================
AuditReport audit_trace(const Instance& inst, const Trace& trace)
{
  const std::size_t n = inst.robot_count();
  const PlanPos T = inst.horizon();
  const auto states = trace.states();

  for (const auto& s : states)
  {
    if (s.x.size() != n)
      throw std::invalid_argument(fmt::format(
          "trace state at t={} has {} robots, instance has {}",
          s.t, s.x.size(), n));
    for (PlanPos v : s.x)
    {
      if (v < 0 || v > T)
        throw std::invalid_argument(fmt::format(
            "trace position {} at t={} outside 0..{}", v, s.t, T));
    }
  }
  for (const auto& st : trace.steps)
  {
    if (st.a.size() != n || st.d.size() != n)
      throw std::invalid_argument(
          fmt::format("trace step t={} has mismatched decision size", st.t));
  }

  AuditReport report;
  for (const auto& s : states)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = i + 1; j < n; ++j)
      {
        const Point a = inst.trajectories[i].points()[s.x[i]];
        const Point b = inst.trajectories[j].points()[s.x[j]];
        if (discs_overlap(a, b, inst.radius))
          report.collisions.push_back({s.t, i, j, distance(a, b)});
      }
    }
  }

  for (std::size_t k = 0; k < trace.steps.size(); ++k)
  {
    const auto& st = trace.steps[k];
    const SimState& next = states[k+1];
    if (next.t != st.t + 1)
      report.dynamics.push_back({st.t, 0, fmt::format(
          "time jumps from {} to {}", st.t, next.t)});

    for (std::size_t i = 0; i < n; ++i)
    {
      if (st.a[i] > 1 || st.d[i] > 1)
      {
        report.dynamics.push_back({st.t, i, "commands must be 0 or 1"});
        continue;
      }
      if (st.x[i] >= T && st.a[i] != 0)
        report.dynamics.push_back({st.t, i, "finished robot commanded to advance"});
      const PlanPos expected = st.x[i] + st.a[i]*st.d[i];
      if (next.x[i] != expected)
        report.dynamics.push_back({st.t, i, fmt::format(
            "x moves {} -> {}, dynamics give {}", st.x[i], next.x[i], expected)});
    }
  }

  report.completed = std::all_of(
      trace.final_state.x.begin(), trace.final_state.x.end(),
      [T](PlanPos v) { return v >= T; });
  return report;
}

//==============================================================================
std::optional<double> Metrics::mean_travel_time() const
{
  if (!flowtime || travel_times.empty())
    return std::nullopt;
  return static_cast<double>(*flowtime) / static_cast<double>(travel_times.size());
}

//==============================================================================
Metrics metrics(const Instance& inst, const Trace& trace)
{
  const std::size_t n = inst.robot_count();
  Metrics m;
  m.completed = trace.completed;

  if (trace.steps.empty() && trace.final_state.t > 0)
  {
    // Unrecorded run: trust the online bookkeeping.
    m.travel_times = trace.travel_times;
    m.collisions = trace.collisions;
  }
  else
  {
    m.travel_times.assign(n, std::nullopt);
    for (const auto& s : trace.states())
    {
      for (std::size_t i = 0; i < n && i < s.x.size(); ++i)
      {
        if (!m.travel_times[i]
            && s.x[i] >= inst.trajectories[i].completion_index())
          m.travel_times[i] = s.t;
      }
    }
    m.collisions = audit_trace(inst, trace).collisions.size();
  }

  const bool all_defined = n > 0 && std::all_of(
      m.travel_times.begin(), m.travel_times.end(),
      [](const auto& v) { return v.has_value(); });
  if (all_defined)
  {
    int worst = 0;
    int sum = 0;
    for (const auto& v : m.travel_times)
    {
      worst = std::max(worst, *v);
      sum += *v;
    }
    m.makespan = worst;
    m.flowtime = sum;
  }
  return m;
}

} // namespace rmtrack

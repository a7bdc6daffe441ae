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

#include <rmtrack/policies.hpp>

#include <fmt/format.h>

#include <stdexcept>

namespace rmtrack {

//==============================================================================
const char* to_string(PolicyKind kind)
{
  switch (kind)
  {
    case PolicyKind::RmTrack: return "rmtrack";
    case PolicyKind::AllStop: return "allstop";
    case PolicyKind::FreeFlow: return "freeflow";
  }
  return "unknown";
}

//==============================================================================
PolicyKind parse_policy(std::string_view name)
{
  for (auto kind : all_policies)
  {
    if (name == to_string(kind))
      return kind;
  }
  throw std::invalid_argument(fmt::format("unknown policy '{}'", name));
}

//==============================================================================
Decision rmtrack_decide(const PolicyContext& ctx)
{
  const auto& x = ctx.state.x;
  const auto& oracle = ctx.oracle;
  const PlanPos T = oracle.horizon();
  const std::size_t n = x.size();

  Decision d;
  d.advance.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i)
  {
    if (x[i] >= T)
    {
      d.advance[i] = 0;
      continue;
    }

    for (std::size_t j = 0; j < n; ++j)
    {
      if (j == i || x[i] <= x[j])
        continue;
      if (oracle.segment_blocked(i, j, x[i], x[j]))
      {
        d.advance[i] = 0;
        break;
      }
    }
  }
  return d;
}

//==============================================================================
Decision allstop_decide(const PolicyContext& ctx)
{
  if (!ctx.observed_block)
    throw std::invalid_argument("ALLSTOP needs the observed disturbance flags");

  const auto& x = ctx.state.x;
  const auto blocked = *ctx.observed_block;
  const PlanPos T = ctx.oracle.horizon();
  if (blocked.size() != x.size())
    throw std::invalid_argument("observed disturbance flags have the wrong size");

  bool any_blocked = false;
  for (std::size_t j = 0; j < x.size(); ++j)
  {
    if (x[j] < T && blocked[j])
      any_blocked = true;
  }

  Decision d;
  d.advance.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    d.advance[i] = (x[i] < T && !any_blocked) ? 1 : 0;
  return d;
}

//==============================================================================
Decision freeflow_decide(const PolicyContext& ctx)
{
  const auto& x = ctx.state.x;
  const PlanPos T = ctx.oracle.horizon();
  Decision d;
  d.advance.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    d.advance[i] = x[i] < T ? 1 : 0;
  return d;
}

//==============================================================================
Decision decide(PolicyKind kind, const PolicyContext& ctx)
{
  switch (kind)
  {
    case PolicyKind::RmTrack: return rmtrack_decide(ctx);
    case PolicyKind::AllStop: return allstop_decide(ctx);
    case PolicyKind::FreeFlow: return freeflow_decide(ctx);
  }
  throw std::invalid_argument("unknown policy");
}

} // namespace rmtrack

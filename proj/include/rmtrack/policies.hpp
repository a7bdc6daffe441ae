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

#include <rmtrack/coordspace.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rmtrack {

struct SimState
{
  int t = 0;
  std::vector<PlanPos> x;

  friend bool operator==(const SimState&, const SimState&) = default;
};

/// Advancement commands a_i in {0, 1}.
struct Decision
{
  std::vector<std::uint8_t> advance;

  friend bool operator==(const Decision&, const Decision&) = default;
};

struct PolicyContext
{
  const SimState& state;
  const CollisionOracle& oracle;
  /// Current-step disturbance flags (true = robot forced to stop). Only
  /// ALLSTOP reads them.
  std::optional<std::span<const std::uint8_t>> observed_block = std::nullopt;
};

enum class PolicyKind
{
  RmTrack,
  AllStop,
  FreeFlow,
};

const char* to_string(PolicyKind kind);

/// Accepts "rmtrack", "allstop" and "freeflow". Throws std::invalid_argument.
PolicyKind parse_policy(std::string_view name);

inline constexpr PolicyKind all_policies[] =
    {PolicyKind::RmTrack, PolicyKind::AllStop, PolicyKind::FreeFlow};

/// Robot i may advance unless it has finished, or it leads some robot j
/// (x_i > x_j) and the coordination-space segment {x_i + 1} x {x_j, ..., x_i + 1}
/// intersects C_ij. Reads positions only.
Decision rmtrack_decide(const PolicyContext& ctx);

/// Every unfinished robot stops while any unfinished robot is blocked.
/// Throws std::invalid_argument when observed_block is missing.
Decision allstop_decide(const PolicyContext& ctx);

/// Every unfinished robot proceeds; inter-robot collisions are ignored.
Decision freeflow_decide(const PolicyContext& ctx);

Decision decide(PolicyKind kind, const PolicyContext& ctx);

} // namespace rmtrack

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
#include <stdexcept>
#include <string>

namespace rmtrack {

struct Counterexample
{
  DisturbanceScript script;
  Trace trace;
};

struct VerificationResult
{
  bool safe = true;
  bool live = true;
  int worst_makespan = 0;
  std::size_t branches = 0;
  /// First failing branch in lexicographic script order.
  std::optional<Counterexample> counterexample;
};

/// Thrown when n * window exceeds max_exhaustive_bits.
class GuardError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int max_exhaustive_bits = 20;

/// Liveness cap T + W + n * T used for every branch.
int exhaustive_step_cap(const Instance& inst, int window);

/// Simulates every disturbance script over the first `window` steps (rows =
/// robots, enumerated in lexicographic order of the row-major table, 0 < 1),
/// followed by no disturbance. A branch is unsafe when the audit finds a
/// collision and not live when it fails to finish within
/// exhaustive_step_cap().
VerificationResult exhaustive_verify(
    const Instance& inst, PolicyKind policy, int window);

struct CheckResult
{
  bool ok = true;
  /// Time stamp of the first violating state or step.
  std::optional<int> t;
  std::string detail;
};

/// For every recorded state and every pair with x_i >= x_j, no k in
/// [x_j, x_i] has (x_i, k) in C_ij.
CheckResult check_lemma1(const Instance& inst, const Trace& trace);

/// At every recorded step either all robots are at T, or some robot with
/// x_i < T is commanded to advance; in the latter case some robot among
/// argmin x_i with x_i < T must itself be commanded to advance.
CheckResult check_progress(const Trace& trace);

} // namespace rmtrack

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

#include "support.hpp"

#include <rmtrack/oracle.hpp>

#include <doctest.h>

#include <random>

using namespace rmtrack;
using namespace rmtrack::test;

TEST_CASE("exhaustive check of mini-cross")
{
  const Instance inst = bundled("mini-cross");
  const VerificationResult rm = exhaustive_verify(inst, PolicyKind::RmTrack, 4);
  CHECK(rm.branches == 256);
  CHECK(rm.safe);
  CHECK(rm.live);
  CHECK_FALSE(rm.counterexample);
  CHECK(rm.worst_makespan >= inst.horizon());
  CHECK(rm.worst_makespan <= inst.horizon() + 4);

  const VerificationResult all = exhaustive_verify(inst, PolicyKind::AllStop, 4);
  CHECK(all.safe);
  CHECK(all.live);
  CHECK(all.worst_makespan == inst.horizon() + 4);
}

TEST_CASE("freeflow counterexample replays")
{
  const Instance inst = bundled("mini-cross");
  const VerificationResult ff = exhaustive_verify(inst, PolicyKind::FreeFlow, 4);
  CHECK_FALSE(ff.safe);
  REQUIRE(ff.counterexample);
  const auto& cx = *ff.counterexample;
  CHECK(cx.script.robot_count() == 2);
  CHECK(cx.script.length() == 4);

  const Trace replay = run(inst, PolicyKind::FreeFlow,
                           DisturbanceProcess::scripted(cx.script));
  CHECK(replay.steps == cx.trace.steps);
  CHECK_FALSE(audit_trace(inst, replay).safe());

  // Under freeflow x_i(t) is t minus the zeros seen so far, so the first
  // colliding script can be found directly.
  std::string first;
  for (unsigned bits = 0; bits < 256 && first.empty(); ++bits)
  {
    std::string text;
    for (int k = 7; k >= 0; --k)
    {
      text.push_back((bits >> k) & 1 ? '1' : '0');
      if (k == 4 || k == 0)
        text.push_back('\n');
    }
    for (int t = 0; t <= 30 && first.empty(); ++t)
    {
      PlanPos x[2];
      for (int i = 0; i < 2; ++i)
      {
        int held = 0;
        for (int k = 0; k < std::min(t, 4); ++k)
          held += text[i*5 + k] == '0';
        x[i] = std::min(t - held, inst.horizon());
      }
      if (distance(position_of(inst, 0, x[0]), position_of(inst, 1, x[1]))
          < 2*inst.radius)
        first = text;
    }
  }
  CHECK(cx.script.to_text() == first);
}

TEST_CASE("window zero is a single undisturbed run")
{
  const Instance inst = bundled("cross2");
  const VerificationResult res = exhaustive_verify(inst, PolicyKind::RmTrack, 0);
  CHECK(res.branches == 1);
  CHECK(res.safe);
  CHECK(res.live);
  CHECK(res.worst_makespan == inst.horizon());
}

TEST_CASE("guard on script count")
{
  const Instance inst = bundled("cross2");
  CHECK_THROWS_AS((void)exhaustive_verify(inst, PolicyKind::RmTrack, 11), GuardError);
  CHECK_THROWS_AS((void)exhaustive_verify(inst, PolicyKind::RmTrack, -1),
                  std::invalid_argument);
  CHECK(exhaustive_step_cap(inst, 3) == 16 + 3 + 2*16);
}

TEST_CASE("lemma check on recorded traces")
{
  const Instance inst = bundled("cross2");
  std::vector<std::vector<std::uint8_t>> rows{
      std::vector<std::uint8_t>(6, 0), std::vector<std::uint8_t>(6, 1)};
  const auto proc = DisturbanceProcess::scripted(DisturbanceScript(rows));

  const Trace rm = run(inst, PolicyKind::RmTrack, proc);
  CHECK(check_lemma1(inst, rm).ok);
  CHECK(check_progress(rm).ok);

  const Trace ff = run(inst, PolicyKind::FreeFlow, proc);
  const CheckResult lemma = check_lemma1(inst, ff);
  CHECK_FALSE(lemma.ok);
  REQUIRE(lemma.t);
  // Robot 1 reaches the row of the crossing while robot 0 is still on it.
  CHECK(*lemma.t <= 11);
}

TEST_CASE("progress check")
{
  Trace tr;
  tr.horizon = 5;
  tr.steps.push_back(TraceStep{0, {0, 0}, {1, 1}, {1, 1}});
  tr.steps.push_back(TraceStep{1, {1, 1}, {0, 1}, {1, 1}});
  tr.final_state = SimState{2, {1, 2}};
  CHECK(check_progress(tr).ok);

  // Nobody moves although work remains.
  tr.steps.push_back(TraceStep{2, {1, 2}, {0, 0}, {1, 1}});
  tr.final_state = SimState{3, {1, 2}};
  auto res = check_progress(tr);
  CHECK_FALSE(res.ok);
  CHECK(res.t == 2);

  // Only the leader moves.
  tr.steps.back() = TraceStep{2, {1, 2}, {0, 1}, {1, 1}};
  tr.final_state = SimState{3, {1, 3}};
  res = check_progress(tr);
  CHECK_FALSE(res.ok);
  CHECK(res.t == 2);

  // Finished robots at the minimum do not count.
  Trace done;
  done.horizon = 3;
  done.steps.push_back(TraceStep{0, {3, 1}, {0, 1}, {1, 1}});
  done.final_state = SimState{1, {3, 2}};
  CHECK(check_progress(done).ok);
}

TEST_CASE("property: a wider window never lowers the worst makespan")
{
  const Instance inst = bundled("mini-cross");
  int prev = 0;
  for (int w = 0; w <= 6; ++w)
  {
    const VerificationResult res = exhaustive_verify(inst, PolicyKind::RmTrack, w);
    CHECK(res.safe);
    CHECK(res.live);
    CHECK(res.branches == (std::size_t{1} << (2*w)));
    CHECK(res.worst_makespan >= prev);
    prev = res.worst_makespan;
  }
}

TEST_CASE("property: lemma and progress hold on random rmtrack runs")
{
  std::mt19937_64 rng(3);
  for (const std::string name : {"cross2", "mini-cross", "corridor-swap"})
  {
    const Instance inst = bundled(name);
    for (int iter = 0; iter < 25; ++iter)
    {
      const Trace tr = run(inst, PolicyKind::RmTrack,
                           DisturbanceProcess::bernoulli(0.4, rng(), 1 + iter % 3));
      CHECK(check_lemma1(inst, tr).ok);
      CHECK(check_progress(tr).ok);
    }
  }
}

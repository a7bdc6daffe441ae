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

#include <rmtrack/policies.hpp>

#include <doctest.h>

using namespace rmtrack;
using namespace rmtrack::test;

namespace {

Decision rm(const CollisionOracle& oracle, std::vector<PlanPos> x)
{
  const SimState s{0, std::move(x)};
  return rmtrack_decide(PolicyContext{s, oracle});
}

Decision as(const CollisionOracle& oracle, std::vector<PlanPos> x,
            std::vector<std::uint8_t> blocked)
{
  const SimState s{0, std::move(x)};
  return allstop_decide(PolicyContext{s, oracle, std::span<const std::uint8_t>(blocked)});
}

Decision ff(const CollisionOracle& oracle, std::vector<PlanPos> x)
{
  const SimState s{0, std::move(x)};
  return freeflow_decide(PolicyContext{s, oracle});
}

Decision dec(std::vector<std::uint8_t> a) { return Decision{std::move(a)}; }

} // anonymous namespace

TEST_CASE("rmtrack_decide on cross2")
{
  const Instance inst = bundled("cross2");
  const CollisionOracle oracle(inst);
  const PlanPos T = inst.horizon();

  CHECK(rm(oracle, {0, 9}) == dec({1, 0}));
  CHECK(rm(oracle, {0, 6}) == dec({1, 1}));
  CHECK(rm(oracle, {T, T}) == dec({0, 0}));
  CHECK(rm(oracle, {0, 0}) == dec({1, 1}));
  // Robot 2 may pass the crossing once robot 1 has cleared it.
  CHECK(rm(oracle, {7, 9}) == dec({1, 1}));
}

TEST_CASE("rmtrack uses positions only")
{
  const Instance inst = bundled("cross2");
  const CollisionOracle oracle(inst);
  std::vector<std::uint8_t> blocked{1, 1};
  for (PlanPos a = 0; a <= inst.horizon(); ++a)
    for (PlanPos b = 0; b <= inst.horizon(); ++b)
    {
      const SimState s{0, {a, b}};
      const auto plain = rmtrack_decide(PolicyContext{s, oracle});
      const auto with_flags = rmtrack_decide(
          PolicyContext{s, oracle, std::span<const std::uint8_t>(blocked)});
      CHECK(plain == with_flags);
    }
}

TEST_CASE("allstop_decide")
{
  const int T = 8;
  const Instance inst = make_instance(
      {line(0, 0, T, T), line(0, 10, T, T), line(0, 20, T, T)}, 0.5);
  const CollisionOracle oracle(inst);

  CHECK(as(oracle, {0, 0, 0}, {0, 0, 0}) == dec({1, 1, 1}));
  CHECK(as(oracle, {2, 3, 4}, {0, 1, 0}) == dec({0, 0, 0}));
  // A finished robot's disturbance does not stop the team.
  CHECK(as(oracle, {2, T, 4}, {0, 1, 0}) == dec({1, 0, 1}));

  const SimState s{0, {0, 0, 0}};
  CHECK_THROWS_AS((void)allstop_decide(PolicyContext{s, oracle}), std::invalid_argument);
}

TEST_CASE("freeflow_decide")
{
  const int T = 6;
  const Instance inst = make_instance({line(0, 0, T, T), line(0, 0.5, T, T)}, 1.0);
  const CollisionOracle oracle(inst);
  CHECK(ff(oracle, {0, 0}) == dec({1, 1}));
  CHECK(ff(oracle, {T, 3}) == dec({0, 1}));
  CHECK(ff(oracle, {T, T}) == dec({0, 0}));
}

TEST_CASE("policy names")
{
  for (auto kind : all_policies)
    CHECK(parse_policy(to_string(kind)) == kind);
  CHECK_THROWS_AS((void)parse_policy("orca"), std::invalid_argument);
}

TEST_CASE("property: some robot in argmin x always proceeds under rmtrack")
{
  // Holds for any state: robots at the minimum lead nobody, so nothing
  // can stop them except having finished.
  std::mt19937_64 rng(7);
  const std::vector<std::string> names = {"cross2", "mini-cross", "corridor-swap"};
  for (const auto& name : names)
  {
    const Instance inst = bundled(name);
    const CollisionOracle oracle(inst);
    const PlanPos T = inst.horizon();
    for (int iter = 0; iter < 500; ++iter)
    {
      std::vector<PlanPos> x(inst.robot_count());
      for (auto& v : x)
        v = static_cast<PlanPos>(rng() % (T + 1));
      const auto d = rm(oracle, x);
      const PlanPos lowest = *std::min_element(x.begin(), x.end());
      bool ok = lowest == T;
      for (std::size_t i = 0; i < x.size(); ++i)
      {
        if (x[i] == lowest && x[i] < T && d.advance[i])
          ok = true;
        if (x[i] == T)
          CHECK(d.advance[i] == 0);
      }
      CHECK(ok);
    }
  }
}

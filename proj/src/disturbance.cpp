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

#include <rmtrack/disturbance.hpp>

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace rmtrack {

//==============================================================================
DisturbanceScript::DisturbanceScript(
    std::vector<std::vector<std::uint8_t>> rows)
  : _rows(std::move(rows))
{
  for (const auto& row : _rows)
  {
    if (row.size() != _rows.front().size())
      throw std::invalid_argument("disturbance script must be rectangular");
    for (auto v : row)
    {
      if (v > 1)
        throw std::invalid_argument("disturbance script values must be 0 or 1");
    }
  }
}

//==============================================================================
DisturbanceScript DisturbanceScript::parse(std::string_view text)
{
  std::vector<std::vector<std::uint8_t>> rows;
  std::size_t start = 0;
  while (start <= text.size())
  {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    start = end + 1;

    if (line.empty() || line.front() == '#')
      continue;

    std::vector<std::uint8_t> row;
    for (char c : line)
    {
      if (c == '0' || c == '1')
        row.push_back(static_cast<std::uint8_t>(c - '0'));
      else if (c != ' ' && c != '\t')
        throw std::invalid_argument(
            fmt::format("unexpected character '{}' in disturbance script", c));
    }
    rows.push_back(std::move(row));
  }
  return DisturbanceScript(std::move(rows));
}

//==============================================================================
std::string DisturbanceScript::to_text() const
{
  std::string out;
  for (const auto& row : _rows)
  {
    for (auto v : row)
      out.push_back(v ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

//==============================================================================
int DisturbanceScript::value(std::size_t robot, int t) const
{
  if (robot >= _rows.size() || t < 0
      || static_cast<std::size_t>(t) >= _rows[robot].size())
    return 1;
  return _rows[robot][t];
}

//==============================================================================
DisturbanceProcess DisturbanceProcess::none()
{
  return DisturbanceProcess();
}

//==============================================================================
DisturbanceProcess DisturbanceProcess::bernoulli(
    double q, std::uint64_t seed, int block_len)
{
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument(
        fmt::format("disturbance intensity must lie in [0, 1), got {}", q));
  if (block_len < 1)
    throw std::invalid_argument("block length must be at least 1");

  DisturbanceProcess p;
  p._kind = Kind::BernoulliBlock;
  p._q = q;
  p._seed = seed;
  p._block_len = block_len;
  return p;
}

//==============================================================================
DisturbanceProcess DisturbanceProcess::scripted(DisturbanceScript script)
{
  DisturbanceProcess p;
  p._kind = Kind::Scripted;
  p._script = std::move(script);
  return p;
}

//==============================================================================
namespace {

std::uint64_t splitmix64(std::uint64_t z)
{
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

} // anonymous namespace

double block_uniform(std::uint64_t seed, std::uint64_t robot, std::uint64_t block)
{
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (robot * 0xd1b54a32d192ed03ull));
  h = splitmix64(h ^ (block * 0x8cb92ba72f3d8dd7ull));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

//==============================================================================
int DisturbanceProcess::delta(std::size_t robot, int t) const
{
  if (t < 0)
    throw std::invalid_argument("negative time step");

  switch (_kind)
  {
    case Kind::None:
      return 1;
    case Kind::Scripted:
      return _script.value(robot, t);
    case Kind::BernoulliBlock:
    {
      if (_q == 0.0)
        return 1;
      const auto block = static_cast<std::uint64_t>(t / _block_len);
      return block_uniform(_seed, robot, block) < _q ? 0 : 1;
    }
  }
  return 1;
}

//==============================================================================
const char* to_string(DisturbanceProcess::Kind kind)
{
  switch (kind)
  {
    case DisturbanceProcess::Kind::None: return "none";
    case DisturbanceProcess::Kind::BernoulliBlock: return "bernoulli_block";
    case DisturbanceProcess::Kind::Scripted: return "scripted";
  }
  return "unknown";
}

//==============================================================================
double lower_bound_expectation(double expected_travel, double q)
{
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("disturbance intensity must lie in [0, 1)");
  return expected_travel / (1.0 - q);
}

//==============================================================================
double allstop_expectation(double expected_travel, double q, std::size_t n)
{
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("disturbance intensity must lie in [0, 1)");
  if (n < 1)
    throw std::invalid_argument("team size must be at least 1");
  return expected_travel / std::pow(1.0 - q, static_cast<double>(n));
}

//==============================================================================
bool is_non_prohibitive(const DisturbanceProcess& proc, int horizon)
{
  switch (proc.kind())
  {
    case DisturbanceProcess::Kind::None:
      return true;
    case DisturbanceProcess::Kind::BernoulliBlock:
      throw std::invalid_argument(
          "bernoulli disturbances are non-prohibitive only almost surely");
    case DisturbanceProcess::Kind::Scripted:
      break;
  }

  for (const auto& row : proc.script().rows())
  {
    int last_zero = -1;
    for (std::size_t t = 0; t < row.size(); ++t)
    {
      if (row[t] == 0)
        last_zero = static_cast<int>(t);
    }
    if (last_zero + 1 > horizon)
      return false;
  }
  return true;
}

} // namespace rmtrack

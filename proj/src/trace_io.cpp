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
#include <json.hpp>

namespace rmtrack {

using ordered_json = nlohmann::ordered_json;

//==============================================================================
std::string write_trace(const Trace& trace)
{
  ordered_json header;
  header["instance"] = trace.instance_name;
  header["policy"] = trace.policy_name;
  header["disturbance"] = trace.disturbance;
  header["seed"] = trace.seed;
  header["q"] = trace.q;
  header["block_len"] = trace.block_len;
  header["n"] = trace.final_state.x.size();
  header["horizon"] = trace.horizon;
  header["completed"] = trace.completed;

  std::string out = header.dump() + "\n";
  for (const auto& s : trace.steps)
  {
    ordered_json rec;
    rec["t"] = s.t;
    rec["x"] = s.x;
    rec["a"] = s.a;
    rec["d"] = s.d;
    out += rec.dump() + "\n";
  }

  ordered_json fin;
  fin["t"] = trace.final_state.t;
  fin["x"] = trace.final_state.x;
  out += fin.dump() + "\n";
  return out;
}

//==============================================================================
Trace parse_trace(std::string_view text)
{
  std::vector<nlohmann::json> lines;
  std::size_t start = 0;
  while (start < text.size())
  {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos)
      continue;
    try
    {
      lines.push_back(nlohmann::json::parse(line));
    }
    catch (const nlohmann::json::parse_error& e)
    {
      throw ParseError(fmt::format("trace line {}: {}", lines.size() + 1, e.what()));
    }
  }

  if (lines.size() < 2)
    throw ParseError("trace needs a header and a final state");

  Trace trace;
  try
  {
    const auto& h = lines.front();
    trace.instance_name = h.value("instance", std::string());
    trace.policy_name = h.value("policy", std::string());
    trace.disturbance = h.value("disturbance", std::string("none"));
    trace.seed = h.value("seed", std::uint64_t{0});
    trace.q = h.value("q", 0.0);
    trace.block_len = h.value("block_len", 1);
    trace.completed = h.value("completed", false);
    trace.horizon = h.value("horizon", 0);

    for (std::size_t k = 1; k + 1 < lines.size(); ++k)
    {
      const auto& rec = lines[k];
      TraceStep s;
      s.t = rec.at("t").get<int>();
      s.x = rec.at("x").get<std::vector<PlanPos>>();
      s.a = rec.at("a").get<std::vector<std::uint8_t>>();
      s.d = rec.at("d").get<std::vector<std::uint8_t>>();
      trace.steps.push_back(std::move(s));
    }

    const auto& fin = lines.back();
    trace.final_state.t = fin.at("t").get<int>();
    trace.final_state.x = fin.at("x").get<std::vector<PlanPos>>();
  }
  catch (const nlohmann::json::exception& e)
  {
    throw ParseError(fmt::format("malformed trace record: {}", e.what()));
  }

  trace.travel_times.assign(trace.final_state.x.size(), std::nullopt);
  return trace;
}

} // namespace rmtrack

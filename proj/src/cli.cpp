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

#include <rmtrack/cli.hpp>

#include <rmtrack/bench.hpp>
#include <rmtrack/oracle.hpp>
#include <rmtrack/planner.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <ostream>
#include <sstream>

namespace rmtrack {

namespace {

struct PlanOptions
{
  std::string map_path;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  double radius = 0.3;
  std::string name;
  std::string out;
};

struct SimulateOptions
{
  std::string instance_path;
  std::string policy = "rmtrack";
  double q = 0.0;
  std::uint64_t seed = 0;
  int block_len = 1;
  std::string script_path;
  int max_steps = 0;
  std::string out;
};

struct VerifyOptions
{
  std::string instance_path;
  std::string trace_path;
  int exhaustive = -1;
  std::string policy = "rmtrack";
  std::string counterexample_out;
};

struct BenchOptions
{
  std::vector<std::string> instance_paths;
  std::string policies = "rmtrack,allstop,freeflow";
  std::string q_grid;
  int seeds = 20;
  std::uint64_t seed = 0;
  int block_len = 1;
  int max_steps = 0;
  int workers = 1;
  std::string out;
};

std::vector<std::string> split(const std::string& text, char sep)
{
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
  {
    if (!item.empty())
      parts.push_back(item);
  }
  return parts;
}

void emit(const std::string& path, const std::string& content, std::ostream& out)
{
  if (path.empty() || path == "-")
    out << content;
  else
    write_text_file(path, content);
}

std::string travel_text(const std::vector<std::optional<int>>& tt)
{
  std::string s;
  for (std::size_t i = 0; i < tt.size(); ++i)
  {
    if (i > 0)
      s += ' ';
    s += tt[i] ? std::to_string(*tt[i]) : std::string("-");
  }
  return s;
}

//==============================================================================
int cmd_plan(const PlanOptions& opt, std::ostream& out, std::ostream& err)
{
  const MapFile map = parse_map(read_text_file(opt.map_path));

  ProblemSpec spec;
  spec.workspace = map.workspace;
  spec.n = opt.n;
  spec.radius = opt.radius;
  spec.cell_size = map.scale;
  spec.timestep = 1.0;
  spec.max_speed = map.scale;
  spec.seed = opt.seed;
  spec.name = opt.name.empty()
      ? fmt::format("{}-n{}-s{}", map.name.empty() ? "map" : map.name, opt.n, opt.seed)
      : opt.name;

  Instance inst;
  try
  {
    inst = prioritized_plan(spec);
  }
  catch (const PlanningError& e)
  {
    err << "planning failed (robot " << e.robot() << "): " << e.what() << "\n";
    return exit_code::planning_failure;
  }

  const std::string text = save_instance(inst);

  // Re-check what will be written, exactly as a consumer would read it.
  const Instance reread = parse_instance(text);
  const auto report = validate_instance(reread);
  const CollisionOracle oracle(reread);
  const auto margin = verify_margin(oracle);
  if (!report.ok() || !margin.ok())
  {
    err << "planned instance failed verification\n"
        << report.summary() << margin.summary();
    return exit_code::property_violation;
  }

  emit(opt.out, text, out);
  if (!opt.out.empty() && opt.out != "-")
    out << fmt::format("planned {} robots, horizon {} -> {}\n",
                       inst.robot_count(), inst.horizon(), opt.out);
  return exit_code::ok;
}

//==============================================================================
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err)
{
  const Instance inst = read_instance_file(opt.instance_path);
  const PolicyKind policy = parse_policy(opt.policy);

  const auto proc = opt.script_path.empty()
      ? DisturbanceProcess::bernoulli(opt.q, opt.seed, opt.block_len)
      : DisturbanceProcess::scripted(
            DisturbanceScript::parse(read_text_file(opt.script_path)));

  RunConfig cfg;
  cfg.max_steps = opt.max_steps;
  cfg.record_trace = true;

  Trace trace;
  try
  {
    trace = run(inst, policy, proc, cfg);
  }
  catch (const MarginError& e)
  {
    err << e.what() << "\n";
    return exit_code::margin_violation;
  }

  const Metrics m = metrics(inst, trace);
  if (!opt.out.empty())
    write_text_file(opt.out, write_trace(trace));

  out << fmt::format("instance: {}\n", inst.name)
      << fmt::format("policy: {}\n", to_string(policy))
      << fmt::format("completed: {}\n", m.completed ? "yes" : "no")
      << fmt::format("steps: {}\n", trace.final_state.t)
      << fmt::format("travel_times: {}\n", travel_text(m.travel_times))
      << fmt::format("makespan: {}\n", m.makespan ? std::to_string(*m.makespan) : "-")
      << fmt::format("flowtime: {}\n", m.flowtime ? std::to_string(*m.flowtime) : "-")
      << fmt::format("collisions: {}\n", m.collisions);

  return m.completed ? exit_code::ok : exit_code::timeout;
}

//==============================================================================
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err)
{
  const Instance inst = parse_instance(read_text_file(opt.instance_path));
  bool ok = true;

  const auto report = validate_instance(inst);
  out << "validate: " << (report.ok() ? "ok\n" : "FAILED\n");
  if (!report.ok())
  {
    out << report.summary();
    return exit_code::property_violation;
  }

  const CollisionOracle oracle(inst);
  const auto margin = verify_margin(oracle);
  out << "margin: " << (margin.ok() ? "ok\n" : "FAILED\n");
  if (!margin.ok())
  {
    out << margin.summary();
    ok = false;
  }

  if (!opt.trace_path.empty())
  {
    const Trace trace = parse_trace(read_text_file(opt.trace_path));
    AuditReport audit;
    try
    {
      audit = audit_trace(inst, trace);
    }
    catch (const std::invalid_argument& e)
    {
      err << "trace does not match instance: " << e.what() << "\n";
      return exit_code::property_violation;
    }

    out << "audit: " << (audit.ok() ? "ok\n" : "FAILED\n");
    if (!audit.ok())
    {
      const int first = !audit.collisions.empty() ? audit.collisions.front().t
                                                  : audit.dynamics.front().t;
      out << fmt::format("first violation at step {}\n", first) << audit.summary();
      ok = false;
    }

    const auto lemma = check_lemma1(inst, trace);
    out << "lemma1: " << (lemma.ok ? "ok\n" : "FAILED\n");
    if (!lemma.ok)
    {
      out << fmt::format("first violation at step {}: {}\n", *lemma.t, lemma.detail);
      ok = false;
    }

    Trace with_horizon = trace;
    with_horizon.horizon = inst.horizon();
    const auto progress = check_progress(with_horizon);
    out << "progress: " << (progress.ok ? "ok\n" : "FAILED\n");
    if (!progress.ok)
    {
      out << fmt::format("first violation at step {}: {}\n",
                         *progress.t, progress.detail);
      ok = false;
    }
  }

  if (opt.exhaustive >= 0)
  {
    const PolicyKind policy = parse_policy(opt.policy);
    VerificationResult result;
    try
    {
      result = exhaustive_verify(inst, policy, opt.exhaustive);
    }
    catch (const GuardError& e)
    {
      err << e.what() << "\n";
      return exit_code::guard_violation;
    }
    catch (const MarginError& e)
    {
      err << e.what() << "\n";
      return exit_code::margin_violation;
    }

    out << fmt::format("exhaustive ({}, W={}): {} branches, safe={}, live={}, "
                       "worst makespan {}\n",
                       to_string(policy), opt.exhaustive, result.branches,
                       result.safe ? "yes" : "no", result.live ? "yes" : "no",
                       result.worst_makespan);
    if (result.counterexample)
    {
      out << "counterexample script:\n" << result.counterexample->script.to_text();
      if (!opt.counterexample_out.empty())
        write_text_file(opt.counterexample_out,
                        result.counterexample->script.to_text());
      ok = false;
    }
  }

  return ok ? exit_code::ok : exit_code::property_violation;
}

//==============================================================================
int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream&)
{
  std::vector<Instance> instances;
  for (const auto& path : opt.instance_paths)
    instances.push_back(read_instance_file(path));

  BenchConfig cfg;
  cfg.policies.clear();
  for (const auto& name : split(opt.policies, ','))
    cfg.policies.push_back(parse_policy(name));
  if (!opt.q_grid.empty())
  {
    cfg.q_grid.clear();
    for (const auto& v : split(opt.q_grid, ','))
      cfg.q_grid.push_back(std::stod(v));
  }
  cfg.seeds = opt.seeds;
  cfg.base_seed = opt.seed;
  cfg.block_len = opt.block_len;
  cfg.max_steps = opt.max_steps;
  cfg.workers = opt.workers;

  const auto rows = run_bench(instances, cfg);
  emit(opt.out, format_bench_csv(instances, rows), out);
  if (!opt.out.empty() && opt.out != "-")
    out << fmt::format("wrote {} rows to {}\n", rows.size(), opt.out);
  return exit_code::ok;
}

} // anonymous namespace

//==============================================================================
int run_cli(const std::vector<std::string>& args,
            std::ostream& out, std::ostream& err)
{
  CLI::App app{"Execute multi-robot trajectory plans under delaying disturbances", "rmtrack"};
  app.require_subcommand(1);

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "Plan a well-formed instance on a map");
  plan_cmd->add_option("--map", plan.map_path, "Map file")->required();
  plan_cmd->add_option("--n", plan.n, "Number of robots");
  plan_cmd->add_option("--seed", plan.seed, "Endpoint sampling seed");
  plan_cmd->add_option("--radius", plan.radius, "Robot radius in meters");
  plan_cmd->add_option("--name", plan.name, "Instance name");
  plan_cmd->add_option("--out", plan.out, "Output instance file (stdout if absent)");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Execute an instance under disturbances");
  sim_cmd->add_option("instance", sim.instance_path, "Instance file")->required();
  sim_cmd->add_option("--policy", sim.policy, "rmtrack | allstop | freeflow");
  sim_cmd->add_option("--q", sim.q, "Disturbance intensity in [0, 1)");
  sim_cmd->add_option("--seed", sim.seed, "Disturbance seed");
  sim_cmd->add_option("--block-len", sim.block_len, "Steps per disturbance decision");
  sim_cmd->add_option("--script", sim.script_path, "Scripted disturbance grid");
  sim_cmd->add_option("--max-steps", sim.max_steps, "Step cap (default 40 T)");
  sim_cmd->add_option("--out", sim.out, "Trace output file");

  VerifyOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check an instance and optionally a trace");
  ver_cmd->add_option("instance", ver.instance_path, "Instance file")->required();
  ver_cmd->add_option("--trace", ver.trace_path, "Trace file to audit");
  ver_cmd->add_option("--exhaustive", ver.exhaustive,
                      "Enumerate every disturbance over the first W steps");
  ver_cmd->add_option("--policy", ver.policy, "Policy for exhaustive mode");
  ver_cmd->add_option("--counterexample-out", ver.counterexample_out,
                      "Write the first failing disturbance script here");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep policies, intensities and seeds");
  bench_cmd->add_option("instances", bench.instance_paths, "Instance files")->required();
  bench_cmd->add_option("--policies", bench.policies, "Comma-separated policy names");
  bench_cmd->add_option("--q-grid", bench.q_grid, "Comma-separated intensities");
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds per cell");
  bench_cmd->add_option("--seed", bench.seed, "First seed");
  bench_cmd->add_option("--block-len", bench.block_len, "Steps per disturbance decision");
  bench_cmd->add_option("--max-steps", bench.max_steps, "Step cap (default 40 T)");
  bench_cmd->add_option("--workers", bench.workers, "Worker threads");
  bench_cmd->add_option("--out", bench.out, "CSV output file (stdout if absent)");

  try
  {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  }
  catch (const CLI::ParseError& e)
  {
    return app.exit(e, out, err);
  }

  try
  {
    if (*plan_cmd)
      return cmd_plan(plan, out, err);
    if (*sim_cmd)
      return cmd_simulate(sim, out, err);
    if (*ver_cmd)
      return cmd_verify(ver, out, err);
    if (*bench_cmd)
      return cmd_bench(bench, out, err);
  }
  catch (const ValidationError& e)
  {
    err << e.what() << "\n";
    return exit_code::property_violation;
  }
  catch (const std::exception& e)
  {
    err << "error: " << e.what() << "\n";
    return exit_code::property_violation;
  }
  return exit_code::property_violation;
}

} // namespace rmtrack

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

#include <rmtrack/bench.hpp>

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <thread>

namespace rmtrack {

//==============================================================================
std::vector<double> BenchConfig::default_q_grid()
{
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k)
    grid.push_back(k*0.05);
  return grid;
}

//==============================================================================
double undisturbed_mean_travel(const Instance& inst)
{
  if (inst.robot_count() == 0)
    return 0.0;
  double sum = 0.0;
  for (const auto& traj : inst.trajectories)
    sum += traj.completion_index();
  return sum / static_cast<double>(inst.robot_count());
}

//==============================================================================
std::vector<BenchRow> run_bench(
    const std::vector<Instance>& instances, const BenchConfig& cfg)
{
  const std::size_t n_inst = instances.size();
  const std::size_t n_q = cfg.q_grid.size();
  const std::size_t n_seed = static_cast<std::size_t>(std::max(cfg.seeds, 0));
  const std::size_t n_pol = cfg.policies.size();
  const std::size_t cells = n_inst*n_q*n_seed;

  std::vector<BenchRow> rows(cells*n_pol);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&]()
  {
    for (std::size_t cell = next++; cell < cells; cell = next++)
    {
      const std::size_t ii = cell / (n_q*n_seed);
      const std::size_t qi = (cell / n_seed) % n_q;
      const std::size_t si = cell % n_seed;
      const Instance& inst = instances[ii];
      const double q = cfg.q_grid[qi];
      const std::uint64_t seed = cfg.base_seed + si;

      try
      {
        const CollisionOracle oracle(inst);
        const auto proc = DisturbanceProcess::bernoulli(q, seed, cfg.block_len);
        RunConfig rc;
        rc.max_steps = cfg.max_steps;
        rc.record_trace = false;
        rc.audit_online = true;

        const auto free_trace = run(inst, PolicyKind::FreeFlow, proc, rc, &oracle);
        const auto lower = metrics(inst, free_trace).mean_travel_time();
        const double allstop = allstop_expectation(
            undisturbed_mean_travel(inst), q, inst.robot_count());

        for (std::size_t pi = 0; pi < n_pol; ++pi)
        {
          const PolicyKind policy = cfg.policies[pi];
          const Trace trace = policy == PolicyKind::FreeFlow
              ? free_trace : run(inst, policy, proc, rc, &oracle);
          const Metrics m = metrics(inst, trace);

          BenchRow& row = rows[cell*n_pol + pi];
          row.instance = inst.name;
          row.policy = policy;
          row.q = q;
          row.seed = seed;
          row.completed = m.completed;
          row.makespan = m.makespan;
          row.mean_travel_time = m.mean_travel_time();
          row.lower_bound = lower;
          row.allstop_expectation = allstop;
          row.collisions = m.collisions;
        }
      }
      catch (...)
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error)
          error = std::current_exception();
      }
    }
  };

  const int workers = std::max(1, cfg.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool)
    t.join();

  if (error)
    std::rethrow_exception(error);
  return rows;
}

//==============================================================================
namespace {

std::string opt_int(const std::optional<int>& v)
{
  return v ? fmt::format("{}", *v) : std::string();
}

std::string opt_real(const std::optional<double>& v)
{
  return v ? fmt::format("{:.4f}", *v) : std::string();
}

struct SummaryCell
{
  std::size_t runs = 0;
  std::size_t completed = 0;
  double travel_sum = 0.0;
  double lower_sum = 0.0;
  std::vector<double> diffs;
};

} // anonymous namespace

//==============================================================================
std::string format_bench_csv(
    const std::vector<Instance>& instances, const std::vector<BenchRow>& rows)
{
  std::string out;
  out += "# rmtrack-bench v1 columns: instance,policy,q,seed,completed,makespan,"
         "mean_travel_time,lower_bound,allstop_expectation,collisions\n";
  out += "instance,policy,q,seed,completed,makespan,mean_travel_time,"
         "lower_bound,allstop_expectation,collisions\n";
  for (const auto& r : rows)
  {
    out += fmt::format("{},{},{},{},{},{},{},{},{:.4f},{}\n",
                       r.instance, to_string(r.policy), r.q, r.seed,
                       r.completed ? 1 : 0, opt_int(r.makespan),
                       opt_real(r.mean_travel_time), opt_real(r.lower_bound),
                       r.allstop_expectation, r.collisions);
  }

  // Keyed by first appearance so the summary follows the row order.
  std::vector<std::tuple<std::string, PolicyKind, double>> order;
  std::map<std::tuple<std::string, int, double>, SummaryCell> cells;
  for (const auto& r : rows)
  {
    const auto key = std::make_tuple(r.instance, static_cast<int>(r.policy), r.q);
    auto [it, fresh] = cells.try_emplace(key);
    if (fresh)
      order.emplace_back(r.instance, r.policy, r.q);
    auto& c = it->second;
    ++c.runs;
    if (r.completed && r.mean_travel_time && r.lower_bound)
    {
      ++c.completed;
      c.travel_sum += *r.mean_travel_time;
      c.lower_sum += *r.lower_bound;
      c.diffs.push_back(*r.mean_travel_time - *r.lower_bound);
    }
  }

  std::map<std::string, const Instance*> by_name;
  for (const auto& inst : instances)
    by_name.emplace(inst.name, &inst);

  out += "\n# summary\n";
  out += "instance,policy,q,runs,completed,mean_travel_time,mean_lower_bound,"
         "sd_diff_lower_bound,closed_form_lower_bound,allstop_expectation\n";
  for (const auto& [name, policy, q] : order)
  {
    const auto& c = cells.at(std::make_tuple(name, static_cast<int>(policy), q));
    std::optional<double> mean, lower, sd;
    if (c.completed > 0)
    {
      const double k = static_cast<double>(c.completed);
      mean = c.travel_sum / k;
      lower = c.lower_sum / k;
      double md = 0.0;
      for (double d : c.diffs)
        md += d;
      md /= k;
      double var = 0.0;
      for (double d : c.diffs)
        var += (d - md)*(d - md);
      sd = c.completed > 1 ? std::sqrt(var / (k - 1.0)) : 0.0;
    }

    std::optional<double> closed_lower, closed_allstop;
    if (auto it = by_name.find(name); it != by_name.end())
    {
      const double e = undisturbed_mean_travel(*it->second);
      closed_lower = lower_bound_expectation(e, q);
      closed_allstop = allstop_expectation(e, q, it->second->robot_count());
    }

    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n",
                       name, to_string(policy), q, c.runs, c.completed,
                       opt_real(mean), opt_real(lower), opt_real(sd),
                       opt_real(closed_lower), opt_real(closed_allstop));
  }
  return out;
}

} // namespace rmtrack

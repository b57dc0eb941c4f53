#include "amrsched/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "amrsched/baselines.hpp"
#include "amrsched/error.hpp"
#include "json.hpp"

namespace amrsched {

using json = nlohmann::ordered_json;

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::its: return "its";
    case Algorithm::ts: return "ts";
    case Algorithm::vns: return "vns";
    case Algorithm::greedy: return "greedy";
    case Algorithm::exact: return "exact";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  for (Algorithm a : {Algorithm::its, Algorithm::ts, Algorithm::vns, Algorithm::greedy, Algorithm::exact}) {
    if (text == to_string(a)) return a;
  }
  throw Error("unknown algorithm '" + std::string(text) + "' (expected its, ts, vns, greedy or exact)");
}

SearchResult run_algorithm(const Instance& inst, Algorithm algorithm, const SearchParams& params) {
  switch (algorithm) {
    case Algorithm::its: return its_run(inst, params);
    case Algorithm::ts: return plain_ts_run(inst, params);
    case Algorithm::vns: return vns_run(inst, params);
    case Algorithm::greedy: return greedy_run(inst);
    case Algorithm::exact: {
      ExactResult e = exhaustive_solve(inst);
      SearchResult r;
      r.plan = std::move(e.plan);
      r.cost = e.cost;
      return r;
    }
  }
  throw Error("unknown algorithm");
}

std::uint64_t run_seed(std::uint64_t seed, int run) { return derive_seed(seed, static_cast<std::uint64_t>(run)); }

SolveSummary solve(const Instance& inst, Algorithm algorithm, const SearchParams& params, int runs, int jobs) {
  if (runs < 1) throw Error("runs must be at least 1");
  if (algorithm == Algorithm::exact && inst.size() > kExhaustiveLimit) {
    throw Error("exact solver refuses " + std::to_string(inst.size()) + " requests (limit " +
                std::to_string(kExhaustiveLimit) + ")");
  }
  SolveSummary s;
  s.instance = inst.name();
  s.algorithm = algorithm;
  s.params = params;
  s.runs.resize(static_cast<std::size_t>(runs));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < runs;) {
      RunRecord& rec = s.runs[static_cast<std::size_t>(i)];
      rec.run = i + 1;
      rec.seed = run_seed(params.seed, i);
      SearchParams p = params;
      p.seed = rec.seed;
      const auto t0 = std::chrono::steady_clock::now();
      rec.result = run_algorithm(inst, algorithm, p);
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rec.r = service_probability(rec.result.plan, inst).overall;
    }
  };
  const int threads = std::clamp(jobs, 1, runs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  double sum = 0.0, seconds = 0.0;
  for (std::size_t i = 0; i < s.runs.size(); ++i) {
    const double total = s.runs[i].result.cost.total;
    sum += total;
    seconds += s.runs[i].seconds;
    if (i == 0 || total < s.f_bst) {
      s.f_bst = total;
      s.best_run = static_cast<int>(i);
    }
  }
  s.f_avg = sum / runs;
  s.mean_seconds = seconds / runs;
  return s;
}

std::string route_listing(const Plan& plan, const Instance& inst) {
  const Schedule sched = propagate(plan, inst);
  const ServiceProbability sp = service_probability(sched);
  std::ostringstream out;
  out << "AMR\tRoute\tAT\tr\n";
  for (std::size_t k = 0; k < plan.amrs.size(); ++k) {
    std::string at;
    for (const auto& trip : sched.amrs[k].trips) {
      for (const auto& v : trip.visits) at += (at.empty() ? "" : "-") + offset_to_clock(v.arrival.mean, inst.data().t0);
      at += "-" + offset_to_clock(trip.return_arrival.mean, inst.data().t0);
    }
    out << k + 1 << '\t' << route_string(plan.amrs[k]) << '\t' << at << '\t' << sp.per_route[k] << '\n';
  }
  return out.str();
}

namespace {

json params_json(const SearchParams& p) {
  return {{"iterations", p.iterations},
          {"tenure", p.tenure},
          {"delta1", p.delta1},
          {"delta2", p.delta2},
          {"violation_threshold", p.violation_threshold},
          {"scan", to_string(p.scan)},
          {"sample_size", p.sample_size},
          {"decrement", p.decrement == DecrementRule::verbatim ? "verbatim" : "uniform"},
          {"weight_period", p.weight_period},
          {"seed", p.seed}};
}

json cost_json(const CostBreakdown& c) {
  return {{"fixed", c.fixed}, {"penalty", c.penalty}, {"travel", c.travel}, {"total", c.total}};
}

}  // namespace

std::string results_document(const SolveSummary& s, const Instance& inst) {
  json runs = json::array();
  for (const RunRecord& r : s.runs) {
    runs.push_back({{"run", r.run},
                    {"seed", r.seed},
                    {"total", r.result.cost.total},
                    {"cost", cost_json(r.result.cost)},
                    {"m", r.result.plan.fleet_size()},
                    {"r", r.r},
                    {"trips", r.result.plan.amrs}});
  }
  const RunRecord& best = s.runs[static_cast<std::size_t>(s.best_run)];
  json doc = {{"format", "amrsched-results/1"},
              {"instance", s.instance},
              {"algorithm", to_string(s.algorithm)},
              {"params", params_json(s.params)},
              {"runs_count", s.runs.size()},
              {"F_avg", s.f_avg},
              {"F_bst", s.f_bst},
              {"best_run", best.run},
              {"runs", runs},
              {"best_plan", json::parse(save_plan(best.result.plan, inst))}};
  return doc.dump(1) + "\n";
}

std::string results_table(const SolveSummary& s) {
  std::ostringstream out;
  out.precision(10);
  out << "run\tseed\ttotal\tfixed\tpenalty\ttravel\tm\tr\ttime_s\n";
  for (const RunRecord& r : s.runs) {
    const CostBreakdown& c = r.result.cost;
    out << r.run << '\t' << r.seed << '\t' << c.total << '\t' << c.fixed << '\t' << c.penalty << '\t' << c.travel
        << '\t' << r.result.plan.fleet_size() << '\t' << r.r << '\t' << r.seconds << '\n';
  }
  out << "instance\talgorithm\tF_bst\tF_avg\tTime(s)\n";
  out << s.instance << '\t' << to_string(s.algorithm) << '\t' << s.f_bst << '\t' << s.f_avg << '\t' << s.mean_seconds
      << '\n';
  return out.str();
}

Comparison compare(const std::vector<std::string>& names, const std::vector<std::vector<SolveSummary>>& results,
                   const std::vector<Algorithm>& algorithms, Algorithm reference) {
  Comparison c;
  c.algorithms = algorithms;
  const auto ref = std::find(algorithms.begin(), algorithms.end(), reference);
  if (ref == algorithms.end()) throw Error("reference algorithm is not among the compared ones");
  c.reference = static_cast<int>(ref - algorithms.begin());
  const std::size_t a = algorithms.size();
  c.average_gap.assign(a, 0.0);
  for (std::size_t i = 0; i < names.size(); ++i) {
    CompareRow row;
    row.instance = names[i];
    for (std::size_t j = 0; j < a; ++j) row.f_avg.push_back(results[i][j].f_avg);
    const double base = row.f_avg[static_cast<std::size_t>(c.reference)];
    for (std::size_t j = 0; j < a; ++j) {
      const double g = (row.f_avg[j] - base) / base * 100.0;
      row.gap.push_back(g);
      c.average_gap[j] += g;
    }
    c.rows.push_back(std::move(row));
  }
  if (!names.empty())
    for (double& g : c.average_gap) g /= static_cast<double>(names.size());
  return c;
}

std::string comparison_table(const Comparison& c) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  out << "instance";
  for (Algorithm a : c.algorithms) out << "\tF_avg(" << to_string(a) << ')';
  for (std::size_t j = 0; j < c.algorithms.size(); ++j) {
    if (static_cast<int>(j) != c.reference) out << "\tG'(" << to_string(c.algorithms[j]) << ")%";
  }
  out << '\n';
  auto gaps = [&](const std::vector<double>& g) {
    for (std::size_t j = 0; j < g.size(); ++j)
      if (static_cast<int>(j) != c.reference) out << '\t' << g[j];
  };
  std::vector<double> mean_f(c.algorithms.size(), 0.0);
  for (const CompareRow& r : c.rows) {
    out << r.instance;
    for (std::size_t j = 0; j < r.f_avg.size(); ++j) {
      out << '\t' << r.f_avg[j];
      mean_f[j] += r.f_avg[j];
    }
    gaps(r.gap);
    out << '\n';
  }
  out << "Average";
  for (double f : mean_f) out << '\t' << (c.rows.empty() ? 0.0 : f / static_cast<double>(c.rows.size()));
  gaps(c.average_gap);
  out << '\n';
  return out.str();
}

}  // namespace amrsched

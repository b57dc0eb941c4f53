#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "amrsched/instance.hpp"
#include "amrsched/plan.hpp"
#include "amrsched/tabu_search.hpp"

namespace amrsched {

enum class Algorithm { its, ts, vns, greedy, exact };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view text);

/// One solver call with `params.seed` as its seed.
SearchResult run_algorithm(const Instance& inst, Algorithm algorithm, const SearchParams& params);

struct RunRecord {
  int run = 0;
  std::uint64_t seed = 0;
  SearchResult result;
  double r = 1.0;
  double seconds = 0.0;  // wall clock
};

struct SolveSummary {
  std::string instance;
  Algorithm algorithm = Algorithm::its;
  SearchParams params;
  std::vector<RunRecord> runs;
  double f_avg = 0.0;
  double f_bst = 0.0;
  int best_run = 0;  // index into runs
  double mean_seconds = 0.0;
};

/// Seed of run `run` in a batch started from `seed`.
std::uint64_t run_seed(std::uint64_t seed, int run);

/// `runs` independent runs with seeds run_seed(params.seed, i), at most
/// `jobs` at a time. The summary is the same for every `jobs`.
SolveSummary solve(const Instance& inst, Algorithm algorithm, const SearchParams& params, int runs, int jobs = 1);

/// JSON results document: parameters, F_avg, F_bst, per-run totals and cost
/// breakdowns, m, r, and the best plan in route-listing form. Wall-clock
/// times are left out so that reruns give identical bytes.
std::string results_document(const SolveSummary& summary, const Instance& inst);

/// Tab-separated per-run table followed by an F_avg / F_bst / Time line.
std::string results_table(const SolveSummary& summary);

/// "AMR\tRoute\tAT\tr" listing of a plan with clock times.
std::string route_listing(const Plan& plan, const Instance& inst);

struct CompareRow {
  std::string instance;
  std::vector<double> f_avg;  // per algorithm
  std::vector<double> gap;    // G' in percent against the reference column
};

struct Comparison {
  std::vector<Algorithm> algorithms;
  int reference = 0;  // column that G' is measured against
  std::vector<CompareRow> rows;
  std::vector<double> average_gap;
};

/// G' = (F_alg - F_ref) / F_ref * 100 from per-instance F_avg values.
Comparison compare(const std::vector<std::string>& names, const std::vector<std::vector<SolveSummary>>& results,
                   const std::vector<Algorithm>& algorithms, Algorithm reference = Algorithm::its);

/// Tab-separated table with F_avg and G' columns and an Average row.
std::string comparison_table(const Comparison& c);

}  // namespace amrsched

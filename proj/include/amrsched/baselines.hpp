#pragma once

#include "amrsched/instance.hpp"
#include "amrsched/plan.hpp"
#include "amrsched/rng.hpp"
#include "amrsched/tabu_search.hpp"

namespace amrsched {

/// Uniform random permutation cut into capacity-feasible trips, one AMR per
/// trip.
Plan random_initial(const Instance& inst, Rng& rng);

/// The tabu loop from a random start with a uniform operator choice.
SearchResult plain_ts_run(const Instance& inst, const SearchParams& params);

/// Basic variable neighborhood search over (swap*, 2-opt*, relocation*):
/// shake with k random moves of neighborhood k, best-improvement descent in
/// the same neighborhood, restart from the first neighborhood on success.
/// Each shake+descent is one of `params.iterations`.
SearchResult vns_run(const Instance& inst, const SearchParams& params);

/// Greedy insertion alone, reported in the same shape as the searches.
SearchResult greedy_run(const Instance& inst);

inline constexpr int kExhaustiveLimit = 8;

struct ExactResult {
  Plan plan;
  CostBreakdown cost;
};

/// Global optimum by enumerating every split of the requests into AMRs,
/// every service order and every depot-return position. Refuses instances
/// above kExhaustiveLimit requests.
ExactResult exhaustive_solve(const Instance& inst);

}  // namespace amrsched

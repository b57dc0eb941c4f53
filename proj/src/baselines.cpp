#include "amrsched/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "amrsched/error.hpp"
#include "amrsched/greedy.hpp"
#include "amrsched/neighborhood.hpp"

namespace amrsched {

Plan random_initial(const Instance& inst, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(inst.size()));
  std::iota(order.begin(), order.end(), 1);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
  }
  Plan plan;
  Trip trip;
  double load = inst.capacity();
  for (int id : order) {
    const double q = inst.request(id).demand;
    if (!trip.empty() && load < q) {
      plan.amrs.push_back({std::move(trip)});
      trip.clear();
      load = inst.capacity();
    }
    trip.push_back(id);
    load -= q;
  }
  if (!trip.empty()) plan.amrs.push_back({std::move(trip)});
  return plan;
}

SearchResult plain_ts_run(const Instance& inst, const SearchParams& params) {
  Rng init(derive_seed(params.seed, 0x7453));
  SearchParams p = params;
  p.adaptive_weights = false;
  return tabu_search(inst, random_initial(inst, init), p);
}

SearchResult vns_run(const Instance& inst, const SearchParams& params) {
  Rng rng(params.seed);
  Rng init(derive_seed(params.seed, 0x766e73));
  Plan x = repair_depot_insertion(random_initial(inst, init), inst);
  double fx = evaluate(x, inst).total;
  SearchResult result;
  int k = 0;
  const int descent_limit = std::max(inst.size(), 1);
  for (int ite = 1; ite <= params.iterations; ++ite) {
    const auto op = static_cast<Operator>(k);
    Plan y = x;
    for (int s = 0; s <= k; ++s) {
      const Neighborhood nb(y, inst, params.violation_threshold);
      y = nb.neighbor(nb.random_move(op, rng));
    }
    double fy = evaluate(y, inst).total;
    for (int step = 0; step < descent_limit; ++step) {
      Neighborhood nb(y, inst, params.violation_threshold);
      const auto moves = nb.candidates(op);
      double top_total = nb.total();
      const Move* top = nullptr;
      for (const Move& m : moves) {
        const double total = nb.price(m, top_total);
        if (total < top_total) {
          top_total = total;
          top = &m;
        }
      }
      if (!top) break;
      y = nb.neighbor(*top);
      fy = top_total;
    }
    if (fy < fx) {
      x = std::move(y);
      fx = fy;
      k = 0;
    } else {
      k = (k + 1) % kOperatorCount;
    }
    result.curve.push_back({ite, fx});
  }
  result.plan = std::move(x);
  result.cost = evaluate(result.plan, inst);
  return result;
}

SearchResult greedy_run(const Instance& inst) {
  SearchResult result;
  result.plan = greedy_insert(inst);
  result.cost = evaluate(result.plan, inst);
  return result;
}

// ---------------------------------------------------------------------------

namespace {

struct Enumerator {
  const Instance& inst;
  int n;
  std::vector<double> best;            // cheapest single-AMR cost per request subset
  std::vector<std::vector<int>> path;  // its flat sequence (0 between trips)
  std::vector<int> seq;

  struct State {
    int prev;
    Gaussian leave;
    double load;
    double lateness;
    double travel;
  };

  void record(unsigned mask, const State& s) {
    const double back = inst.travel_time(s.prev, 0, s.leave.mean).mean;
    const auto& c = inst.costs();
    const double cost = c.fixed + c.penalty * s.lateness + c.travel * (s.travel + back);
    if (cost < best[mask]) {
      best[mask] = cost;
      path[mask] = seq;
    }
  }

  void visit(unsigned mask, const State& s, int id) {
    const Request& req = inst.request(id);
    const Gaussian leg = inst.travel_time(s.prev, id, s.leave.mean);
    const Gaussian arrival = add(s.leave, leg);
    State next;
    next.prev = id;
    next.travel = s.travel + leg.mean;
    next.lateness = s.lateness + exceed_probability(arrival, req.due);
    next.leave = add(max_with_constant(arrival, req.ready), req.service);
    next.load = s.load - req.demand;
    seq.push_back(id);
    const unsigned m = mask | (1u << (id - 1));
    record(m, next);
    extend(m, next);
    seq.pop_back();
  }

  void extend(unsigned mask, const State& s) {
    for (int id = 1; id <= n; ++id) {
      if (mask & (1u << (id - 1))) continue;
      const double q = inst.request(id).demand;
      if (s.load >= q) visit(mask, s, id);
      // Return to the depot first and start the next trip with id.
      const Gaussian back = inst.travel_time(s.prev, 0, s.leave.mean);
      State reload{0, add(s.leave, back), inst.capacity(), s.lateness, s.travel + back.mean};
      seq.push_back(0);
      visit(mask, reload, id);
      seq.pop_back();
    }
  }
};

}  // namespace

ExactResult exhaustive_solve(const Instance& inst) {
  const int n = inst.size();
  if (n > kExhaustiveLimit) {
    throw Error("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) + " requests (got " +
                std::to_string(n) + ")");
  }
  ExactResult out;
  if (n == 0) return out;
  const unsigned full = (1u << n) - 1;
  Enumerator e{inst, n, std::vector<double>(full + 1, std::numeric_limits<double>::infinity()),
               std::vector<std::vector<int>>(full + 1), {}};
  for (int id = 1; id <= n; ++id) {
    Enumerator::State start{0, Gaussian{0.0, 0.0}, inst.capacity(), 0.0, 0.0};
    e.visit(0, start, id);
  }

  // Cheapest partition of the request set into single-AMR subsets.
  std::vector<double> f(full + 1, std::numeric_limits<double>::infinity());
  std::vector<unsigned> pick(full + 1, 0);
  f[0] = 0.0;
  for (unsigned s = 1; s <= full; ++s) {
    const unsigned low = s & (~s + 1);
    for (unsigned b = s; b; b = (b - 1) & s) {
      if (!(b & low)) continue;
      const double v = e.best[b] + f[s & ~b];
      if (v < f[s]) {
        f[s] = v;
        pick[s] = b;
      }
    }
  }
  for (unsigned s = full; s; s &= ~pick[s]) {
    AmrRoute route;
    Trip trip;
    for (int id : e.path[pick[s]]) {
      if (id == 0) {
        route.push_back(std::move(trip));
        trip.clear();
      } else {
        trip.push_back(id);
      }
    }
    route.push_back(std::move(trip));
    out.plan.amrs.push_back(std::move(route));
  }
  std::sort(out.plan.amrs.begin(), out.plan.amrs.end());
  out.cost = evaluate(out.plan, inst);
  return out;
}

}  // namespace amrsched

#include "amrsched/greedy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "amrsched/error.hpp"

namespace amrsched {

namespace {

struct RouteEnd {
  int last = 0;
  Gaussian leave;
  double used = 0.0;
};

}  // namespace

Plan greedy_insert(const Instance& inst) {
  if (inst.size() < 1) throw Error("greedy insertion needs at least one request");
  std::vector<int> order(static_cast<std::size_t>(inst.size()));
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Request& ra = inst.request(a);
    const Request& rb = inst.request(b);
    if (ra.ready != rb.ready) return ra.ready < rb.ready;
    if (ra.due != rb.due) return ra.due < rb.due;
    return a < b;
  });

  Plan plan;
  std::vector<RouteEnd> ends;
  auto serve = [&](RouteEnd& end, int id, const Gaussian& arrival) {
    const Request& req = inst.request(id);
    end.leave = add(max_with_constant(arrival, req.ready), req.service);
    end.last = id;
    end.used += req.demand;
  };

  for (int id : order) {
    const Request& req = inst.request(id);
    if (req.demand > inst.capacity()) throw InfeasibleError("request " + std::to_string(id) + " exceeds capacity");
    int best = -1;
    double best_extra = std::numeric_limits<double>::infinity();
    Gaussian best_arrival;
    for (std::size_t k = 0; k < ends.size(); ++k) {
      const RouteEnd& end = ends[k];
      if (end.used + req.demand > inst.capacity()) continue;
      const Gaussian leg = inst.travel_time(end.last, id, end.leave.mean);
      const Gaussian arrival = add(end.leave, leg);
      if (arrival.mean > req.due) continue;
      const Gaussian leave = add(max_with_constant(arrival, req.ready), req.service);
      const double extra = leg.mean + inst.travel_time(id, 0, leave.mean).mean -
                           inst.travel_time(end.last, 0, end.leave.mean).mean;
      if (extra < best_extra) {
        best_extra = extra;
        best = static_cast<int>(k);
        best_arrival = arrival;
      }
    }
    if (best < 0) {
      ends.push_back({});
      plan.amrs.push_back({Trip{}});
      best = static_cast<int>(ends.size()) - 1;
      best_arrival = inst.travel_time(0, id, 0.0);
    }
    serve(ends[static_cast<std::size_t>(best)], id, best_arrival);
    plan.amrs[static_cast<std::size_t>(best)].front().push_back(id);
  }
  return plan;
}

}  // namespace amrsched

#include "amrsched/plan.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "amrsched/error.hpp"

namespace amrsched {

using nlohmann::json;

int Plan::fleet_size() const {
  return static_cast<int>(std::count_if(amrs.begin(), amrs.end(), [](const AmrRoute& r) {
    return std::any_of(r.begin(), r.end(), [](const Trip& t) { return !t.empty(); });
  }));
}

int Plan::request_count() const {
  int n = 0;
  for (const auto& r : amrs)
    for (const auto& t : r) n += static_cast<int>(t.size());
  return n;
}

void Plan::normalize() {
  for (auto& r : amrs) std::erase_if(r, [](const Trip& t) { return t.empty(); });
  std::erase_if(amrs, [](const AmrRoute& r) { return r.empty(); });
}

namespace detail {

void Walker::close_trip() {
  const Gaussian leg = inst->travel_time(prev, 0, leave.mean);
  totals.travel_mean += leg.mean;
  clock = add(leave, leg);
  if (trip) trip->return_arrival = clock;
  trip = nullptr;
  prev = 0;
  leave = clock;
  load = inst->capacity();
}

void Walker::feed(int id) {
  if (id == 0) {
    if (prev != 0) close_trip();
    return;
  }
  const Request& req = inst->request(id);
  if (split_on_overload && prev != 0 && load < req.demand) close_trip();
  if (prev == 0) {
    totals.used = true;
    if (out) {
      out->trips.emplace_back();
      trip = &out->trips.back();
      trip->departure = clock;
    }
  }
  const Gaussian leg = inst->travel_time(prev, id, leave.mean);
  totals.travel_mean += leg.mean;
  const Gaussian arrival = add(leave, leg);
  const double late = exceed_probability(arrival, req.due);
  totals.lateness += late;
  const Gaussian start = max_with_constant(arrival, req.ready);
  if (trip) trip->visits.push_back({id, arrival, start, load, late});
  load -= req.demand;
  leave = add(start, req.service);
  prev = id;
}

AmrTotals Walker::finish() {
  if (prev != 0) close_trip();
  return totals;
}

AmrTotals walk_sequence(std::span<const int> seq, const Instance& inst, bool split_on_overload,
                        AmrSchedule* out) {
  Walker w(inst, split_on_overload, out);
  for (int id : seq) w.feed(id);
  return w.finish();
}

void flatten(const AmrRoute& route, std::vector<int>& out) {
  out.clear();
  for (const Trip& t : route) {
    if (t.empty()) continue;
    if (!out.empty()) out.push_back(0);
    out.insert(out.end(), t.begin(), t.end());
  }
}

}  // namespace detail

namespace {

AmrTotals walk(const AmrRoute& route, const Instance& inst, AmrSchedule* out) {
  thread_local std::vector<int> seq;
  detail::flatten(route, seq);
  return detail::walk_sequence(seq, inst, false, out);
}

}  // namespace

AmrTotals assess_amr(const AmrRoute& route, const Instance& inst) {
  return walk(route, inst, nullptr);
}

Schedule propagate(const Plan& plan, const Instance& inst) {
  Schedule s;
  s.amrs.resize(plan.amrs.size());
  for (std::size_t k = 0; k < plan.amrs.size(); ++k) walk(plan.amrs[k], inst, &s.amrs[k]);
  return s;
}

CostBreakdown combine(std::span<const AmrTotals> amrs, const CostCoefficients& costs) {
  int used = 0;
  double lateness = 0.0;
  double travel = 0.0;
  for (const auto& a : amrs) {
    if (!a.used) continue;
    ++used;
    lateness += a.lateness;
    travel += a.travel_mean;
  }
  CostBreakdown c;
  c.fixed = costs.fixed * used;
  c.penalty = costs.penalty * lateness;
  c.travel = costs.travel * travel;
  c.total = c.fixed + c.penalty + c.travel;
  return c;
}

CostBreakdown evaluate(const Plan& plan, const Instance& inst) {
  std::vector<AmrTotals> totals;
  totals.reserve(plan.amrs.size());
  for (const auto& r : plan.amrs) totals.push_back(assess_amr(r, inst));
  return combine(totals, inst.costs());
}

std::vector<CapacityViolation> capacity_violations(const Plan& plan, const Instance& inst) {
  std::vector<CapacityViolation> out;
  for (std::size_t k = 0; k < plan.amrs.size(); ++k) {
    const auto& route = plan.amrs[k];
    for (std::size_t p = 0; p < route.size(); ++p) {
      double load = inst.capacity();
      for (std::size_t i = 0; i < route[p].size(); ++i) {
        const double q = inst.request(route[p][i]).demand;
        if (load < q) out.push_back({static_cast<int>(k), static_cast<int>(p), static_cast<int>(i)});
        load -= q;
      }
    }
  }
  return out;
}

ServiceProbability service_probability(const Schedule& schedule) {
  ServiceProbability sp;
  for (const auto& amr : schedule.amrs) {
    double r = 1.0;
    for (const auto& trip : amr.trips)
      for (const auto& v : trip.visits) r = std::min(r, 1.0 - v.lateness);
    sp.per_route.push_back(r);
    sp.overall = std::min(sp.overall, r);
  }
  return sp;
}

ServiceProbability service_probability(const Plan& plan, const Instance& inst) {
  return service_probability(propagate(plan, inst));
}

void check_plan(const Plan& plan, const Instance& inst) {
  std::vector<int> seen(static_cast<std::size_t>(inst.size()) + 1, 0);
  for (const auto& r : plan.amrs) {
    for (const auto& t : r) {
      for (int id : t) {
        if (id < 1 || id > inst.size()) {
          throw Error("plan refers to unknown request " + std::to_string(id));
        }
        if (++seen[static_cast<std::size_t>(id)] > 1) {
          throw Error("request " + std::to_string(id) + " is served more than once");
        }
      }
    }
  }
  for (int id = 1; id <= inst.size(); ++id) {
    if (seen[static_cast<std::size_t>(id)] == 0) {
      throw Error("request " + std::to_string(id) + " is not served");
    }
  }
}

std::string route_string(const AmrRoute& route) {
  std::string s = "0";
  for (const auto& t : route) {
    if (t.empty()) continue;
    for (int id : t) s += "-" + std::to_string(id);
    s += "-0";
  }
  return s;
}

std::string save_plan(const Plan& plan, const Instance& inst) {
  const Schedule sched = propagate(plan, inst);
  const ServiceProbability sp = service_probability(sched);
  const CostBreakdown cost = evaluate(plan, inst);
  const std::string& t0 = inst.data().t0;
  json amrs = json::array();
  for (std::size_t k = 0; k < plan.amrs.size(); ++k) {
    json arrivals = json::array();
    std::string at;
    auto stamp = [&](int node, const Gaussian& a) {
      const std::string clock = offset_to_clock(a.mean, t0);
      arrivals.push_back({{"node", node}, {"mean", a.mean}, {"variance", a.variance}, {"clock", clock}});
      at += (at.empty() ? "" : "-") + clock;
    };
    for (const auto& trip : sched.amrs[k].trips) {
      for (const auto& v : trip.visits) stamp(v.request, v.arrival);
      stamp(0, trip.return_arrival);
    }
    amrs.push_back({{"no", k + 1},
                    {"route", route_string(plan.amrs[k])},
                    {"trips", plan.amrs[k]},
                    {"at", at},
                    {"arrivals", arrivals},
                    {"r", sp.per_route[k]}});
  }
  json doc = {{"format", "amrsched-plan/1"},
              {"instance", inst.name()},
              {"m", plan.fleet_size()},
              {"cost", {{"fixed", cost.fixed}, {"penalty", cost.penalty}, {"travel", cost.travel}, {"total", cost.total}}},
              {"r", sp.overall},
              {"amrs", amrs}};
  return doc.dump(1) + "\n";
}

Plan load_plan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("plan document is not valid JSON: ") + e.what());
  }
  if (!doc.contains("amrs") || !doc["amrs"].is_array()) throw ParseError("missing field 'amrs'");
  Plan plan;
  for (const auto& a : doc["amrs"]) {
    if (!a.contains("trips")) throw ParseError("missing field 'amrs[].trips'");
    try {
      plan.amrs.push_back(a["trips"].get<AmrRoute>());
    } catch (const json::exception&) {
      throw ParseError("field 'amrs[].trips' must be a list of lists of request ids");
    }
  }
  return plan;
}

Plan load_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open plan file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_plan(buf.str());
}

}  // namespace amrsched

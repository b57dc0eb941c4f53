#include "amrsched/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "amrsched/error.hpp"
#include "amrsched/rng.hpp"

namespace amrsched {

namespace {

constexpr std::int64_t kChunk = 1024;

struct Node {
  int id;  // 0 closes a trip
  int visit;
};

struct Tally {
  std::vector<std::int64_t> late;        // per visit
  std::vector<std::int64_t> route_clean; // per AMR, samples with no late visit
  std::int64_t clean = 0;
  double travel_dev = 0.0;  // sum of (realized - analytical) travel
};

class Replayer {
 public:
  Replayer(const Plan& plan, const Instance& inst) : inst_(inst) {
    int v = 0;
    for (const AmrRoute& route : plan.amrs) {
      std::vector<Node> seq;
      for (const Trip& trip : route) {
        if (trip.empty()) continue;
        for (int id : trip) seq.push_back({id, v++});
        seq.push_back({0, -1});
      }
      amrs_.push_back(std::move(seq));
    }
    visits_ = v;
    sd_vr_ = std::sqrt(inst.profile().var_vr);
    sd_vf_ = std::sqrt(inst.profile().var_vf);
  }

  int visits() const { return visits_; }

  void run(std::int64_t count, Rng& rng, double reference_travel, Tally& t) const {
    t.late.assign(static_cast<std::size_t>(visits_), 0);
    t.route_clean.assign(amrs_.size(), 0);
    for (std::int64_t s = 0; s < count; ++s) {
      double travel = 0.0;
      bool all_clean = true;
      for (std::size_t k = 0; k < amrs_.size(); ++k) {
        double leave = 0.0;
        int prev = 0;
        bool clean = true;
        double amr_travel = 0.0;
        for (const Node& n : amrs_[k]) {
          const double leg = draw_leg(prev, n.id, leave, rng);
          amr_travel += leg;
          const double arrival = leave + leg;
          if (n.id == 0) {
            leave = arrival;
            prev = 0;
            continue;
          }
          const Request& req = inst_.request(n.id);
          if (arrival > req.due) {
            ++t.late[static_cast<std::size_t>(n.visit)];
            clean = false;
          }
          const double service = std::max(0.0, req.service.mean + std::sqrt(req.service.variance) * rng.normal());
          leave = std::max(arrival, req.ready) + service;
          prev = n.id;
        }
        travel += amr_travel;
        if (clean) ++t.route_clean[k];
        all_clean = all_clean && clean;
      }
      if (all_clean) ++t.clean;
      t.travel_dev += travel - reference_travel;
    }
  }

 private:
  double draw_leg(int from, int to, double departure, Rng& rng) const {
    const Leg leg = inst_.distance(from, to);
    const SpeedZone& z = inst_.profile().zone_at(departure);
    const double vr = std::max(0.0, z.mean_vr + sd_vr_ * rng.normal());
    const double vf = std::max(0.0, z.mean_vf + sd_vf_ * rng.normal());
    return leg.meters * vr + leg.levels * vf;
  }

  const Instance& inst_;
  std::vector<std::vector<Node>> amrs_;
  int visits_ = 0;
  double sd_vr_ = 0.0;
  double sd_vf_ = 0.0;
};

}  // namespace

double SimulationReport::max_visit_gap() const {
  double gap = 0.0;
  for (const auto& v : visits) gap = std::max(gap, std::abs(v.empirical - v.analytical));
  return gap;
}

SimulationReport simulate_plan(const Plan& plan, const Instance& inst, std::int64_t samples, std::uint64_t seed,
                               int jobs) {
  if (samples < 1) throw Error("samples must be at least 1");
  check_plan(plan, inst);

  SimulationReport rep;
  rep.samples = samples;
  rep.seed = seed;
  const Schedule sched = propagate(plan, inst);
  const CostBreakdown cost = evaluate(plan, inst);
  rep.analytical_cost = cost.total;
  for (const AmrRoute& route : plan.amrs) rep.analytical_travel += assess_amr(route, inst).travel_mean;
  for (std::size_t k = 0; k < sched.amrs.size(); ++k) {
    RouteEstimate re;
    for (std::size_t p = 0; p < sched.amrs[k].trips.size(); ++p)
      for (const Visit& v : sched.amrs[k].trips[p].visits) {
        rep.visits.push_back({static_cast<int>(k) + 1, static_cast<int>(p) + 1, v.request, v.lateness, 0.0});
        re.analytical_r = std::min(re.analytical_r, 1.0 - v.lateness);
      }
    rep.analytical_r = std::min(rep.analytical_r, re.analytical_r);
    rep.routes.push_back(re);
  }

  const Replayer replay(plan, inst);
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Tally> tallies(static_cast<std::size_t>(chunks));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t c; (c = next.fetch_add(1)) < chunks;) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
      const std::int64_t count = std::min(kChunk, samples - c * kChunk);
      replay.run(count, rng, rep.analytical_travel, tallies[static_cast<std::size_t>(c)]);
    }
  };
  const int threads = static_cast<int>(std::clamp<std::int64_t>(jobs, 1, chunks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<std::int64_t> late(static_cast<std::size_t>(replay.visits()), 0);
  std::vector<std::int64_t> route_clean(plan.amrs.size(), 0);
  std::int64_t clean = 0;
  double travel_dev = 0.0;
  for (const Tally& t : tallies) {
    for (std::size_t i = 0; i < late.size(); ++i) late[i] += t.late[i];
    for (std::size_t k = 0; k < route_clean.size(); ++k) route_clean[k] += t.route_clean[k];
    clean += t.clean;
    travel_dev += t.travel_dev;
  }

  const auto n = static_cast<double>(samples);
  for (std::size_t i = 0; i < rep.visits.size(); ++i) rep.visits[i].empirical = static_cast<double>(late[i]) / n;
  std::vector<double> route_late(plan.amrs.size(), 0.0);
  for (const VisitEstimate& v : rep.visits) {
    auto& re = rep.routes[static_cast<std::size_t>(v.amr - 1)];
    re.empirical_r = std::min(re.empirical_r, 1.0 - v.empirical);
    route_late[static_cast<std::size_t>(v.amr - 1)] += v.empirical;
  }
  int used = 0;
  double lateness = 0.0;
  for (std::size_t k = 0; k < rep.routes.size(); ++k) {
    rep.routes[k].all_on_time = static_cast<double>(route_clean[k]) / n;
    rep.empirical_r = std::min(rep.empirical_r, rep.routes[k].empirical_r);
    if (!sched.amrs[k].trips.empty()) {
      ++used;
      lateness += route_late[k];
    }
  }
  rep.empirical_travel = rep.analytical_travel + travel_dev / n;
  const auto& c = inst.costs();
  rep.empirical_cost = c.fixed * used + c.penalty * lateness + c.travel * rep.empirical_travel;
  rep.all_on_time = static_cast<double>(clean) / n;
  return rep;
}

std::string format_report(const SimulationReport& r, double tolerance) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  const bool visits_ok = r.max_visit_gap() <= tolerance;
  const bool r_ok = std::abs(r.r_gap()) <= tolerance;
  out << "samples\t" << r.samples << '\n';
  out << "seed\t" << r.seed << '\n';
  out << "quantity\tanalytical\tempirical\tgap\n";
  out << "r\t" << r.analytical_r << '\t' << r.empirical_r << '\t' << r.r_gap() << '\n';
  out << "travel\t" << r.analytical_travel << '\t' << r.empirical_travel << '\t'
      << r.empirical_travel - r.analytical_travel << '\n';
  out << "all_on_time\t\t" << r.all_on_time << "\t\n";
  out << "cost\t" << r.analytical_cost << '\t' << r.empirical_cost << '\t' << r.empirical_cost - r.analytical_cost
      << '\n';
  out << "max_visit_gap\t" << r.max_visit_gap() << '\t' << tolerance << '\t' << (visits_ok ? "pass" : "fail") << '\n';
  out << "r_gap\t" << std::abs(r.r_gap()) << '\t' << tolerance << '\t' << (r_ok ? "pass" : "fail") << '\n';
  out << "\namr\ttrip\trequest\tp_late\tfreq_late\tgap\n";
  for (const auto& v : r.visits) {
    out << v.amr << '\t' << v.trip << '\t' << v.request << '\t' << v.analytical << '\t' << v.empirical << '\t'
        << v.empirical - v.analytical << '\n';
  }
  out << "\namr\tr\tfreq_r\tfreq_all_on_time\n";
  for (std::size_t k = 0; k < r.routes.size(); ++k) {
    const auto& re = r.routes[k];
    out << k + 1 << '\t' << re.analytical_r << '\t' << re.empirical_r << '\t' << re.all_on_time << '\n';
  }
  return out.str();
}

}  // namespace amrsched

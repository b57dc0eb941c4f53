#pragma once

#include <string>
#include <vector>

#include "amrsched/instance.hpp"
#include "amrsched/rng.hpp"
#include "amrsched/solomon.hpp"

namespace amrsched::testing {

struct ToyRequest {
  double x = 0.0;
  double y = 0.0;
  int floor = 1;
  double demand = 10.0;
  double ready = 0.0;
  double due = 86400.0;
  double service = 0.0;
};

// Flat world: one zone at 1 s/m and 1 s/level, no variance anywhere.
inline InstanceData toy_data(const std::vector<ToyRequest>& reqs, double capacity = 200.0) {
  InstanceData d;
  d.name = "toy";
  d.base = "toy";
  d.period = "P3";
  d.capacity = capacity;
  d.depot = {0.0, 0.0};
  d.elevator = {0.0, 0.0};
  d.profile.zones = {{0.0, d.horizon, 1.0, 1.0}};
  d.profile.var_vr = 0.0;
  d.profile.var_vf = 0.0;
  int id = 1;
  for (const ToyRequest& t : reqs) {
    Request r;
    r.id = id++;
    r.x = t.x;
    r.y = t.y;
    r.floor = t.floor;
    r.demand = t.demand;
    r.ready = t.ready;
    r.due = t.due;
    r.service = {t.service, 0.0};
    d.requests.push_back(r);
  }
  return d;
}

inline Instance toy(const std::vector<ToyRequest>& reqs, double capacity = 200.0) {
  return Instance(toy_data(reqs, capacity));
}

// Small hospital instance cut from a synthetic Solomon base.
inline Instance small_instance(const std::string& base, Period period, int n, std::uint64_t seed) {
  return extend_instance(synthesize_solomon(base, seed), period, n, seed);
}

// Random instance with tight-ish windows so that lateness shows up.
inline Instance random_instance(int n, std::uint64_t seed, bool stochastic = true, double capacity = 100.0) {
  Rng rng(seed);
  std::vector<ToyRequest> reqs;
  for (int i = 0; i < n; ++i) {
    ToyRequest t;
    t.x = rng.uniform(0.0, 80.0);
    t.y = rng.uniform(0.0, 80.0);
    t.floor = 1 + rng.index(6);
    t.demand = rng.uniform(5.0, 40.0);
    t.ready = rng.uniform(0.0, 600.0);
    t.due = t.ready + rng.uniform(60.0, 400.0);
    t.service = 90.0;
    reqs.push_back(t);
  }
  InstanceData d = toy_data(reqs, capacity);
  d.elevator = {40.0, 40.0};
  d.profile = hospital_profile(stochastic ? 0.15 : 0.0, stochastic ? 0.5 : 0.0);
  for (auto& r : d.requests) r.service.variance = stochastic ? 15.0 : 0.0;
  return Instance(d);
}

}  // namespace amrsched::testing

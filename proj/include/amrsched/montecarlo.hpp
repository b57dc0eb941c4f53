#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amrsched/instance.hpp"
#include "amrsched/plan.hpp"

namespace amrsched {

struct VisitEstimate {
  int amr = 0;
  int trip = 0;
  int request = 0;
  double analytical = 0.0;  // P(A > h) from the Gaussian recursion
  double empirical = 0.0;   // fraction of samples arriving after h
};

struct RouteEstimate {
  double analytical_r = 1.0;
  double empirical_r = 1.0;    // min over visits of the on-time frequency
  double all_on_time = 1.0;    // fraction of samples with no late visit
};

struct SimulationReport {
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<VisitEstimate> visits;  // plan order
  std::vector<RouteEstimate> routes;  // one per AMR
  double analytical_r = 1.0;
  double empirical_r = 1.0;
  double all_on_time = 1.0;
  double analytical_travel = 0.0;
  double empirical_travel = 0.0;  // mean realized travel seconds
  double analytical_cost = 0.0;
  double empirical_cost = 0.0;

  double max_visit_gap() const;
  double r_gap() const { return empirical_r - analytical_r; }
};

/// Replays the plan `samples` times with one V_r and V_f draw per leg and one
/// service draw per visit, negative draws clipped to 0. Samples are split in
/// fixed chunks with seeds derived from `seed`, so the report does not
/// depend on `jobs`.
SimulationReport simulate_plan(const Plan& plan, const Instance& inst, std::int64_t samples, std::uint64_t seed,
                               int jobs = 1);

/// Delimited text: a header block, then one line per visit and per route.
std::string format_report(const SimulationReport& report, double tolerance);

}  // namespace amrsched

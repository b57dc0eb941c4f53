#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amrsched/gaussian.hpp"
#include "amrsched/instance.hpp"

namespace amrsched {

/// Request ids of one depot-to-depot trip, in service order.
using Trip = std::vector<int>;

/// Consecutive trips of one AMR; trip p+1 leaves when trip p is back.
using AmrRoute = std::vector<Trip>;

struct Plan {
  std::vector<AmrRoute> amrs;

  /// Number of AMRs that serve at least one request.
  int fleet_size() const;
  int request_count() const;
  /// Drops empty trips, then AMRs left without trips.
  void normalize();

  friend bool operator==(const Plan&, const Plan&) = default;
};

struct Visit {
  int request = 0;
  Gaussian arrival;   // A
  Gaussian start;     // Y = max(A, e)
  double load = 0.0;  // remaining capacity on arrival, u
  double lateness = 0.0;  // P(A > h)
};

struct TripSchedule {
  Gaussian departure;
  std::vector<Visit> visits;
  Gaussian return_arrival;
};

struct AmrSchedule {
  std::vector<TripSchedule> trips;
};

struct Schedule {
  std::vector<AmrSchedule> amrs;
};

/// Raw per-AMR sums that the objective is built from.
struct AmrTotals {
  double lateness = 0.0;      // sum of P(A > h) over visits
  double travel_mean = 0.0;   // sum of expected leg times, depot legs included
  bool used = false;
};

struct CostBreakdown {
  double fixed = 0.0;
  double penalty = 0.0;
  double travel = 0.0;
  double total = 0.0;
};

AmrTotals assess_amr(const AmrRoute& route, const Instance& inst);

/// Forward pass over every AMR: arrival, start and load at each visit.
Schedule propagate(const Plan& plan, const Instance& inst);

/// Objective from per-AMR sums, accumulated in the given order.
CostBreakdown combine(std::span<const AmrTotals> amrs, const CostCoefficients& costs);

/// Fixed + expected-lateness penalty + expected travel cost of a plan.
CostBreakdown evaluate(const Plan& plan, const Instance& inst);

struct CapacityViolation {
  int amr = 0;
  int trip = 0;
  int position = 0;  // 0-based index inside the trip
  friend bool operator==(const CapacityViolation&, const CapacityViolation&) = default;
};

/// Visits where the remaining load is below the demand to deliver.
std::vector<CapacityViolation> capacity_violations(const Plan& plan, const Instance& inst);

struct ServiceProbability {
  double overall = 1.0;
  std::vector<double> per_route;  // one per AMR
};

/// r = min over visits of P(A <= h), overall and per AMR.
ServiceProbability service_probability(const Plan& plan, const Instance& inst);
ServiceProbability service_probability(const Schedule& schedule);

/// Throws unless every request of `inst` appears exactly once and nothing
/// else appears.
void check_plan(const Plan& plan, const Instance& inst);

/// "0-14-0-35-32-0"
std::string route_string(const AmrRoute& route);

/// Per-AMR listing: route string, mean arrival clock times (every node after
/// the first depot, depot returns included) and route service probability.
std::string save_plan(const Plan& plan, const Instance& inst);
Plan load_plan(std::string_view text);
Plan load_plan_file(const std::string& path);

namespace detail {

/// Incremental form of walk_sequence. A copy taken after feeding a prefix
/// resumes the walk exactly where the prefix ended.
struct Walker {
  Walker(const Instance& instance, bool split, AmrSchedule* schedule = nullptr)
      : inst(&instance), split_on_overload(split), load(instance.capacity()), out(schedule) {}

  void feed(int id);
  AmrTotals finish();

  const Instance* inst;
  bool split_on_overload;
  AmrTotals totals;
  Gaussian clock{0.0, 0.0};
  Gaussian leave{0.0, 0.0};
  double load;
  int prev = 0;
  AmrSchedule* out;
  TripSchedule* trip = nullptr;

 private:
  void close_trip();
};

/// Walks one AMR given as a flat sequence where 0 separates trips. With
/// `split_on_overload` a new trip starts whenever the remaining load is below
/// the next demand, which is exactly what depot-insertion repair produces.
AmrTotals walk_sequence(std::span<const int> seq, const Instance& inst, bool split_on_overload,
                        AmrSchedule* out = nullptr);

void flatten(const AmrRoute& route, std::vector<int>& out);

}  // namespace detail

}  // namespace amrsched

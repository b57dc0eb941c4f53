#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "amrsched/gaussian.hpp"

namespace amrsched {

/// Hospital traffic environment a batch of requests falls into.
enum class Period { P1, P2, P3 };

std::string_view to_string(Period p);
Period parse_period(std::string_view text);

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Request {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  int floor = 1;
  double demand = 0.0;
  double ready = 0.0;  // hard lower bound e_i, seconds after t0
  double due = 0.0;    // soft upper bound h_i
  Gaussian service{0.0, 15.0};
  friend bool operator==(const Request&, const Request&) = default;
};

/// Mean travel time per meter (vr) and per elevator level (vf) within
/// [start, end).
struct SpeedZone {
  double start = 0.0;
  double end = 0.0;
  double mean_vr = 0.0;
  double mean_vf = 0.0;
  friend bool operator==(const SpeedZone&, const SpeedZone&) = default;
};

struct SpeedProfile {
  std::vector<SpeedZone> zones;
  double var_vr = 0.15;
  double var_vf = 0.5;

  /// Zone containing t; times outside the covered range clamp to the first
  /// or last zone.
  const SpeedZone& zone_at(double t) const;
  friend bool operator==(const SpeedProfile&, const SpeedProfile&) = default;
};

struct CostCoefficients {
  double fixed = 30.0;     // per AMR
  double penalty = 0.1;    // per expected window violation
  double travel = 0.01;    // per expected travel second
  friend bool operator==(const CostCoefficients&, const CostCoefficients&) = default;
};

/// Metric distance and floor difference between two nodes.
struct Leg {
  double meters = 0.0;
  int levels = 0;
  friend bool operator==(const Leg&, const Leg&) = default;
};

/// Plain description of an instance; Instance validates it and adds the
/// precomputed leg tables.
struct InstanceData {
  std::string name;
  std::string base;
  std::string period;
  std::uint64_t floor_seed = 0;
  double time_scale = 1.0;
  std::string t0 = "07:30";
  double horizon = 86400.0;
  Point depot;
  Point elevator;
  double capacity = 0.0;
  CostCoefficients costs;
  SpeedProfile profile;
  std::vector<Request> requests;
  friend bool operator==(const InstanceData&, const InstanceData&) = default;
};

/// Immutable, validated instance. Node 0 is the depot (floor 1); nodes
/// 1..size() are requests, numbered by id.
class Instance {
 public:
  explicit Instance(InstanceData data);

  const InstanceData& data() const { return data_; }
  const std::string& name() const { return data_.name; }
  int size() const { return static_cast<int>(data_.requests.size()); }
  double capacity() const { return data_.capacity; }
  const CostCoefficients& costs() const { return data_.costs; }
  const SpeedProfile& profile() const { return data_.profile; }
  const Request& request(int id) const { return data_.requests[static_cast<std::size_t>(id - 1)]; }
  bool has_node(int id) const { return id >= 0 && id <= size(); }

  Leg distance(int from, int to) const;

  /// Travel time of the leg from -> to when leaving at `departure`; the zone
  /// is fixed by the departure time for the whole leg.
  Gaussian travel_time(int from, int to, double departure) const {
    const auto k = index(from, to);
    const SpeedZone& z = data_.profile.zone_at(departure);
    const double d = meters_[k];
    const double f = levels_[k];
    return {d * z.mean_vr + f * z.mean_vf,
            d * d * data_.profile.var_vr + f * f * data_.profile.var_vf};
  }

  friend bool operator==(const Instance& a, const Instance& b) { return a.data_ == b.data_; }

 private:
  std::size_t index(int from, int to) const {
    return static_cast<std::size_t>(from) * static_cast<std::size_t>(nodes_) +
           static_cast<std::size_t>(to);
  }

  InstanceData data_;
  int nodes_ = 0;
  std::vector<double> meters_;
  std::vector<int> levels_;
};

/// Seconds after t0 of a wall-clock "HH:MM" or "HH:MM:SS"; wraps past
/// midnight.
double clock_to_offset(std::string_view clock, std::string_view t0 = "07:30");

/// "HH:MM:SS" wall-clock rendering of an offset after t0 (rounded to the
/// nearest second).
std::string offset_to_clock(double seconds, std::string_view t0 = "07:30");

/// Full-day stepwise profile: peaks 08:00-12:00 (P1 speeds) and 14:00-16:00
/// (P2 speeds), off-peak (P3 speeds) elsewhere.
SpeedProfile hospital_profile(double var_vr = 0.15, double var_vf = 0.5);

/// Mean traversal times for a traffic period.
struct PeriodSpeeds {
  double mean_vr;
  double mean_vf;
};
PeriodSpeeds period_speeds(Period p);

/// Offset (seconds after t0) at which request windows of a period start.
double period_anchor(Period p);

/// Copy with every travel and service variance set to 0.
Instance without_variance(const Instance& inst);

std::string save_instance(const Instance& inst);
Instance load_instance(std::string_view text);
Instance load_instance_file(const std::string& path);

}  // namespace amrsched

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "amrsched/instance.hpp"

namespace amrsched {

/// One row of the CUSTOMER section of a Solomon file.
struct SolomonCustomer {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;
  double ready = 0.0;
  double due = 0.0;
  double service = 0.0;
  friend bool operator==(const SolomonCustomer&, const SolomonCustomer&) = default;
};

struct SolomonInstance {
  std::string name;
  int vehicles = 0;
  double capacity = 0.0;
  SolomonCustomer depot;
  std::vector<SolomonCustomer> customers;
  friend bool operator==(const SolomonInstance&, const SolomonInstance&) = default;
};

/// Reads the classic VEHICLE / CUSTOMER text layout. The customer count is
/// whatever the file holds. Errors name the offending line.
SolomonInstance parse_solomon(std::istream& in);
SolomonInstance parse_solomon_file(const std::string& path);

void write_solomon(std::ostream& out, const SolomonInstance& raw);

struct ExtendOptions {
  double time_scale = 1.0;  // Solomon time unit -> seconds
  double var_vr = 0.15;
  double var_vf = 0.5;
  double service_var = 15.0;
  CostCoefficients costs{};
};

/// Hospital instance from the first `n` customers of a Solomon instance:
/// floors 1..6 drawn from `seed`, one elevator at the bounding-box centre,
/// windows shifted to the period's anchor, full-day speed profile.
Instance extend_instance(const SolomonInstance& raw, Period period, int n, std::uint64_t seed,
                         const ExtendOptions& opt = {});

/// One instance holding the same first `n` customers in P1, P2 and P3
/// (ids 1..n, n+1..2n, 2n+1..3n), as in a full-day plan.
Instance extend_combined(const SolomonInstance& raw, int n, std::uint64_t seed,
                         const ExtendOptions& opt = {});

/// "<period>-<base>-<n>", e.g. P1-C108-100.
std::string instance_label(std::string_view period, std::string_view base, int n);

/// Solomon-format instance with the statistical shape of a benchmark class
/// (C1, C2, R1, R2, RC1, RC2, taken from the name prefix): clustered,
/// uniform or mixed coordinates, narrow (type 1) or wide (type 2) windows,
/// and the class's capacity, horizon and service time. Every customer is
/// reachable from the depot inside its window.
SolomonInstance synthesize_solomon(std::string_view name, std::uint64_t seed, int customers = 100);

/// The six bases used by the experiment sweep.
const std::vector<std::string>& benchmark_bases();

}  // namespace amrsched

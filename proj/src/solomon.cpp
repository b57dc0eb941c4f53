#include "amrsched/solomon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "amrsched/error.hpp"
#include "amrsched/rng.hpp"

namespace amrsched {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool starts_with_word(const std::string& line, std::string_view word) {
  std::string upper = line;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  return upper.rfind(word, 0) == 0;
}

std::vector<double> numbers(const std::string& line, int line_no) {
  std::istringstream in(line);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected a number, got '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

SolomonInstance parse_solomon(std::istream& in) {
  SolomonInstance raw;
  enum class Section { name, vehicle, customer } section = Section::name;
  bool have_name = false;
  bool have_capacity = false;
  bool have_depot = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!have_name) {
      raw.name = t;
      have_name = true;
      continue;
    }
    if (starts_with_word(t, "VEHICLE")) {
      section = Section::vehicle;
      continue;
    }
    if (starts_with_word(t, "CUSTOMER")) {
      if (!have_capacity) {
        throw ParseError("line " + std::to_string(line_no) + ": CUSTOMER section before vehicle capacity");
      }
      section = Section::customer;
      continue;
    }
    if (starts_with_word(t, "NUMBER") || starts_with_word(t, "CUST")) continue;  // column titles

    const auto v = numbers(t, line_no);
    if (section == Section::vehicle) {
      if (v.size() != 2) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'NUMBER CAPACITY'");
      }
      raw.vehicles = static_cast<int>(v[0]);
      raw.capacity = v[1];
      have_capacity = true;
    } else if (section == Section::customer) {
      if (v.size() != 7) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 7 columns, found " +
                         std::to_string(v.size()));
      }
      SolomonCustomer c{static_cast<int>(v[0]), v[1], v[2], v[3], v[4], v[5], v[6]};
      if (c.ready > c.due) {
        throw ParseError("line " + std::to_string(line_no) + ": ready time after due date");
      }
      if (!have_depot) {
        raw.depot = c;
        have_depot = true;
      } else {
        raw.customers.push_back(c);
      }
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": data before VEHICLE section");
    }
  }
  if (!have_name) throw ParseError("no header");
  if (!have_capacity) throw ParseError("missing vehicle capacity");
  if (!have_depot) throw ParseError("no depot row in CUSTOMER section");
  return raw;
}

SolomonInstance parse_solomon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open Solomon file '" + path + "'");
  return parse_solomon(in);
}

void write_solomon(std::ostream& out, const SolomonInstance& raw) {
  out << raw.name << "\n\nVEHICLE\nNUMBER     CAPACITY\n"
      << std::setw(5) << raw.vehicles << std::setw(13) << raw.capacity << "\n\nCUSTOMER\n"
      << "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME\n\n";
  auto row = [&](const SolomonCustomer& c) {
    out << std::setw(5) << c.id << std::setw(11) << c.x << std::setw(11) << c.y << std::setw(11)
        << c.demand << std::setw(11) << c.ready << std::setw(11) << c.due << std::setw(11)
        << c.service << "\n";
  };
  row(raw.depot);
  for (const auto& c : raw.customers) row(c);
}

std::string instance_label(std::string_view period, std::string_view base, int n) {
  return std::string(period) + "-" + std::string(base) + "-" + std::to_string(n);
}

namespace {

InstanceData base_data(const SolomonInstance& raw, int n, std::uint64_t seed, const ExtendOptions& opt) {
  if (n < 1) throw Error("request count must be positive");
  if (n > static_cast<int>(raw.customers.size())) {
    throw Error("requested " + std::to_string(n) + " requests but '" + raw.name + "' has only " +
                std::to_string(raw.customers.size()) + " customers");
  }
  InstanceData d;
  d.base = raw.name;
  d.floor_seed = seed;
  d.time_scale = opt.time_scale;
  d.capacity = raw.capacity;
  d.costs = opt.costs;
  d.profile = hospital_profile(opt.var_vr, opt.var_vf);
  d.depot = {raw.depot.x, raw.depot.y};
  double lo_x = raw.depot.x, hi_x = raw.depot.x, lo_y = raw.depot.y, hi_y = raw.depot.y;
  for (int i = 0; i < n; ++i) {
    const auto& c = raw.customers[static_cast<std::size_t>(i)];
    lo_x = std::min(lo_x, c.x);
    hi_x = std::max(hi_x, c.x);
    lo_y = std::min(lo_y, c.y);
    hi_y = std::max(hi_y, c.y);
  }
  d.elevator = {(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0};
  return d;
}

void append_requests(InstanceData& d, const SolomonInstance& raw, int n, Period period, Rng& floors,
                     const ExtendOptions& opt) {
  const double anchor = period_anchor(period);
  for (int i = 0; i < n; ++i) {
    const auto& c = raw.customers[static_cast<std::size_t>(i)];
    Request r;
    r.id = static_cast<int>(d.requests.size()) + 1;
    r.x = c.x;
    r.y = c.y;
    r.floor = 1 + floors.index(6);
    r.demand = c.demand;
    r.ready = anchor + opt.time_scale * c.ready;
    r.due = anchor + opt.time_scale * c.due;
    r.service = {opt.time_scale * c.service, opt.service_var};
    d.requests.push_back(r);
  }
}

}  // namespace

Instance extend_instance(const SolomonInstance& raw, Period period, int n, std::uint64_t seed,
                         const ExtendOptions& opt) {
  InstanceData d = base_data(raw, n, seed, opt);
  d.period = std::string(to_string(period));
  d.name = instance_label(d.period, raw.name, n);
  Rng floors(seed);
  append_requests(d, raw, n, period, floors, opt);
  return Instance(std::move(d));
}

Instance extend_combined(const SolomonInstance& raw, int n, std::uint64_t seed, const ExtendOptions& opt) {
  InstanceData d = base_data(raw, n, seed, opt);
  d.period = "ALL";
  d.name = instance_label(d.period, raw.name, n);
  Rng floors(seed);
  for (Period p : {Period::P1, Period::P2, Period::P3}) append_requests(d, raw, n, p, floors, opt);
  return Instance(std::move(d));
}

// ---------------------------------------------------------------------------
// Synthetic benchmark-class instances

namespace {

struct ClassShape {
  char layout;  // 'C' clustered, 'R' uniform, 'M' mixed
  double capacity;
  double horizon;
  double service;
  SolomonCustomer depot;
  double half_width_lo;
  double half_width_hi;
};

ClassShape shape_for(std::string_view name) {
  const auto has = [&](std::string_view p) { return name.substr(0, p.size()) == p; };
  if (has("RC1")) return {'M', 200, 240, 10, {0, 40, 50, 0, 0, 240, 0}, 15, 15};
  if (has("RC2")) return {'M', 1000, 960, 10, {0, 40, 50, 0, 0, 960, 0}, 30, 150};
  if (has("R1")) return {'R', 200, 230, 10, {0, 35, 35, 0, 0, 230, 0}, 5, 5};
  if (has("R2")) return {'R', 1000, 1000, 10, {0, 35, 35, 0, 0, 1000, 0}, 30, 150};
  if (has("C1")) return {'C', 200, 1236, 90, {0, 40, 50, 0, 0, 1236, 0}, 90, 90};
  if (has("C2")) return {'C', 700, 3390, 90, {0, 40, 50, 0, 0, 3390, 0}, 320, 320};
  throw Error("cannot infer benchmark class from name '" + std::string(name) + "'");
}

}  // namespace

SolomonInstance synthesize_solomon(std::string_view name, std::uint64_t seed, int customers) {
  const ClassShape shape = shape_for(name);
  Rng rng(seed);
  SolomonInstance raw;
  raw.name = std::string(name);
  raw.vehicles = 25;
  raw.capacity = shape.capacity;
  raw.depot = shape.depot;

  std::vector<std::pair<double, double>> centres;
  for (int k = 0; k < 10; ++k) centres.emplace_back(rng.uniform(10.0, 90.0), rng.uniform(10.0, 90.0));

  for (int i = 1; i <= customers; ++i) {
    bool clustered = shape.layout == 'C' || (shape.layout == 'M' && i % 2 == 0);
    double x, y;
    if (clustered) {
      const auto& c = centres[static_cast<std::size_t>(rng.index(10))];
      x = std::clamp(std::round(c.first + 5.0 * rng.normal()), 0.0, 100.0);
      y = std::clamp(std::round(c.second + 5.0 * rng.normal()), 0.0, 100.0);
    } else {
      x = static_cast<double>(rng.index(101));
      y = static_cast<double>(rng.index(101));
    }
    const double demand = shape.layout == 'C' ? 10.0 * (1 + rng.index(4)) : 1.0 + rng.index(41);
    const double reach = std::ceil(std::hypot(x - shape.depot.x, y - shape.depot.y));
    const double half = std::round(rng.uniform(shape.half_width_lo, shape.half_width_hi));
    const double latest_due = shape.horizon - reach - shape.service;
    const double lo = reach + half;
    const double hi = std::max(lo, latest_due - half);
    const double centre = std::round(rng.uniform(lo, hi));
    const double ready = std::max(0.0, centre - half);
    const double due = std::max(reach, std::min(centre + half, latest_due));
    raw.customers.push_back({i, x, y, demand, std::min(ready, due), due, shape.service});
  }
  return raw;
}

const std::vector<std::string>& benchmark_bases() {
  static const std::vector<std::string> bases{"C108", "C208", "R101", "R202", "RC101", "RC202"};
  return bases;
}

}  // namespace amrsched

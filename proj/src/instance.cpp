#include "amrsched/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "amrsched/error.hpp"

namespace amrsched {

using nlohmann::json;

std::string_view to_string(Period p) {
  switch (p) {
    case Period::P1: return "P1";
    case Period::P2: return "P2";
    case Period::P3: return "P3";
  }
  return "P?";
}

Period parse_period(std::string_view text) {
  if (text == "P1") return Period::P1;
  if (text == "P2") return Period::P2;
  if (text == "P3") return Period::P3;
  throw Error("unknown period '" + std::string(text) + "' (expected P1, P2 or P3)");
}

const SpeedZone& SpeedProfile::zone_at(double t) const {
  for (const auto& z : zones) {
    if (t < z.end) return z;
  }
  return zones.back();
}

namespace {

double euclid(double ax, double ay, double bx, double by) {
  return std::hypot(ax - bx, ay - by);
}

void validate(const InstanceData& d) {
  if (!(d.capacity > 0.0)) throw Error("capacity must be positive");
  if (!(d.horizon > 0.0)) throw Error("horizon must be positive");
  const auto& c = d.costs;
  if (!(c.fixed > c.penalty && c.penalty > c.travel && c.travel >= 0.0)) {
    throw Error("cost coefficients must satisfy fixed > penalty > travel >= 0");
  }
  const auto& p = d.profile;
  if (p.zones.empty()) throw Error("speed profile has no zones");
  if (!(p.var_vr >= 0.0 && p.var_vf >= 0.0)) throw Error("speed variances must be >= 0");
  double cursor = 0.0;
  for (const auto& z : p.zones) {
    if (z.start != cursor || !(z.end > z.start)) {
      throw Error("speed zones must be sorted, contiguous and start at 0");
    }
    if (!(z.mean_vr > 0.0 && z.mean_vf > 0.0)) throw Error("zone means must be positive");
    cursor = z.end;
  }
  if (cursor < d.horizon) throw Error("speed zones do not cover the horizon");

  for (std::size_t i = 0; i < d.requests.size(); ++i) {
    const Request& r = d.requests[i];
    const std::string tag = "request " + std::to_string(r.id);
    if (r.id != static_cast<int>(i) + 1) {
      throw Error("request ids must be contiguous from 1 (found " + std::to_string(r.id) +
                  " at position " + std::to_string(i + 1) + ")");
    }
    if (r.floor < 1 || r.floor > 6) throw Error(tag + ": floor outside 1..6");
    if (!(r.demand > 0.0)) throw Error(tag + ": demand must be positive");
    if (r.demand > d.capacity) {
      throw InfeasibleError(tag + ": demand exceeds AMR capacity");
    }
    if (!(0.0 <= r.ready && r.ready <= r.due && r.due <= d.horizon)) {
      throw Error(tag + ": window must satisfy 0 <= ready <= due <= horizon");
    }
    if (!(r.service.mean >= 0.0 && r.service.variance >= 0.0)) {
      throw Error(tag + ": service time moments must be >= 0");
    }
  }
}

}  // namespace

Instance::Instance(InstanceData data) : data_(std::move(data)) {
  validate(data_);
  nodes_ = size() + 1;
  meters_.assign(static_cast<std::size_t>(nodes_ * nodes_), 0.0);
  levels_.assign(static_cast<std::size_t>(nodes_ * nodes_), 0);

  std::vector<double> xs{data_.depot.x};
  std::vector<double> ys{data_.depot.y};
  std::vector<int> floors{1};
  for (const auto& r : data_.requests) {
    xs.push_back(r.x);
    ys.push_back(r.y);
    floors.push_back(r.floor);
  }
  const auto& ele = data_.elevator;
  for (int i = 0; i < nodes_; ++i) {
    for (int j = 0; j < nodes_; ++j) {
      const auto k = index(i, j);
      const int levels = std::abs(floors[i] - floors[j]);
      levels_[k] = levels;
      if (i == j) continue;
      meters_[k] = levels == 0 ? euclid(xs[i], ys[i], xs[j], ys[j])
                               : euclid(xs[i], ys[i], ele.x, ele.y) +
                                     euclid(ele.x, ele.y, xs[j], ys[j]);
    }
  }
}

Leg Instance::distance(int from, int to) const {
  if (!has_node(from) || !has_node(to)) {
    throw Error("unknown node id " + std::to_string(has_node(from) ? to : from));
  }
  const auto k = index(from, to);
  return {meters_[k], levels_[k]};
}

namespace {

int parse_clock_seconds(std::string_view clock) {
  int h = 0, m = 0, s = 0;
  char sep1 = 0, sep2 = 0;
  std::istringstream in{std::string(clock)};
  in >> h >> sep1 >> m;
  if (!in || sep1 != ':' || h < 0 || h > 24 || m < 0 || m > 59) {
    throw ParseError("bad clock time '" + std::string(clock) + "'");
  }
  if (in >> sep2) {
    if (sep2 != ':' || !(in >> s) || s < 0 || s > 59) {
      throw ParseError("bad clock time '" + std::string(clock) + "'");
    }
  }
  return h * 3600 + m * 60 + s;
}

}  // namespace

double clock_to_offset(std::string_view clock, std::string_view t0) {
  int diff = parse_clock_seconds(clock) - parse_clock_seconds(t0);
  if (diff < 0) diff += 86400;
  return diff;
}

std::string offset_to_clock(double seconds, std::string_view t0) {
  long total = std::lround(seconds) + parse_clock_seconds(t0);
  total %= 86400;
  if (total < 0) total += 86400;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02ld:%02ld:%02ld", total / 3600, (total / 60) % 60, total % 60);
  return buf;
}

PeriodSpeeds period_speeds(Period p) {
  switch (p) {
    case Period::P1: return {1.4, 3.2};
    case Period::P2: return {1.3, 3.0};
    case Period::P3: return {1.1, 2.7};
  }
  return {1.1, 2.7};
}

double period_anchor(Period p) {
  switch (p) {
    case Period::P1: return clock_to_offset("08:00");
    case Period::P2: return clock_to_offset("14:00");
    case Period::P3: return clock_to_offset("12:00");
  }
  return 0.0;
}

SpeedProfile hospital_profile(double var_vr, double var_vf) {
  const auto peak1 = period_speeds(Period::P1);
  const auto peak2 = period_speeds(Period::P2);
  const auto off = period_speeds(Period::P3);
  const double t800 = clock_to_offset("08:00");
  const double t1200 = clock_to_offset("12:00");
  const double t1400 = clock_to_offset("14:00");
  const double t1600 = clock_to_offset("16:00");
  SpeedProfile p;
  p.var_vr = var_vr;
  p.var_vf = var_vf;
  p.zones = {
      {0.0, t800, off.mean_vr, off.mean_vf},
      {t800, t1200, peak1.mean_vr, peak1.mean_vf},
      {t1200, t1400, off.mean_vr, off.mean_vf},
      {t1400, t1600, peak2.mean_vr, peak2.mean_vf},
      {t1600, 86400.0, off.mean_vr, off.mean_vf},
  };
  return p;
}

// ---------------------------------------------------------------------------
// Extended-instance document

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError("missing field '" + where + key + "'");
  }
  return j.at(key);
}

template <typename T>
T field(const json& j, const char* key, const std::string& where = "") {
  const json& v = require(j, key, where);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError("field '" + where + key + "' has the wrong type");
  }
}

}  // namespace

Instance without_variance(const Instance& inst) {
  InstanceData d = inst.data();
  d.profile.var_vr = 0.0;
  d.profile.var_vf = 0.0;
  for (Request& r : d.requests) r.service.variance = 0.0;
  return Instance(std::move(d));
}

std::string save_instance(const Instance& inst) {
  const InstanceData& d = inst.data();
  json zones = json::array();
  for (const auto& z : d.profile.zones) {
    zones.push_back({{"start", z.start}, {"end", z.end}, {"mean_vr", z.mean_vr}, {"mean_vf", z.mean_vf}});
  }
  json requests = json::array();
  for (const auto& r : d.requests) {
    requests.push_back({{"id", r.id},
                        {"x", r.x},
                        {"y", r.y},
                        {"floor", r.floor},
                        {"demand", r.demand},
                        {"ready", r.ready},
                        {"due", r.due},
                        {"service_mean", r.service.mean},
                        {"service_var", r.service.variance}});
  }
  json doc = {
      {"format", "amrsched-instance/1"},
      {"name", d.name},
      {"base", d.base},
      {"period", d.period},
      {"floor_seed", d.floor_seed},
      {"time_scale", d.time_scale},
      {"t0", d.t0},
      {"horizon", d.horizon},
      {"depot", {{"x", d.depot.x}, {"y", d.depot.y}, {"floor", 1}}},
      {"elevator", {{"x", d.elevator.x}, {"y", d.elevator.y}}},
      {"capacity", d.capacity},
      {"costs", {{"fixed", d.costs.fixed}, {"penalty", d.costs.penalty}, {"travel", d.costs.travel}}},
      {"profile", {{"var_vr", d.profile.var_vr}, {"var_vf", d.profile.var_vf}, {"zones", zones}}},
      {"requests", requests},
  };
  return doc.dump(1) + "\n";
}

Instance load_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance document is not valid JSON: ") + e.what());
  }
  InstanceData d;
  d.name = field<std::string>(doc, "name");
  d.base = doc.value("base", std::string{});
  d.period = doc.value("period", std::string{});
  d.floor_seed = doc.value("floor_seed", std::uint64_t{0});
  d.time_scale = doc.value("time_scale", 1.0);
  d.t0 = doc.value("t0", std::string("07:30"));
  d.horizon = field<double>(doc, "horizon");
  const json& depot = require(doc, "depot", "");
  d.depot = {field<double>(depot, "x", "depot."), field<double>(depot, "y", "depot.")};
  const json& ele = require(doc, "elevator", "");
  d.elevator = {field<double>(ele, "x", "elevator."), field<double>(ele, "y", "elevator.")};
  d.capacity = field<double>(doc, "capacity");
  const json& costs = require(doc, "costs", "");
  d.costs = {field<double>(costs, "fixed", "costs."), field<double>(costs, "penalty", "costs."),
             field<double>(costs, "travel", "costs.")};
  const json& prof = require(doc, "profile", "");
  d.profile.var_vr = field<double>(prof, "var_vr", "profile.");
  d.profile.var_vf = field<double>(prof, "var_vf", "profile.");
  for (const json& z : require(prof, "zones", "profile.")) {
    d.profile.zones.push_back({field<double>(z, "start", "profile.zones[]."),
                               field<double>(z, "end", "profile.zones[]."),
                               field<double>(z, "mean_vr", "profile.zones[]."),
                               field<double>(z, "mean_vf", "profile.zones[].")});
  }
  for (const json& r : require(doc, "requests", "")) {
    const std::string w = "requests[].";
    Request req;
    req.id = field<int>(r, "id", w);
    req.x = field<double>(r, "x", w);
    req.y = field<double>(r, "y", w);
    req.floor = field<int>(r, "floor", w);
    req.demand = field<double>(r, "demand", w);
    req.ready = field<double>(r, "ready", w);
    req.due = field<double>(r, "due", w);
    req.service = {field<double>(r, "service_mean", w), field<double>(r, "service_var", w)};
    d.requests.push_back(req);
  }
  return Instance(std::move(d));
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

}  // namespace amrsched

#include <sstream>

#include "amrsched/error.hpp"
#include "amrsched/instance.hpp"
#include "amrsched/solomon.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace amrsched;
using amrsched::testing::toy;
using amrsched::testing::toy_data;

namespace {

const char* kSmallSolomon = R"(TINY

VEHICLE
NUMBER     CAPACITY
  25         200

CUSTOMER
CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME

    0      40         50          0          0       1236          0
    1      45         68         10        912        967         90
    2      45         70         30        825        870         90
    3      42         66         10         65        146         90
)";

}  // namespace

TEST_CASE("solomon parser") {
  std::istringstream in(kSmallSolomon);
  const SolomonInstance raw = parse_solomon(in);
  CHECK(raw.name == "TINY");
  CHECK(raw.vehicles == 25);
  CHECK(raw.capacity == 200);
  CHECK(raw.depot.x == 40);
  CHECK(raw.customers.size() == 3);
  CHECK(raw.customers[2].ready == 65);

  std::istringstream empty("");
  CHECK_THROWS_WITH_AS(parse_solomon(empty), "no header", ParseError);

  std::ostringstream out;
  write_solomon(out, raw);
  std::istringstream back(out.str());
  CHECK(parse_solomon(back) == raw);
}

TEST_CASE("synthetic bases parse back and are count agnostic") {
  for (const std::string& base : benchmark_bases()) {
    const SolomonInstance raw = synthesize_solomon(base, 3, 20);
    CHECK(raw.customers.size() == 20);
    std::ostringstream out;
    write_solomon(out, raw);
    std::istringstream in(out.str());
    CHECK(parse_solomon(in) == raw);
  }
}

TEST_CASE("extend instance") {
  const SolomonInstance raw = synthesize_solomon("C108", 1);
  const Instance a = extend_instance(raw, Period::P1, 100, 1);
  CHECK(a.name() == "P1-C108-100");
  CHECK(a.size() == 100);
  CHECK(a.profile().zone_at(period_anchor(Period::P1)).mean_vr == 1.4);
  CHECK(a.profile().zone_at(period_anchor(Period::P1)).mean_vf == 3.2);

  const Instance b = extend_instance(raw, Period::P3, 20, 7);
  CHECK(b.name() == "P3-C108-20");
  CHECK(save_instance(b) == save_instance(extend_instance(raw, Period::P3, 20, 7)));
  CHECK_THROWS_AS(extend_instance(raw, Period::P3, 101, 7), Error);
  CHECK(instance_label("P3", "RC101", 20) == "P3-RC101-20");

  const Instance all = extend_combined(raw, 20, 1);
  CHECK(all.size() == 60);
}

TEST_CASE("clock offsets") {
  CHECK(clock_to_offset("08:00") == 1800);
  CHECK(clock_to_offset("12:00") == 16200);
  CHECK(clock_to_offset("14:00") == 23400);
  CHECK(clock_to_offset("16:00") == 30600);
  CHECK(offset_to_clock(1835) == "08:00:35");
  CHECK_THROWS_AS(clock_to_offset("8h"), ParseError);
}

TEST_CASE("distance") {
  InstanceData d = toy_data({{3, 4, 1}, {0, 0, 2}, {0, 0, 5}});
  d.elevator = {3, 4};
  const Instance inst(d);
  CHECK(inst.distance(1, 1) == Leg{0, 0});
  CHECK(inst.distance(0, 1) == Leg{5, 0});
  CHECK(inst.distance(2, 3) == Leg{10, 3});
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) CHECK(inst.distance(i, j) == inst.distance(j, i));
}

TEST_CASE("travel time") {
  // 100 m and two levels: depot (0,0,fl 1), elevator (50,0), request (100,0,fl 3)
  InstanceData d = toy_data({{100, 0, 3}});
  d.elevator = {50, 0};
  d.profile = hospital_profile();
  const Instance inst(d);
  CHECK(inst.distance(0, 1) == Leg{100, 2});

  const Gaussian p1 = inst.travel_time(0, 1, clock_to_offset("09:00"));
  CHECK(p1.mean == doctest::Approx(146.4));
  CHECK(p1.variance == doctest::Approx(1502));
  const Gaussian p3 = inst.travel_time(0, 1, clock_to_offset("13:00"));
  CHECK(p3.mean == doctest::Approx(115.4));
  CHECK(p3.variance == doctest::Approx(1502));
  const Gaussian p2 = inst.travel_time(0, 1, clock_to_offset("15:00"));
  CHECK(p1.mean > p2.mean);
  CHECK(p2.mean > p3.mean);
  CHECK(inst.travel_time(1, 1, 0.0) == Gaussian{0, 0});
}

TEST_CASE("instance validation") {
  InstanceData d = toy_data({{1, 1}});
  d.requests[0].demand = 500;
  CHECK_THROWS_AS(Instance{d}, InfeasibleError);
  d = toy_data({{1, 1}});
  d.requests[0].id = 2;
  CHECK_THROWS_AS(Instance{d}, Error);
  d = toy_data({{1, 1}});
  d.costs = {0.1, 30, 0.01};
  CHECK_THROWS_AS(Instance{d}, Error);
}

TEST_CASE("instance documents round trip") {
  const Instance a = extend_instance(synthesize_solomon("RC202", 4), Period::P2, 50, 4);
  CHECK(load_instance(save_instance(a)) == a);
  const Instance z = without_variance(a);
  CHECK(z.profile().var_vr == 0.0);
  CHECK(load_instance(save_instance(z)) == z);

  std::string text = save_instance(a);
  const auto at = text.find("\"capacity\"");
  REQUIRE(at != std::string::npos);
  text.replace(at, 10, "\"kapacity\"");
  CHECK_THROWS_AS(load_instance(text), ParseError);
}

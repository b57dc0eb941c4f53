#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amrsched/baselines.hpp"
#include "amrsched/bench.hpp"
#include "amrsched/error.hpp"
#include "amrsched/gaussian.hpp"
#include "amrsched/greedy.hpp"
#include "amrsched/instance.hpp"
#include "amrsched/montecarlo.hpp"
#include "amrsched/plan.hpp"
#include "amrsched/solomon.hpp"
#include "amrsched/tabu_search.hpp"

namespace py = pybind11;
using namespace amrsched;

namespace {

SearchParams make_params(int iterations, int tenure, double delta1, double delta2, std::uint64_t seed,
                         const std::string& scan, int sample_size) {
  SearchParams p;
  p.iterations = iterations;
  p.tenure = tenure;
  p.delta1 = delta1;
  p.delta2 = delta2;
  p.seed = seed;
  p.scan = parse_scan(scan);
  p.sample_size = sample_size;
  return p;
}

#define SEARCH_ARGS                                                                                     \
  py::arg("iterations") = 500, py::arg("tenure") = 40, py::arg("delta1") = 1.0, py::arg("delta2") = 0.2, \
      py::arg("seed") = 1, py::arg("scan") = "full", py::arg("sample_size") = 0

}  // namespace

PYBIND11_MODULE(_amrsched, m) {
  m.doc() = "Stochastic multi-trip AMR scheduling";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Gaussian>(m, "Gaussian")
      .def(py::init<double, double>(), py::arg("mean") = 0.0, py::arg("variance") = 0.0)
      .def_readwrite("mean", &Gaussian::mean)
      .def_readwrite("variance", &Gaussian::variance)
      .def("__repr__", [](const Gaussian& g) {
        return "Gaussian(" + std::to_string(g.mean) + ", " + std::to_string(g.variance) + ")";
      });
  m.def("max_with_constant", &max_with_constant, py::arg("a"), py::arg("e"));
  m.def("exceed_probability", &exceed_probability, py::arg("a"), py::arg("h"));

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("name", &Instance::name)
      .def_property_readonly("size", &Instance::size)
      .def_property_readonly("capacity", &Instance::capacity)
      .def("travel_time", &Instance::travel_time, py::arg("i"), py::arg("j"), py::arg("departure"))
      .def("save", [](const Instance& i) { return save_instance(i); });
  m.def("load_instance", [](const std::string& text) { return load_instance(text); }, py::arg("text"));
  m.def("load_instance_file", &load_instance_file, py::arg("path"));
  m.def(
      "generate_instance",
      [](const std::string& base, const std::string& period, int n, std::uint64_t seed) {
        return extend_instance(synthesize_solomon(base, seed), parse_period(period), n, seed);
      },
      py::arg("base"), py::arg("period"), py::arg("n"), py::arg("seed") = 1);
  m.def("without_variance", &without_variance, py::arg("inst"));

  py::class_<Plan>(m, "Plan")
      .def(py::init<>())
      .def(py::init([](std::vector<AmrRoute> amrs) { return Plan{std::move(amrs)}; }), py::arg("amrs"))
      .def_readwrite("amrs", &Plan::amrs)
      .def_property_readonly("fleet_size", &Plan::fleet_size)
      .def("__eq__", [](const Plan& a, const Plan& b) { return a == b; })
      .def("__repr__", [](const Plan& p) {
        std::string s = "Plan(";
        for (const auto& r : p.amrs) s += route_string(r) + (&r == &p.amrs.back() ? "" : ", ");
        return s + ")";
      });

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("fixed", &CostBreakdown::fixed)
      .def_readonly("penalty", &CostBreakdown::penalty)
      .def_readonly("travel", &CostBreakdown::travel)
      .def_readonly("total", &CostBreakdown::total);

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("plan", &SearchResult::plan)
      .def_readonly("cost", &SearchResult::cost)
      .def_property_readonly("curve", [](const SearchResult& r) {
        std::vector<double> c;
        for (const auto& p : r.curve) c.push_back(p.best_total);
        return c;
      });

  m.def("evaluate", &evaluate, py::arg("plan"), py::arg("inst"));
  m.def(
      "service_probability",
      [](const Plan& p, const Instance& i) {
        const ServiceProbability sp = service_probability(p, i);
        return py::make_tuple(sp.overall, sp.per_route);
      },
      py::arg("plan"), py::arg("inst"));
  m.def("check_plan", &check_plan, py::arg("plan"), py::arg("inst"));
  m.def("save_plan", &save_plan, py::arg("plan"), py::arg("inst"));
  m.def("load_plan", [](const std::string& text) { return load_plan(text); }, py::arg("text"));
  m.def("route_listing", &route_listing, py::arg("plan"), py::arg("inst"));

  m.def("greedy", &greedy_insert, py::arg("inst"));
  m.def(
      "its",
      [](const Instance& inst, int iterations, int tenure, double d1, double d2, std::uint64_t seed,
         const std::string& scan, int sample_size) {
        py::gil_scoped_release release;
        return its_run(inst, make_params(iterations, tenure, d1, d2, seed, scan, sample_size));
      },
      py::arg("inst"), SEARCH_ARGS);
  m.def(
      "ts",
      [](const Instance& inst, int iterations, int tenure, double d1, double d2, std::uint64_t seed,
         const std::string& scan, int sample_size) {
        py::gil_scoped_release release;
        return plain_ts_run(inst, make_params(iterations, tenure, d1, d2, seed, scan, sample_size));
      },
      py::arg("inst"), SEARCH_ARGS);
  m.def(
      "vns",
      [](const Instance& inst, int iterations, int tenure, double d1, double d2, std::uint64_t seed,
         const std::string& scan, int sample_size) {
        py::gil_scoped_release release;
        return vns_run(inst, make_params(iterations, tenure, d1, d2, seed, scan, sample_size));
      },
      py::arg("inst"), SEARCH_ARGS);
  m.def(
      "exact",
      [](const Instance& inst) {
        const ExactResult e = exhaustive_solve(inst);
        return py::make_tuple(e.plan, e.cost);
      },
      py::arg("inst"));

  m.def(
      "simulate",
      [](const Plan& plan, const Instance& inst, std::int64_t samples, std::uint64_t seed, int jobs) {
        SimulationReport r;
        {
          py::gil_scoped_release release;
          r = simulate_plan(plan, inst, samples, seed, jobs);
        }
        py::dict d;
        d["analytical_r"] = r.analytical_r;
        d["empirical_r"] = r.empirical_r;
        d["all_on_time"] = r.all_on_time;
        d["max_visit_gap"] = r.max_visit_gap();
        d["analytical_travel"] = r.analytical_travel;
        d["empirical_travel"] = r.empirical_travel;
        d["analytical_cost"] = r.analytical_cost;
        d["empirical_cost"] = r.empirical_cost;
        return d;
      },
      py::arg("plan"), py::arg("inst"), py::arg("samples") = 100000, py::arg("seed") = 1, py::arg("jobs") = 1);
}

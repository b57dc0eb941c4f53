#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "amrsched/bench.hpp"
#include "amrsched/error.hpp"
#include "amrsched/montecarlo.hpp"
#include "amrsched/solomon.hpp"

namespace fs = std::filesystem;
using namespace amrsched;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

struct SearchFlags {
  int iterations = 500;
  int tenure = 40;
  double delta1 = 1.0;
  double delta2 = 0.2;
  std::string scan = "full";
  int sample_size = 0;
  std::string decrement = "verbatim";
  std::uint64_t seed = 1;
  int runs = 10;
  int jobs = 1;

  void add(CLI::App* app) {
    app->add_option("--iterations,-N", iterations, "Iterations per run")->capture_default_str()->check(CLI::NonNegativeNumber);
    app->add_option("--tenure", tenure, "Tabu tenure")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--delta1", delta1, "Weight reward for a new best")->capture_default_str();
    app->add_option("--delta2", delta2, "Weight reward for an accepted non-tabu move")->capture_default_str();
    app->add_option("--scan", scan, "Neighborhood scan")->capture_default_str()->check(CLI::IsMember({"full", "sampled", "guided"}));
    app->add_option("--sample-size", sample_size, "Draws per sampled scan (0: one per request)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--decrement", decrement, "Tabu ageing after an improving move")
        ->capture_default_str()
        ->check(CLI::IsMember({"verbatim", "uniform"}));
    app->add_option("--seed", seed, "Base seed")->capture_default_str();
    app->add_option("--runs", runs, "Independent runs")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--jobs,-j", jobs, "Concurrent runs")->capture_default_str()->check(CLI::PositiveNumber);
  }

  SearchParams params() const {
    SearchParams p;
    p.iterations = iterations;
    p.tenure = tenure;
    p.delta1 = delta1;
    p.delta2 = delta2;
    p.scan = parse_scan(scan);
    p.sample_size = sample_size;
    p.decrement = decrement == "uniform" ? DecrementRule::uniform : DecrementRule::verbatim;
    p.seed = seed;
    return p;
  }
};

const std::vector<std::string> kAlgorithms{"its", "ts", "vns", "greedy", "exact"};

int cmd_synth(const std::string& name, std::uint64_t seed, int customers, const std::string& out) {
  std::ostringstream text;
  write_solomon(text, synthesize_solomon(name, seed, customers));
  write_file(out, text.str());
  std::cout << out << '\n';
  return 0;
}

SolomonInstance load_base(const std::string& solomon, const std::string& synthetic, std::uint64_t seed) {
  if (!solomon.empty()) return parse_solomon_file(solomon);
  return synthesize_solomon(synthetic, seed);
}

int cmd_generate(const std::string& solomon, const std::string& synthetic, std::string period, int n,
                 std::uint64_t seed, const std::string& out, bool deterministic, double time_scale, bool sweep) {
  ExtendOptions opt;
  opt.time_scale = time_scale;
  if (deterministic) opt.var_vr = opt.var_vf = opt.service_var = 0.0;
  auto emit = [&](const Instance& inst) {
    const fs::path path = fs::path(out) / (inst.name() + ".json");
    write_file(path, save_instance(inst));
    std::cout << path.string() << '\n';
  };
  if (sweep) {
    for (const std::string& base : benchmark_bases()) {
      const SolomonInstance raw = synthesize_solomon(base, seed);
      for (const char* p : {"P1", "P2", "P3"})
        for (int size : {20, 50, 100}) emit(extend_instance(raw, parse_period(p), size, seed, opt));
    }
    return 0;
  }
  if (solomon.empty() && synthetic.empty()) throw UsageError("generate needs --solomon or --synthetic (or --sweep)");
  const SolomonInstance raw = load_base(solomon, synthetic, seed);
  if (n > static_cast<int>(raw.customers.size())) {
    throw Error("n=" + std::to_string(n) + " exceeds the " + std::to_string(raw.customers.size()) +
                " customers of " + raw.name);
  }
  if (period == "ALL") {
    emit(extend_combined(raw, n, seed, opt));
  } else {
    emit(extend_instance(raw, parse_period(period), n, seed, opt));
  }
  return 0;
}

void write_curves(const SolveSummary& s, const std::string& dir) {
  for (const RunRecord& r : s.runs) {
    const fs::path path =
        fs::path(dir) / (s.instance + "-" + std::string(to_string(s.algorithm)) + "-run" + std::to_string(r.run) + ".csv");
    write_file(path, curve_csv(r.result.curve));
  }
}

int cmd_solve(const std::string& instance, const std::string& algorithm, const SearchFlags& flags,
              const std::string& out, const std::string& curve_out, const std::string& plan_out, bool deterministic,
              std::int64_t mc_samples) {
  Instance inst = load_instance_file(instance);
  if (deterministic) inst = without_variance(inst);
  const SolveSummary s = solve(inst, parse_algorithm(algorithm), flags.params(), flags.runs, flags.jobs);
  std::cout << results_table(s);
  const Plan& best = s.runs[static_cast<std::size_t>(s.best_run)].result.plan;
  std::cout << '\n' << route_listing(best, inst);
  if (!out.empty()) write_file(out, results_document(s, inst));
  if (!curve_out.empty()) write_curves(s, curve_out);
  if (!plan_out.empty()) write_file(plan_out, save_plan(best, inst));
  if (mc_samples > 0) {
    std::cout << '\n' << format_report(simulate_plan(best, inst, mc_samples, flags.seed, flags.jobs), 0.02);
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& instances, const std::vector<std::string>& algorithms,
                const SearchFlags& flags, const std::string& out, bool deterministic) {
  std::vector<Algorithm> algs;
  for (const auto& a : algorithms) algs.push_back(parse_algorithm(a));
  if (std::find(algs.begin(), algs.end(), Algorithm::its) == algs.end()) algs.insert(algs.begin(), Algorithm::its);
  std::vector<std::string> names;
  std::vector<std::vector<SolveSummary>> results;
  for (const auto& path : instances) {
    Instance inst = load_instance_file(path);
    if (deterministic) inst = without_variance(inst);
    names.push_back(inst.name());
    auto& row = results.emplace_back();
    for (Algorithm a : algs) {
      row.push_back(solve(inst, a, flags.params(), flags.runs, flags.jobs));
      std::cerr << inst.name() << ' ' << to_string(a) << " F_avg=" << row.back().f_avg
                << " time=" << row.back().mean_seconds << "s\n";
    }
  }
  const std::string table = comparison_table(compare(names, results, algs));
  std::cout << table;
  if (!out.empty()) write_file(out, table);
  return 0;
}

int cmd_simulate(const std::string& instance, const std::string& plan_path, std::int64_t samples, std::uint64_t seed,
                 int jobs, double tolerance, const std::string& out) {
  if (samples < 1) throw UsageError("--mc-samples must be at least 1");
  const Instance inst = load_instance_file(instance);
  const Plan plan = load_plan_file(plan_path);
  const std::string text = format_report(simulate_plan(plan, inst, samples, seed, jobs), tolerance);
  std::cout << text;
  if (!out.empty()) write_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic multi-trip AMR delivery scheduling"};
  app.require_subcommand(1);

  std::string name, out;
  std::uint64_t seed = 1;
  int customers = 100;
  auto* synth = app.add_subcommand("synth-solomon", "Write a synthetic Solomon-format base instance");
  synth->add_option("--name", name, "Base name; the prefix picks the class (C1, C2, R1, R2, RC1, RC2)")->required();
  synth->add_option("--seed", seed, "Seed")->capture_default_str();
  synth->add_option("--customers", customers, "Customer count")->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--out", out, "Output file")->required();

  std::string solomon, synthetic, period = "P1";
  int n = 100;
  bool deterministic = false, sweep = false;
  double time_scale = 1.0;
  auto* gen = app.add_subcommand("generate", "Extend a Solomon instance into a hospital instance");
  gen->add_option("--solomon", solomon, "Solomon file")->check(CLI::ExistingFile);
  gen->add_option("--synthetic", synthetic, "Synthesize the named base instead of reading a file");
  gen->add_option("--period", period, "Traffic period or ALL for a full-day instance")
      ->capture_default_str()
      ->check(CLI::IsMember({"P1", "P2", "P3", "ALL"}));
  gen->add_option("-n,--requests", n, "Requests kept")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Floor assignment (and synthesis) seed")->capture_default_str();
  gen->add_option("--time-scale", time_scale, "Seconds per Solomon time unit")->capture_default_str();
  gen->add_flag("--deterministic", deterministic, "Zero all variances");
  gen->add_flag("--sweep", sweep, "All 6 synthetic bases x 3 periods x {20,50,100}");
  gen->add_option("--out", out, "Output directory")->required();

  SearchFlags flags;
  std::string instance, algorithm = "its", curve_out, plan_out;
  std::int64_t mc_samples = 0;
  auto* sol = app.add_subcommand("solve", "Run a solver several times on one instance");
  sol->add_option("--instance", instance, "Instance file")->required()->check(CLI::ExistingFile);
  sol->add_option("--algorithm", algorithm, "Solver")->capture_default_str()->check(CLI::IsMember(kAlgorithms));
  flags.add(sol);
  sol->add_option("--out", out, "Results document (JSON)");
  sol->add_option("--curve-out", curve_out, "Directory for per-run fitness curves (CSV)");
  sol->add_option("--plan-out", plan_out, "Best plan document (JSON)");
  sol->add_option("--mc-samples", mc_samples, "Also simulate the best plan")->check(CLI::NonNegativeNumber);
  sol->add_flag("--deterministic", deterministic, "Zero all variances before solving");

  std::vector<std::string> instances, algorithms{"its", "ts", "vns", "greedy"};
  auto* cmp = app.add_subcommand("compare", "G' table of several solvers against I-TS");
  cmp->add_option("--instance", instances, "Instance files")->required()->check(CLI::ExistingFile);
  cmp->add_option("--algorithm", algorithms, "Solvers")->capture_default_str()->check(CLI::IsMember(kAlgorithms));
  flags.add(cmp);
  cmp->add_option("--out", out, "Table file (TSV)");
  cmp->add_flag("--deterministic", deterministic, "Zero all variances before solving");

  std::string plan_path;
  double tolerance = 0.02;
  std::int64_t samples = 100000;
  int jobs = 1;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo check of a plan against its analytical schedule");
  sim->add_option("--instance", instance, "Instance file")->required()->check(CLI::ExistingFile);
  sim->add_option("--plan", plan_path, "Plan document")->required()->check(CLI::ExistingFile);
  sim->add_option("--mc-samples", samples, "Samples")->capture_default_str();
  sim->add_option("--seed", seed, "Seed")->capture_default_str();
  sim->add_option("--jobs,-j", jobs, "Threads")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--tolerance", tolerance, "Pass bound on frequency gaps")->capture_default_str();
  sim->add_option("--out", out, "Report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(name, seed, customers, out);
    if (*gen) return cmd_generate(solomon, synthetic, period, n, seed, out, deterministic, time_scale, sweep);
    if (*sol) return cmd_solve(instance, algorithm, flags, out, curve_out, plan_out, deterministic, mc_samples);
    if (*cmp) return cmd_compare(instances, algorithms, flags, out, deterministic);
    if (*sim) return cmd_simulate(instance, plan_path, samples, seed, jobs, tolerance, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "amrsched/instance.hpp"
#include "amrsched/neighborhood.hpp"
#include "amrsched/plan.hpp"
#include "amrsched/rng.hpp"

namespace amrsched {

enum class ScanMode {
  full,     // every pair move of the chosen operator
  sampled,  // sample_size draws from the full set
  guided,   // guided moves when any apply, else the full set
};
std::string_view to_string(ScanMode m);
ScanMode parse_scan(std::string_view text);

enum class DecrementRule {
  verbatim,  // improving step only ages entries sharing the first request
  uniform,   // every step ages every nonzero entry
};

struct SearchParams {
  int tenure = 40;
  int iterations = 500;
  double delta1 = 1.0;  // reward when the operator finds a new best
  double delta2 = 0.2;  // reward for an accepted non-tabu, non-improving move
  double violation_threshold = 0.5;
  std::uint64_t seed = 1;
  ScanMode scan = ScanMode::full;
  int sample_size = 0;  // sampled scan draws; 0 means one per request
  DecrementRule decrement = DecrementRule::verbatim;
  bool adaptive_weights = true;
  int weight_period = 10;
};

/// Three symmetric n x n matrices of remaining tabu iterations, one per
/// operator, indexed by request id pairs.
class TabuState {
 public:
  TabuState(int requests, int tenure);

  int tenure() const { return tenure_; }
  int get(Operator op, int a, int b) const { return cells_[slot(op, a, b)]; }
  void set(Operator op, int a, int b, int value);
  /// Entry of the accepted improving move: 0 if it was tabu, tenure if not.
  void toggle(Operator op, int a, int b);
  /// Ages nonzero entries of `op` except (a, b); with `row_only` only those
  /// in row/column a are touched.
  void age(Operator op, int a, int b, bool row_only);
  void age_all(Operator op);

  /// Symmetric with every entry in [0, tenure].
  bool consistent() const;

 private:
  std::size_t slot(Operator op, int a, int b) const {
    return (static_cast<std::size_t>(op) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a)) *
               static_cast<std::size_t>(size_) +
           static_cast<std::size_t>(b);
  }

  int size_;
  int tenure_;
  std::vector<int> cells_;
};

/// Roulette weights. Selection uses the probabilities from the last
/// refresh, not the live weights.
struct OperatorWeights {
  std::array<double, kOperatorCount> rho{1.0, 1.0, 1.0};
  std::array<double, kOperatorCount> probability{1.0 / 3, 1.0 / 3, 1.0 / 3};

  void refresh();
};

/// Operator i with probability p_i.
Operator select_operator(const std::array<double, kOperatorCount>& probability, Rng& rng);

struct CurvePoint {
  int iteration = 0;
  double best_total = 0.0;
};

struct SearchResult {
  Plan plan;
  CostBreakdown cost;
  std::vector<CurvePoint> curve;
};

/// State exposed to observers after every iteration.
struct IterationView {
  int iteration;
  Operator op;
  const Plan& current;
  double current_total;
  double best_total;
  const TabuState& tabu;
  const OperatorWeights& weights;
};

using IterationObserver = std::function<void(const IterationView&)>;

/// Tabu loop from a given start: per iteration pick an operator, scan its
/// repaired neighborhood, take the best neighbor if it beats the incumbent
/// (aspiration), else the best non-tabu neighbor. With
/// `params.adaptive_weights` false the operator choice stays uniform.
SearchResult tabu_search(const Instance& inst, const Plan& start, const SearchParams& params,
                         const IterationObserver& observer = {});

/// Improved tabu search seeded with greedy insertion.
SearchResult its_run(const Instance& inst, const SearchParams& params,
                     const IterationObserver& observer = {});

/// Two-column "iteration,best_total" text.
std::string curve_csv(const std::vector<CurvePoint>& curve);

}  // namespace amrsched

#pragma once

#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "amrsched/instance.hpp"
#include "amrsched/plan.hpp"
#include "amrsched/rng.hpp"

namespace amrsched {

enum class Operator { swap = 0, two_opt = 1, relocation = 2 };
inline constexpr int kOperatorCount = 3;

std::string_view to_string(Operator op);

enum class Placement { before, after };

/// Neighborhood action on a pair of requests.
///
/// swap: exchange `first` and `second`. two_opt: reverse the run of one trip
/// from `first` to `second`. relocation: move `first` next to `second`
/// (`placement` says on which side). Tabu bookkeeping ignores the order of
/// the pair. A zero `first` marks a null move.
struct Move {
  Operator op = Operator::swap;
  int first = 0;
  int second = 0;
  Placement placement = Placement::before;

  bool null() const { return first == 0; }
  friend bool operator==(const Move&, const Move&) = default;
};

/// Applies a move without repairing capacity; empty trips and AMRs are
/// dropped. Null moves return the plan unchanged.
Plan apply_move(const Plan& plan, const Move& move);

/// Splits every trip before the first visit whose demand exceeds the load
/// left on board, repeatedly, keeping the pieces on the same AMR.
Plan repair_depot_insertion(const Plan& plan, const Instance& inst);

struct MoveResult {
  Plan plan;
  Move move;
};

/// Guided operators. When some request is late with probability above
/// `threshold` the move is chosen by the window rules; otherwise a random
/// move is drawn from `rng`. Results are not repaired.
MoveResult swap_star(const Plan& plan, const Instance& inst, Rng& rng, double threshold = 0.5);
MoveResult two_opt_star(const Plan& plan, const Instance& inst, Rng& rng, double threshold = 0.5);
MoveResult relocation_star(const Plan& plan, const Instance& inst, Rng& rng, double threshold = 0.5);
MoveResult apply_operator(Operator op, const Plan& plan, const Instance& inst, Rng& rng,
                          double threshold = 0.5);

/// Snapshot of a plan used to enumerate and price neighbors quickly.
///
/// Each AMR is kept as a flat sequence with 0 between trips; pricing a move
/// edits scratch copies of the touched AMRs and walks them with capacity
/// repair folded in, so `price(m)` equals the total of
/// `evaluate(repair_depot_insertion(apply_move(plan, m)))` bit for bit.
class Neighborhood {
 public:
  Neighborhood(const Plan& plan, const Instance& inst, double threshold = 0.5);

  const Plan& plan() const { return plan_; }
  double total() const { return total_; }
  /// P(A > h) per request id (index 0 unused).
  const std::vector<double>& lateness() const { return lateness_; }
  /// Requests late with probability above the threshold, most late first.
  const std::vector<int>& violators() const { return violators_; }

  /// Every pair move of the operator (relocation: both placements), no-ops
  /// left out.
  std::vector<Move> candidates(Operator op) const;
  /// The moves the guidance rules allow: violator paired with a later-due
  /// request (swap, relocation before it), or the reversal of a maximal
  /// strictly decreasing-e run (2-opt). Empty when no guidance applies.
  std::vector<Move> guided_candidates(Operator op) const;

  /// The single guided move the operator would make, if guidance applies.
  std::optional<Move> guided_move(Operator op) const;
  /// A uniformly drawn pair move; null when the plan is too small.
  Move random_move(Operator op, Rng& rng) const;

  /// Objective total of the repaired neighbor. Pricing stops early and
  /// returns infinity once the total is certain to reach `cutoff`.
  double price(const Move& move, double cutoff = std::numeric_limits<double>::infinity());
  /// The repaired neighbor itself.
  Plan neighbor(const Move& move) const;

 private:
  struct Slot {
    int amr = -1;
    int index = -1;  // in the AMR's flat sequence
  };

  bool is_noop(const Move& m) const;
  void edit(const Move& m, std::vector<int>& a, std::vector<int>& b, int& amr_a, int& amr_b) const;
  void collect_runs(std::vector<Move>& out) const;
  int earlier_in_amr(int id, int other) const;
  struct Bound {
    double fixed = 0.0;
    double late = 0.0;
    double travel = 0.0;
    double limit = 0.0;
  };
  // Walk of an edited copy of AMR `amr`, resumed from the longest unchanged
  // prefix; false as soon as the running total passes bound.limit.
  bool rewalk(int amr, const std::vector<int>& seq, const Bound& bound, AmrTotals& out) const;

  const Instance* inst_;
  Plan plan_;
  double threshold_;
  std::vector<std::vector<int>> seqs_;
  std::vector<Slot> slot_;
  std::vector<AmrTotals> totals_;
  std::vector<std::vector<detail::Walker>> prefix_;  // state before each element, plus the end
  std::vector<double> lateness_;
  std::vector<int> violators_;
  std::vector<int> ids_;
  double total_ = 0.0;
  int used_count_ = 0;
  double late_sum_ = 0.0;
  double travel_sum_ = 0.0;

  std::vector<int> scratch_a_;
  std::vector<int> scratch_b_;
};

}  // namespace amrsched

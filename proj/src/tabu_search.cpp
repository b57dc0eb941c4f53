#include "amrsched/tabu_search.hpp"

#include <limits>
#include <sstream>

#include "amrsched/error.hpp"
#include "amrsched/greedy.hpp"

namespace amrsched {

std::string_view to_string(ScanMode m) {
  switch (m) {
    case ScanMode::full: return "full";
    case ScanMode::sampled: return "sampled";
    case ScanMode::guided: return "guided";
  }
  return "?";
}

ScanMode parse_scan(std::string_view text) {
  for (ScanMode m : {ScanMode::full, ScanMode::sampled, ScanMode::guided})
    if (text == to_string(m)) return m;
  throw Error("unknown scan mode '" + std::string(text) + "'");
}

TabuState::TabuState(int requests, int tenure)
    : size_(requests + 1),
      tenure_(tenure),
      cells_(static_cast<std::size_t>(kOperatorCount) * static_cast<std::size_t>(size_) *
                 static_cast<std::size_t>(size_),
             0) {}

void TabuState::set(Operator op, int a, int b, int value) {
  cells_[slot(op, a, b)] = value;
  cells_[slot(op, b, a)] = value;
}

void TabuState::toggle(Operator op, int a, int b) {
  set(op, a, b, get(op, a, b) != 0 ? 0 : tenure_);
}

void TabuState::age(Operator op, int a, int b, bool row_only) {
  const auto keep = [&](int i, int j) { return (i == a && j == b) || (i == b && j == a); };
  if (row_only) {
    for (int j = 0; j < size_; ++j) {
      if (j == a || keep(a, j)) continue;
      int& cell = cells_[slot(op, a, j)];
      if (cell > 0) {
        --cell;
        cells_[slot(op, j, a)] = cell;
      }
    }
    return;
  }
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) {
      int& cell = cells_[slot(op, i, j)];
      if (cell > 0 && !keep(i, j)) --cell;
    }
}

void TabuState::age_all(Operator op) {
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) {
      int& cell = cells_[slot(op, i, j)];
      if (cell > 0) --cell;
    }
}

bool TabuState::consistent() const {
  for (int op = 0; op < kOperatorCount; ++op)
    for (int i = 0; i < size_; ++i)
      for (int j = 0; j < size_; ++j) {
        const int v = get(static_cast<Operator>(op), i, j);
        if (v < 0 || v > tenure_ || v != get(static_cast<Operator>(op), j, i)) return false;
      }
  return true;
}

void OperatorWeights::refresh() {
  double sum = 0.0;
  for (double r : rho) sum += r;
  for (int i = 0; i < kOperatorCount; ++i) probability[i] = rho[i] / sum;
}

Operator select_operator(const std::array<double, kOperatorCount>& probability, Rng& rng) {
  double sum = 0.0;
  for (double p : probability) sum += p;
  const double spin = rng.uniform() * sum;
  double acc = 0.0;
  for (int i = 0; i < kOperatorCount; ++i) {
    acc += probability[i];
    if (spin < acc) return static_cast<Operator>(i);
  }
  return static_cast<Operator>(kOperatorCount - 1);
}

SearchResult tabu_search(const Instance& inst, const Plan& start, const SearchParams& params,
                         const IterationObserver& observer) {
  Rng rng(params.seed);
  TabuState tabu(inst.size(), params.tenure);
  OperatorWeights weights;
  const std::array<double, kOperatorCount> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};

  Plan current = repair_depot_insertion(start, inst);
  double current_total = evaluate(current, inst).total;
  Plan best = current;
  double best_total = current_total;

  SearchResult result;
  result.curve.reserve(static_cast<std::size_t>(std::max(params.iterations, 0)));
  const int samples = params.sample_size > 0 ? params.sample_size : std::max(inst.size(), 1);

  for (int ite = 1; ite <= params.iterations; ++ite) {
    const Operator op = select_operator(params.adaptive_weights ? weights.probability : uniform, rng);
    const auto k = static_cast<std::size_t>(op);
    Neighborhood nb(current, inst, params.violation_threshold);
    std::vector<Move> moves;
    if (params.scan == ScanMode::guided) moves = nb.guided_candidates(op);
    if (moves.empty()) moves = nb.candidates(op);
    if (params.scan == ScanMode::sampled && moves.size() > static_cast<std::size_t>(samples)) {
      std::vector<Move> drawn;
      drawn.reserve(static_cast<std::size_t>(samples));
      for (int s = 0; s < samples; ++s) {
        drawn.push_back(moves[static_cast<std::size_t>(rng.index(static_cast<int>(moves.size())))]);
      }
      moves = std::move(drawn);
    }

    if (!moves.empty()) {
      constexpr double inf = std::numeric_limits<double>::infinity();
      std::size_t top = 0, open = moves.size();
      double top_total = inf, open_total = inf;
      for (std::size_t i = 0; i < moves.size(); ++i) {
        const bool is_tabu = tabu.get(op, moves[i].first, moves[i].second) != 0;
        const double total = nb.price(moves[i], is_tabu ? top_total : open_total);
        if (total < top_total) {
          top_total = total;
          top = i;
        }
        if (total < open_total && !is_tabu) {
          open_total = total;
          open = i;
        }
      }
      if (top_total < best_total) {
        // Improving neighbor, accepted even when tabu (aspiration).
        const Move& m = moves[top];
        current = nb.neighbor(m);
        current_total = top_total;
        best = current;
        best_total = top_total;
        if (params.adaptive_weights) weights.rho[k] += params.delta1;
        tabu.toggle(op, m.first, m.second);
        tabu.age(op, m.first, m.second, params.decrement == DecrementRule::verbatim);
      } else if (open < moves.size()) {
        const Move& m = moves[open];
        current = nb.neighbor(m);
        current_total = open_total;
        if (params.adaptive_weights) weights.rho[k] += params.delta2;
        tabu.set(op, m.first, m.second, params.tenure);
        tabu.age(op, m.first, m.second, false);
      } else {
        // Every neighbor is tabu and none aspirates: take the least bad one.
        current = nb.neighbor(moves[top]);
        current_total = top_total;
        tabu.age_all(op);
      }
    }

    if (params.adaptive_weights && params.weight_period > 0 && ite % params.weight_period == 0) {
      weights.refresh();
    }
    result.curve.push_back({ite, best_total});
    if (observer) observer({ite, op, current, current_total, best_total, tabu, weights});
  }

  result.plan = std::move(best);
  result.cost = evaluate(result.plan, inst);
  return result;
}

SearchResult its_run(const Instance& inst, const SearchParams& params, const IterationObserver& observer) {
  return tabu_search(inst, greedy_insert(inst), params, observer);
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,best_total\n";
  for (const auto& p : curve) out << p.iteration << ',' << p.best_total << '\n';
  return out.str();
}

}  // namespace amrsched

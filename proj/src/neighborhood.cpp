#include "amrsched/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "amrsched/error.hpp"

namespace amrsched {

std::string_view to_string(Operator op) {
  switch (op) {
    case Operator::swap: return "swap*";
    case Operator::two_opt: return "2-opt*";
    case Operator::relocation: return "relocation*";
  }
  return "?";
}

namespace {

struct Position {
  std::size_t amr;
  std::size_t trip;
  std::size_t index;
};

std::optional<Position> locate(const Plan& plan, int id) {
  for (std::size_t k = 0; k < plan.amrs.size(); ++k)
    for (std::size_t p = 0; p < plan.amrs[k].size(); ++p) {
      const Trip& t = plan.amrs[k][p];
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] == id) return Position{k, p, i};
    }
  return std::nullopt;
}

Position must_locate(const Plan& plan, int id) {
  auto pos = locate(plan, id);
  if (!pos) throw Error("request " + std::to_string(id) + " is not in the plan");
  return *pos;
}

Trip& trip_at(Plan& plan, const Position& p) { return plan.amrs[p.amr][p.trip]; }

// Splits a flat AMR sequence into trips, starting a new trip at 0 markers and
// wherever the load on board cannot cover the next demand.
AmrRoute unflatten_repaired(const std::vector<int>& seq, const Instance& inst) {
  AmrRoute route;
  Trip cur;
  double load = inst.capacity();
  for (int id : seq) {
    if (id == 0) {
      if (!cur.empty()) route.push_back(std::move(cur));
      cur.clear();
      load = inst.capacity();
      continue;
    }
    const double q = inst.request(id).demand;
    if (!cur.empty() && load < q) {
      route.push_back(std::move(cur));
      cur.clear();
      load = inst.capacity();
    }
    cur.push_back(id);
    load -= q;
  }
  if (!cur.empty()) route.push_back(std::move(cur));
  return route;
}

}  // namespace

Plan apply_move(const Plan& plan, const Move& move) {
  Plan out = plan;
  if (move.null()) return out;
  if (move.op == Operator::two_opt && move.first == move.second) return out;
  if (move.first == move.second) throw Error("move needs two distinct requests");
  const Position a = must_locate(out, move.first);
  const Position b = must_locate(out, move.second);
  switch (move.op) {
    case Operator::swap:
      std::swap(trip_at(out, a)[a.index], trip_at(out, b)[b.index]);
      break;
    case Operator::two_opt: {
      if (a.amr != b.amr || a.trip != b.trip) throw Error("2-opt* reverses within a single trip");
      Trip& t = trip_at(out, a);
      const auto lo = std::min(a.index, b.index);
      const auto hi = std::max(a.index, b.index);
      std::reverse(t.begin() + static_cast<std::ptrdiff_t>(lo), t.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
      break;
    }
    case Operator::relocation: {
      Trip& from = trip_at(out, a);
      from.erase(from.begin() + static_cast<std::ptrdiff_t>(a.index));
      const Position anchor = must_locate(out, move.second);
      Trip& to = trip_at(out, anchor);
      const auto at = anchor.index + (move.placement == Placement::after ? 1 : 0);
      to.insert(to.begin() + static_cast<std::ptrdiff_t>(at), move.first);
      break;
    }
  }
  out.normalize();
  return out;
}

Plan repair_depot_insertion(const Plan& plan, const Instance& inst) {
  Plan out;
  std::vector<int> seq;
  for (const auto& route : plan.amrs) {
    detail::flatten(route, seq);
    out.amrs.push_back(unflatten_repaired(seq, inst));
  }
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------

Neighborhood::Neighborhood(const Plan& plan, const Instance& inst, double threshold)
    : inst_(&inst), plan_(plan), threshold_(threshold) {
  plan_.normalize();
  slot_.assign(static_cast<std::size_t>(inst.size()) + 1, {});
  lateness_.assign(static_cast<std::size_t>(inst.size()) + 1, 0.0);
  seqs_.resize(plan_.amrs.size());
  totals_.resize(plan_.amrs.size());
  prefix_.resize(plan_.amrs.size());
  for (std::size_t k = 0; k < plan_.amrs.size(); ++k) {
    detail::flatten(plan_.amrs[k], seqs_[k]);
    const auto& seq = seqs_[k];
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] == 0) continue;
      slot_[static_cast<std::size_t>(seq[i])] = {static_cast<int>(k), static_cast<int>(i)};
      ids_.push_back(seq[i]);
    }
    AmrSchedule sched;
    totals_[k] = detail::walk_sequence(seq, inst, true, &sched);
    auto& states = prefix_[k];
    detail::Walker w(inst, true);
    states.reserve(seq.size() + 1);
    for (int id : seq) {
      states.push_back(w);
      w.feed(id);
    }
    states.push_back(w);
    for (const auto& trip : sched.trips)
      for (const auto& v : trip.visits) lateness_[static_cast<std::size_t>(v.request)] = v.lateness;
  }
  std::sort(ids_.begin(), ids_.end());
  total_ = combine(totals_, inst.costs()).total;
  for (const AmrTotals& t : totals_) {
    used_count_ += t.used ? 1 : 0;
    late_sum_ += t.lateness;
    travel_sum_ += t.travel_mean;
  }
  for (int id : ids_)
    if (lateness_[static_cast<std::size_t>(id)] > threshold_) violators_.push_back(id);
  std::stable_sort(violators_.begin(), violators_.end(), [&](int a, int b) {
    return lateness_[static_cast<std::size_t>(a)] > lateness_[static_cast<std::size_t>(b)];
  });
}

bool Neighborhood::is_noop(const Move& m) const {
  if (m.op != Operator::relocation) return false;
  const Slot& a = slot_[static_cast<std::size_t>(m.first)];
  const Slot& b = slot_[static_cast<std::size_t>(m.second)];
  if (a.amr != b.amr) return false;
  return m.placement == Placement::before ? a.index + 1 == b.index : a.index == b.index + 1;
}

void Neighborhood::collect_runs(std::vector<Move>& out) const {
  for (const auto& seq : seqs_) {
    std::size_t i = 0;
    while (i < seq.size()) {
      if (seq[i] == 0) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < seq.size() && seq[j + 1] != 0 &&
             inst_->request(seq[j + 1]).ready < inst_->request(seq[j]).ready) {
        ++j;
      }
      if (j > i) out.push_back({Operator::two_opt, seq[i], seq[j], Placement::before});
      i = j + 1;
    }
  }
}

std::vector<Move> Neighborhood::candidates(Operator op) const {
  std::vector<Move> out;
  switch (op) {
    case Operator::swap:
      for (std::size_t i = 0; i < ids_.size(); ++i)
        for (std::size_t j = i + 1; j < ids_.size(); ++j) out.push_back({Operator::swap, ids_[i], ids_[j], Placement::before});
      break;
    case Operator::two_opt:
      for (const auto& seq : seqs_) {
        for (std::size_t i = 0; i < seq.size(); ++i) {
          if (seq[i] == 0) continue;
          for (std::size_t j = i + 1; j < seq.size() && seq[j] != 0; ++j)
            out.push_back({Operator::two_opt, seq[i], seq[j], Placement::before});
        }
      }
      break;
    case Operator::relocation:
      for (int a : ids_)
        for (int b : ids_) {
          if (a == b) continue;
          for (Placement p : {Placement::before, Placement::after}) {
            const Move m{Operator::relocation, a, b, p};
            if (!is_noop(m)) out.push_back(m);
          }
        }
      break;
  }
  return out;
}

std::vector<Move> Neighborhood::guided_candidates(Operator op) const {
  std::vector<Move> out;
  const auto due = [&](int id) { return inst_->request(id).due; };
  switch (op) {
    case Operator::swap:
      for (int v : violators_)
        for (int u : ids_)
          if (u != v && due(u) > due(v)) out.push_back({Operator::swap, v, u, Placement::before});
      break;
    case Operator::two_opt:
      collect_runs(out);
      break;
    case Operator::relocation:
      for (int v : violators_)
        for (int u : ids_) {
          const Move m{Operator::relocation, v, u, Placement::before};
          if (u != v && due(u) > due(v) && !is_noop(m)) out.push_back(m);
        }
      break;
  }
  return out;
}

int Neighborhood::earlier_in_amr(int id, int other) const {
  const Slot& a = slot_[static_cast<std::size_t>(id)];
  const Slot& b = slot_[static_cast<std::size_t>(other)];
  return a.amr == b.amr && b.index < a.index;
}

std::optional<Move> Neighborhood::guided_move(Operator op) const {
  const auto due = [&](int id) { return inst_->request(id).due; };
  // Ordering key for "earliest position": own AMR first, then plan order.
  const auto position_key = [&](int v, int u) {
    const Slot& s = slot_[static_cast<std::size_t>(u)];
    const bool same = s.amr == slot_[static_cast<std::size_t>(v)].amr;
    return std::make_tuple(same ? 0 : 1, s.amr, s.index);
  };
  switch (op) {
    case Operator::swap:
      for (int v : violators_) {
        int best = 0;
        for (int u : ids_) {
          if (u == v || !(due(u) > due(v)) || !earlier_in_amr(v, u)) continue;
          if (best == 0 || due(u) > due(best) ||
              (due(u) == due(best) && slot_[static_cast<std::size_t>(u)].index <
                                         slot_[static_cast<std::size_t>(best)].index)) {
            best = u;
          }
        }
        if (best == 0) {
          for (int u : ids_)
            if (u != v && due(u) > due(v) && (best == 0 || due(u) > due(best))) best = u;
        }
        if (best != 0) return Move{Operator::swap, v, best, Placement::before};
      }
      return std::nullopt;
    case Operator::two_opt: {
      std::vector<Move> runs;
      collect_runs(runs);
      if (runs.empty()) return std::nullopt;
      const auto length = [&](const Move& m) {
        return slot_[static_cast<std::size_t>(m.second)].index - slot_[static_cast<std::size_t>(m.first)].index;
      };
      const Move* best = &runs.front();
      for (const auto& m : runs)
        if (length(m) > length(*best)) best = &m;
      return *best;
    }
    case Operator::relocation:
      for (int v : violators_) {
        int best = 0;
        for (int u : ids_) {
          const Move m{Operator::relocation, v, u, Placement::before};
          if (u == v || !(due(u) > due(v)) || is_noop(m)) continue;
          if (best == 0 || position_key(v, u) < position_key(v, best)) best = u;
        }
        if (best != 0) return Move{Operator::relocation, v, best, Placement::before};
      }
      return std::nullopt;
  }
  return std::nullopt;
}

Move Neighborhood::random_move(Operator op, Rng& rng) const {
  const int n = static_cast<int>(ids_.size());
  if (op == Operator::two_opt) {
    struct Span {
      std::size_t amr, begin, length;
    };
    std::vector<Span> trips;
    for (std::size_t k = 0; k < seqs_.size(); ++k) {
      const auto& seq = seqs_[k];
      std::size_t i = 0;
      while (i < seq.size()) {
        std::size_t j = i;
        while (j < seq.size() && seq[j] != 0) ++j;
        if (j - i >= 2) trips.push_back({k, i, j - i});
        i = j + 1;
      }
    }
    if (trips.empty()) return {};
    const Span& s = trips[static_cast<std::size_t>(rng.index(static_cast<int>(trips.size())))];
    const int len = static_cast<int>(s.length);
    int i = rng.index(len);
    int j = rng.index(len - 1);
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    const auto& seq = seqs_[s.amr];
    return {Operator::two_opt, seq[s.begin + static_cast<std::size_t>(i)], seq[s.begin + static_cast<std::size_t>(j)],
            Placement::before};
  }
  if (n < 2) return {};
  const int i = rng.index(n);
  int j = rng.index(n - 1);
  if (j >= i) ++j;
  Move m{op, ids_[static_cast<std::size_t>(i)], ids_[static_cast<std::size_t>(j)], Placement::before};
  if (op == Operator::relocation && rng.index(2) == 1) m.placement = Placement::after;
  return m;
}

void Neighborhood::edit(const Move& m, std::vector<int>& a, std::vector<int>& b, int& amr_a, int& amr_b) const {
  const Slot& sa = slot_[static_cast<std::size_t>(m.first)];
  const Slot& sb = slot_[static_cast<std::size_t>(m.second)];
  amr_a = sa.amr;
  amr_b = sa.amr == sb.amr ? -1 : sb.amr;
  a = seqs_[static_cast<std::size_t>(sa.amr)];
  if (amr_b >= 0) b = seqs_[static_cast<std::size_t>(sb.amr)];
  const auto ia = static_cast<std::size_t>(sa.index);
  const auto ib = static_cast<std::size_t>(sb.index);
  switch (m.op) {
    case Operator::swap:
      if (amr_b < 0) {
        std::swap(a[ia], a[ib]);
      } else {
        a[ia] = m.second;
        b[ib] = m.first;
      }
      break;
    case Operator::two_opt:
      std::reverse(a.begin() + static_cast<std::ptrdiff_t>(std::min(ia, ib)),
                   a.begin() + static_cast<std::ptrdiff_t>(std::max(ia, ib)) + 1);
      break;
    case Operator::relocation: {
      const std::size_t shift = m.placement == Placement::after ? 1 : 0;
      if (amr_b < 0) {
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(ia));
        const std::size_t at = (ia < ib ? ib - 1 : ib) + shift;
        a.insert(a.begin() + static_cast<std::ptrdiff_t>(at), m.first);
      } else {
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(ia));
        b.insert(b.begin() + static_cast<std::ptrdiff_t>(ib + shift), m.first);
      }
      break;
    }
  }
}

double Neighborhood::price(const Move& move, double cutoff) {
  if (move.null()) return total_;
  int amr_a = -1, amr_b = -1;
  edit(move, scratch_a_, scratch_b_, amr_a, amr_b);
  const auto ka = static_cast<std::size_t>(amr_a);
  const auto kb = static_cast<std::size_t>(amr_b);
  const auto serves = [](const std::vector<int>& seq) {
    return std::any_of(seq.begin(), seq.end(), [](int id) { return id != 0; });
  };

  // Everything outside the touched AMRs plus their fixed cost bounds the
  // total from below; the walks only add to it.
  Bound bound;
  bound.late = late_sum_ - totals_[ka].lateness;
  bound.travel = travel_sum_ - totals_[ka].travel_mean;
  int used = used_count_ - (totals_[ka].used ? 1 : 0) + (serves(scratch_a_) ? 1 : 0);
  if (amr_b >= 0) {
    bound.late -= totals_[kb].lateness;
    bound.travel -= totals_[kb].travel_mean;
    used += (serves(scratch_b_) ? 1 : 0) - (totals_[kb].used ? 1 : 0);
  }
  bound.fixed = inst_->costs().fixed * used;
  bound.limit = std::isinf(cutoff) ? cutoff : cutoff + 1e-9 * (1.0 + std::abs(cutoff));

  AmrTotals ta, tb;
  if (!rewalk(amr_a, scratch_a_, bound, ta)) return std::numeric_limits<double>::infinity();
  if (amr_b >= 0) {
    bound.late += ta.lateness;
    bound.travel += ta.travel_mean;
    if (!rewalk(amr_b, scratch_b_, bound, tb)) return std::numeric_limits<double>::infinity();
  }

  const AmrTotals keep_a = totals_[ka];
  totals_[ka] = ta;
  AmrTotals keep_b;
  if (amr_b >= 0) {
    keep_b = totals_[kb];
    totals_[kb] = tb;
  }
  const double total = combine(totals_, inst_->costs()).total;
  totals_[ka] = keep_a;
  if (amr_b >= 0) totals_[kb] = keep_b;
  return total;
}

bool Neighborhood::rewalk(int amr, const std::vector<int>& seq, const Bound& bound, AmrTotals& out) const {
  const auto k = static_cast<std::size_t>(amr);
  const auto& base = seqs_[k];
  const std::size_t limit = std::min(base.size(), seq.size());
  std::size_t p = 0;
  while (p < limit && seq[p] == base[p]) ++p;
  detail::Walker w = prefix_[k][p];
  const CostCoefficients& c = inst_->costs();
  for (std::size_t i = p; i < seq.size(); ++i) {
    w.feed(seq[i]);
    if (bound.fixed + c.penalty * (bound.late + w.totals.lateness) + c.travel * (bound.travel + w.totals.travel_mean) >
        bound.limit) {
      return false;
    }
  }
  out = w.finish();
  return true;
}

Plan Neighborhood::neighbor(const Move& move) const {
  Plan out = plan_;
  if (move.null()) return repair_depot_insertion(out, *inst_);
  std::vector<int> a, b;
  int amr_a = -1, amr_b = -1;
  edit(move, a, b, amr_a, amr_b);
  out.amrs[static_cast<std::size_t>(amr_a)] = unflatten_repaired(a, *inst_);
  if (amr_b >= 0) out.amrs[static_cast<std::size_t>(amr_b)] = unflatten_repaired(b, *inst_);
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------

MoveResult apply_operator(Operator op, const Plan& plan, const Instance& inst, Rng& rng, double threshold) {
  const Neighborhood nb(plan, inst, threshold);
  Move move = nb.guided_move(op).value_or(Move{});
  if (move.null()) move = nb.random_move(op, rng);
  return {apply_move(plan, move), move};
}

MoveResult swap_star(const Plan& plan, const Instance& inst, Rng& rng, double threshold) {
  return apply_operator(Operator::swap, plan, inst, rng, threshold);
}

MoveResult two_opt_star(const Plan& plan, const Instance& inst, Rng& rng, double threshold) {
  return apply_operator(Operator::two_opt, plan, inst, rng, threshold);
}

MoveResult relocation_star(const Plan& plan, const Instance& inst, Rng& rng, double threshold) {
  return apply_operator(Operator::relocation, plan, inst, rng, threshold);
}

}  // namespace amrsched

#pragma once

#include "amrsched/instance.hpp"
#include "amrsched/plan.hpp"

namespace amrsched {

/// Greedy insertion: requests in ascending (ready, due, id) order are
/// appended to the end of the existing route that keeps the mean arrival
/// within the due time and the load within capacity at the smallest added
/// expected travel; otherwise they open a new AMR. Every AMR gets one trip.
Plan greedy_insert(const Instance& inst);

}  // namespace amrsched

#pragma once

#include <vector>

#include "nrsched/core.hpp"
#include "nrsched/cover_fptas.hpp"
#include "nrsched/instance.hpp"

namespace nrsched {

/// Shift arrivals to powers of two, cover every shifted residual demand with the knapsack FPTAS,
/// and run each job at the latest shifted arrival whose cover contains it. The schedule is
/// mapped back onto the original arrivals.
inline Assignment shift_and_cover(const Instance& inst, const Rational& eps) {
  require_zero_processing(inst);
  require_valid(inst);
  if (inst.arrivals.size() == 1) return Assignment{std::vector<std::size_t>(inst.jobs.size(), 0)};

  Instance shifted = shift_arrivals(inst, Rational(2));
  auto demand = remaining_demands(shifted);
  Assignment placed{std::vector<std::size_t>(inst.jobs.size(), 0)};
  for (std::size_t level = 1; level < shifted.arrivals.size(); ++level) {
    if (demand[level] == 0) break;  // residual demand is non-increasing
    auto cover = min_cover_fptas(cover_problem_for(inst.jobs, demand[level]), eps);
    for (std::size_t j : cover.chosen) placed.arrival[j] = level;  // later levels overwrite: max index wins
  }
  return map_from_shifted(inst, shifted, placed);
}

}  // namespace nrsched

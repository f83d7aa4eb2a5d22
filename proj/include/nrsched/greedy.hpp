#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "nrsched/core.hpp"
#include "nrsched/detail/scaled.hpp"
#include "nrsched/errors.hpp"
#include "nrsched/instance.hpp"

namespace nrsched {

namespace detail {

// Most inefficient first: smaller w/a, then larger a, then smaller id. Jobs with a = 0 come last.
struct InefficiencyOrder {
  const std::vector<Job>* jobs;
  bool operator()(std::size_t x, std::size_t y) const {
    const Job& jx = (*jobs)[x];
    const Job& jy = (*jobs)[y];
    if (jx.a == 0 || jy.a == 0) {
      if ((jx.a == 0) != (jy.a == 0)) return jx.a != 0;
      return x < y;
    }
    Wide lhs = static_cast<Wide>(jx.w) * jy.a, rhs = static_cast<Wide>(jy.w) * jx.a;
    if (lhs != rhs) return lhs < rhs;
    if (jx.a != jy.a) return jx.a > jy.a;
    return x < y;
  }
};

}  // namespace detail

struct GreedyPick {
  std::size_t job;
  std::size_t arrival;
  Int threshold_before;  // W when the job was picked
  bool by_ratio;         // picked among jobs with w_j <= W
};

struct GreedyResult {
  Assignment assignment;
  std::vector<GreedyPick> picks;
};

/// Assigns jobs to arrivals from the last one backwards. While the requirement A gathered so far
/// is below the residual demand of the current arrival, it takes the most inefficient job with
/// w_j <= W (W = weight gathered so far), or the lightest job when none qualifies.
/// A and W are never reset between arrivals.
inline GreedyResult greedy_schedule_traced(const Instance& inst) {
  require_zero_processing(inst);
  require_valid(inst);
  const std::size_t n = inst.jobs.size(), q = inst.arrivals.size();
  GreedyResult out;
  out.assignment.arrival.assign(n, 0);
  if (n == 0) return out;

  auto demand = remaining_demands(inst);
  std::vector<std::size_t> by_weight(n);
  std::iota(by_weight.begin(), by_weight.end(), 0);
  std::stable_sort(by_weight.begin(), by_weight.end(),
                   [&](std::size_t x, std::size_t y) { return inst.jobs[x].w < inst.jobs[y].w; });

  std::set<std::size_t, detail::InefficiencyOrder> eligible(detail::InefficiencyOrder{&inst.jobs});
  std::vector<char> assigned(n, 0);
  std::size_t scan = 0;  // by_weight[scan..] not yet eligible
  Int A = 0, W = 0;
  for (std::size_t level = q; level-- > 0;) {
    while (A < demand[level]) {
      while (scan < n && inst.jobs[by_weight[scan]].w <= W) {
        if (!assigned[by_weight[scan]]) eligible.insert(by_weight[scan]);
        ++scan;
      }
      std::size_t pick;
      bool by_ratio = !eligible.empty();
      if (by_ratio) {
        pick = *eligible.begin();
        eligible.erase(eligible.begin());
      } else {
        while (scan < n && assigned[by_weight[scan]]) ++scan;
        if (scan == n) throw Infeasible("greedy ran out of jobs before covering the demand");
        pick = by_weight[scan++];
      }
      out.picks.push_back({pick, level, W, by_ratio});
      assigned[pick] = 1;
      W += inst.jobs[pick].w;
      A += inst.jobs[pick].a;
      out.assignment.arrival[pick] = level;
    }
  }
  return out;
}

inline Assignment greedy_schedule(const Instance& inst) { return greedy_schedule_traced(inst).assignment; }

}  // namespace nrsched

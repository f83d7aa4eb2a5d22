#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "nrsched/core.hpp"
#include "nrsched/detail/scaled.hpp"
#include "nrsched/errors.hpp"
#include "nrsched/instance.hpp"

namespace nrsched {

struct CoverItem {
  Int w = 0;
  Int a = 0;
};

/// Pick a minimum-weight subset of items whose requirements sum to at least `demand`.
struct CoverProblem {
  std::vector<CoverItem> items;
  Int demand = 0;

  Int total_requirement() const {
    return std::accumulate(items.begin(), items.end(), Int{0}, [](Int s, const CoverItem& c) { return s + c.a; });
  }
};

struct CoverSolution {
  std::vector<std::size_t> chosen;  // ascending item ids
  Int weight = 0;
  Int coverage = 0;
};

inline CoverProblem cover_problem_for(const std::vector<Job>& jobs, Int demand) {
  CoverProblem prob;
  prob.demand = demand;
  prob.items.reserve(jobs.size());
  for (const auto& j : jobs) prob.items.push_back({j.w, j.a});
  return prob;
}

namespace detail {

// Lexicographic order of the ascending id sequences encoded by two masks.
inline bool lex_less_ids(std::uint64_t lhs, std::uint64_t rhs) {
  while (lhs && rhs) {
    int a = std::countr_zero(lhs), b = std::countr_zero(rhs);
    if (a != b) return a < b;
    lhs &= lhs - 1;
    rhs &= rhs - 1;
  }
  return !lhs && rhs;
}

inline void check_cover_problem(const CoverProblem& prob, std::size_t cap) {
  if (prob.items.size() > cap) throw BudgetExceeded("cover brute force limited to " + std::to_string(cap) + " items");
  if (prob.demand < 0) throw InvalidInput("negative cover demand");
  for (const auto& item : prob.items)
    if (item.w < 0 || item.a < 0) throw InvalidInput("negative cover item field");
  if (prob.total_requirement() < prob.demand) throw Infeasible("cover demand exceeds total requirement");
}

}  // namespace detail

/// Exact minimum-weight cover by exhaustive subset enumeration; ties go to the lexicographically smaller id set.
inline CoverSolution min_cover_bruteforce(const CoverProblem& prob, std::size_t max_items = 20) {
  detail::check_cover_problem(prob, max_items);
  const std::size_t m = prob.items.size();
  std::uint64_t best = 0;
  Int best_weight = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Int w = 0, c = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      const auto& item = prob.items[static_cast<std::size_t>(std::countr_zero(rest))];
      w += item.w;
      c += item.a;
    }
    if (c < prob.demand) continue;
    if (best_weight < 0 || w < best_weight || (w == best_weight && detail::lex_less_ids(mask, best))) {
      best = mask;
      best_weight = w;
    }
  }
  CoverSolution out;
  out.weight = best_weight;
  for (std::size_t i = 0; i < m; ++i)
    if (best >> i & 1) {
      out.chosen.push_back(i);
      out.coverage += prob.items[i].a;
    }
  return out;
}

/// Exact minimum cover weight for several demands over the same items, in one enumeration.
inline std::vector<Int> min_cover_weights(const std::vector<CoverItem>& items, const std::vector<Int>& demands,
                                          std::size_t max_items = 20) {
  for (Int d : demands) detail::check_cover_problem({items, d}, max_items);
  std::vector<Int> best(demands.size(), -1);
  const std::size_t m = items.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Int w = 0, c = 0;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      const auto& item = items[static_cast<std::size_t>(std::countr_zero(rest))];
      w += item.w;
      c += item.a;
    }
    for (std::size_t i = 0; i < demands.size(); ++i)
      if (c >= demands[i] && (best[i] < 0 || w < best[i])) best[i] = w;
  }
  return best;
}

struct AssignmentResult {
  Assignment assignment;
  Rational objective;
};

namespace detail {

template <class Cost>
AssignmentResult assignment_dp(const Instance& inst, const ScaledTimes& times) {
  const std::size_t n = inst.jobs.size(), q = inst.arrivals.size();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  const std::size_t states = std::size_t{1} << n;

  std::vector<Int> wsum(states, 0), asum(states, 0);
  std::vector<Cost> key(states, 0);  // base-q digit weights: job 0 most significant
  std::vector<Cost> place(n);
  {
    Cost p = 1;
    for (std::size_t j = n; j-- > 0;) {
      place[j] = p;
      p *= static_cast<Cost>(static_cast<long long>(q));
    }
  }
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    std::uint32_t rest = mask & (mask - 1);
    wsum[mask] = wsum[rest] + inst.jobs[low].w;
    asum[mask] = asum[rest] + inst.jobs[low].a;
    key[mask] = key[rest] + place[low];
  }

  std::vector<Cost> time(q);
  for (std::size_t k = 0; k < q; ++k) time[k] = narrow<Cost>(times.value[k]);

  // cost[X], tie[X] = best (objective, lexicographic key) with exactly X placed at arrivals 0..k.
  std::vector<char> valid(states, 0), next_valid(states, 0);
  std::vector<Cost> cost(states, 0), tie(states, 0), next_cost(states, 0), next_tie(states, 0);
  std::vector<std::vector<std::uint32_t>> parent(q, std::vector<std::uint32_t>(states, 0));

  Int prefix = inst.arrivals[0].b;
  for (std::uint32_t mask = 0; mask < states; ++mask) {
    if (asum[mask] > prefix) continue;
    valid[mask] = 1;
    cost[mask] = static_cast<Cost>(static_cast<long long>(wsum[mask])) * time[0];
    tie[mask] = 0;
    parent[0][mask] = 0;
  }
  for (std::size_t k = 1; k < q; ++k) {
    prefix += inst.arrivals[k].b;
    const Cost digit = static_cast<Cost>(static_cast<long long>(k));
    std::fill(next_valid.begin(), next_valid.end(), 0);
    for (std::uint32_t mask = 0; mask < states; ++mask) {
      if (asum[mask] > prefix) continue;
      bool have = false;
      Cost best_cost = 0, best_tie = 0;
      std::uint32_t best_sub = 0;
      for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
        if (valid[sub]) {
          std::uint32_t added = mask ^ sub;
          Cost c = cost[sub] + static_cast<Cost>(static_cast<long long>(wsum[added])) * time[k];
          Cost t = tie[sub] + digit * key[added];
          if (!have || c < best_cost || (c == best_cost && t < best_tie)) {
            have = true;
            best_cost = c;
            best_tie = t;
            best_sub = sub;
          }
        }
        if (sub == 0) break;
      }
      if (have) {
        next_valid[mask] = 1;
        next_cost[mask] = best_cost;
        next_tie[mask] = best_tie;
        parent[k][mask] = best_sub;
      }
    }
    valid.swap(next_valid);
    cost.swap(next_cost);
    tie.swap(next_tie);
  }
  if (!valid[full]) throw Infeasible("no feasible assignment");

  AssignmentResult out;
  out.assignment.arrival.assign(n, 0);
  std::uint32_t mask = full;
  for (std::size_t k = q; k-- > 0;) {
    std::uint32_t sub = parent[k][mask];
    for (std::uint32_t added = mask ^ sub; added; added &= added - 1)
      out.assignment.arrival[static_cast<std::size_t>(std::countr_zero(added))] = k;
    mask = sub;
  }
  out.objective = Rational(widen(cost[full]), times.denominator);
  return out;
}

}  // namespace detail

/// Exact optimum of the zero-processing-time problem by dynamic programming over job subsets.
/// Among optimal assignments the lexicographically smallest arrival vector is returned.
inline AssignmentResult optimal_assignment_dp(const Instance& inst, const Limits& limits = {}) {
  require_zero_processing(inst);
  require_valid(inst);
  const std::size_t n = inst.jobs.size(), q = inst.arrivals.size();
  if (n > limits.dp_max_jobs || n > 31)
    throw BudgetExceeded("assignment DP limited to " + std::to_string(limits.dp_max_jobs) + " jobs");
  if (n == 0) return {};

  std::vector<Rational> ts;
  for (const auto& r : inst.arrivals) ts.push_back(r.t);
  auto times = detail::scale_to_integers(ts);

  BigInt key_bound = 1;
  for (std::size_t j = 0; j <= n; ++j) key_bound *= q;
  bool wide_ok = detail::fits_wide(times.value, BigInt(inst.total_weight()) + 1) &&
                 key_bound * q < (BigInt(1) << 120);
  return wide_ok ? detail::assignment_dp<detail::Wide>(inst, times) : detail::assignment_dp<BigInt>(inst, times);
}

struct OrderingResult {
  Ordering ordering;
  ScheduleEval eval;
};

namespace detail {

template <class Cost>
Ordering best_permutation(const Instance& inst, const ScaledTimes& times) {
  const std::size_t n = inst.jobs.size();
  std::vector<Cost> time(times.value.size());
  for (std::size_t k = 0; k < time.size(); ++k) time[k] = narrow<Cost>(times.value[k]);
  const Cost unit = narrow<Cost>(times.denominator);
  std::vector<Cost> proc(n), weight(n);
  for (std::size_t j = 0; j < n; ++j) {
    proc[j] = static_cast<Cost>(static_cast<long long>(inst.jobs[j].p)) * unit;
    weight[j] = static_cast<Cost>(static_cast<long long>(inst.jobs[j].w));
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best = perm;
  bool have = false;
  Cost best_cost = 0;
  do {
    Cost machine = 0, total = 0;
    Int consumed = 0, supplied = inst.arrivals[0].b;
    std::size_t next = 1;
    for (std::size_t j : perm) {
      consumed += inst.jobs[j].a;
      while (supplied < consumed) supplied += inst.arrivals[next++].b;
      Cost start = consumed == 0 ? Cost(0) : time[next - 1];
      if (start < machine) start = machine;
      machine = start + proc[j];
      total += weight[j] * machine;
      if (have && total > best_cost) break;
    }
    if (!have || total < best_cost) {
      have = true;
      best_cost = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Ordering{best};
}

}  // namespace detail

/// Exact optimum over all n! machine orders; the lexicographically first optimal order is returned.
inline OrderingResult optimal_ordering_bruteforce(const Instance& inst, const Limits& limits = {}) {
  require_valid(inst);
  const std::size_t n = inst.jobs.size();
  if (n > limits.perm_max_jobs)
    throw BudgetExceeded("permutation oracle limited to " + std::to_string(limits.perm_max_jobs) + " jobs");
  if (n == 0) return {};

  std::vector<Rational> ts;
  for (const auto& r : inst.arrivals) ts.push_back(r.t);
  auto times = detail::scale_to_integers(ts);
  Int total_p = 0;
  for (const auto& j : inst.jobs) total_p += j.p;
  BigInt horizon = times.value.back() + BigInt(total_p) * times.denominator;
  bool wide_ok = detail::fits_wide({horizon}, BigInt(inst.total_weight()) + 1);
  Ordering ord = wide_ok ? detail::best_permutation<detail::Wide>(inst, times)
                         : detail::best_permutation<BigInt>(inst, times);
  return {ord, simulate_ordering(inst, ord)};
}

}  // namespace nrsched

#pragma once

// Arrival quantities are known, arrival times are not.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "nrsched/cover_fptas.hpp"
#include "nrsched/errors.hpp"
#include "nrsched/exact.hpp"
#include "nrsched/instance.hpp"

namespace nrsched {

struct RobustInput {
  std::vector<Job> jobs;         // p = 0
  std::vector<Int> quantities;   // b_1..b_q in arrival order
  Rational eps = Rational(1, 10);

  /// B_i: total quantity arriving at or after index i.
  std::vector<Int> suffix_demands() const {
    std::vector<Int> out(quantities.size());
    Int acc = 0;
    for (std::size_t i = quantities.size(); i-- > 0;) {
      acc += quantities[i];
      out[i] = acc;
    }
    return out;
  }

  void check() const {
    Int supply = 0, demand = 0;
    for (Int b : quantities) {
      if (b < 0) throw InvalidInput("negative quantity");
      supply += b;
    }
    for (const auto& j : jobs) {
      if (j.p != 0) throw PreconditionError("robust schedule requires p_j = 0");
      if (j.w < 0 || j.a < 0) throw InvalidInput("negative job field");
      demand += j.a;
    }
    if (quantities.empty()) throw InvalidInput("no arrivals");
    if (supply != demand) throw InvalidInput("robust input requires total quantity == total requirement");
    if (!(eps > 0)) throw PreconditionError("eps must be positive");
  }

  /// The same jobs and quantities realized at concrete arrival times.
  Instance realize(const std::vector<Rational>& times) const {
    if (times.size() != quantities.size()) throw PreconditionError("one time per quantity required");
    Instance inst;
    inst.jobs = jobs;
    for (std::size_t i = 0; i < times.size(); ++i) inst.arrivals.push_back({times[i], quantities[i]});
    return inst;
  }
};

inline RobustInput robust_input_of(const Instance& inst, const Rational& eps) {
  RobustInput in;
  in.jobs = inst.jobs;
  for (const auto& r : inst.arrivals) in.quantities.push_back(r.b);
  in.eps = eps;
  return in;
}

struct RobustTrace {
  Assignment assignment;
  std::vector<CoverSolution> covers;  // J_i per index
  std::vector<std::size_t> f;         // f(i), 0-based
};

/// J_i approximate min-weight covers of B_i; f(i) = min{k : w(J_k) <= 2 w(J_i)} with f(1) = 1.
/// From the last index downwards, J_f(i) minus the jobs already placed later runs at i, then
/// the scan jumps to f(i) - 1. Every suffix S_i is then within 4(1+eps) of the optimal cover of B_i.
inline RobustTrace robust_schedule_traced(const RobustInput& input) {
  input.check();
  const std::size_t n = input.jobs.size(), q = input.quantities.size();
  auto demand = input.suffix_demands();
  RobustTrace out;
  for (std::size_t i = 0; i < q; ++i) out.covers.push_back(min_cover_fptas(cover_problem_for(input.jobs, demand[i]), input.eps));
  out.f.assign(q, 0);
  for (std::size_t i = 1; i < q; ++i) {
    std::size_t k = 0;
    while (out.covers[k].weight > 2 * out.covers[i].weight) ++k;
    out.f[i] = k;
  }
  const std::size_t unplaced = q;  // sentinel
  std::vector<std::size_t> placed(n, unplaced);
  for (std::size_t i = q; i-- > 0;) {
    for (std::size_t j : out.covers[out.f[i]].chosen)
      if (placed[j] == unplaced) placed[j] = i;
    if (out.f[i] == 0) break;
    i = out.f[i];  // loop decrement makes it f(i) - 1
  }
  for (auto& p : placed)
    if (p == unplaced) p = 0;
  out.assignment.arrival = std::move(placed);
  return out;
}

inline Assignment robust_schedule(const RobustInput& input) { return robust_schedule_traced(input).assignment; }

struct RobustnessRecord {
  std::size_t index = 0;
  Int demand = 0;
  Int weight = 0;                  // w(S_i)
  Int optimal_cover = 0;           // exact min-cover weight of B_i
  std::optional<Rational> ratio;   // empty when the optimum is 0 but w(S_i) > 0
};

struct RobustnessReport {
  std::vector<RobustnessRecord> records;
  std::optional<Rational> max_ratio;  // empty means unbounded
};

namespace detail {

inline std::optional<Rational> cover_ratio(Int weight, Int optimum) {
  if (optimum == 0) return weight == 0 ? std::optional<Rational>(1) : std::nullopt;
  return Rational(weight, optimum);
}

}  // namespace detail

/// Per-index comparison of the suffix sets S_i = {j : pi(j) >= i} against exact minimum covers.
inline RobustnessReport robustness_report(const std::vector<Job>& jobs, const std::vector<Int>& quantities,
                                          const Assignment& asg, const Limits& limits = {}) {
  const std::size_t n = jobs.size(), q = quantities.size();
  if (asg.arrival.size() != n) throw PreconditionError("assignment does not cover every job");
  for (std::size_t idx : asg.arrival)
    if (idx >= q) throw PreconditionError("assignment refers to a missing arrival");
  RobustInput view{jobs, quantities, 1};
  auto demand = view.suffix_demands();
  std::vector<CoverItem> items;
  for (const auto& j : jobs) items.push_back({j.w, j.a});
  auto optimum = min_cover_weights(items, demand, limits.cover_max_items);

  // S_0 is every job under any assignment and t_0 = 0, so index 0 is recorded but not counted.
  RobustnessReport out;
  out.max_ratio = Rational(1);
  bool unbounded = false;
  for (std::size_t i = 0; i < q; ++i) {
    RobustnessRecord rec;
    rec.index = i;
    rec.demand = demand[i];
    Int coverage = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (asg.arrival[j] >= i) {
        rec.weight += jobs[j].w;
        coverage += jobs[j].a;
      }
    if (coverage < demand[i]) throw Infeasible("assignment leaves a suffix demand uncovered");
    rec.optimal_cover = optimum[i];
    rec.ratio = detail::cover_ratio(rec.weight, rec.optimal_cover);
    if (i > 0) {
      if (!rec.ratio) unbounded = true;
      else if (*rec.ratio > *out.max_ratio) out.max_ratio = rec.ratio;
    }
    out.records.push_back(rec);
  }
  if (unbounded) out.max_ratio.reset();
  return out;
}

/// Jobs i = 1..Q, Q = (n-1)m, with w_i = mn - i and a_i = 2^(Q-i) (the family w = n - i/m, a = 2^-i
/// scaled by m and 2^Q). Quantities satisfy B_i = a_i for i >= 2 and b_1 absorbs the remainder so
/// that total quantity equals total requirement.
inline RobustInput adversarial_instance(Int n, Int m, const Rational& eps = Rational(1, 10)) {
  if (n < 2 || m < 1) throw PreconditionError("adversarial_instance requires n >= 2 and m >= 1");
  const Int Q = (n - 1) * m;
  if (Q > 62) throw BudgetExceeded("adversarial_instance: 2^(n-1)m exceeds 64-bit integers");
  RobustInput in;
  in.eps = eps;
  for (Int i = 1; i <= Q; ++i) in.jobs.push_back({0, m * n - i, Int{1} << (Q - i)});
  for (Int i = 1; i < Q; ++i) in.quantities.push_back(Int{1} << (Q - i - 1));
  in.quantities.push_back(1);
  Int supply = 0, demand = 0;
  for (Int b : in.quantities) supply += b;
  for (const auto& j : in.jobs) demand += j.a;
  in.quantities[0] += demand - supply;
  return in;
}

struct BestRobust {
  Assignment assignment;
  std::optional<Rational> max_ratio;
};

/// Minimum over all suffix-feasible assignments of the worst per-index cover ratio. Searches the
/// nested chains S_q within ... within S_1 = J, which are in bijection with assignments.
inline BestRobust best_robust_ratio(const std::vector<Job>& jobs, const std::vector<Int>& quantities,
                                    const Limits& limits = {}) {
  const std::size_t n = jobs.size(), q = quantities.size();
  if (n > limits.cover_max_items || n > 20) throw BudgetExceeded("best_robust_ratio limited to 20 jobs");
  if (q == 0) throw InvalidInput("no arrivals");
  RobustInput view{jobs, quantities, 1};
  auto demand = view.suffix_demands();
  std::vector<CoverItem> items;
  for (const auto& j : jobs) items.push_back({j.w, j.a});
  auto optimum = min_cover_weights(items, demand, limits.cover_max_items);

  const std::size_t states = std::size_t{1} << n;
  std::vector<Int> wsum(states, 0), asum(states, 0);
  for (std::uint32_t mask = 1; mask < states; ++mask) {
    std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    wsum[mask] = wsum[mask & (mask - 1)] + jobs[low].w;
    asum[mask] = asum[mask & (mask - 1)] + jobs[low].a;
  }
  // Ratio value: nullopt = unbounded. value[S] = best worst-ratio over chains ending with S_i = S.
  using Value = std::optional<Rational>;
  auto better = [](const Value& x, const Value& y) { return x && (!y || *x < *y); };
  auto worse_of = [](const Value& x, const Value& y) -> Value {
    if (!x || !y) return std::nullopt;
    return *x < *y ? *y : *x;
  };
  std::vector<char> valid(states, 0), next_valid(states, 0);
  std::vector<Value> value(states), next_value(states);
  std::vector<std::vector<std::uint32_t>> parent(q, std::vector<std::uint32_t>(states, 0));
  for (std::uint32_t mask = 0; mask < states; ++mask) {
    if (asum[mask] < demand[q - 1]) continue;
    valid[mask] = 1;
    value[mask] = q == 1 ? Value(Rational(1)) : detail::cover_ratio(wsum[mask], optimum[q - 1]);
  }
  for (std::size_t i = q - 1; i-- > 0;) {
    std::fill(next_valid.begin(), next_valid.end(), 0);
    for (std::uint32_t mask = 0; mask < states; ++mask) {
      if (asum[mask] < demand[i]) continue;
      Value own = i == 0 ? Value(Rational(1)) : detail::cover_ratio(wsum[mask], optimum[i]);
      bool have = false;
      Value best;
      std::uint32_t best_sub = 0;
      for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
        if (valid[sub]) {
          Value v = worse_of(own, value[sub]);
          if (!have || better(v, best)) {
            have = true;
            best = v;
            best_sub = sub;
          }
        }
        if (sub == 0) break;
      }
      if (have) {
        next_valid[mask] = 1;
        next_value[mask] = best;
        parent[i][mask] = best_sub;
      }
    }
    valid.swap(next_valid);
    value.swap(next_value);
  }
  const std::uint32_t full = static_cast<std::uint32_t>(states - 1);
  if (!valid[full]) throw Infeasible("no suffix-feasible assignment");
  BestRobust out;
  out.max_ratio = value[full];
  out.assignment.arrival.assign(n, 0);
  std::uint32_t mask = full;
  for (std::size_t i = 0; i + 1 < q; ++i) {
    std::uint32_t sub = parent[i][mask];
    for (std::uint32_t gone = mask ^ sub; gone; gone &= gone - 1)
      out.assignment.arrival[static_cast<std::size_t>(std::countr_zero(gone))] = i;
    mask = sub;
  }
  for (std::uint32_t rest = mask; rest; rest &= rest - 1)
    out.assignment.arrival[static_cast<std::size_t>(std::countr_zero(rest))] = q - 1;
  return out;
}

}  // namespace nrsched

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "nrsched/core.hpp"
#include "nrsched/detail/scaled.hpp"
#include "nrsched/errors.hpp"
#include "nrsched/greedy.hpp"
#include "nrsched/instance.hpp"

namespace nrsched {

struct PtasResult {
  Assignment assignment;
  Rational objective;
  std::uint64_t nodes = 0;  // enumeration nodes visited
};

namespace detail {

inline constexpr std::size_t kUnguessed = std::numeric_limits<std::size_t>::max();

// Enumerates subpartitions S_2..S_q (|S_i| <= k) of guessed jobs and completes each one greedily.
// Guesses are restricted to arrivals that carry residual supply: an optimal schedule can always
// move jobs off a zero-supply arrival to the previous one, so the enumeration still contains the
// guess made of the k heaviest jobs of such an optimum at every arrival.
template <class Cost>
class GuessSearch {
 public:
  GuessSearch(const Instance& inst, std::size_t k, const ScaledTimes& times, std::uint64_t budget)
      : inst_(inst), n_(inst.jobs.size()), q_(inst.arrivals.size()), k_(k), budget_(budget),
        denominator_(times.denominator) {
    demand_ = remaining_demands(inst);
    for (std::size_t level = 0; level < q_; ++level) time_.push_back(narrow<Cost>(times.value[level]));
    for (std::size_t level = 1; level < q_; ++level) {
      Int next = level + 1 < q_ ? demand_[level + 1] : 0;
      if (demand_[level] > next) levels_.push_back(level);
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t x, std::size_t y) { return inst.jobs[x].w > inst.jobs[y].w; });
    by_ratio_.resize(n_);
    std::iota(by_ratio_.begin(), by_ratio_.end(), 0);
    std::sort(by_ratio_.begin(), by_ratio_.end(), InefficiencyOrder{&inst.jobs});
    greedy_reachable_ = k_ <= n_;
    undecided_a_ = inst.total_requirement();
    guess_.assign(n_, kUnguessed);
    count_.assign(q_, 0);
    guessed_a_.assign(q_, 0);
  }

  PtasResult run() {
    search(0, Cost(0));
    if (!have_best_) throw Infeasible("no feasible candidate in the enumeration");
    PtasResult out;
    out.assignment.arrival = best_;
    out.objective = Rational(widen(best_cost_), denominator_);
    out.nodes = nodes_;
    return out;
  }

 private:
  bool coverage_possible() const {
    Int acc = 0;
    for (std::size_t pos = levels_.size(); pos-- > 0;) {
      std::size_t level = levels_[pos];
      acc += guessed_a_[level];
      if (acc + undecided_a_ < demand_[level]) return false;
    }
    return true;
  }

  void search(std::size_t depth, Cost partial) {
    if (++nodes_ > budget_) throw BudgetExceeded("PTAS enumeration exceeded the budget");
    if (have_best_ && partial > best_cost_) return;
    if (!greedy_reachable_ && !coverage_possible()) return;
    if (depth == n_) {
      evaluate();
      return;
    }
    const std::size_t job = order_[depth];
    const Job& jb = inst_.jobs[job];
    undecided_a_ -= jb.a;
    search(depth + 1, partial);
    for (std::size_t level : levels_) {
      if (count_[level] >= k_) continue;
      guess_[job] = level;
      ++count_[level];
      guessed_a_[level] += jb.a;
      search(depth + 1, partial + static_cast<Cost>(static_cast<long long>(jb.w)) * time_[level]);
      guessed_a_[level] -= jb.a;
      --count_[level];
      guess_[job] = kUnguessed;
    }
    undecided_a_ += jb.a;
  }

  void evaluate() {
    std::vector<std::size_t> placed(n_, 0);
    std::vector<char> taken(n_, 0);  // guessed or greedily placed
    std::vector<Int> min_w(q_, std::numeric_limits<Int>::max());
    for (std::size_t j = 0; j < n_; ++j) {
      if (guess_[j] == kUnguessed) continue;
      placed[j] = guess_[j];
      taken[j] = 1;
      min_w[guess_[j]] = std::min(min_w[guess_[j]], inst_.jobs[j].w);
    }
    Int A = 0, W = 0;
    for (std::size_t level = q_; level-- > 1;) {
      A += guessed_a_[level];
      if (count_[level] != k_ || k_ == 0) continue;
      W = std::max(W, min_w[level]);
      std::size_t scan = 0;
      while (A < demand_[level]) {
        while (scan < n_ && (taken[by_ratio_[scan]] || inst_.jobs[by_ratio_[scan]].w > W)) ++scan;
        if (scan == n_) break;
        std::size_t j = by_ratio_[scan];
        taken[j] = 1;
        placed[j] = level;
        A += inst_.jobs[j].a;
      }
    }
    // suffix coverage check against residual demand, equivalent to prefix-supply feasibility
    std::vector<Int> load(q_, 0);
    for (std::size_t j = 0; j < n_; ++j) load[placed[j]] += inst_.jobs[j].a;
    Int later = 0;
    for (std::size_t level = q_; level-- > 1;) {
      later += load[level];
      if (later < demand_[level]) return;
    }
    Cost total = 0;
    for (std::size_t j = 0; j < n_; ++j)
      total += static_cast<Cost>(static_cast<long long>(inst_.jobs[j].w)) * time_[placed[j]];
    if (!have_best_ || total < best_cost_ || (total == best_cost_ && placed < best_)) {
      have_best_ = true;
      best_cost_ = total;
      best_ = std::move(placed);
    }
  }

  const Instance& inst_;
  std::size_t n_, q_, k_;
  std::uint64_t budget_;
  BigInt denominator_;
  std::vector<Int> demand_;
  std::vector<Cost> time_;
  std::vector<std::size_t> levels_;    // arrivals >= 1 with positive residual supply, ascending
  std::vector<std::size_t> order_;     // jobs by decreasing weight
  std::vector<std::size_t> by_ratio_;  // most inefficient first
  bool greedy_reachable_ = true;
  Int undecided_a_ = 0;
  std::vector<std::size_t> guess_;
  std::vector<std::size_t> count_;
  std::vector<Int> guessed_a_;
  std::uint64_t nodes_ = 0;
  bool have_best_ = false;
  Cost best_cost_ = 0;
  std::vector<std::size_t> best_;
};

}  // namespace detail

/// Guess up to k jobs per arrival, fill each full guess greedily with jobs no heavier than the
/// lightest guessed job so far, and keep the best feasible completion. Guarantee: 1 + q/k.
inline PtasResult constant_q_ptas_run(const Instance& inst, std::size_t k, const Limits& limits = Limits::from_env()) {
  require_zero_processing(inst);
  require_valid(inst);
  if (k == 0) throw PreconditionError("k must be positive");
  const std::size_t n = inst.jobs.size();
  if (inst.arrivals.size() == 1 || n == 0) return {Assignment{std::vector<std::size_t>(n, 0)}, 0, 0};

  std::vector<Rational> ts;
  for (const auto& r : inst.arrivals) ts.push_back(r.t);
  auto times = detail::scale_to_integers(ts);
  if (detail::fits_wide(times.value, BigInt(inst.total_weight()) + 1))
    return detail::GuessSearch<detail::Wide>(inst, k, times, limits.enumeration_budget).run();
  return detail::GuessSearch<BigInt>(inst, k, times, limits.enumeration_budget).run();
}

inline Assignment constant_q_ptas(const Instance& inst, std::size_t k, const Limits& limits = Limits::from_env()) {
  return constant_q_ptas_run(inst, k, limits).assignment;
}

}  // namespace nrsched

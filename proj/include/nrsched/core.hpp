#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nrsched/errors.hpp"
#include "nrsched/instance.hpp"
#include "nrsched/rational.hpp"

namespace nrsched {

struct Violation {
  enum class Kind { NegativeField, UnsortedArrivals, FirstArrivalNotZero, NoArrivals, SupplyBelowDemand };
  Kind kind;
  std::string message;
};

/// Every violated instance invariant; an empty result means the instance is valid.
inline std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const Job& job = inst.jobs[j];
    if (job.p < 0 || job.w < 0 || job.a < 0)
      out.push_back({K::NegativeField, "job " + std::to_string(j) + " has a negative field"});
  }
  for (std::size_t i = 0; i < inst.arrivals.size(); ++i) {
    const Arrival& r = inst.arrivals[i];
    if (r.t < 0 || r.b < 0)
      out.push_back({K::NegativeField, "arrival " + std::to_string(i) + " has a negative field"});
    if (i > 0 && !(inst.arrivals[i - 1].t < r.t))
      out.push_back({K::UnsortedArrivals, "arrival " + std::to_string(i) + " is not strictly after its predecessor"});
  }
  if (inst.arrivals.empty())
    out.push_back({K::NoArrivals, "no arrivals"});
  else if (inst.arrivals.front().t != 0)
    out.push_back({K::FirstArrivalNotZero, "t1 != 0"});
  if (inst.total_supply() < inst.total_requirement())
    out.push_back({K::SupplyBelowDemand, "supply < demand"});
  return out;
}

inline void require_valid(const Instance& inst) {
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput("invalid instance: " + violations.front().message);
}

/// max(0, sum_j a_j - sum_{i<k} b_i) for a 0-based arrival index k.
inline Int remaining_demand(const Instance& inst, std::size_t k) {
  if (k >= inst.arrivals.size()) throw PreconditionError("arrival index out of range");
  Int demand = inst.total_requirement();
  for (std::size_t i = 0; i < k; ++i) demand -= inst.arrivals[i].b;
  return std::max<Int>(0, demand);
}

/// remaining_demand for every arrival index at once.
inline std::vector<Int> remaining_demands(const Instance& inst) {
  std::vector<Int> out(inst.arrivals.size());
  Int demand = inst.total_requirement();
  for (std::size_t i = 0; i < inst.arrivals.size(); ++i) {
    out[i] = std::max<Int>(0, demand);
    demand -= inst.arrivals[i].b;
  }
  return out;
}

namespace detail {

inline void check_assignment_shape(const Instance& inst, const Assignment& asg) {
  if (asg.arrival.size() != inst.jobs.size()) throw PreconditionError("assignment does not cover every job");
  for (std::size_t idx : asg.arrival)
    if (idx >= inst.arrivals.size()) throw PreconditionError("assignment refers to a missing arrival");
}

// Requirement placed at each arrival index.
inline std::vector<Int> load_per_arrival(const Instance& inst, const Assignment& asg) {
  std::vector<Int> load(inst.arrivals.size(), 0);
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) load[asg.arrival[j]] += inst.jobs[j].a;
  return load;
}

}  // namespace detail

/// Prefix-supply feasibility: for every k, requirement placed at or before k fits the supply delivered by k.
inline bool is_feasible(const Instance& inst, const Assignment& asg) {
  detail::check_assignment_shape(inst, asg);
  auto load = detail::load_per_arrival(inst, asg);
  Int used = 0, supplied = 0;
  for (std::size_t k = 0; k < inst.arrivals.size(); ++k) {
    used += load[k];
    supplied += inst.arrivals[k].b;
    if (used > supplied) return false;
  }
  return true;
}

/// Suffix-demand feasibility; only meaningful (and only accepted) when total supply equals total demand.
inline bool feasibility_suffix(const Instance& inst, const Assignment& asg) {
  if (inst.total_supply() != inst.total_requirement())
    throw PreconditionError("suffix feasibility requires total supply == total demand");
  detail::check_assignment_shape(inst, asg);
  auto load = detail::load_per_arrival(inst, asg);
  Int later_load = 0, later_supply = 0;
  for (std::size_t k = inst.arrivals.size(); k-- > 0;) {
    later_load += load[k];
    later_supply += inst.arrivals[k].b;
    if (later_load < later_supply) return false;
  }
  return true;
}

inline void require_zero_processing(const Instance& inst) {
  if (!inst.zero_processing()) throw PreconditionError("operation requires p_j = 0 for every job");
}

inline Rational objective_assignment(const Instance& inst, const Assignment& asg) {
  require_zero_processing(inst);
  detail::check_assignment_shape(inst, asg);
  Rational total = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    if (inst.jobs[j].w != 0) total += inst.arrivals[asg.arrival[j]].t * inst.jobs[j].w;
  return total;
}

/// Earliest-start simulation of a machine order.
inline ScheduleEval simulate_ordering(const Instance& inst, const Ordering& ord) {
  const std::size_t n = inst.jobs.size();
  if (ord.sequence.size() != n) throw PreconditionError("ordering is not a permutation of the jobs");
  std::vector<char> seen(n, 0);
  for (std::size_t j : ord.sequence) {
    if (j >= n || seen[j]) throw PreconditionError("ordering is not a permutation of the jobs");
    seen[j] = 1;
  }
  if (inst.total_supply() < inst.total_requirement()) throw Infeasible("insufficient total supply");
  if (inst.arrivals.empty()) {
    if (n == 0) return {};
    throw Infeasible("no arrivals");
  }

  ScheduleEval eval;
  eval.start.assign(n, 0);
  eval.completion.assign(n, 0);
  Rational machine_free = 0;
  Int consumed = 0, supplied = inst.arrivals[0].b;
  std::size_t next_arrival = 1;
  for (std::size_t j : ord.sequence) {
    consumed += inst.jobs[j].a;
    while (supplied < consumed) supplied += inst.arrivals[next_arrival++].b;
    const Rational& ready = inst.arrivals[next_arrival - 1].t;
    Rational start = consumed == 0 ? Rational(0) : ready;
    if (start < machine_free) start = machine_free;
    eval.start[j] = start;
    eval.completion[j] = start + inst.jobs[j].p;
    machine_free = eval.completion[j];
    eval.objective += eval.completion[j] * inst.jobs[j].w;
  }
  return eval;
}

/// Arrival index whose delivery completes the resource consumed through each position of the order.
inline std::vector<std::size_t> consumed_arrival_per_job(const Instance& inst, const Ordering& ord) {
  std::vector<std::size_t> out(inst.jobs.size(), 0);
  Int consumed = 0, supplied = inst.arrivals.empty() ? 0 : inst.arrivals[0].b;
  std::size_t next_arrival = 1;
  for (std::size_t j : ord.sequence) {
    consumed += inst.jobs[j].a;
    while (supplied < consumed) supplied += inst.arrivals[next_arrival++].b;
    out[j] = next_arrival - 1;
  }
  return out;
}

/// Delays every positive arrival time to t2 * base^e, the smallest such value not below it.
/// The result has arrivals at 0 and t2 * base^e for e = 0..ceil(log_base(t_q / t2)).
inline Instance shift_arrivals(const Instance& inst, const Rational& base) {
  if (!(base > 1)) throw PreconditionError("shift base must exceed 1");
  require_valid(inst);
  for (const auto& r : inst.arrivals)
    if (!is_integral(r.t)) throw PreconditionError("shift_arrivals requires integer arrival times");
  if (inst.arrivals.size() == 1) return inst;

  const Rational unit = inst.arrivals[1].t;
  Instance out;
  out.jobs = inst.jobs;
  out.arrivals.push_back({0, inst.arrivals[0].b});
  Rational level = 1;  // base^e in units of t2
  out.arrivals.push_back({unit, 0});
  for (std::size_t i = 1; i < inst.arrivals.size(); ++i) {
    Rational normalized = inst.arrivals[i].t / unit;
    while (level < normalized) {
      level *= base;
      out.arrivals.push_back({unit * level, 0});
    }
    out.arrivals.back().b += inst.arrivals[i].b;
  }
  return out;
}

/// Moves each job to the first shifted arrival not earlier than its original arrival.
inline Assignment map_to_shifted(const Instance& original, const Instance& shifted, const Assignment& asg) {
  detail::check_assignment_shape(original, asg);
  Assignment out;
  out.arrival.reserve(asg.arrival.size());
  for (std::size_t idx : asg.arrival) {
    const Rational& t = original.arrivals[idx].t;
    auto it = std::lower_bound(shifted.arrivals.begin(), shifted.arrivals.end(), t,
                               [](const Arrival& r, const Rational& value) { return r.t < value; });
    if (it == shifted.arrivals.end()) throw PreconditionError("shifted instance ends before original arrival");
    out.arrival.push_back(static_cast<std::size_t>(it - shifted.arrivals.begin()));
  }
  return out;
}

/// Runs each job at the last original arrival not later than its shifted arrival time.
inline Assignment map_from_shifted(const Instance& original, const Instance& shifted, const Assignment& asg) {
  detail::check_assignment_shape(shifted, asg);
  Assignment out;
  out.arrival.reserve(asg.arrival.size());
  for (std::size_t idx : asg.arrival) {
    const Rational& t = shifted.arrivals[idx].t;
    auto it = std::upper_bound(original.arrivals.begin(), original.arrivals.end(), t,
                               [](const Rational& value, const Arrival& r) { return value < r.t; });
    out.arrival.push_back(static_cast<std::size_t>(it - original.arrivals.begin()) - 1);
  }
  return out;
}

/// Lexicographic (objective, assignment) order used for deterministic tie-breaking.
inline bool better_candidate(const Rational& obj, const Assignment& asg, const Rational& best_obj,
                             const Assignment& best_asg) {
  if (obj != best_obj) return obj < best_obj;
  return asg.arrival < best_asg.arrival;
}

}  // namespace nrsched

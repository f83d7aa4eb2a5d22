#pragma once

// Unit-requirement problem: every job consumes exactly one resource unit.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "nrsched/core.hpp"
#include "nrsched/errors.hpp"
#include "nrsched/instance.hpp"

namespace nrsched {

struct SptResult {
  Ordering ordering;
  ScheduleEval eval;
};

/// Shortest processing time first, ties by job id.
inline SptResult spt_schedule(const Instance& inst) {
  for (const auto& j : inst.jobs)
    if (j.a != 1) throw PreconditionError("SPT schedule requires a_j = 1 for every job");
  require_valid(inst);
  Ordering ord;
  ord.sequence.resize(inst.jobs.size());
  std::iota(ord.sequence.begin(), ord.sequence.end(), 0);
  std::stable_sort(ord.sequence.begin(), ord.sequence.end(),
                   [&](std::size_t x, std::size_t y) { return inst.jobs[x].p < inst.jobs[y].p; });
  return {ord, simulate_ordering(inst, ord)};
}

/// Worst-case family for SPT: k1 unit jobs, k1 zero-length jobs, k2 unit jobs (in that id order).
inline Instance spt_tight_family(Int k1, Int k2) {
  if (k1 < 1 || k2 < 1) throw PreconditionError("spt_tight_family requires k1, k2 >= 1");
  Instance inst;
  for (Int i = 0; i < k1; ++i) inst.jobs.push_back({1, 1, 1});
  for (Int i = 0; i < k1; ++i) inst.jobs.push_back({0, 1, 1});
  for (Int i = 0; i < k2; ++i) inst.jobs.push_back({1, 1, 1});
  for (Int t = 0; t < k1; ++t) inst.arrivals.push_back({t, 1});
  inst.arrivals.push_back({k1, k1 + 1});
  for (Int t = k1 + 1; t < k1 + k2; ++t) inst.arrivals.push_back({t, 1});
  return inst;
}

/// Closed-form optimum of spt_tight_family(k1, k2).
inline Int spt_tight_optimum(Int k1, Int k2) { return k1 * (k1 + 1) / 2 + k1 * k1 + k2 * k1 + k2 * (k2 + 1) / 2; }

/// Closed-form SPT objective on spt_tight_family(k1, k2).
inline Int spt_tight_spt_objective(Int k1, Int k2) {
  return k1 * (k1 - 1) / 2 + k2 * k1 + k1 * (k1 + 1) / 2 + (k1 + k2) * k1 + k2 * (k2 + 1) / 2;
}

struct ThreePartitionInput {
  Int B = 0;
  Int n = 0;
  std::vector<Int> xs;  // 3n values
};

enum class JobClass { Normal, Small, Large };
enum class ArrivalClass { Type1, Type2, Type3 };

inline std::string to_string(JobClass c) {
  switch (c) {
    case JobClass::Normal: return "normal";
    case JobClass::Small: return "small";
    case JobClass::Large: return "large";
  }
  return "?";
}

inline std::string to_string(ArrivalClass c) {
  switch (c) {
    case ArrivalClass::Type1: return "type1";
    case ArrivalClass::Type2: return "type2";
    case ArrivalClass::Type3: return "type3";
  }
  return "?";
}

/// Scheduling instance built from a 3-Partition input, with the job and arrival classes.
struct ReductionArtifacts {
  ThreePartitionInput input;
  Instance instance;
  Int K = 0;
  std::vector<JobClass> job_class;
  std::vector<ArrivalClass> arrival_class;
};

inline void check_three_partition_input(const ThreePartitionInput& inp) {
  if (inp.n < 1 || inp.B < 1) throw InvalidInput("3-partition requires n >= 1 and B >= 1");
  if (static_cast<Int>(inp.xs.size()) != 3 * inp.n) throw InvalidInput("3-partition requires exactly 3n values");
  Int sum = 0;
  for (Int x : inp.xs) {
    // B/4 < x < B/2, in integers
    if (!(4 * x > inp.B && 2 * x < inp.B))
      throw InvalidInput("3-partition value " + std::to_string(x) + " outside (B/4, B/2)");
    sum += x;
  }
  if (sum != inp.n * inp.B) throw InvalidInput("3-partition values must sum to n*B");
}

/// Jobs: 3n normal (p = x_j), nK small (p = 1), nK large (p = K), with K = 4nB; unit weights and requirements.
/// Arrivals: 3 units at i(B+K); 1 unit at i(B+K)+j for j in [B, B+K); 1 unit at n(B+K)+iK for i in [0, nK).
inline ReductionArtifacts three_partition_instance(const ThreePartitionInput& inp) {
  check_three_partition_input(inp);
  ReductionArtifacts art;
  art.input = inp;
  const Int B = inp.B, n = inp.n, K = 4 * n * B;
  art.K = K;
  auto& inst = art.instance;
  for (Int x : inp.xs) {
    inst.jobs.push_back({x, 1, 1});
    art.job_class.push_back(JobClass::Normal);
  }
  for (Int i = 0; i < n * K; ++i) {
    inst.jobs.push_back({1, 1, 1});
    art.job_class.push_back(JobClass::Small);
  }
  for (Int i = 0; i < n * K; ++i) {
    inst.jobs.push_back({K, 1, 1});
    art.job_class.push_back(JobClass::Large);
  }
  for (Int i = 0; i < n; ++i) {
    inst.arrivals.push_back({i * (B + K), 3});
    art.arrival_class.push_back(ArrivalClass::Type1);
    for (Int j = B; j < B + K; ++j) {
      inst.arrivals.push_back({i * (B + K) + j, 1});
      art.arrival_class.push_back(ArrivalClass::Type2);
    }
  }
  for (Int i = 0; i < n * K; ++i) {
    inst.arrivals.push_back({n * (B + K) + i * K, 1});
    art.arrival_class.push_back(ArrivalClass::Type3);
  }
  return art;
}

using Triple = std::array<std::size_t, 3>;

/// Backtracking search for a 3-partition; empty when none exists.
inline std::optional<std::vector<Triple>> find_three_partition(const ThreePartitionInput& inp) {
  check_three_partition_input(inp);
  const std::size_t m = inp.xs.size();
  std::vector<char> used(m, 0);
  std::vector<Triple> out;
  auto search = [&](auto&& self) -> bool {
    std::size_t first = 0;
    while (first < m && used[first]) ++first;
    if (first == m) return true;
    used[first] = 1;
    for (std::size_t second = first + 1; second < m; ++second) {
      if (used[second]) continue;
      used[second] = 1;
      for (std::size_t third = second + 1; third < m; ++third) {
        if (used[third] || inp.xs[first] + inp.xs[second] + inp.xs[third] != inp.B) continue;
        used[third] = 1;
        out.push_back({first, second, third});
        if (self(self)) return true;
        out.pop_back();
        used[third] = 0;
      }
      used[second] = 0;
    }
    used[first] = 0;
    return false;
  };
  if (!search(search)) return std::nullopt;
  return out;
}

struct ReductionSchedule {
  Ordering ordering;
  ScheduleEval eval;
  Rational shifted_objective;  // sum of C_j - t_j - p_j
};

inline void check_certificate(const ReductionArtifacts& art, const std::vector<Triple>& partition) {
  const auto& inp = art.input;
  if (static_cast<Int>(partition.size()) != inp.n) throw InvalidInput("certificate must contain n triples");
  std::vector<char> used(inp.xs.size(), 0);
  for (const auto& triple : partition) {
    Int sum = 0;
    for (std::size_t idx : triple) {
      if (idx >= inp.xs.size() || used[idx]) throw InvalidInput("certificate is not a partition of the values");
      used[idx] = 1;
      sum += inp.xs[idx];
    }
    if (sum != inp.B) throw InvalidInput("certificate triple does not sum to B");
  }
}

/// sum over jobs of C_j - t_j - p_j, where t_j is the arrival of the unit consumed by j (units used in arrival order).
inline Rational shifted_objective(const Instance& inst, const Ordering& ord, const ScheduleEval& eval) {
  auto consumed = consumed_arrival_per_job(inst, ord);
  Rational total = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    total += eval.completion[j] - inst.arrivals[consumed[j]].t - inst.jobs[j].p;
  return total;
}

/// Schedule of a 3-Partition certificate: slot i runs triple i in SPT order then K small jobs; large jobs last.
/// `partition` holds indices into the normal jobs (0-based, equal to their job ids).
inline ReductionSchedule partition_to_schedule(const ReductionArtifacts& art, const std::vector<Triple>& partition) {
  check_certificate(art, partition);
  const auto& inst = art.instance;
  const std::size_t normal = art.input.xs.size();
  const std::size_t K = static_cast<std::size_t>(art.K);
  Ordering ord;
  std::size_t next_small = normal, next_large = normal + partition.size() * K;
  for (const auto& triple : partition) {
    Triple sorted = triple;
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t x, std::size_t y) {
      return inst.jobs[x].p != inst.jobs[y].p ? inst.jobs[x].p < inst.jobs[y].p : x < y;
    });
    ord.sequence.insert(ord.sequence.end(), sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < K; ++k) ord.sequence.push_back(next_small++);
  }
  for (std::size_t k = 0; k < partition.size() * K; ++k) ord.sequence.push_back(next_large++);
  ReductionSchedule out;
  out.ordering = ord;
  out.eval = simulate_ordering(inst, ord);
  out.shifted_objective = shifted_objective(inst, ord, out.eval);
  return out;
}

}  // namespace nrsched

#pragma once

#include <cstddef>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "nrsched/errors.hpp"
#include "nrsched/rational.hpp"

namespace nrsched {

/// A job; its id is its position in Instance::jobs.
struct Job {
  Int p = 0;  // processing time
  Int w = 0;  // weight
  Int a = 0;  // resource requirement

  friend bool operator==(const Job&, const Job&) = default;
};

/// A resource delivery of b units at time t.
struct Arrival {
  Rational t;
  Int b = 0;

  friend bool operator==(const Arrival&, const Arrival&) = default;
};

struct Instance {
  std::vector<Job> jobs;
  std::vector<Arrival> arrivals;  // strictly increasing in t, arrivals[0].t == 0

  std::size_t job_count() const { return jobs.size(); }
  std::size_t arrival_count() const { return arrivals.size(); }

  Int total_requirement() const {
    return std::accumulate(jobs.begin(), jobs.end(), Int{0}, [](Int s, const Job& j) { return s + j.a; });
  }
  Int total_supply() const {
    return std::accumulate(arrivals.begin(), arrivals.end(), Int{0},
                           [](Int s, const Arrival& r) { return s + r.b; });
  }
  Int total_weight() const {
    return std::accumulate(jobs.begin(), jobs.end(), Int{0}, [](Int s, const Job& j) { return s + j.w; });
  }
  bool zero_processing() const {
    for (const auto& j : jobs)
      if (j.p != 0) return false;
    return true;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Zero-processing-time schedule: arrival[j] is the 0-based arrival index at which job j runs.
struct Assignment {
  std::vector<std::size_t> arrival;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Machine order: sequence[i] is the job processed i-th.
struct Ordering {
  std::vector<std::size_t> sequence;

  friend bool operator==(const Ordering&, const Ordering&) = default;
};

struct ScheduleEval {
  std::vector<Rational> start;       // indexed by job
  std::vector<Rational> completion;  // indexed by job
  Rational objective;                // sum of w_j * C_j
};

/// Size caps for exact oracles and the enumeration budget of the PTAS routines.
struct Limits {
  std::size_t dp_max_jobs = 14;
  std::size_t perm_max_jobs = 9;
  std::size_t cover_max_items = 20;
  std::uint64_t enumeration_budget = 10'000'000;

  /// Defaults, with NRSCHED_BUDGET overriding the enumeration budget when set.
  static Limits from_env() {
    Limits limits;
    if (const char* value = std::getenv("NRSCHED_BUDGET"); value && *value) {
      char* end = nullptr;
      unsigned long long parsed = std::strtoull(value, &end, 10);
      if (end && *end == '\0') limits.enumeration_budget = parsed;
    }
    return limits;
  }
};

}  // namespace nrsched

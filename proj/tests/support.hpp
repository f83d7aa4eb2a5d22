#pragma once

// Independent reference computations used by the tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "nrsched/bench.hpp"
#include "nrsched/instance.hpp"

namespace testing_support {

using nrsched::Assignment;
using nrsched::Instance;
using nrsched::Int;
using nrsched::Rational;

inline bool prefix_ok(const Instance& inst, const std::vector<std::size_t>& pi) {
  for (std::size_t k = 0; k < inst.arrivals.size(); ++k) {
    Int need = 0, have = 0;
    for (std::size_t j = 0; j < pi.size(); ++j)
      if (pi[j] <= k) need += inst.jobs[j].a;
    for (std::size_t i = 0; i <= k; ++i) have += inst.arrivals[i].b;
    if (need > have) return false;
  }
  return true;
}

inline Rational cost_of(const Instance& inst, const std::vector<std::size_t>& pi) {
  Rational total = 0;
  for (std::size_t j = 0; j < pi.size(); ++j) total += inst.arrivals[pi[j]].t * inst.jobs[j].w;
  return total;
}

/// Visits all q^n assignments in odometer order (job 0 least significant).
inline void for_each_assignment(const Instance& inst, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  const std::size_t n = inst.jobs.size(), q = inst.arrivals.size();
  std::vector<std::size_t> pi(n, 0);
  while (true) {
    fn(pi);
    std::size_t j = 0;
    while (j < n && ++pi[j] == q) pi[j++] = 0;
    if (j == n) return;
  }
}

/// Minimum objective over every feasible assignment.
inline std::optional<Rational> exhaustive_optimum(const Instance& inst) {
  std::optional<Rational> best;
  for_each_assignment(inst, [&](const std::vector<std::size_t>& pi) {
    if (!prefix_ok(inst, pi)) return;
    Rational c = cost_of(inst, pi);
    if (!best || c < *best) best = c;
  });
  return best;
}

/// Minimum weight of a subset covering `demand` (nullopt if none).
inline std::optional<Int> min_cover_reference(const std::vector<Int>& w, const std::vector<Int>& a, Int demand) {
  std::optional<Int> best;
  const std::size_t n = w.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Int cw = 0, ca = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) {
        cw += w[j];
        ca += a[j];
      }
    if (ca >= demand && (!best || cw < *best)) best = cw;
  }
  return best;
}

/// B_i computed by suffix sums of supply, valid when total supply equals total requirement.
inline std::vector<Int> suffix_supply(const Instance& inst) {
  std::vector<Int> out(inst.arrivals.size());
  Int acc = 0;
  for (std::size_t i = inst.arrivals.size(); i-- > 0;) {
    acc += inst.arrivals[i].b;
    out[i] = acc;
  }
  return out;
}

inline Instance random_zero_instance(std::uint64_t seed, std::size_t n, std::size_t q, Int wmax = 10, Int amax = 10,
                                     Int tmax = 30) {
  nrsched::RandomSpec spec;
  spec.seed = seed;
  spec.n = n;
  spec.q = q;
  spec.weight = {0, wmax};
  spec.requirement = {0, amax};
  spec.time = {1, std::max<Int>(tmax, static_cast<Int>(q))};
  spec.zero_p = true;
  return nrsched::gen_random(spec);
}

/// Brute-force optimum over all n! orders with earliest-start simulation done locally.
inline Rational permutation_optimum(const Instance& inst) {
  std::vector<std::size_t> order(inst.jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::optional<Rational> best;
  do {
    Rational free = 0, total = 0;
    Int used = 0;
    for (std::size_t j : order) {
      used += inst.jobs[j].a;
      Rational ready = 0;
      Int got = 0;
      if (used > 0)
        for (const auto& r : inst.arrivals) {
          got += r.b;
          if (got >= used) {
            ready = r.t;
            break;
          }
        }
      Rational start = std::max(ready, free);
      free = start + inst.jobs[j].p;
      total += free * inst.jobs[j].w;
    }
    if (!best || total < *best) best = total;
  } while (std::next_permutation(order.begin(), order.end()));
  return *best;
}

}  // namespace testing_support

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "nrsched/errors.hpp"
#include "nrsched/exact.hpp"
#include "nrsched/rational.hpp"

namespace nrsched {

namespace detail {

inline bool better_cover(const CoverSolution& lhs, const CoverSolution& rhs) {
  if (lhs.weight != rhs.weight) return lhs.weight < rhs.weight;
  return lhs.chosen < rhs.chosen;
}

// Min-weight cover restricted to `allowed`, with weights scaled down by K = eps * w_cap / m and
// rounded down; solved exactly in the scaled weights by a 0/1 DP over scaled weight totals.
inline CoverSolution scaled_cover(const CoverProblem& prob, const std::vector<std::size_t>& allowed, Int w_cap,
                                  const BigInt& eps_num, const BigInt& eps_den) {
  const std::size_t m = allowed.size();
  std::vector<Int> scaled(m);
  for (std::size_t i = 0; i < m; ++i) {
    // floor(w / K) = floor(w * m * den / (num * w_cap))
    BigInt v = BigInt(prob.items[allowed[i]].w) * m * eps_den / (eps_num * w_cap);
    scaled[i] = static_cast<Int>(v);
  }
  const std::size_t bound = static_cast<std::size_t>(std::accumulate(scaled.begin(), scaled.end(), Int{0}));
  // best[v] = max coverage at scaled weight exactly v
  std::vector<Int> best(bound + 1, -1);
  std::vector<std::vector<char>> took(m, std::vector<char>(bound + 1, 0));
  best[0] = 0;
  std::size_t reach = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t s = static_cast<std::size_t>(scaled[i]);
    const Int a = prob.items[allowed[i]].a;
    for (auto v = static_cast<std::int64_t>(reach + s); v >= static_cast<std::int64_t>(s); --v) {
      const Int prev = best[static_cast<std::size_t>(v) - s];
      if (prev < 0) continue;
      if (prev + a > best[static_cast<std::size_t>(v)]) {
        best[static_cast<std::size_t>(v)] = prev + a;
        took[i][static_cast<std::size_t>(v)] = 1;
      }
    }
    reach += s;
  }
  CoverSolution out;
  out.weight = -1;
  std::size_t v = 0;
  while (v <= bound && best[v] < prob.demand) ++v;
  if (v > bound) return out;
  for (std::size_t i = m; i-- > 0;) {
    if (took[i][v]) {
      out.chosen.push_back(allowed[i]);
      v -= static_cast<std::size_t>(scaled[i]);
    }
  }
  std::sort(out.chosen.begin(), out.chosen.end());
  out.weight = 0;
  for (std::size_t idx : out.chosen) {
    out.weight += prob.items[idx].w;
    out.coverage += prob.items[idx].a;
  }
  return out;
}

}  // namespace detail

/// (1+eps)-approximate minimum-weight cover. For every distinct item weight w_cap it keeps the items
/// no heavier than w_cap, scales their weights by eps * w_cap / m and solves the scaled problem exactly;
/// the lightest resulting cover wins. The guess equal to the heaviest item of an optimal cover bounds
/// the rounding loss by eps * w_cap <= eps * OPT.
inline CoverSolution min_cover_fptas(const CoverProblem& prob, const Rational& eps) {
  if (!(eps > 0)) throw PreconditionError("eps must be positive");
  if (prob.demand < 0) throw InvalidInput("negative cover demand");
  for (const auto& item : prob.items)
    if (item.w < 0 || item.a < 0) throw InvalidInput("negative cover item field");
  if (prob.total_requirement() < prob.demand) throw Infeasible("cover demand exceeds total requirement");
  if (prob.demand == 0) return {};

  const BigInt eps_num = numerator_of(eps), eps_den = denominator_of(eps);
  std::vector<std::size_t> order(prob.items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return prob.items[x].w < prob.items[y].w; });

  CoverSolution best;
  best.weight = -1;
  std::vector<std::size_t> allowed;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    allowed.push_back(order[pos]);
    const Int w_cap = prob.items[order[pos]].w;
    if (pos + 1 < order.size() && prob.items[order[pos + 1]].w == w_cap) continue;  // same cap: extend first

    Int coverage = 0;
    for (std::size_t idx : allowed) coverage += prob.items[idx].a;
    if (coverage < prob.demand) continue;

    CoverSolution candidate;
    if (w_cap == 0) {
      // every allowed item is free; take them in id order until covered
      std::vector<std::size_t> ids = allowed;
      std::sort(ids.begin(), ids.end());
      for (std::size_t idx : ids) {
        if (candidate.coverage >= prob.demand) break;
        candidate.chosen.push_back(idx);
        candidate.coverage += prob.items[idx].a;
      }
    } else {
      std::vector<std::size_t> ids = allowed;
      std::sort(ids.begin(), ids.end());
      candidate = detail::scaled_cover(prob, ids, w_cap, eps_num, eps_den);
      if (candidate.weight < 0) continue;
    }
    if (best.weight < 0 || detail::better_cover(candidate, best)) best = candidate;
  }
  if (best.weight < 0) throw Infeasible("no cover found");
  return best;
}

}  // namespace nrsched

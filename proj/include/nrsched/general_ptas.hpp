#pragma once

#include <optional>
#include <vector>

#include "nrsched/constant_q_ptas.hpp"
#include "nrsched/core.hpp"
#include "nrsched/errors.hpp"
#include "nrsched/instance.hpp"

namespace nrsched {

/// Window parameters: eps, an even window length r, and the run offset ell in [1, r/2].
struct PtasWindowConfig {
  Rational eps;
  std::size_t r = 0;
  std::size_t ell = 1;

  void check() const {
    if (!(eps > 0) || eps > Rational(1, 4)) throw PreconditionError("eps must lie in (0, 1/4]");
    if (r == 0 || r % 2 != 0) throw PreconditionError("r must be even and positive");
    if (ell < 1 || ell > r / 2) throw PreconditionError("ell must lie in [1, r/2]");
  }
};

/// Smallest even r with (1+eps)^(r/2) >= (2-2eps)/(1-2eps) and r >= 2(1+eps)/eps^2.
inline std::size_t minimal_window_length(const Rational& eps) {
  if (!(eps > 0) || eps > Rational(1, 4)) throw PreconditionError("eps must lie in (0, 1/4]");
  const Rational growth_target = (2 - 2 * eps) / (1 - 2 * eps);
  std::size_t half = 1;
  Rational power = 1 + eps;
  while (power < growth_target) {
    power *= 1 + eps;
    ++half;
  }
  std::size_t r = 2 * half;
  const Rational averaging_target = 2 * (1 + eps) / (eps * eps);
  while (Rational(static_cast<long long>(r)) < averaging_target) r += 2;
  return r;
}

struct GeneralPtasResult {
  Assignment assignment;  // on the original instance
  Rational objective;
  std::uint64_t nodes = 0;
  std::size_t r = 0;
  std::size_t best_ell = 0;
};

namespace detail {

inline constexpr std::size_t kAtZero = std::numeric_limits<std::size_t>::max();

struct ShiftedLevels {
  Instance shifted;
  std::vector<Rational> time;  // by decreasing-time index d; d >= real are dummy arrivals
  std::vector<Int> supply;
  std::size_t real = 0;        // positive shifted arrivals
  Int at_zero = 0;             // supply at time 0
};

inline ShiftedLevels decreasing_levels(const Instance& inst, const Rational& eps, std::size_t r) {
  ShiftedLevels lv;
  lv.shifted = shift_arrivals(inst, 1 + eps);
  const auto& arr = lv.shifted.arrivals;
  auto demand = remaining_demands(lv.shifted);
  auto effective = [&](std::size_t idx) { return demand[idx] - (idx + 1 < arr.size() ? demand[idx + 1] : 0); };
  lv.real = arr.size() - 1;
  lv.at_zero = effective(0);
  for (std::size_t d = 0; d < lv.real; ++d) {
    lv.time.push_back(arr[arr.size() - 1 - d].t);
    lv.supply.push_back(effective(arr.size() - 1 - d));
  }
  Rational t = arr[1].t;
  for (std::size_t i = 0; i < r; ++i) {
    t /= 1 + eps;
    lv.time.push_back(t);
    lv.supply.push_back(0);
  }
  return lv;
}

struct Window {
  Instance instance;
  std::vector<std::size_t> job_ids;  // window job -> original job
  std::size_t lo = 0, hi = 0;        // decreasing-time index range covered
};

// Arrivals lo..hi plus time 0; supply earlier than hi moves to 0, and supply already covered by
// fixed jobs is removed from index lo upwards so that supply equals the unfixed requirement.
inline Window build_window(const Instance& inst, const ShiftedLevels& lv, const std::vector<std::size_t>& fixed,
                           std::size_t lo, std::size_t hi) {
  Window win;
  win.lo = lo;
  win.hi = hi;
  Int unfixed_a = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    if (fixed[j] != kUnguessed) continue;
    win.job_ids.push_back(j);
    win.instance.jobs.push_back(inst.jobs[j]);
    unfixed_a += inst.jobs[j].a;
  }
  std::vector<Int> supply(lv.supply.begin() + static_cast<std::ptrdiff_t>(lo),
                          lv.supply.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  Int zero_pool = lv.at_zero;
  for (std::size_t d = hi + 1; d < lv.supply.size(); ++d) zero_pool += lv.supply[d];
  Int total = zero_pool;
  for (Int b : supply) total += b;
  Int excess = total - unfixed_a;
  for (auto& b : supply) {
    Int cut = std::min(excess, b);
    b -= cut;
    excess -= cut;
  }
  zero_pool -= std::min(excess, zero_pool);

  win.instance.arrivals.push_back({0, zero_pool});
  for (std::size_t d = hi + 1; d-- > lo;) win.instance.arrivals.push_back({lv.time[d], supply[d - lo]});
  return win;
}

inline std::size_t window_k(std::size_t arrivals, const Rational& eps) {
  return static_cast<std::size_t>(ceil_of(Rational(static_cast<long long>(arrivals)) / eps));
}

}  // namespace detail

/// One run of the windowed PTAS for a fixed ell; returns the schedule on the shifted instance
/// expressed by decreasing-time index (kAtZero for time 0).
inline std::vector<std::size_t> general_ptas_single_run(const Instance& inst, const detail::ShiftedLevels& lv,
                                                        const PtasWindowConfig& cfg, const Limits& limits,
                                                        std::uint64_t& nodes) {
  cfg.check();
  const std::size_t r = cfg.r, ell = cfg.ell, half = r / 2, total_levels = lv.time.size();
  std::vector<std::size_t> fixed(inst.jobs.size(), detail::kUnguessed);
  for (std::size_t step = 1;; ++step) {
    std::size_t lo, hi, fix_hi;
    if (step == 1) {
      lo = 0;
      hi = half + ell - 1;
      fix_hi = ell - 1;
    } else {
      lo = (step - 2) * half + ell;
      hi = lo + r - 1;
      fix_hi = lo + half - 1;
    }
    if (hi + 1 > total_levels) break;  // loop condition s + r - 1 <= q - 2

    bool last = true;  // no supply left beyond the window
    for (std::size_t d = hi + 1; d < total_levels; ++d)
      if (lv.supply[d] > 0) last = false;

    auto win = detail::build_window(inst, lv, fixed, lo, hi);
    if (win.job_ids.empty()) break;
    auto res = constant_q_ptas_run(win.instance, detail::window_k(win.instance.arrivals.size(), cfg.eps), limits);
    nodes += res.nodes;
    for (std::size_t local = 0; local < win.job_ids.size(); ++local) {
      std::size_t at = res.assignment.arrival[local];
      std::size_t d = at == 0 ? detail::kAtZero : hi - (at - 1);
      if (last || (d != detail::kAtZero && d <= fix_hi)) fixed[win.job_ids[local]] = d;
    }
    if (last) break;
  }
  for (auto& d : fixed)
    if (d == detail::kUnguessed) d = detail::kAtZero;
  return fixed;
}

/// PTAS for arbitrarily many arrivals: shift to powers of 1+eps, then for every ell in [1, r/2]
/// fix jobs window by window with the constant-q PTAS and keep the best run.
inline GeneralPtasResult general_ptas_run(const Instance& inst, const Rational& eps,
                                          const Limits& limits = Limits::from_env(),
                                          std::optional<std::size_t> r_override = std::nullopt) {
  require_zero_processing(inst);
  require_valid(inst);
  const std::size_t r = r_override.value_or(minimal_window_length(eps));
  PtasWindowConfig{eps, r, 1}.check();
  GeneralPtasResult out;
  out.r = r;
  const std::size_t n = inst.jobs.size();
  if (inst.arrivals.size() == 1 || n == 0) {
    out.assignment.arrival.assign(n, 0);
    out.best_ell = 1;
    return out;
  }

  auto lv = detail::decreasing_levels(inst, eps, r);
  const std::size_t shifted_q = lv.shifted.arrivals.size();
  bool have = false;
  for (std::size_t ell = 1; ell <= r / 2; ++ell) {
    auto by_level = general_ptas_single_run(inst, lv, {eps, r, ell}, limits, out.nodes);
    Assignment on_shifted{std::vector<std::size_t>(n, 0)};
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t d = by_level[j];
      on_shifted.arrival[j] = (d == detail::kAtZero || d >= lv.real) ? 0 : shifted_q - 1 - d;
    }
    Assignment mapped = map_from_shifted(inst, lv.shifted, on_shifted);
    Rational obj = objective_assignment(inst, mapped);
    if (!have || better_candidate(obj, mapped, out.objective, out.assignment)) {
      have = true;
      out.objective = obj;
      out.assignment = std::move(mapped);
      out.best_ell = ell;
    }
  }
  return out;
}

inline Assignment general_ptas(const Instance& inst, const Rational& eps, const Limits& limits = Limits::from_env()) {
  return general_ptas_run(inst, eps, limits).assignment;
}

}  // namespace nrsched

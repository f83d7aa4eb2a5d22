#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nrsched/constant_q_ptas.hpp"
#include "nrsched/core.hpp"
#include "nrsched/errors.hpp"
#include "nrsched/exact.hpp"
#include "nrsched/general_ptas.hpp"
#include "nrsched/greedy.hpp"
#include "nrsched/io.hpp"
#include "nrsched/shift_cover.hpp"
#include "nrsched/unit.hpp"
#include "nrsched/unknown.hpp"

namespace nrsched {

struct IntRange {
  Int lo = 0;
  Int hi = 0;
};

/// Portable uniform draws on top of mt19937_64 (the standard distributions differ between libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  Int uniform(Int lo, Int hi) {
    if (lo > hi) throw InvalidInput("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<Int>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return lo + static_cast<Int>(x % span);
  }
  Int uniform(const IntRange& r) { return uniform(r.lo, r.hi); }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

struct RandomSpec {
  std::uint64_t seed = 1;
  std::size_t n = 5;
  std::size_t q = 3;
  IntRange weight{1, 10};
  IntRange requirement{1, 10};
  IntRange time{1, 20};  // times of arrivals 2..q, distinct
  IntRange processing{1, 10};
  bool zero_p = true;
};

namespace detail {

inline void check_range(const IntRange& r, const char* name) {
  if (r.lo < 0 || r.lo > r.hi) throw InvalidInput(std::string("impossible range for ") + name);
}

// b_i uniform around the mean requirement share, then the last arrival absorbs the difference.
// Excess larger than the last quantity is trimmed further back.
inline void draw_instance(Rng& rng, const RandomSpec& spec, Instance& inst) {
  for (std::size_t j = 0; j < spec.n; ++j) {
    Int p = spec.zero_p ? 0 : rng.uniform(spec.processing);
    Int w = rng.uniform(spec.weight);
    Int a = rng.uniform(spec.requirement);
    inst.jobs.push_back({p, w, a});
  }
  std::vector<Int> times{0};
  if (spec.q > 1) {
    const Int lo = std::max<Int>(1, spec.time.lo);
    if (spec.time.hi < lo || static_cast<std::uint64_t>(spec.time.hi - lo + 1) < spec.q - 1)
      throw InvalidInput("time range too small for q distinct arrival times");
    // Floyd's sampling of q-1 distinct values
    std::vector<Int> picked;
    const Int span = spec.time.hi - lo + 1, need = static_cast<Int>(spec.q - 1);
    for (Int j = span - need; j < span; ++j) {
      Int t = rng.uniform(0, j);
      if (std::find(picked.begin(), picked.end(), lo + t) != picked.end()) picked.push_back(lo + j);
      else picked.push_back(lo + t);
    }
    std::sort(picked.begin(), picked.end());
    times.insert(times.end(), picked.begin(), picked.end());
  }
  const Int total = inst.total_requirement();
  const Int share = (2 * total + static_cast<Int>(spec.q) - 1) / static_cast<Int>(spec.q);
  std::vector<Int> b(spec.q);
  for (auto& x : b) x = rng.uniform(0, share);
  Int diff = total;
  for (Int x : b) diff -= x;
  if (diff >= 0) {
    b.back() += diff;
  } else {
    Int excess = -diff;
    for (std::size_t i = b.size(); i-- > 0 && excess > 0;) {
      Int cut = std::min(excess, b[i]);
      b[i] -= cut;
      excess -= cut;
    }
  }
  for (std::size_t i = 0; i < spec.q; ++i) inst.arrivals.push_back({times[i], b[i]});
}

}  // namespace detail

inline Instance gen_random(Rng& rng, const RandomSpec& spec) {
  if (spec.n < 1 || spec.q < 1) throw InvalidInput("gen_random requires n, q >= 1");
  detail::check_range(spec.weight, "weight");
  detail::check_range(spec.requirement, "requirement");
  detail::check_range(spec.time, "time");
  if (!spec.zero_p) detail::check_range(spec.processing, "processing");
  Instance inst;
  detail::draw_instance(rng, spec, inst);
  return inst;
}

/// Deterministic pseudo-random instance with sum b = sum a.
inline Instance gen_random(const RandomSpec& spec) {
  Rng rng(spec.seed);
  return gen_random(rng, spec);
}

enum class Algo { Greedy, ShiftCover, PtasQ, Ptas, Robust, ExactDp, ExactPerm, Spt };

inline const std::vector<std::pair<std::string, Algo>>& algo_names() {
  static const std::vector<std::pair<std::string, Algo>> names{
      {"greedy", Algo::Greedy},     {"shift-cover", Algo::ShiftCover}, {"ptas-q", Algo::PtasQ},
      {"ptas", Algo::Ptas},         {"robust", Algo::Robust},          {"exact-dp", Algo::ExactDp},
      {"exact-perm", Algo::ExactPerm}, {"spt", Algo::Spt}};
  return names;
}

inline Algo parse_algo(const std::string& name) {
  for (const auto& [text, algo] : algo_names())
    if (text == name) return algo;
  throw InvalidInput("unknown algorithm '" + name + "'");
}

inline std::string to_string(Algo algo) {
  for (const auto& [text, value] : algo_names())
    if (value == algo) return text;
  return "?";
}

struct AlgoSpec {
  Algo algo = Algo::Greedy;
  std::optional<Rational> eps;
  std::optional<std::size_t> k;

  /// Fills documented defaults and checks parameter ranges.
  AlgoSpec normalized() const {
    AlgoSpec out = *this;
    switch (algo) {
      case Algo::ShiftCover:
      case Algo::Ptas:
        if (!out.eps) out.eps = Rational(1, 4);
        break;
      case Algo::Robust:
        if (!out.eps) out.eps = Rational(1, 10);
        break;
      case Algo::PtasQ:
        if (!out.k) out.k = 2;
        if (*out.k == 0) throw InvalidInput("k must be positive");
        break;
      default:
        break;
    }
    if (out.eps && !(*out.eps > 0)) throw InvalidInput("eps must be positive");
    if (algo == Algo::Ptas && *out.eps > Rational(1, 4)) throw InvalidInput("ptas requires eps <= 1/4");
    return out;
  }

  std::string params() const {
    std::string out;
    if (eps) out += "eps=" + to_string(*eps);
    if (k) out += (out.empty() ? "" : ";") + std::string("k=") + std::to_string(*k);
    return out.empty() ? "-" : out;
  }
};

struct Solution {
  std::optional<Assignment> assignment;  // zero-processing algorithms
  std::optional<Ordering> ordering;      // permutation oracle and SPT
  Rational objective;
  bool feasible = false;
};

inline bool ordering_feasible(const Instance& inst, const Ordering& ord, const ScheduleEval& eval) {
  const std::size_t n = inst.jobs.size();
  std::vector<char> seen(n, 0);
  Int consumed = 0;
  Rational machine = 0;
  for (std::size_t j : ord.sequence) {
    if (j >= n || seen[j]) return false;
    seen[j] = 1;
    consumed += inst.jobs[j].a;
    Int supplied = 0;
    std::optional<Rational> ready;
    for (const auto& r : inst.arrivals) {
      supplied += r.b;
      if (supplied >= consumed) {
        ready = r.t;
        break;
      }
    }
    if (!ready && consumed > 0) return false;
    if (eval.start[j] < machine || (consumed > 0 && eval.start[j] < *ready)) return false;
    if (eval.completion[j] != eval.start[j] + inst.jobs[j].p) return false;
    machine = eval.completion[j];
  }
  return true;
}

inline Solution solve(const Instance& inst, const AlgoSpec& raw, const Limits& limits = Limits::from_env()) {
  const AlgoSpec spec = raw.normalized();
  Solution out;
  auto finish_assignment = [&](Assignment asg) {
    out.feasible = is_feasible(inst, asg);
    out.objective = objective_assignment(inst, asg);
    out.assignment = std::move(asg);
  };
  auto finish_ordering = [&](Ordering ord, const ScheduleEval& eval) {
    out.feasible = ordering_feasible(inst, ord, eval);
    out.objective = eval.objective;
    out.ordering = std::move(ord);
  };
  switch (spec.algo) {
    case Algo::Greedy: finish_assignment(greedy_schedule(inst)); break;
    case Algo::ShiftCover: finish_assignment(shift_and_cover(inst, *spec.eps)); break;
    case Algo::PtasQ: finish_assignment(constant_q_ptas(inst, *spec.k, limits)); break;
    case Algo::Ptas: finish_assignment(general_ptas(inst, *spec.eps, limits)); break;
    case Algo::Robust: {
      require_zero_processing(inst);
      require_valid(inst);
      finish_assignment(robust_schedule(robust_input_of(inst, *spec.eps)));
      break;
    }
    case Algo::ExactDp: finish_assignment(optimal_assignment_dp(inst, limits).assignment); break;
    case Algo::ExactPerm: {
      auto res = optimal_ordering_bruteforce(inst, limits);
      finish_ordering(res.ordering, res.eval);
      break;
    }
    case Algo::Spt: {
      auto res = spt_schedule(inst);
      finish_ordering(res.ordering, res.eval);
      break;
    }
  }
  return out;
}

/// Exact optimum: the assignment DP for zero processing times, permutation search otherwise.
inline Rational oracle_objective(const Instance& inst, const Limits& limits = Limits::from_env()) {
  if (inst.zero_processing()) return optimal_assignment_dp(inst, limits).objective;
  return optimal_ordering_bruteforce(inst, limits).eval.objective;
}

/// Proven approximation factor of an algorithm on this instance, when one applies.
inline std::optional<Rational> proven_bound(const Instance& inst, const AlgoSpec& raw) {
  const AlgoSpec spec = raw.normalized();
  switch (spec.algo) {
    case Algo::Greedy: return Rational(6);
    case Algo::ShiftCover: return 4 + 4 * *spec.eps;
    case Algo::PtasQ:
      return 1 + Rational(static_cast<long long>(inst.arrivals.size()), static_cast<long long>(*spec.k));
    case Algo::Ptas: return (1 + 6 * *spec.eps) * (1 + *spec.eps);
    case Algo::Robust: return 4 * (1 + *spec.eps);
    case Algo::ExactDp:
    case Algo::ExactPerm: return Rational(1);
    case Algo::Spt:
      for (const auto& j : inst.jobs)
        if (j.w != 1) return std::nullopt;
      return Rational(3, 2);
  }
  return std::nullopt;
}

struct SuiteInstance {
  std::string id;
  Instance instance;
};

struct SuiteConfig {
  std::vector<SuiteInstance> instances;
  std::vector<AlgoSpec> algorithms;
  bool oracle = true;
  bool timing = false;  // runtime_ms stays 0 unless enabled, keeping reruns byte-identical
  std::string output;

  /// Reads a JSON config; relative file paths resolve against base_dir.
  static SuiteConfig from_json(const nlohmann::json& root, const std::filesystem::path& base_dir = ".") {
    if (!root.is_object()) throw InvalidInput("suite config must be an object");
    SuiteConfig cfg;
    cfg.oracle = root.value("oracle", true);
    cfg.timing = root.value("timing", false);
    cfg.output = root.value("output", std::string());
    if (!root.contains("instances") || !root["instances"].is_array()) throw InvalidInput("config needs an \"instances\" array");
    if (!root.contains("algorithms") || !root["algorithms"].is_array()) throw InvalidInput("config needs an \"algorithms\" array");
    for (const auto& src : root["instances"]) {
      if (src.contains("file")) {
        std::filesystem::path path = src["file"].get<std::string>();
        if (path.is_relative()) path = base_dir / path;
        std::string id = src.value("id", path.stem().string());
        cfg.instances.push_back({id, load_instance(path.string())});
        continue;
      }
      const std::string family = src.value("family", std::string());
      if (family == "random") {
        if (!src.contains("seed")) throw InvalidInput("random instance source needs an explicit seed");
        RandomSpec spec;
        spec.seed = src["seed"].get<std::uint64_t>();
        spec.n = src.value("n", spec.n);
        spec.q = src.value("q", spec.q);
        auto range = [&](const char* key, IntRange& r) {
          if (!src.contains(key)) return;
          const auto& v = src[key];
          if (!v.is_array() || v.size() != 2) throw InvalidInput(std::string("range \"") + key + "\" must be [lo, hi]");
          r = {v[0].get<Int>(), v[1].get<Int>()};
        };
        range("w", spec.weight);
        range("a", spec.requirement);
        range("t", spec.time);
        range("p", spec.processing);
        spec.zero_p = src.value("zero_p", true);
        const std::size_t count = src.value("count", std::size_t{1});
        const std::string prefix = src.value("id", "random-s" + std::to_string(spec.seed));
        Rng rng(spec.seed);
        for (std::size_t i = 0; i < count; ++i) {
          std::ostringstream id;
          id << prefix << '-' << std::setw(4) << std::setfill('0') << i;
          cfg.instances.push_back({id.str(), gen_random(rng, spec)});
        }
      } else if (family == "spt-tight") {
        Int k1 = src.at("k1").get<Int>(), k2 = src.at("k2").get<Int>();
        cfg.instances.push_back({src.value("id", "spt-tight-" + std::to_string(k1) + "-" + std::to_string(k2)),
                                 spt_tight_family(k1, k2)});
      } else {
        throw InvalidInput("unknown instance source '" + family + "'");
      }
    }
    for (const auto& a : root["algorithms"]) {
      AlgoSpec spec;
      spec.algo = parse_algo(a.at("algo").get<std::string>());
      if (a.contains("eps")) {
        const auto& e = a["eps"];
        spec.eps = e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<Int>());
      }
      if (a.contains("k")) spec.k = a["k"].get<std::size_t>();
      cfg.algorithms.push_back(spec.normalized());
    }
    std::vector<std::string> ids;
    for (const auto& inst : cfg.instances) ids.push_back(inst.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw InvalidInput("duplicate instance id");
    return cfg;
  }
};

struct RunReport {
  std::string instance_id;
  std::string algo;
  std::string params;
  Rational objective;
  std::optional<Rational> oracle_objective;
  std::optional<Rational> ratio;  // present iff the oracle is present and nonzero
  bool feasible = false;
  std::int64_t runtime_ms = 0;
  bool within_bound = true;
};

inline const char* kCsvHeader =
    "instance_id,algo,params,objective_num,objective_den,oracle_num,oracle_den,ratio_decimal,feasible,runtime_ms";

inline std::string csv_row(const RunReport& r) {
  std::ostringstream os;
  os << r.instance_id << ',' << r.algo << ',' << r.params << ',' << numerator_of(r.objective) << ','
     << denominator_of(r.objective) << ',';
  if (r.oracle_objective) os << numerator_of(*r.oracle_objective) << ',' << denominator_of(*r.oracle_objective);
  else os << ',';
  os << ',' << (r.ratio ? to_decimal(*r.ratio, 6) : "") << ',' << (r.feasible ? "true" : "false") << ','
     << r.runtime_ms;
  return os.str();
}

inline std::string format_csv(const std::vector<RunReport>& reports) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : reports) out += csv_row(r) + "\n";
  return out;
}

struct SuiteResult {
  std::vector<RunReport> reports;
  std::string csv;
  int exit_code = 0;  // 0 ok, 2 feasibility or bound violation
  std::vector<std::string> problems;
};

inline SuiteResult run_suite(const SuiteConfig& cfg, const Limits& limits = Limits::from_env()) {
  SuiteResult out;
  for (const auto& src : cfg.instances) {
    std::optional<Rational> oracle;
    if (cfg.oracle) oracle = oracle_objective(src.instance, limits);
    for (const auto& spec : cfg.algorithms) {
      RunReport rep;
      rep.instance_id = src.id;
      rep.algo = to_string(spec.algo);
      rep.params = spec.params();
      auto start = std::chrono::steady_clock::now();
      Solution sol = solve(src.instance, spec, limits);
      auto stop = std::chrono::steady_clock::now();
      if (cfg.timing) rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
      rep.objective = sol.objective;
      rep.feasible = sol.feasible;
      rep.oracle_objective = oracle;
      if (oracle && *oracle != 0) rep.ratio = sol.objective / *oracle;
      if (oracle) {
        if (auto bound = proven_bound(src.instance, spec))
          rep.within_bound = *oracle == 0 ? sol.objective == 0 : *rep.ratio <= *bound;
      }
      if (!rep.feasible) out.problems.push_back(src.id + " " + rep.algo + ": infeasible schedule");
      if (!rep.within_bound) out.problems.push_back(src.id + " " + rep.algo + ": ratio bound violated");
      out.reports.push_back(std::move(rep));
    }
  }
  std::stable_sort(out.reports.begin(), out.reports.end(), [](const RunReport& x, const RunReport& y) {
    if (x.instance_id != y.instance_id) return x.instance_id < y.instance_id;
    if (x.algo != y.algo) return x.algo < y.algo;
    return x.params < y.params;
  });
  out.csv = format_csv(out.reports);
  if (!out.problems.empty()) out.exit_code = 2;
  return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

/// Reads a CSV written by run_suite back into reports.
inline std::vector<RunReport> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw InvalidInput("CSV header mismatch");
  std::vector<RunReport> out;
  std::size_t number = 1;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (cells.size() != 10) throw InvalidInput("CSV line " + std::to_string(number) + ": expected 10 columns");
    try {
      RunReport r;
      r.instance_id = cells[0];
      r.algo = cells[1];
      r.params = cells[2];
      r.objective = parse_rational(cells[3] + "/" + cells[4]);
      if (!cells[5].empty()) r.oracle_objective = parse_rational(cells[5] + "/" + cells[6]);
      if (r.oracle_objective && *r.oracle_objective != 0) r.ratio = r.objective / *r.oracle_objective;
      if (cells[8] != "true" && cells[8] != "false") throw InvalidInput("bad feasible flag");
      r.feasible = cells[8] == "true";
      r.runtime_ms = std::stoll(cells[9]);
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw InvalidInput("CSV line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

/// Per (algo, params): rows, infeasible rows, rows with a ratio, and the maximum ratio.
inline std::string summarize(const std::vector<RunReport>& reports) {
  struct Group {
    std::size_t rows = 0, infeasible = 0, with_ratio = 0;
    std::optional<Rational> max_ratio;
  };
  std::map<std::pair<std::string, std::string>, Group> groups;
  for (const auto& r : reports) {
    auto& g = groups[{r.algo, r.params}];
    ++g.rows;
    if (!r.feasible) ++g.infeasible;
    if (r.ratio) {
      ++g.with_ratio;
      if (!g.max_ratio || *r.ratio > *g.max_ratio) g.max_ratio = r.ratio;
    }
  }
  std::ostringstream os;
  os << "algo,params,rows,infeasible,rows_with_ratio,max_ratio_num,max_ratio_den,max_ratio_decimal\n";
  for (const auto& [key, g] : groups) {
    os << key.first << ',' << key.second << ',' << g.rows << ',' << g.infeasible << ',' << g.with_ratio << ',';
    if (g.max_ratio)
      os << numerator_of(*g.max_ratio) << ',' << denominator_of(*g.max_ratio) << ',' << to_decimal(*g.max_ratio, 6);
    else
      os << ",,";
    os << '\n';
  }
  return os.str();
}

}  // namespace nrsched

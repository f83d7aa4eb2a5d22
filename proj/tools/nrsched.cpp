// nrsched: generate instances, run solvers, run benchmark suites, summarize CSVs.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nrsched/nrsched.hpp"

namespace {

using namespace nrsched;

constexpr int kUsage = 1;
constexpr int kViolation = 2;
constexpr int kBudget = 3;

IntRange parse_range(const std::string& text, const char* name) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidInput(std::string("--") + name + " expects lo,hi");
  try {
    return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InvalidInput(std::string("--") + name + " expects integers lo,hi");
  }
}

std::vector<Int> parse_list(const std::string& text) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stoll(cell));
    } catch (const std::exception&) {
      throw InvalidInput("--xs expects a comma-separated list of integers");
    }
  }
  return out;
}

std::string sidecar_path(const std::string& output) { return output + ".meta.json"; }

void write_json(const std::string& path, const nlohmann::json& doc) { write_text_file(path, doc.dump(2) + "\n"); }

struct GenOptions {
  std::string family, output;
  Int B = 0, n = 0, k1 = 0, k2 = 0, m = 0;
  std::string xs;
  std::uint64_t seed = 1;
  std::size_t jobs = 5, q = 3;
  std::string w = "1,10", a = "1,10", t = "1,20", p = "1,10";
  bool zero_p = false;
};

int run_gen(const GenOptions& o) {
  nlohmann::json meta;
  meta["family"] = o.family;
  if (o.family == "3part") {
    ThreePartitionInput inp{o.B, o.n, parse_list(o.xs)};
    auto art = three_partition_instance(inp);
    write_text_file(o.output, format_instance(art.instance));
    meta["B"] = o.B;
    meta["n"] = o.n;
    meta["xs"] = inp.xs;
    meta["K"] = art.K;
    std::vector<std::string> jobs, arrivals;
    for (auto c : art.job_class) jobs.push_back(to_string(c));
    for (auto c : art.arrival_class) arrivals.push_back(to_string(c));
    meta["job_class"] = jobs;
    meta["arrival_class"] = arrivals;
    meta["threshold_nB"] = o.n * o.B;
    if (auto partition = find_three_partition(inp)) {
      auto sched = partition_to_schedule(art, *partition);
      nlohmann::json triples = nlohmann::json::array();
      for (const auto& tr : *partition) triples.push_back({tr[0], tr[1], tr[2]});
      meta["certificate"] = {{"partition", triples},
                             {"ordering", sched.ordering.sequence},
                             {"shifted_objective", to_string(sched.shifted_objective)}};
    } else {
      meta["certificate"] = nullptr;
    }
  } else if (o.family == "spt-tight") {
    auto inst = spt_tight_family(o.k1, o.k2);
    write_text_file(o.output, format_instance(inst));
    meta["k1"] = o.k1;
    meta["k2"] = o.k2;
    meta["optimum"] = spt_tight_optimum(o.k1, o.k2);
    meta["spt_objective"] = spt_tight_spt_objective(o.k1, o.k2);
    auto spt = spt_schedule(inst);
    meta["spt_ordering"] = spt.ordering.sequence;
  } else if (o.family == "adversarial") {
    auto in = adversarial_instance(o.n, o.m);
    write_text_file(o.output, format_robust_input(in));
    meta["n"] = o.n;
    meta["m"] = o.m;
    meta["jobs"] = in.jobs.size();
  } else if (o.family == "random") {
    RandomSpec spec;
    spec.seed = o.seed;
    spec.n = o.jobs;
    spec.q = o.q;
    spec.weight = parse_range(o.w, "w");
    spec.requirement = parse_range(o.a, "a");
    spec.time = parse_range(o.t, "t");
    spec.processing = parse_range(o.p, "p");
    spec.zero_p = o.zero_p;
    write_text_file(o.output, format_instance(gen_random(spec)));
    meta["seed"] = o.seed;
    meta["n"] = spec.n;
    meta["q"] = spec.q;
    meta["w"] = {spec.weight.lo, spec.weight.hi};
    meta["a"] = {spec.requirement.lo, spec.requirement.hi};
    meta["t"] = {spec.time.lo, spec.time.hi};
    if (!spec.zero_p) meta["p"] = {spec.processing.lo, spec.processing.hi};
    meta["zero_p"] = spec.zero_p;
  } else {
    throw InvalidInput("unknown family '" + o.family + "'");
  }
  write_json(sidecar_path(o.output), meta);
  return 0;
}

struct SolveOptions {
  std::string algo, eps, input, output;
  std::size_t k = 0;
  bool oracle = false;
};

int run_solve_robust(const SolveOptions& o, const AlgoSpec& spec) {
  auto in = parse_robust_input(read_text_file(o.input), *spec.eps);
  auto asg = robust_schedule(in);
  std::ostringstream csv;
  csv << "job,arrival_index\n";
  for (std::size_t j = 0; j < asg.arrival.size(); ++j) csv << j << ',' << asg.arrival[j] << '\n';
  if (!o.output.empty()) write_text_file(o.output, csv.str());
  std::cout << "algo=robust params=" << spec.params() << " jobs=" << in.jobs.size()
            << " arrivals=" << in.quantities.size() << '\n';
  int code = 0;
  if (o.oracle) {
    auto report = robustness_report(in.jobs, in.quantities, asg);
    for (const auto& r : report.records)
      std::cout << "index=" << r.index << " demand=" << r.demand << " weight=" << r.weight
                << " min_cover=" << r.optimal_cover << " ratio=" << (r.ratio ? to_string(*r.ratio) : "inf") << '\n';
    const Rational bound = 4 * (1 + *spec.eps);
    const bool ok = report.max_ratio && *report.max_ratio <= bound;
    std::cout << "max_ratio=" << (report.max_ratio ? to_string(*report.max_ratio) : "inf") << " bound=" << to_string(bound)
              << " within_bound=" << (ok ? "true" : "false") << '\n';
    if (!ok) code = kViolation;
  }
  if (o.output.empty()) std::cout << csv.str();
  return code;
}

int run_solve(const SolveOptions& o) {
  AlgoSpec spec;
  spec.algo = parse_algo(o.algo);
  if (!o.eps.empty()) spec.eps = parse_rational(o.eps);
  if (o.k > 0) spec.k = o.k;
  spec = spec.normalized();
  if (spec.algo == Algo::Robust) return run_solve_robust(o, spec);

  const Instance inst = load_instance(o.input);
  require_valid(inst);
  Solution sol = solve(inst, spec);
  std::ostringstream csv;
  if (sol.assignment) {
    csv << "job,arrival_index,arrival_time\n";
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
      std::size_t idx = sol.assignment->arrival[j];
      csv << j << ',' << idx << ',' << to_string(inst.arrivals[idx].t) << '\n';
    }
  } else {
    auto eval = simulate_ordering(inst, *sol.ordering);
    csv << "position,job,start,completion\n";
    for (std::size_t pos = 0; pos < sol.ordering->sequence.size(); ++pos) {
      std::size_t j = sol.ordering->sequence[pos];
      csv << pos << ',' << j << ',' << to_string(eval.start[j]) << ',' << to_string(eval.completion[j]) << '\n';
    }
  }
  if (!o.output.empty()) write_text_file(o.output, csv.str());
  std::cout << "algo=" << to_string(spec.algo) << " params=" << spec.params() << " objective=" << to_string(sol.objective)
            << " feasible=" << (sol.feasible ? "true" : "false");
  int code = sol.feasible ? 0 : kViolation;
  if (o.oracle) {
    Rational opt = oracle_objective(inst);
    std::cout << " oracle=" << to_string(opt);
    if (opt != 0) std::cout << " ratio=" << to_decimal(sol.objective / opt, 6);
    if (auto bound = proven_bound(inst, spec)) {
      bool ok = opt == 0 ? sol.objective == 0 : sol.objective / opt <= *bound;
      std::cout << " bound=" << to_string(*bound) << " within_bound=" << (ok ? "true" : "false");
      if (!ok) code = kViolation;
    }
  }
  std::cout << '\n';
  if (o.output.empty()) std::cout << csv.str();
  return code;
}

struct BenchOptions {
  std::string config, output;
  bool timing = false;
};

int run_bench(const BenchOptions& o) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(read_text_file(o.config));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(o.config + ": " + e.what());
  }
  SuiteConfig cfg;
  try {
    cfg = SuiteConfig::from_json(root, std::filesystem::path(o.config).parent_path());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(o.config + ": " + e.what());
  }
  if (!o.output.empty()) cfg.output = o.output;
  if (o.timing) cfg.timing = true;
  auto result = run_suite(cfg);
  if (cfg.output.empty()) std::cout << result.csv;
  else write_text_file(cfg.output, result.csv);
  for (const auto& problem : result.problems) std::cerr << problem << '\n';
  return result.exit_code;
}

int run_report(const std::string& input) {
  std::cout << summarize(parse_csv(read_text_file(input)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-machine scheduling with a non-renewable resource"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write an instance file and a .meta.json sidecar");
  gen_cmd->add_option("--family", gen.family, "3part | spt-tight | adversarial | random")->required();
  gen_cmd->add_option("--output,-o", gen.output, "Instance file to write")->required();
  gen_cmd->add_option("--B", gen.B, "3part target sum");
  gen_cmd->add_option("--n", gen.n, "3part triple count / adversarial n");
  gen_cmd->add_option("--xs", gen.xs, "3part values, comma separated");
  gen_cmd->add_option("--k1", gen.k1, "spt-tight k1");
  gen_cmd->add_option("--k2", gen.k2, "spt-tight k2");
  gen_cmd->add_option("--m", gen.m, "adversarial m");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--jobs", gen.jobs, "random job count");
  gen_cmd->add_option("--q", gen.q, "random arrival count");
  gen_cmd->add_option("--w", gen.w, "random weight range lo,hi");
  gen_cmd->add_option("--a", gen.a, "random requirement range lo,hi");
  gen_cmd->add_option("--t", gen.t, "random range lo,hi of the later arrival times");
  gen_cmd->add_option("--p", gen.p, "random processing range lo,hi");
  gen_cmd->add_flag("--zero-p", gen.zero_p, "random: all processing times 0");

  SolveOptions sol;
  auto* solve_cmd = app.add_subcommand("solve", "Run one algorithm on an instance file");
  solve_cmd->add_option("--algo", sol.algo, "greedy | shift-cover | ptas-q | ptas | robust | exact-dp | exact-perm | spt")
      ->required();
  solve_cmd->add_option("--eps", sol.eps, "accuracy as an exact fraction p/q");
  solve_cmd->add_option("--k", sol.k, "guess size for ptas-q");
  solve_cmd->add_option("--input,-i", sol.input, "instance file")->required();
  solve_cmd->add_option("--output,-o", sol.output, "schedule CSV (stdout when omitted)");
  solve_cmd->add_flag("--oracle", sol.oracle, "compare against the exact optimum and the proven bound");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a suite config and write the report CSV");
  bench_cmd->add_option("--config,-c", bench.config, "suite config JSON")->required();
  bench_cmd->add_option("--output,-o", bench.output, "CSV path (overrides the config)");
  bench_cmd->add_flag("--timing", bench.timing, "record wall-clock runtime_ms");

  std::string report_input;
  auto* report_cmd = app.add_subcommand("report", "Summarize a report CSV per algorithm");
  report_cmd->add_option("--input,-i", report_input, "report CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(sol);
    if (*bench_cmd) return run_bench(bench);
    if (*report_cmd) return run_report(report_input);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

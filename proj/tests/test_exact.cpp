#include <gtest/gtest.h>

#include "nrsched/exact.hpp"
#include "nrsched/unit.hpp"
#include "support.hpp"

using namespace nrsched;
namespace ts = testing_support;

TEST(AssignmentDp, TwoJobExample) {
  Instance inst{{{0, 1, 1}, {0, 2, 1}}, {{0, 1}, {10, 1}}};
  auto res = optimal_assignment_dp(inst);
  EXPECT_EQ(res.objective, 10);
  EXPECT_EQ(res.assignment.arrival, (std::vector<std::size_t>{1, 0}));
}

TEST(AssignmentDp, SingleArrival) {
  Instance inst{{{0, 3, 1}, {0, 2, 2}}, {{0, 3}}};
  auto res = optimal_assignment_dp(inst);
  EXPECT_EQ(res.objective, 0);
  EXPECT_EQ(res.assignment.arrival, (std::vector<std::size_t>{0, 0}));
}

TEST(AssignmentDp, MatchesExhaustiveEnumeration) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::size_t n = 1 + seed % 8, q = 1 + seed % 3;
    auto inst = ts::random_zero_instance(seed, n, q);
    auto res = optimal_assignment_dp(inst);
    ASSERT_TRUE(is_feasible(inst, res.assignment));
    EXPECT_EQ(objective_assignment(inst, res.assignment), res.objective);
    EXPECT_EQ(res.objective, *ts::exhaustive_optimum(inst)) << "seed " << seed;
  }
}

TEST(AssignmentDp, LexicographicallySmallestOptimum) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = ts::random_zero_instance(seed, 5, 3, 3, 3, 4);
    auto res = optimal_assignment_dp(inst);
    std::optional<std::vector<std::size_t>> first;
    // lexicographic over (job 0, job 1, ...): enumerate and keep the smallest optimal vector
    ts::for_each_assignment(inst, [&](const std::vector<std::size_t>& pi) {
      if (!ts::prefix_ok(inst, pi) || ts::cost_of(inst, pi) != res.objective) return;
      if (!first || pi < *first) first = pi;
    });
    EXPECT_EQ(res.assignment.arrival, *first) << "seed " << seed;
  }
}

TEST(AssignmentDp, RationalTimes) {
  Instance inst{{{0, 3, 1}, {0, 1, 1}}, {{0, 1}, {Rational(1, 3), 0}, {Rational(5, 2), 1}}};
  auto res = optimal_assignment_dp(inst);
  EXPECT_EQ(res.objective, Rational(5, 2));
}

TEST(AssignmentDp, Errors) {
  Instance timed{{{1, 1, 1}}, {{0, 1}}};
  EXPECT_THROW(optimal_assignment_dp(timed), PreconditionError);
  Instance short_supply{{{0, 1, 2}}, {{0, 1}}};
  EXPECT_THROW(optimal_assignment_dp(short_supply), InvalidInput);
  Limits small;
  small.dp_max_jobs = 2;
  auto big = ts::random_zero_instance(3, 3, 2);
  EXPECT_THROW(optimal_assignment_dp(big, small), BudgetExceeded);
}

TEST(AssignmentDp, EmptyJobs) {
  Instance inst{{}, {{0, 0}, {4, 0}}};
  EXPECT_EQ(optimal_assignment_dp(inst).objective, 0);
}

TEST(OrderingOracle, SingleJob) {
  Instance inst{{{4, 2, 1}}, {{0, 1}}};
  auto res = optimal_ordering_bruteforce(inst);
  EXPECT_EQ(res.eval.completion[0], 4);
  EXPECT_EQ(res.eval.objective, 8);
}

TEST(OrderingOracle, TightFamily) {
  auto res = optimal_ordering_bruteforce(spt_tight_family(2, 2));
  EXPECT_EQ(res.eval.objective, 14);
}

TEST(OrderingOracle, SptWithoutBindingResource) {
  Instance inst{{{1, 1, 1}, {2, 1, 1}}, {{0, 2}}};
  auto res = optimal_ordering_bruteforce(inst);
  EXPECT_EQ(res.eval.objective, 4);
  EXPECT_EQ(res.ordering.sequence, (std::vector<std::size_t>{0, 1}));
}

TEST(OrderingOracle, MatchesLocalPermutationSearch) {
  RandomSpec spec;
  spec.zero_p = false;
  spec.processing = {0, 5};
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    spec.seed = seed;
    spec.n = 1 + seed % 7;
    spec.q = 1 + seed % 4;
    auto inst = gen_random(spec);
    EXPECT_EQ(optimal_ordering_bruteforce(inst).eval.objective, ts::permutation_optimum(inst)) << "seed " << seed;
  }
}

TEST(OrderingOracle, AgreesWithDpForZeroProcessing) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = ts::random_zero_instance(seed, 1 + seed % 7, 1 + seed % 4);
    EXPECT_EQ(optimal_ordering_bruteforce(inst).eval.objective, optimal_assignment_dp(inst).objective);
  }
}

TEST(OrderingOracle, CapIsEnforced) {
  Limits small;
  small.perm_max_jobs = 3;
  auto inst = ts::random_zero_instance(1, 4, 2);
  EXPECT_THROW(optimal_ordering_bruteforce(inst, small), BudgetExceeded);
}

TEST(CoverBruteforce, Examples) {
  CoverProblem prob{{{1, 1}, {1, 1}, {4, 1}}, 2};
  auto sol = min_cover_bruteforce(prob);
  EXPECT_EQ(sol.chosen, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(sol.weight, 2);
  EXPECT_EQ(sol.coverage, 2);

  prob.demand = 0;
  sol = min_cover_bruteforce(prob);
  EXPECT_TRUE(sol.chosen.empty());
  EXPECT_EQ(sol.weight, 0);

  prob.demand = 3;
  EXPECT_EQ(min_cover_bruteforce(prob).chosen, (std::vector<std::size_t>{0, 1, 2}));

  prob.demand = 4;
  EXPECT_THROW(min_cover_bruteforce(prob), Infeasible);
}

TEST(CoverBruteforce, TieBreakIsLexicographic) {
  CoverProblem prob{{{2, 1}, {1, 1}, {1, 1}, {2, 2}}, 2};
  // weight-2 covers: {0? no}, {1,2}, {3}; lexicographically {1,2} < {3}
  EXPECT_EQ(min_cover_bruteforce(prob).chosen, (std::vector<std::size_t>{1, 2}));
}

TEST(CoverBruteforce, MonotoneInDemandAndMatchesReference) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto inst = ts::random_zero_instance(seed, 8, 1);
    std::vector<Int> w, a;
    for (const auto& j : inst.jobs) {
      w.push_back(j.w);
      a.push_back(j.a);
    }
    Int previous = 0;
    for (Int d = 0; d <= inst.total_requirement(); ++d) {
      auto sol = min_cover_bruteforce(cover_problem_for(inst.jobs, d));
      EXPECT_EQ(sol.weight, *ts::min_cover_reference(w, a, d));
      EXPECT_GE(sol.coverage, d);
      EXPECT_GE(sol.weight, previous);
      previous = sol.weight;
    }
  }
}

TEST(CoverBruteforce, BatchMatchesSingle) {
  auto inst = ts::random_zero_instance(9, 10, 1);
  std::vector<CoverItem> items;
  for (const auto& j : inst.jobs) items.push_back({j.w, j.a});
  std::vector<Int> demands{0, 3, 7, inst.total_requirement()};
  auto batch = min_cover_weights(items, demands);
  for (std::size_t i = 0; i < demands.size(); ++i)
    EXPECT_EQ(batch[i], min_cover_bruteforce({items, demands[i]}).weight);
}

TEST(CoverBruteforce, Cap) {
  CoverProblem prob;
  prob.items.assign(5, {1, 1});
  prob.demand = 1;
  EXPECT_THROW(min_cover_bruteforce(prob, 4), BudgetExceeded);
  prob.items[0].w = -1;
  EXPECT_THROW(min_cover_bruteforce(prob), InvalidInput);
}

#include <benchmark/benchmark.h>

#include <random>

#include "council/council_form.hpp"
#include "council/election.hpp"
#include "council/generators.hpp"
#include "council/shamir.hpp"

namespace {

void BM_ClusterForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto t = council::random_connected_unit_disk(static_cast<std::size_t>(state.range(0)),
                                                     1.0, rng, 0.6);
  for (auto _ : state) {
    const auto phase1 = council::run_phase1(t);
    benchmark::DoNotOptimize(council::cluster_form(t, phase1.dominating));
  }
}
BENCHMARK(BM_ClusterForm)->Arg(10)->Arg(50)->Arg(150);

void BM_SplitReconstruct(benchmark::State& state) {
  const council::PrimeField field;
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto policy = council::choose_threshold(n);
  std::vector<council::FieldElement> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(i);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto shares = council::split_secret(12345, policy, xs, field, ++seed);
    benchmark::DoNotOptimize(council::reconstruct(shares, policy.k, field));
  }
}
BENCHMARK(BM_SplitReconstruct)->Arg(3)->Arg(5)->Arg(16);

void BM_IssueShare(benchmark::State& state) {
  const council::PrimeField field;
  const std::vector<council::FieldElement> xs{1, 2, 3, 4, 5};
  const auto shares = council::split_secret(99, {5, 3}, xs, field, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(council::issue_share(std::span(shares).first(3), 9, 3, field));
  }
}
BENCHMARK(BM_IssueShare);

}  // namespace

BENCHMARK_MAIN();

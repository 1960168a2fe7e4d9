#include <benchmark/benchmark.h>

#include <kruglov/distribution.hpp>
#include <kruglov/gauge.hpp>
#include <kruglov/norms.hpp>
#include <kruglov/operators.hpp>
#include <kruglov/step_function.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace {

using namespace kruglov;

std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % n;
}

std::vector<Rat> random_vector(unsigned n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rat> a;
  a.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    a.emplace_back(static_cast<long>(uniform_u64(rng, 9)),
                   static_cast<long>(1 + uniform_u64(rng, 4)));
  }
  return a;
}

// Decreasing rearrangement of a seeded compound law, reused across the norm
// benchmarks so they measure evaluation, not construction.
const StepFunction& compound_quantile() {
  static const StepFunction q = [] {
    const std::vector<Rat> a = random_vector(6, 7);
    std::vector<Value> vals;
    for (const auto& e : a) vals.emplace_back(e);
    const DiscreteDistribution kd = kruglov_dist(law_of(from_vector(vals)));
    return quantile(collapse_tail_to_zero(kd));
  }();
  return q;
}

// --- permutation fixed-point law: DP vs factorial enumeration --------------

void BM_PermutationLawDP(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const std::vector<Rat> a = random_vector(n, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_n_dist(a));
  }
}
BENCHMARK(BM_PermutationLawDP)->DenseRange(4, 8)->Arg(64)->Arg(256);

void BM_PermutationLawBruteforce(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const std::vector<Rat> a = random_vector(n, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_n_bruteforce(a));
  }
}
BENCHMARK(BM_PermutationLawBruteforce)->DenseRange(4, 8);

void BM_AllOnesPermutationLaw(benchmark::State& state) {
  const std::vector<Rat> ones(static_cast<std::size_t>(state.range(0)),
                              Rat(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_n_dist(ones));
  }
}
BENCHMARK(BM_AllOnesPermutationLaw)->Arg(256)->Arg(1024)->Arg(2048)
    ->Unit(benchmark::kMillisecond);

// --- convolution and the compound-sum law -----------------------------------

void BM_LatticeConvolve(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const DiscreteDistribution mu = t_n_dist(random_vector(n, 13));
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve(mu, mu));
  }
}
BENCHMARK(BM_LatticeConvolve)->DenseRange(4, 7);

void BM_CompoundSumLaw(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  std::vector<Value> vals;
  for (const auto& e : random_vector(n, 17)) vals.emplace_back(e);
  const DiscreteDistribution mu = law_of(from_vector(vals));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kruglov_dist(mu));
  }
  state.SetLabel("tail_tol=1e-12");
}
BENCHMARK(BM_CompoundSumLaw)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_CompoundIterates(benchmark::State& state) {
  const auto depth = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kruglov_iterates(depth));
  }
}
BENCHMARK(BM_CompoundIterates)->DenseRange(1, 4)
    ->Unit(benchmark::kMillisecond);

// --- norm evaluators --------------------------------------------------------

void BM_NormL1(benchmark::State& state) {
  const StepFunction& q = compound_quantile();
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_l1(q));
  }
}
BENCHMARK(BM_NormL1);

void BM_NormLorentz(benchmark::State& state) {
  const StepFunction& q = compound_quantile();
  const ConcaveGauge root = ConcaveGauge::power(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_lorentz(q, root));
  }
}
BENCHMARK(BM_NormLorentz);

void BM_NormMarcinkiewicz(benchmark::State& state) {
  const StepFunction& q = compound_quantile();
  const ConcaveGauge root = ConcaveGauge::power(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_marcinkiewicz(q, root));
  }
}
BENCHMARK(BM_NormMarcinkiewicz);

void BM_NormOrlicz(benchmark::State& state) {
  const StepFunction& q = compound_quantile();
  const OrliczYoungFunction young(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(norm_orlicz(q, young));
  }
}
BENCHMARK(BM_NormOrlicz);

// --- submajorization sweep ---------------------------------------------------

void BM_SubmajorizationMargin(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const StepFunction x = quantile(t_n_dist(std::vector<Rat>(n, Rat(1))));
  const StepFunction y = scale_function(x, Value(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(submajorization_margin(y, x));
  }
}
BENCHMARK(BM_SubmajorizationMargin)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();

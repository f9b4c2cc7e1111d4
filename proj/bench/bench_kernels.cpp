// Serial against OpenMP for the three universe-wide kernels.
// Argument: number of concept names ; with two roles counted up to 2 the universe has 81 · 2^n types.

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>

#include "paralite/generator.hpp"
#include "paralite/kernels.hpp"

using namespace paralite;

namespace {

struct Setup {
  std::shared_ptr<const TypeUniverse> u;
  std::vector<CompiledConcept> concepts;
  TypeSet sparse;
  TypeGroup group;

  explicit Setup(std::size_t n_concepts) {
    GeneratorProfile p;
    p.n_concepts = n_concepts;
    p.n_roles = 2;
    p.max_card = 2;
    p.max_depth = 3;
    Generator gen(p);
    Signature sig;
    for (const auto& c : gen.concept_names()) sig.concepts.insert(c);
    for (const auto& r : gen.role_names()) sig.roles.insert(r);
    sig.numbers = {1, 2};
    u = TypeUniverse::build(sig);
    for (int i = 0; i < 16; ++i) concepts.emplace_back(*u, gen.random_concept());
    std::bernoulli_distribution pick(0.01);
    std::vector<Type> few;
    for (const auto& t : u->types())
      if (pick(gen.rng())) few.push_back(t);
    sparse = TypeSet(std::move(few));
    for (std::size_t i = 0; i < 4; ++i) group.push_back(filter_types(*u, concepts[i]));
  }
};

const Setup& setup(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<Setup>> cache;
  auto& s = cache[n];
  if (!s) s = std::make_unique<Setup>(n);
  return *s;
}

template <bool Parallel>
void filter(benchmark::State& state) {
  const auto& s = setup(state.range(0));
  for (auto _ : state) {
    for (const auto& c : s.concepts)
      benchmark::DoNotOptimize(Parallel ? filter_types(*s.u, c) : filter_types_serial(*s.u, c));
  }
  state.counters["types"] = static_cast<double>(s.u->size());
}

template <bool Parallel>
void distance(benchmark::State& state) {
  const auto& s = setup(state.range(0));
  const DistanceFn d(DistanceKind::kHamming, *s.u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? distance_column(*s.u, d, s.sparse)
                                      : distance_column_serial(*s.u, d, s.sparse));
  }
}

template <bool Parallel>
void lambda(benchmark::State& state) {
  const auto& s = setup(state.range(0));
  const DistanceFn d(DistanceKind::kHamming, *s.u);
  const auto f = Aggregator::sum();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? lambda_column(*s.u, d, f, s.group, s.u->all())
                                      : lambda_column_serial(*s.u, d, f, s.group, s.u->all()));
  }
}

}  // namespace

BENCHMARK(filter<false>)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(filter<true>)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(distance<false>)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(distance<true>)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(lambda<false>)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(lambda<true>)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

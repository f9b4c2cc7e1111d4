#include <doctest.h>

#include "support.hpp"

using namespace paralite;
using namespace paralite::test;

namespace {

using V = DistanceValue;

V agg(const Aggregator& f, std::initializer_list<V> xs) {
  const std::vector<V> v(xs);
  return aggregate(f, v);
}

}  // namespace

TEST_CASE("type distances") {
  const auto kb = load_kb("missing_predecessor.dlkb");
  const auto u = TypeUniverse::build(signature_of(kb));
  const DistanceFn h(DistanceKind::kHamming, *u), d(DistanceKind::kDrastic, *u);
  const Type t1 = type_of(*u, {"exists P-"});
  const Type t3 = type_of(*u, {"A", "exists P", "exists P-"});
  CHECK(type_distance(h, t1, t3) == V(2));
  CHECK(type_distance(d, t1, t3) == V(1));
  for (const auto& t : u->types()) {
    CHECK(type_distance(h, t, t) == V(0));
    CHECK(type_distance(d, t, t) == V(0));
  }
  CHECK(type_distance(d, type_of(*u, {}), type_of(*u, {"A"})) == V(1));
  CHECK(h.top_value() == V(4));
  CHECK(d.top_value() == V(2));

  Signature wide;
  wide.concepts = {"A", "B", "C", "D", "E"};
  const auto w = TypeUniverse::build(wide);
  CHECK_THROWS_AS(type_distance(h, w->types().back(), t1), UniverseMismatch);
}

TEST_CASE("distance to a type set") {
  const auto kb = load_kb("penguin.dlkb");
  const auto u = TypeUniverse::build(signature_of(kb));
  const DistanceFn h(DistanceKind::kHamming, *u), d(DistanceKind::kDrastic, *u);
  const auto penguins = types_of(*u, parse_concept("Penguin"));
  CHECK(set_distance(h, type_of(*u, {}), penguins) == V(1));
  for (const auto& t : penguins) CHECK(set_distance(h, t, penguins) == V(0));
  CHECK(set_distance(h, type_of(*u, {}), TypeSet{}) == h.top_value());
  CHECK(set_distance(d, type_of(*u, {}), TypeSet{}) == V(2));
  CHECK(h.top_value() == V(static_cast<std::int64_t>(u->index().size())));
}

TEST_CASE("the empty-set distance exceeds every attainable distance") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto u = TypeUniverse::build(random_signature(rng, 3, 2, 2));
    for (auto kind : {DistanceKind::kHamming, DistanceKind::kDrastic}) {
      const DistanceFn d(kind, *u);
      std::uint32_t worst = 0;
      for (const auto& a : u->types()) {
        for (const auto& b : u->types()) worst = std::max(worst, d.raw(a, b));
      }
      CHECK(worst < d.top());
    }
  }
}

TEST_CASE("aggregation examples") {
  CHECK(agg(Aggregator::sum(), {V(1), V(0)}) == V(1));
  CHECK(agg(Aggregator::vote(V(1, 2)), {V(0), V(0), V(1)}) == V(1, 2));
  CHECK(agg(Aggregator::vote(V(1, 2)), {V(0), V(1), V(1)}) == V(1));
  CHECK(agg(Aggregator::vote(V(1, 4)), {V(0), V(1), V(1)}) == V(1, 2));
  CHECK(agg(Aggregator::vote(V(1, 2)), {V(0), V(0)}) == V(0));
  CHECK(agg(Aggregator::max(), {}) == V(0));
  CHECK(agg(Aggregator::sum(), {}) == V(0));
  CHECK(agg(Aggregator::vote(V(3, 4)), {}) == V(0));
  CHECK(agg(Aggregator::max(), {V(2), V(5), V(1)}) == V(5));
}

TEST_CASE("aggregators parse and name themselves") {
  CHECK(parse_aggregator("sum") == Aggregator::sum());
  CHECK(parse_aggregator("max") == Aggregator::max());
  CHECK(parse_aggregator("vote") == Aggregator::vote(V(1, 2)));
  CHECK(parse_aggregator("vote:3/4").kappa() == V(3, 4));
  CHECK(parse_aggregator("vote:0.25").kappa() == V(1, 4));
  CHECK(parse_aggregator("vote:2/6").name() == "vote:1/3");
  CHECK_THROWS_AS(parse_aggregator("vote:1"), Error);
  CHECK_THROWS_AS(parse_aggregator("vote:0"), Error);
  CHECK_THROWS_AS(parse_aggregator("vote:3/2"), Error);
  CHECK_THROWS_AS(parse_aggregator("vote:1/0"), Error);
  CHECK_THROWS_AS(parse_aggregator("median"), Error);
  CHECK_THROWS_AS(parse_rational("1/x"), Error);
  CHECK(parse_distance_kind("drastic") == DistanceKind::kDrastic);
  CHECK_THROWS_AS(parse_distance_kind("euclid"), Error);
}

TEST_CASE("pseudo-distance axioms on random type pairs") {
  std::mt19937_64 rng(17);
  int samples = 0;
  while (samples < 20000) {
    const auto u = TypeUniverse::build(random_signature(rng, 4, 2, 3));
    for (auto kind : {DistanceKind::kHamming, DistanceKind::kDrastic}) {
      const DistanceFn d(kind, *u);
      for (int i = 0; i < 100; ++i, ++samples) {
        const Type& a = random_type(*u, rng);
        const Type& b = random_type(*u, rng);
        const Type& c = random_type(*u, rng);
        CHECK((type_distance(d, a, b) == V(0)) == (a == b));
        CHECK(type_distance(d, a, b) == type_distance(d, b, a));
        CHECK(type_distance(d, a, c) <= type_distance(d, a, b) + type_distance(d, b, c));
        CHECK(d.raw(a, b) == ref::distance(u->index(), kind, a, b));
      }
    }
  }
}

TEST_CASE("aggregation axioms on random multisets") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10000; ++i) {
    const Aggregator f = random_aggregator(rng);
    auto xs = random_values(rng, 7, 6, i % 2 == 0);
    CAPTURE(f.name());
    CHECK(aggregate(f, xs) == ref::aggregate(f, xs));
    CHECK(aggregate(f, xs) >= V(0));
    const bool all_zero = std::all_of(xs.begin(), xs.end(), [](const V& x) { return x == V(0); });
    CHECK((aggregate(f, xs) == V(0)) == all_zero);
    if (!xs.empty()) {
      auto raised = xs;
      std::uniform_int_distribution<std::size_t> at(0, xs.size() - 1);
      raised[at(rng)] += V(std::uniform_int_distribution<int>(0, 3)(rng), 2);
      CHECK(aggregate(f, xs) <= aggregate(f, raised));
    }
    // Permutation invariance: these are multiset functions.
    std::shuffle(xs.begin(), xs.end(), rng);
    CHECK(aggregate(f, xs) == ref::aggregate(f, xs));
  }
}

TEST_CASE("singleton identity holds for sum and max, and for vote only on 0 and 1") {
  for (std::int64_t n = 0; n <= 12; ++n) {
    const V x(n, 2);
    CHECK(agg(Aggregator::sum(), {x}) == x);
    CHECK(agg(Aggregator::max(), {x}) == x);
  }
  for (auto kappa : {V(1, 4), V(1, 2), V(3, 4)}) {
    const auto f = Aggregator::vote(kappa);
    CHECK(agg(f, {V(0)}) == V(0));
    CHECK(agg(f, {V(1)}) == V(1));
    // The voting function only ever returns 0, 1/2 or 1.
    CHECK(agg(f, {V(2)}) == V(1));
    CHECK(agg(f, {V(1, 2)}) == V(1));
  }
}

TEST_CASE("hereditary and monotonic flags") {
  CHECK(Aggregator::sum().hereditary());
  CHECK_FALSE(Aggregator::max().hereditary());
  CHECK_FALSE(Aggregator::vote(V(1, 2)).hereditary());

  // Max loses a strict inequality once a larger common value is appended.
  CHECK(agg(Aggregator::max(), {V(1)}) < agg(Aggregator::max(), {V(2)}));
  CHECK(agg(Aggregator::max(), {V(1), V(3)}) == agg(Aggregator::max(), {V(2), V(3)}));
  // Vote too: {0,1} < {1,1} at κ = 1/2, but appending two ones leaves the
  // zero count below the quorum on both sides.
  const auto v = Aggregator::vote(V(1, 2));
  CHECK(agg(v, {V(0), V(1)}) < agg(v, {V(1), V(1)}));
  CHECK(agg(v, {V(0), V(1), V(1), V(1)}) == agg(v, {V(1), V(1), V(1), V(1)}));

  // Sum keeps strict inequalities under any common extension.
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5000; ++i) {
    const auto xs = random_values(rng, 4, 5);
    auto ys = random_values(rng, 4, 5);
    ys.resize(xs.size(), V(0));
    const auto zs = random_values(rng, 4, 5);
    if (!(aggregate(Aggregator::sum(), xs) < aggregate(Aggregator::sum(), ys))) continue;
    auto xz = xs, yz = ys;
    xz.insert(xz.end(), zs.begin(), zs.end());
    yz.insert(yz.end(), zs.begin(), zs.end());
    CHECK(aggregate(Aggregator::sum(), xz) < aggregate(Aggregator::sum(), yz));
  }
}

TEST_CASE("lambda") {
  const auto kb = load_kb("missing_predecessor.dlkb");
  const auto u = TypeUniverse::build(signature_of(kb));
  const DistanceFn h(DistanceKind::kHamming, *u);
  const auto pi = model_type_group(*u, kb.tbox());
  CHECK(lambda(h, Aggregator::sum(), type_of(*u, {"exists P-"}), pi) == V(3));
  CHECK(lambda(h, Aggregator::sum(), type_of(*u, {"A", "exists P-"}), pi) == V(2));
  CHECK(lambda(h, Aggregator::sum(), type_of(*u, {"A", "exists P", "exists P-"}), pi) == V(1));
  CHECK(lambda(h, Aggregator::sum(), type_of(*u, {"A", "exists P"}), pi) == V(0));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const auto g = random_group(*u, rng, 4);
    const auto f = random_aggregator(rng);
    const auto kind = i % 2 ? DistanceKind::kHamming : DistanceKind::kDrastic;
    const DistanceFn d(kind, *u);
    if (!g.empty()) {
      for (const auto& t : intersect_all(*u, g)) CHECK(lambda(d, f, t, g) == V(0));
    }
    const Type& t = random_type(*u, rng);
    ref::Group rg;
    for (const auto& xi : g) rg.push_back(xi.types());
    CHECK(lambda(d, f, t, g) == ref::lambda(u->index(), kind, f, t, rg));
  }
}

TEST_CASE("Hamming is unbiased under the symbol reading") {
  // d(τ, T(C)) depends only on τ's restriction to the basic concepts over
  // C's concept and role names.
  std::mt19937_64 rng(31);
  GeneratorProfile p;
  p.n_concepts = 4;
  p.n_roles = 2;
  p.max_card = 2;
  p.max_depth = 2;
  Generator gen(p);
  Signature sig;
  for (const auto& c : gen.concept_names()) sig.concepts.insert(c);
  for (const auto& r : gen.role_names()) sig.roles.insert(r);
  sig.numbers = {1, 2};
  const auto u = TypeUniverse::build(sig);
  const DistanceFn h(DistanceKind::kHamming, *u);
  const auto& ix = u->index();
  for (int i = 0; i < 300; ++i) {
    const Concept c = gen.random_concept();
    const auto symbols = symbol_names(signature_of(c));
    const auto target = types_of(*u, c);
    auto relevant = [&](std::size_t bit) {
      const auto& b = ix.at(bit);
      if (b.kind == BasicConcept::Kind::kName) return symbols.count(b.name) > 0;
      if (b.kind == BasicConcept::Kind::kAtLeast) return symbols.count(b.role.name) > 0;
      return true;
    };
    for (int j = 0; j < 3; ++j) {
      const Type& a = random_type(*u, rng);
      for (const Type& b : u->types()) {
      bool agree = true;
      for (std::size_t bit = 0; bit < ix.size(); ++bit) {
        if (relevant(bit) && a.has(bit) != b.has(bit)) agree = false;
      }
      if (agree) CHECK(set_distance(h, a, target) == set_distance(h, b, target));
      }
    }
  }
}

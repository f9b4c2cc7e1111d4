#pragma once

// Shared fixtures for the test binaries: data files, random inputs and a
// brute-force reference implementation written straight from the
// definitions (power-set universes, literal λ and μ, exhaustive features).
// It shares nothing with the library beyond the data types, so agreement
// between the two is evidence rather than tautology.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "paralite/error.hpp"
#include "paralite/features.hpp"
#include "paralite/generator.hpp"

namespace paralite::test {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(PARALITE_DATA_DIR) + "/" + name);
  if (!in) throw Error("missing test data " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline KnowledgeBase load_kb(const std::string& name) { return parse_kb(read_data(name)); }

inline Type type_of(const TypeUniverse& u, std::initializer_list<const char*> members) {
  std::vector<Concept> cs;
  for (const char* m : members) cs.push_back(parse_concept(m));
  return u.type_from(cs);
}

inline TypeSet set_of(const TypeUniverse& u, std::initializer_list<std::initializer_list<const char*>> types) {
  TypeSet out;
  for (const auto& t : types) out.insert(type_of(u, t));
  return out;
}

// Inputs the parser must reject with a line and column.
inline std::vector<std::string> malformed_fixtures() {
  return {"tbox: A [=",        "tbox: A B",           "abox: A(a",           "abox: P(a,)",
          "A [= B",            "tbox: A [= B [= C",   "tbox:\n  A & [= B",  "tbox: A [= B $",
          "abox: exists (a)",  "tbox: >= P [= A",     "abox: (A(a)",         "abox: A()",
          "tbox: A [= B)",     "abox: Top(Top)",      "tbox: >= 1234567890123 P [= A",
          "tbox: >= 0 P [= A", "tbox: A [= <= 0 P-",  "tbox: A [= B\nabox: A(a, b)",
          "abox: A(a)\nP(b, A)", "abox: A & B(a, b)", "tbox: exists a [= A\nabox: A(a)",
          "abox: P(a, b, c)",  "tbox: A [= !",        "tbox: (A [= B",       "abox: A(a) B(b)",
          "tbox: A [= B\n\x01", "abox: P--(a, b)",  "box: A(a)",           "tbox: A [= exists"};
}

// {{{ Random inputs

inline Signature random_signature(std::mt19937_64& rng, std::size_t max_concepts, std::size_t max_roles,
                                  Number max_number) {
  std::uniform_int_distribution<std::size_t> nc(0, max_concepts), nr(0, max_roles);
  std::uniform_int_distribution<Number> nn(1, max_number);
  Signature sig;
  const auto c = nc(rng), r = nr(rng);
  for (std::size_t i = 0; i < c; ++i) sig.concepts.insert(concept_name(i));
  for (std::size_t i = 0; i < r; ++i) sig.roles.insert(role_name(i));
  if (r > 0) {
    const Number top = nn(rng);
    for (Number n = 1; n <= top; ++n) {
      if (n == 1 || std::bernoulli_distribution(0.6)(rng)) sig.numbers.insert(n);
    }
  }
  return sig;
}

inline const Type& random_type(const TypeUniverse& u, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
  return u.types()[pick(rng)];
}

inline TypeSet random_type_set(const TypeUniverse& u, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution keep(density);
  std::vector<Type> out;
  for (const auto& t : u.types()) {
    if (keep(rng)) out.push_back(t);
  }
  return TypeSet(std::move(out));
}

inline TypeGroup random_group(const TypeUniverse& u, std::mt19937_64& rng, std::size_t max_members) {
  std::uniform_int_distribution<std::size_t> n(0, max_members);
  std::uniform_real_distribution<double> density(0.0, 0.8);
  TypeGroup g;
  const auto k = n(rng);
  for (std::size_t i = 0; i < k; ++i) g.push_back(random_type_set(u, rng, density(rng)));
  return g;
}

inline std::vector<DistanceValue> random_values(std::mt19937_64& rng, std::size_t max_len, std::int64_t max_value,
                                                bool halves = false) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::int64_t> val(0, max_value);
  std::bernoulli_distribution zero(0.3);
  std::vector<DistanceValue> out(len(rng));
  for (auto& v : out) v = zero(rng) ? DistanceValue(0) : DistanceValue(val(rng), halves ? 2 : 1);
  return out;
}

inline Aggregator random_aggregator(std::mt19937_64& rng) {
  static const std::vector<DistanceValue> kappas{DistanceValue(1, 4), DistanceValue(1, 3), DistanceValue(1, 2),
                                                 DistanceValue(2, 3), DistanceValue(3, 4)};
  std::uniform_int_distribution<std::size_t> pick(0, 1 + kappas.size());
  const auto i = pick(rng);
  if (i == 0) return Aggregator::sum();
  if (i == 1) return Aggregator::max();
  return Aggregator::vote(kappas[i - 2]);
}

// KBs inside the small envelope the property suites use: at most three
// concept names, one role, two individuals and cardinalities up to two.
inline GeneratorProfile small_profile(std::uint64_t seed, double bias = 0.0) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 17);
  GeneratorProfile p;
  p.seed = seed;
  p.n_concepts = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  p.n_roles = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
  p.n_individuals = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
  p.max_card = 2;
  p.n_inclusions = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  p.n_assertions = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  p.max_depth = 2;
  p.inconsistency_bias = DistanceValue(static_cast<std::int64_t>(bias * 100), 100);
  return p;
}

// }}}

// {{{ Reference implementation

namespace ref {

// Every ⊤-containing, downward-closed subset of B_Σ, by power set and filter.
inline std::vector<Type> universe(const BasicConceptIndex& ix) {
  const std::size_t n = ix.size();
  if (n > 22) throw Error("reference universe too wide");
  std::vector<Type> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!(mask & 1u)) continue;
    Type t;
    for (std::size_t b = 0; b < n; ++b) {
      if ((mask >> b) & 1u) t.set(b);
    }
    bool closed = true;
    for (std::size_t k = 0; closed && k < ix.direction_count(); ++k) {
      for (std::size_t j = 1; closed && j < ix.number_count(); ++j) {
        if (t.has(ix.direction_bit(k, j)) && !t.has(ix.direction_bit(k, j - 1))) closed = false;
      }
    }
    if (closed) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool holds(const BasicConceptIndex& ix, const Type& t, const Concept& c) {
  using K = Concept::Kind;
  auto at_least = [&](Number n, const Role& r) {
    auto pos = ix.at_least_position(r, n);
    if (!pos) throw UnknownSymbol("reference: no basic concept >= " + std::to_string(n) + " " + to_string(r));
    return t.has(*pos);
  };
  switch (c.kind()) {
    case K::kTop:
      return true;
    case K::kBot:
      return false;
    case K::kName: {
      auto pos = ix.name_position(c.name());
      if (!pos) throw UnknownSymbol("reference: unknown concept " + c.name());
      return t.has(*pos);
    }
    case K::kAtLeast:
      return at_least(c.number(), c.role());
    case K::kExists:
      return at_least(1, c.role());
    case K::kAtMost:
      return !at_least(c.number() + 1, c.role());
    case K::kNot:
      return !holds(ix, t, c.lhs());
    case K::kAnd:
      return holds(ix, t, c.lhs()) && holds(ix, t, c.rhs());
    case K::kOr:
      return holds(ix, t, c.lhs()) || holds(ix, t, c.rhs());
  }
  return false;
}

inline bool holds(const BasicConceptIndex& ix, const Type& t, const Inclusion& inc) {
  return !holds(ix, t, inc.lhs) || holds(ix, t, inc.rhs);
}

inline std::vector<Type> filter(const BasicConceptIndex& ix, const std::vector<Type>& types, const Concept& c) {
  std::vector<Type> out;
  for (const auto& t : types) {
    if (holds(ix, t, c)) out.push_back(t);
  }
  return out;
}

inline std::uint32_t distance(const BasicConceptIndex& ix, DistanceKind kind, const Type& a, const Type& b) {
  std::uint32_t diff = 0;
  for (std::size_t i = 0; i < ix.size(); ++i) diff += a.has(i) != b.has(i);
  if (kind == DistanceKind::kDrastic) return diff == 0 ? 0 : 1;
  return diff;
}

inline std::uint32_t top(const BasicConceptIndex& ix, DistanceKind kind) {
  return kind == DistanceKind::kHamming ? static_cast<std::uint32_t>(ix.size()) : 2;
}

inline DistanceValue set_distance(const BasicConceptIndex& ix, DistanceKind kind, const Type& t,
                                  const std::vector<Type>& xi) {
  std::uint32_t best = top(ix, kind);
  for (const auto& o : xi) best = std::min(best, distance(ix, kind, t, o));
  return DistanceValue(best);
}

inline DistanceValue aggregate(const Aggregator& f, const std::vector<DistanceValue>& xs) {
  switch (f.kind()) {
    case Aggregator::Kind::kSum: {
      DistanceValue s(0);
      for (const auto& x : xs) s += x;
      return s;
    }
    case Aggregator::Kind::kMax: {
      DistanceValue m(0);
      for (const auto& x : xs) {
        if (x > m) m = x;
      }
      return m;
    }
    case Aggregator::Kind::kVote: {
      std::int64_t zeros = 0;
      for (const auto& x : xs) zeros += x == DistanceValue(0);
      const auto n = static_cast<std::int64_t>(xs.size());
      if (zeros == n) return DistanceValue(0);
      const DistanceValue kn = f.kappa() * DistanceValue(n);
      std::int64_t quorum = kn.numerator() / kn.denominator();
      if (DistanceValue(quorum) < kn) ++quorum;
      if (quorum <= zeros && zeros < n) return DistanceValue(1, 2);
      return DistanceValue(1);
    }
  }
  return DistanceValue(0);
}

using Group = std::vector<std::vector<Type>>;

inline DistanceValue lambda(const BasicConceptIndex& ix, DistanceKind kind, const Aggregator& f, const Type& t,
                            const Group& pi) {
  std::vector<DistanceValue> xs;
  for (const auto& xi : pi) xs.push_back(set_distance(ix, kind, t, xi));
  return aggregate(f, xs);
}

inline std::vector<Type> minimal(const BasicConceptIndex& ix, DistanceKind kind, const Aggregator& f,
                                 const Group& pi, const std::vector<Type>& pool) {
  std::vector<Type> out;
  DistanceValue best(-1);
  for (const auto& t : pool) {
    const auto v = lambda(ix, kind, f, t, pi);
    if (out.empty() || v < best) {
      out = {t};
      best = v;
    } else if (v == best) {
      out.push_back(t);
    }
  }
  return out;
}

inline bool carries(const BasicConceptIndex& ix, const std::vector<Type>& xi, std::size_t k) {
  return std::any_of(xi.begin(), xi.end(), [&](const Type& t) { return t.has(ix.exists_bit(k)); });
}

inline bool coherent(const BasicConceptIndex& ix, const std::vector<Type>& xi) {
  for (std::size_t k = 0; k < ix.direction_count(); ++k) {
    if (carries(ix, xi, k) != carries(ix, xi, k ^ 1u)) return false;
  }
  return true;
}

// μ exactly as defined: for each direction R with ∃R in ∪Ξ but not ∃R⁻,
// every pool type with ∃R⁻ whose λ is least among pool types with ∃R⁻.
inline std::vector<Type> mu(const BasicConceptIndex& ix, DistanceKind kind, const Aggregator& f, const Group& pi,
                            const std::vector<Type>& pool, const std::vector<Type>& xi) {
  std::set<Type> out(xi.begin(), xi.end());
  for (std::size_t k = 0; k < ix.direction_count(); ++k) {
    if (!carries(ix, xi, k) || carries(ix, xi, k ^ 1u)) continue;
    std::vector<Type> with;
    for (const auto& t : pool) {
      if (t.has(ix.exists_bit(k ^ 1u))) with.push_back(t);
    }
    if (with.empty()) throw RepairImpossible("reference: no repair candidate");
    for (const auto& t : minimal(ix, kind, f, pi, with)) out.insert(t);
  }
  return {out.begin(), out.end()};
}

inline std::vector<Type> mu_fixpoint(const BasicConceptIndex& ix, DistanceKind kind, const Aggregator& f,
                                     const Group& pi, const std::vector<Type>& pool, std::vector<Type> xi) {
  for (;;) {
    auto next = mu(ix, kind, f, pi, pool, xi);
    if (next == xi) return xi;
    xi = std::move(next);
  }
}

// Largest role-coherent subset: a union of coherent sets is coherent, so
// it is the union of every coherent subset. Found by dropping types that
// carry an unmatched ∃R until nothing changes.
inline std::vector<Type> coherent_core(const BasicConceptIndex& ix, std::vector<Type> xi) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < ix.direction_count(); ++k) {
      if (carries(ix, xi, k) && !carries(ix, xi, k ^ 1u)) {
        std::erase_if(xi, [&](const Type& t) { return t.has(ix.exists_bit(k)); });
        changed = true;
      }
    }
  }
  return xi;
}

struct Config {
  DistanceKind kind = DistanceKind::kHamming;
  Aggregator f = Aggregator::sum();
  ClosureMode closure = ClosureMode::kRealizable;
};

inline Group tbox_group(const BasicConceptIndex& ix, const std::vector<Type>& all, const KnowledgeBase& kb) {
  Group g;
  for (const auto& inc : kb.tbox()) {
    std::vector<Type> sat;
    for (const auto& t : all) {
      if (holds(ix, t, inc)) sat.push_back(t);
    }
    g.push_back(sat);
  }
  return g;
}

inline std::vector<Type> tbox_types(const BasicConceptIndex& ix, const std::vector<Type>& all, const Config& cfg,
                                    const Group& pi) {
  auto lam = minimal(ix, cfg.kind, cfg.f, pi, all);
  if (cfg.closure == ClosureMode::kRealizable && lambda(ix, cfg.kind, cfg.f, lam.front(), pi) == DistanceValue(0)) {
    auto core = coherent_core(ix, lam);
    if (!core.empty()) return core;
  }
  return mu_fixpoint(ix, cfg.kind, cfg.f, pi, all, lam);
}

struct Feature {
  std::vector<Type> xi;
  std::map<std::string, Type> types;
  std::set<RoleAssertion> kept;
};

// Calls visit on every ⟨Ξ, H⟩ with Ξ ⊆ pool (a superset of types(H),
// role-coherent), H's individual types drawn from candidates and kept role
// assertions from `roles`, subject to the Herbrand conditions and keep_ok.
inline void for_each_feature(const BasicConceptIndex& ix, const std::vector<Type>& pool,
                             const std::vector<std::string>& names,
                             const std::vector<std::vector<Type>>& candidates,
                             const std::vector<RoleAssertion>& roles,
                             const std::function<bool(const std::map<std::string, Type>&,
                                                      const std::set<RoleAssertion>&)>& keep_ok,
                             const std::function<void(const Feature&)>& visit) {
  if (pool.size() > 16 || roles.size() > 8) throw Error("reference feature space too large");
  std::vector<std::size_t> choice(names.size(), 0);
  for (const auto& c : candidates) {
    if (c.empty()) return;
  }
  for (;;) {
    std::map<std::string, Type> types;
    for (std::size_t i = 0; i < names.size(); ++i) types[names[i]] = candidates[i][choice[i]];
    for (std::uint32_t m = 0; m < (1u << roles.size()); ++m) {
      std::set<RoleAssertion> kept;
      for (std::size_t e = 0; e < roles.size(); ++e) {
        if ((m >> e) & 1u) kept.insert(roles[e]);
      }
      // Herbrand conditions: n kept P-successors put ≥ m P in τ(a) for m ≤ n.
      bool ok = true;
      for (const auto& [a, t] : types) {
        for (std::size_t k = 0; ok && k < ix.direction_count(); ++k) {
          const Role& r = ix.direction(k);
          std::size_t n = 0;
          for (const auto& e : kept) {
            if (e.role == r.name && (r.inverted ? e.object : e.subject) == a) ++n;
          }
          for (Number num : ix.numbers()) {
            if (num <= n && !t.has(*ix.at_least_position(r, num))) ok = false;
          }
        }
      }
      if (!ok || !keep_ok(types, kept)) continue;
      std::set<Type> fixed;
      for (const auto& [a, t] : types) fixed.insert(t);
      if (!std::all_of(fixed.begin(), fixed.end(),
                       [&](const Type& t) { return std::find(pool.begin(), pool.end(), t) != pool.end(); }))
        continue;
      std::vector<Type> free;
      for (const auto& t : pool) {
        if (!fixed.count(t)) free.push_back(t);
      }
      for (std::uint32_t s = 0; s < (1u << free.size()); ++s) {
        Feature f;
        f.xi.assign(fixed.begin(), fixed.end());
        for (std::size_t j = 0; j < free.size(); ++j) {
          if ((s >> j) & 1u) f.xi.push_back(free[j]);
        }
        std::sort(f.xi.begin(), f.xi.end());
        if (f.xi.empty() || !coherent(ix, f.xi)) continue;
        f.types = types;
        f.kept = kept;
        visit(f);
      }
    }
    std::size_t i = 0;
    while (i < names.size() && ++choice[i] == candidates[i].size()) choice[i++] = 0;
    if (i == names.size()) break;
  }
}

inline bool satisfies(const BasicConceptIndex& ix, const Feature& f, const Axiom& ax) {
  if (const auto* inc = std::get_if<Inclusion>(&ax))
    return std::all_of(f.xi.begin(), f.xi.end(), [&](const Type& t) { return holds(ix, t, *inc); });
  if (const auto* ca = std::get_if<ConceptAssertion>(&ax)) return holds(ix, f.types.at(ca->individual), ca->what);
  return f.kept.count(std::get<RoleAssertion>(ax)) > 0;
}

// A knowledge base worked out over one signature by brute force.
class Oracle {
 public:
  Oracle(const KnowledgeBase& kb, const Signature& sig) : kb_(kb), sig_(sig), ix_(sig), all_(universe(ix_)) {
    names_.assign(sig.individuals.begin(), sig.individuals.end());
    for (const auto& as : kb.abox()) {
      if (const auto* ra = std::get_if<RoleAssertion>(&as)) asserted_roles_.insert(*ra);
    }
  }

  const BasicConceptIndex& index() const { return ix_; }
  const std::vector<Type>& all() const { return all_; }

  // Classical model features; kept roles range over every pair of
  // individuals, not just the asserted ones.
  void for_each_model(const std::function<void(const Feature&)>& visit) const {
    std::vector<Type> model_types;
    for (const auto& t : all_) {
      if (std::all_of(kb_.tbox().begin(), kb_.tbox().end(), [&](const Inclusion& i) { return holds(ix_, t, i); }))
        model_types.push_back(t);
    }
    const auto pool = coherent_core(ix_, model_types);
    std::vector<std::vector<Type>> candidates;
    for (const auto& a : names_) {
      std::vector<Type> ok;
      for (const auto& t : pool) {
        bool all = true;
        for (const auto& as : kb_.abox()) {
          const auto* ca = std::get_if<ConceptAssertion>(&as);
          if (ca && ca->individual == a && !holds(ix_, t, ca->what)) all = false;
        }
        if (all) ok.push_back(t);
      }
      candidates.push_back(ok);
    }
    std::vector<RoleAssertion> pairs;
    for (const auto& r : sig_.roles) {
      for (const auto& a : names_) {
        for (const auto& b : names_) pairs.push_back(RoleAssertion{r, a, b});
      }
    }
    auto all_asserted = [&](const std::map<std::string, Type>&, const std::set<RoleAssertion>& kept) {
      return std::includes(kept.begin(), kept.end(), asserted_roles_.begin(), asserted_roles_.end());
    };
    for_each_feature(ix_, pool, names_, candidates, pairs, all_asserted, visit);
  }

  // Minimal model features under cfg, read directly off the definition.
  void for_each_minimal(const Config& cfg, const std::function<void(const Feature&)>& visit) const {
    const auto pool = tbox_types(ix_, all_, cfg, tbox_group(ix_, all_, kb_));
    std::vector<std::vector<Type>> candidates;
    for (const auto& a : names_) {
      const auto g = profile_group(a);
      auto lam = minimal(ix_, cfg.kind, cfg.f, g, pool);
      if (cfg.closure == ClosureMode::kExtend) lam = mu_fixpoint(ix_, cfg.kind, cfg.f, g, pool, lam);
      candidates.push_back(lam);
    }
    const std::vector<RoleAssertion> roles(asserted_roles_.begin(), asserted_roles_.end());
    auto justified = [&](const std::map<std::string, Type>& types, const std::set<RoleAssertion>& kept) {
      for (const auto& e : roles) {
        if (kept.count(e)) continue;
        std::size_t out_a = 0, in_b = 0;
        for (const auto& k : kept) {
          if (k.role != e.role) continue;
          out_a += k.subject == e.subject;
          in_b += k.object == e.object;
        }
        auto lacks = [&](const std::string& who, bool inverted, std::size_t n) {
          auto pos = ix_.at_least_position(Role{e.role, inverted}, static_cast<Number>(n + 1));
          return !pos || !types.at(who).has(*pos);
        };
        if (!lacks(e.subject, false, out_a) && !lacks(e.object, true, in_b)) return false;
      }
      return true;
    };
    for_each_feature(ix_, pool, names_, candidates, roles, justified, visit);
  }

  bool consistent() const {
    bool any = false;
    for_each_model([&](const Feature&) { any = true; });
    return any;
  }

  bool classically_entails(const Axiom& ax) const {
    bool ok = true;
    for_each_model([&](const Feature& f) { ok = ok && satisfies(ix_, f, ax); });
    return ok;
  }

  bool d_entails(const Config& cfg, const Axiom& ax) const {
    bool ok = true;
    for_each_minimal(cfg, [&](const Feature& f) { ok = ok && satisfies(ix_, f, ax); });
    return ok;
  }

  std::size_t count_minimal(const Config& cfg) const {
    std::size_t n = 0;
    for_each_minimal(cfg, [&](const Feature&) { ++n; });
    return n;
  }

 private:
  Group profile_group(const std::string& a) const {
    Group g;
    std::set<Concept> seen;
    for (const auto& as : kb_.abox()) {
      const auto* ca = std::get_if<ConceptAssertion>(&as);
      if (ca && ca->individual == a && seen.insert(ca->what).second) g.push_back(filter(ix_, all_, ca->what));
    }
    for (const auto& r : sig_.roles) {
      std::set<std::string> succ, pred;
      for (const auto& e : asserted_roles_) {
        if (e.role != r) continue;
        if (e.subject == a) succ.insert(e.object);
        if (e.object == a) pred.insert(e.subject);
      }
      for (std::size_t m = 1; m <= succ.size(); ++m)
        g.push_back(filter(ix_, all_, Concept::AtLeast(static_cast<Number>(m), Role{r, false})));
      for (std::size_t m = 1; m <= pred.size(); ++m)
        g.push_back(filter(ix_, all_, Concept::AtLeast(static_cast<Number>(m), Role{r, true})));
    }
    return g;
  }

  KnowledgeBase kb_;
  Signature sig_;
  BasicConceptIndex ix_;
  std::vector<Type> all_;
  std::vector<std::string> names_;
  std::set<RoleAssertion> asserted_roles_;
};

}  // namespace ref

// }}}

}  // namespace paralite::test

#include "paralite/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "paralite/error.hpp"

namespace paralite {

// {{{ Profiles

namespace {

// Distinct R-neighbours of a per role direction, keyed by (role, inverted).
std::map<Role, std::set<std::string>> neighbours(const KnowledgeBase& kb, const std::string& a) {
  std::map<Role, std::set<std::string>> out;
  for (const auto& as : kb.abox()) {
    const auto* ra = std::get_if<RoleAssertion>(&as);
    if (!ra) continue;
    if (ra->subject == a) out[Role{ra->role, false}].insert(ra->object);
    if (ra->object == a) out[Role{ra->role, true}].insert(ra->subject);
  }
  return out;
}

ConceptProfile profile_concepts(const KnowledgeBase& kb, const std::string& a) {
  ConceptProfile p;
  p.individual = a;
  for (const auto& as : kb.abox()) {
    const auto* ca = std::get_if<ConceptAssertion>(&as);
    if (ca && ca->individual == a &&
        std::find(p.concepts.begin(), p.concepts.end(), ca->what) == p.concepts.end())
      p.concepts.push_back(ca->what);
  }
  for (const auto& [role, others] : neighbours(kb, a)) {
    for (std::size_t m = 1; m <= others.size(); ++m) {
      p.concepts.push_back(Concept::AtLeast(static_cast<Number>(m), role));
    }
  }
  return p;
}

}  // namespace

ConceptProfile concept_profile(const KnowledgeBase& kb, const std::string& a) {
  if (!signature_of(kb).individuals.count(a)) throw UnknownIndividual("individual '" + a + "' does not occur");
  return profile_concepts(kb, a);
}

ConceptProfile concept_profile(const TypeUniverse& u, const KnowledgeBase& kb, const std::string& a) {
  if (!u.signature().individuals.count(a))
    throw UnknownIndividual("individual '" + a + "' is not in the signature");
  ConceptProfile p = profile_concepts(kb, a);
  for (const auto& c : p.concepts) p.group.push_back(types_of(u, c));
  return p;
}

std::vector<RoleAssertion> role_assertions(const KnowledgeBase& kb) {
  std::vector<RoleAssertion> out;
  for (const auto& as : kb.abox()) {
    if (const auto* ra = std::get_if<RoleAssertion>(&as)) out.push_back(*ra);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// }}}

// {{{ Herbrand sets

namespace {

// Role-count bookkeeping shared by the Herbrand condition and the drop rule.
class Counts {
 public:
  Counts(const TypeUniverse& u, std::size_t individuals)
      : u_(u), directions_(u.index().direction_count()), n_(individuals * directions_, 0) {}

  void reset() { std::fill(n_.begin(), n_.end(), 0); }
  void add(std::size_t individual, std::size_t k) { ++n_[individual * directions_ + k]; }
  std::size_t get(std::size_t individual, std::size_t k) const { return n_[individual * directions_ + k]; }

  // ≥ m R_k ∈ t for every m ∈ Σ_N with m ≤ count.
  bool covered(const Type& t, std::size_t individual, std::size_t k) const {
    const auto& numbers = u_.index().numbers();
    const std::size_t thr = u_.threshold(t, k);
    return thr == numbers.size() || numbers[thr] > get(individual, k);
  }

  // ≥ (count+1) R_k ∉ t; an atom outside Σ_N is never in t.
  bool saturated(const Type& t, std::size_t individual, std::size_t k) const {
    auto pos = u_.index().at_least_position(u_.index().direction(k), static_cast<Number>(get(individual, k) + 1));
    return !pos || !t.has(*pos);
  }

 private:
  const TypeUniverse& u_;
  std::size_t directions_;
  std::vector<std::size_t> n_;
};

struct Edge {
  std::size_t subject;
  std::size_t object;
  std::size_t forward;  // direction of P; P⁻ is forward ^ 1
};

std::vector<Edge> index_edges(const TypeUniverse& u, const std::vector<std::string>& names,
                              const std::vector<RoleAssertion>& edges) {
  auto slot = [&](const std::string& a) {
    auto it = std::lower_bound(names.begin(), names.end(), a);
    if (it == names.end() || *it != a) throw UnknownIndividual("individual '" + a + "' is not in the signature");
    return static_cast<std::size_t>(it - names.begin());
  };
  std::vector<Edge> out;
  for (const auto& e : edges) {
    auto k = u.index().direction_of(Role{e.role, false});
    if (!k) throw UnknownSymbol("role '" + e.role + "' is not in the signature");
    out.push_back(Edge{slot(e.subject), slot(e.object), *k});
  }
  return out;
}

// Enumerates Herbrand sets whose individual types come from candidates
// (indexed like names). Classical: every role assertion is kept. Otherwise
// any subset may be kept as long as each dropped P(a,b) has an endpoint
// whose type rules out one more P-neighbour.
std::vector<HerbrandSet> enumerate_herbrands(const TypeUniverse& u, const std::vector<std::string>& names,
                                             const std::vector<TypeSet>& candidates,
                                             const std::vector<RoleAssertion>& edges, bool classical,
                                             std::uint64_t max_features) {
  std::vector<HerbrandSet> out;
  for (const auto& c : candidates) {
    if (c.empty()) return out;
  }
  const auto ix = index_edges(u, names, edges);
  if (!classical && ix.size() >= 40)
    throw FeatureSpaceTooLarge("too many role assertions to enumerate kept subsets", std::ldexp(1.0, 40));
  double combos = classical ? 1.0 : std::ldexp(1.0, static_cast<int>(ix.size()));
  for (const auto& c : candidates) combos *= static_cast<double>(c.size());
  if (combos > static_cast<double>(max_features)) {
    throw FeatureSpaceTooLarge("Herbrand enumeration would visit " + std::to_string(static_cast<long double>(combos)) +
                                   " combinations (limit " + std::to_string(max_features) + ")",
                               combos);
  }

  const std::uint64_t masks = classical ? 1 : std::uint64_t{1} << ix.size();
  const std::uint64_t all_kept = (std::uint64_t{1} << ix.size()) - 1;
  std::vector<std::size_t> choice(names.size(), 0);
  std::vector<Type> chosen(names.size());
  Counts counts(u, names.size());
  for (;;) {
    for (std::size_t i = 0; i < names.size(); ++i) chosen[i] = candidates[i][choice[i]];
    for (std::uint64_t m = 0; m < masks; ++m) {
      const std::uint64_t kept = classical ? all_kept : m;
      counts.reset();
      for (std::size_t e = 0; e < ix.size(); ++e) {
        if ((kept >> e) & 1u) {
          counts.add(ix[e].subject, ix[e].forward);
          counts.add(ix[e].object, BasicConceptIndex::inverse_direction(ix[e].forward));
        }
      }
      bool ok = true;
      for (std::size_t i = 0; ok && i < names.size(); ++i) {
        for (std::size_t k = 0; ok && k < u.index().direction_count(); ++k) ok = counts.covered(chosen[i], i, k);
      }
      for (std::size_t e = 0; ok && e < ix.size(); ++e) {
        if ((kept >> e) & 1u) continue;
        const auto& edge = ix[e];
        ok = counts.saturated(chosen[edge.subject], edge.subject, edge.forward) ||
             counts.saturated(chosen[edge.object], edge.object, BasicConceptIndex::inverse_direction(edge.forward));
      }
      if (!ok) continue;
      HerbrandSet h;
      for (std::size_t i = 0; i < names.size(); ++i) h.types.emplace(names[i], chosen[i]);
      for (std::size_t e = 0; e < ix.size(); ++e) {
        if ((kept >> e) & 1u) h.kept.push_back(edges[e]);
      }
      out.push_back(std::move(h));
    }
    // Odometer over the per-individual candidates.
    std::size_t i = 0;
    while (i < names.size() && ++choice[i] == candidates[i].size()) choice[i++] = 0;
    if (i == names.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

TypeSet types_in(const HerbrandSet& h) {
  std::vector<Type> ts;
  for (const auto& [a, t] : h.types) ts.push_back(t);
  return TypeSet(std::move(ts));
}

}  // namespace

bool herbrand_condition(const TypeUniverse& u, const HerbrandSet& h) {
  std::vector<std::string> names;
  for (const auto& [a, t] : h.types) names.push_back(a);
  Counts counts(u, names.size());
  for (const auto& e : index_edges(u, names, h.kept)) {
    counts.add(e.subject, e.forward);
    counts.add(e.object, BasicConceptIndex::inverse_direction(e.forward));
  }
  std::size_t i = 0;
  for (const auto& [a, t] : h.types) {
    for (std::size_t k = 0; k < u.index().direction_count(); ++k) {
      if (!counts.covered(t, i, k)) return false;
    }
    ++i;
  }
  return true;
}

// }}}

// {{{ Feature spaces

double FeatureSpace::feature_count() const {
  double total = 0;
  for (const auto& h : herbrands) {
    const auto fixed = intersect(types_in(h), pool).size();
    total += std::ldexp(1.0, static_cast<int>(pool.size() - fixed));
  }
  return total;
}

FeatureSet FeatureSpace::expand(std::uint64_t max_features) const {
  const double bound = feature_count();
  if (bound > static_cast<double>(max_features)) {
    throw FeatureSpaceTooLarge("feature space holds up to " + std::to_string(static_cast<long double>(bound)) +
                                   " features (limit " + std::to_string(max_features) + ")",
                               bound);
  }
  FeatureSet out;
  for (const auto& h : herbrands) {
    const TypeSet fixed = types_in(h);
    const TypeSet free = subtract(pool, fixed);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << free.size()); ++m) {
      std::vector<Type> pick(fixed.begin(), fixed.end());
      for (std::size_t j = 0; j < free.size(); ++j) {
        if ((m >> j) & 1u) pick.push_back(free[j]);
      }
      TypeSet xi(std::move(pick));
      if (role_coherent(*universe, xi).coherent) out.push_back(Feature{std::move(xi), h});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const Semantics& s) {
  if (const auto* cfg = std::get_if<SemanticsConfig>(&s)) return cfg->name();
  return "classical";
}

TypeSet allowed_types(const TypeUniverse& u, const SemanticsConfig& cfg, const KnowledgeBase& kb,
                      const std::string& a, const TypeSet& pool) {
  const auto profile = concept_profile(u, kb, a);
  auto r = minimal_types(u, cfg, profile.group, pool);
  if (cfg.closure == ClosureMode::kExtend) r = coherence_closure(u, cfg, r.minimal, profile.group, pool);
  return r.minimal;
}

KbAnalysis analyze(const Semantics& semantics, const KnowledgeBase& kb, const Signature& sig, const Guards& guards) {
  KbAnalysis out;
  out.semantics = semantics;
  out.universe = TypeUniverse::build(sig, guards.max_types);
  const auto& u = *out.universe;
  const std::vector<std::string> names(sig.individuals.begin(), sig.individuals.end());
  std::vector<TypeSet> candidates;

  if (const auto* cfg = std::get_if<SemanticsConfig>(&semantics)) {
    out.tbox = minimal_model_type_set(u, *cfg, kb.tbox());
    out.space.pool = out.tbox->minimal;
    for (const auto& a : names) {
      IndividualTypes it;
      it.profile = concept_profile(u, kb, a);
      auto r = minimal_types(u, *cfg, it.profile.group, out.space.pool);
      if (cfg->closure == ClosureMode::kExtend)
        r = coherence_closure(u, *cfg, r.minimal, it.profile.group, out.space.pool);
      it.allowed = r.minimal;
      it.minimal = std::move(r);
      candidates.push_back(it.allowed);
      out.individuals.emplace(a, std::move(it));
    }
  } else {
    out.space.pool = coherent_core(u, intersect_all(u, model_type_group(u, kb.tbox())));
    for (const auto& a : names) {
      IndividualTypes it;
      it.profile = concept_profile(u, kb, a);
      std::vector<CompiledConcept> asserted;
      for (const auto& as : kb.abox()) {
        const auto* ca = std::get_if<ConceptAssertion>(&as);
        if (ca && ca->individual == a) asserted.emplace_back(u, ca->what);
      }
      std::vector<Type> ok;
      for (const auto& t : out.space.pool) {
        if (std::all_of(asserted.begin(), asserted.end(), [&](const CompiledConcept& c) { return c(t); }))
          ok.push_back(t);
      }
      it.allowed = TypeSet(std::move(ok));
      candidates.push_back(it.allowed);
      out.individuals.emplace(a, std::move(it));
    }
  }
  out.space.universe = out.universe;
  // Ξ must be nonempty, so an empty pool admits no feature at all.
  if (out.space.pool.empty()) return out;
  out.space.herbrands = enumerate_herbrands(u, names, candidates, role_assertions(kb),
                                            std::holds_alternative<Classical>(semantics), guards.max_features);
  return out;
}

FeatureSet minimal_model_features(const SemanticsConfig& cfg, const KnowledgeBase& kb, const Guards& guards) {
  return analyze(cfg, kb, sig_star(kb), guards).space.expand(guards.max_features);
}

FeatureSet model_features(const KnowledgeBase& kb, const Guards& guards) {
  return analyze(Classical{}, kb, sig_star(kb), guards).space.expand(guards.max_features);
}

// }}}

// {{{ Satisfaction and entailment

namespace {

const Type& type_of_individual(const HerbrandSet& h, const std::string& a) {
  auto it = h.types.find(a);
  if (it == h.types.end()) throw UnknownIndividual("individual '" + a + "' is not in the feature");
  return it->second;
}

Concept inclusion_concept(const Inclusion& inc) { return Concept::Not(Concept::And(inc.lhs, Concept::Not(inc.rhs))); }

}  // namespace

bool feature_satisfies(const TypeUniverse& u, const Feature& f, const Axiom& axiom) {
  if (const auto* inc = std::get_if<Inclusion>(&axiom)) {
    const CompiledConcept c(u, inclusion_concept(*inc));
    return std::all_of(f.xi.begin(), f.xi.end(), [&](const Type& t) { return c(t); });
  }
  if (const auto* ca = std::get_if<ConceptAssertion>(&axiom)) {
    return CompiledConcept(u, ca->what)(type_of_individual(f.herbrand, ca->individual));
  }
  const auto& ra = std::get<RoleAssertion>(axiom);
  return std::binary_search(f.herbrand.kept.begin(), f.herbrand.kept.end(), ra);
}

Verdict decide(const FeatureSpace& space, const Axiom& axiom) {
  Verdict v;
  v.entailed = true;
  if (space.empty()) return v;
  const auto& u = *space.universe;
  if (const auto* inc = std::get_if<Inclusion>(&axiom)) {
    const CompiledConcept c(u, inclusion_concept(*inc));
    if (!std::all_of(space.pool.begin(), space.pool.end(), [&](const Type& t) { return c(t); })) {
      v.entailed = false;
      v.witness = Feature{space.pool, space.herbrands.front()};
    }
    return v;
  }
  std::optional<CompiledConcept> c;
  if (const auto* ca = std::get_if<ConceptAssertion>(&axiom)) c.emplace(u, ca->what);
  for (const auto& h : space.herbrands) {
    bool holds;
    if (c) {
      holds = (*c)(type_of_individual(h, std::get<ConceptAssertion>(axiom).individual));
    } else {
      holds = std::binary_search(h.kept.begin(), h.kept.end(), std::get<RoleAssertion>(axiom));
    }
    if (!holds) {
      v.entailed = false;
      v.witness = Feature{space.pool, h};
      return v;
    }
  }
  return v;
}

Verdict decide_expanded(const TypeUniverse& u, const FeatureSet& features, const Axiom& axiom) {
  Verdict v;
  v.entailed = true;
  for (const auto& f : features) {
    if (!feature_satisfies(u, f, axiom)) {
      v.entailed = false;
      v.witness = f;
      break;
    }
  }
  return v;
}

Reasoner::Reasoner(KnowledgeBase kb, Semantics semantics, Guards guards)
    : kb_(std::move(kb)), semantics_(std::move(semantics)), guards_(guards), base_sig_(sig_star(kb_)) {}

const KbAnalysis& Reasoner::base() const {
  if (!base_) base_ = analyze(semantics_, kb_, base_sig_, guards_);
  return *base_;
}

KbAnalysis Reasoner::analysis_for(const Axiom& axiom) const {
  const Signature sig = sig_star(kb_, axiom);
  if (sig == base_sig_) return base();
  return analyze(semantics_, kb_, sig, guards_);
}

Verdict Reasoner::entails(const Axiom& axiom) const {
  const Signature sig = sig_star(kb_, axiom);
  if (sig == base_sig_) return decide(base().space, axiom);
  return decide(analyze(semantics_, kb_, sig, guards_).space, axiom);
}

Verdict kb_d_entails(const SemanticsConfig& cfg, const KnowledgeBase& kb, const Axiom& axiom, const Guards& guards) {
  return Reasoner(kb, cfg, guards).entails(axiom);
}

Verdict oracle_entails(const KnowledgeBase& kb, const Axiom& axiom, const Guards& guards) {
  return Reasoner(kb, Classical{}, guards).entails(axiom);
}

bool is_consistent(const KnowledgeBase& kb, const Guards& guards) {
  return !analyze(Classical{}, kb, sig_star(kb), guards).space.empty();
}

ProbeResult cn_probe(const SemanticsConfig& cfg, const KnowledgeBase& kb, std::span<const Axiom> probes,
                     const Guards& guards) {
  ProbeResult out;
  const Reasoner reasoner(kb, cfg, guards);
  KnowledgeBase closure;
  for (const auto& p : probes) {
    if (reasoner.entails(p).entailed) {
      out.entailed.push_back(p);
      closure.add(p);
    }
  }
  out.consistent = is_consistent(closure, guards);
  return out;
}

// }}}

}  // namespace paralite

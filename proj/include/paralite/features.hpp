#pragma once

// Concept profiles, Herbrand sets and features; the classical model features
// of a KB (the oracle), its minimal model features under a distance
// semantics, and entailment, consistency and closure probes on top of them.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "paralite/minimal.hpp"
#include "paralite/syntax.hpp"
#include "paralite/universe.hpp"

namespace paralite {

inline constexpr std::uint64_t kDefaultMaxFeatures = std::uint64_t{1} << 20;

struct Guards {
  std::uint64_t max_types = kDefaultMaxTypes;
  std::uint64_t max_features = kDefaultMaxFeatures;
};

// Σ_C(a): the concepts asserted of a, then ≥ m R for every m up to the number
// of distinct R-neighbours of a (per role direction, canonical order).
struct ConceptProfile {
  std::string individual;
  std::vector<Concept> concepts;
  TypeGroup group;  // T_Σ(D) per concept; filled only when built against a universe
};

// Throws UnknownIndividual when a does not occur in kb.
ConceptProfile concept_profile(const KnowledgeBase& kb, const std::string& a);
// As above, but a may be any individual of u's signature.
ConceptProfile concept_profile(const TypeUniverse& u, const KnowledgeBase& kb, const std::string& a);

// Inverse-free role assertions P(a,b) of the ABox, sorted and distinct.
std::vector<RoleAssertion> role_assertions(const KnowledgeBase& kb);

struct HerbrandSet {
  std::map<std::string, Type> types;  // every individual of the signature
  std::vector<RoleAssertion> kept;    // sorted

  friend auto operator<=>(const HerbrandSet&, const HerbrandSet&) = default;
  friend bool operator==(const HerbrandSet&, const HerbrandSet&) = default;
};

struct Feature {
  TypeSet xi;
  HerbrandSet herbrand;

  friend auto operator<=>(const Feature&, const Feature&) = default;
  friend bool operator==(const Feature&, const Feature&) = default;
};

// Sorted and duplicate-free.
using FeatureSet = std::vector<Feature>;

// Kept roles induce the cardinality atoms they count: n kept P-successors of
// a need ≥ m P ∈ τ(a) for every m ∈ Σ_N up to n, and likewise for P⁻.
bool herbrand_condition(const TypeUniverse& u, const HerbrandSet& h);

// Every feature ⟨Ξ, H⟩ with H among herbrands and types(H) ⊆ Ξ ⊆ pool,
// Ξ nonempty and role-coherent. The pool is itself role-coherent, so Ξ = pool
// is always one choice and every H yields at least one feature; an empty
// pool comes with no Herbrand sets.
struct FeatureSpace {
  UniversePtr universe;
  TypeSet pool;
  std::vector<HerbrandSet> herbrands;

  bool empty() const { return herbrands.empty(); }
  // Number of features the space represents.
  double feature_count() const;
  // Throws FeatureSpaceTooLarge when feature_count() exceeds max_features.
  FeatureSet expand(std::uint64_t max_features = kDefaultMaxFeatures) const;
};

struct Classical {};
using Semantics = std::variant<Classical, SemanticsConfig>;

std::string to_string(const Semantics& s);

struct IndividualTypes {
  ConceptProfile profile;
  // Unset under the classical semantics.
  std::optional<MinimalSetResult> minimal;
  TypeSet allowed;
};

struct KbAnalysis {
  Semantics semantics;
  UniversePtr universe;
  // Λ⁺(Π(T)) under a distance semantics; unset for the classical one.
  std::optional<MinimalSetResult> tbox;
  std::map<std::string, IndividualTypes> individuals;
  FeatureSpace space;
};

// All analysis over a caller-chosen signature, which must contain Sig*(kb).
KbAnalysis analyze(const Semantics& semantics, const KnowledgeBase& kb, const Signature& sig,
                   const Guards& guards = {});

// Λ⁺(Π_Σ(a), pool) under kExtend, Λ(Π_Σ(a), pool) under kRealizable.
TypeSet allowed_types(const TypeUniverse& u, const SemanticsConfig& cfg, const KnowledgeBase& kb,
                      const std::string& a, const TypeSet& pool);

// Over Sig*(kb).
FeatureSet minimal_model_features(const SemanticsConfig& cfg, const KnowledgeBase& kb, const Guards& guards = {});
FeatureSet model_features(const KnowledgeBase& kb, const Guards& guards = {});

bool feature_satisfies(const TypeUniverse& u, const Feature& f, const Axiom& axiom);

struct Verdict {
  bool entailed = false;
  std::optional<Feature> witness;
};

// Reads the verdict off the space without expanding it.
Verdict decide(const FeatureSpace& space, const Axiom& axiom);
// Reference route: checks every expanded feature.
Verdict decide_expanded(const TypeUniverse& u, const FeatureSet& features, const Axiom& axiom);

// Answers queries against one KB. Queries whose Sig*(K ∪ {φ}) equals Sig*(K)
// share one analysis; others get a fresh one over their own signature.
class Reasoner {
 public:
  Reasoner(KnowledgeBase kb, Semantics semantics, Guards guards = {});

  const KnowledgeBase& kb() const { return kb_; }
  const Semantics& semantics() const { return semantics_; }
  const KbAnalysis& base() const;
  // Analysis over Sig*(K ∪ {axiom}).
  KbAnalysis analysis_for(const Axiom& axiom) const;
  Verdict entails(const Axiom& axiom) const;

 private:
  KnowledgeBase kb_;
  Semantics semantics_;
  Guards guards_;
  Signature base_sig_;
  mutable std::optional<KbAnalysis> base_;
};

Verdict kb_d_entails(const SemanticsConfig& cfg, const KnowledgeBase& kb, const Axiom& axiom,
                     const Guards& guards = {});
Verdict oracle_entails(const KnowledgeBase& kb, const Axiom& axiom, const Guards& guards = {});
bool is_consistent(const KnowledgeBase& kb, const Guards& guards = {});

struct ProbeResult {
  std::vector<Axiom> entailed;
  bool consistent = true;
};

// Filters probes by d-entailment and checks the survivors classically.
ProbeResult cn_probe(const SemanticsConfig& cfg, const KnowledgeBase& kb, std::span<const Axiom> probes,
                     const Guards& guards = {});

}  // namespace paralite

#pragma once

// Random knowledge bases for property testing, signature-based splitting
// and the probe families used to sample entailments.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "paralite/metric.hpp"
#include "paralite/syntax.hpp"

namespace paralite {

struct GeneratorProfile {
  std::uint64_t seed = 1;
  std::size_t n_concepts = 3;
  std::size_t n_roles = 1;
  std::size_t n_individuals = 2;
  Number max_card = 2;
  std::size_t n_inclusions = 3;
  std::size_t n_assertions = 3;
  // Chance that an axiom is drawn without regard to the planted model.
  DistanceValue inconsistency_bias{0};
  // Unnamed elements of the planted model, besides the individuals.
  std::size_t n_anonymous = 2;
  std::size_t max_depth = 2;
};

// Draws axioms that hold in a randomly planted finite interpretation, except
// for a fraction (inconsistency_bias) drawn freely. With no bias every KB has
// a model, namely the planted one.
class Generator {
 public:
  explicit Generator(const GeneratorProfile& profile);

  KnowledgeBase kb();
  // Free draws over the profile's vocabulary.
  Concept random_concept();
  Axiom axiom();

  std::mt19937_64& rng() { return rng_; }

  const std::vector<std::string>& concept_names() const { return concepts_; }
  const std::vector<std::string>& role_names() const { return roles_; }
  const std::vector<std::string>& individual_names() const { return individuals_; }

 private:
  struct Model {
    std::vector<std::vector<bool>> member;  // [element][concept]
    std::vector<std::vector<std::vector<std::size_t>>> succ, pred;  // [role][element] -> elements
  };

  Concept surface_concept(std::size_t depth);
  Role random_role();
  void plant();
  bool holds(const Concept& c, std::size_t element) const;
  bool holds_everywhere(const Inclusion& inc) const;
  bool biased();

  GeneratorProfile profile_;
  std::mt19937_64 rng_;
  std::vector<std::string> concepts_, roles_, individuals_;
  Model model_;
};

KnowledgeBase gen_kb(const GeneratorProfile& profile);

// A, B, ..., Z, A1, B1, ... ; P, Q, R, S, P1, ... ; a, b, ..., z, a1, ...
std::string concept_name(std::size_t i);
std::string role_name(std::size_t i);
std::string individual_name(std::size_t i);

struct SplitSpec {
  KnowledgeBase first;
  KnowledgeBase second;
};

// Groups axioms into components linked by shared concept, role or individual
// names. first is the component of the first axiom (TBox before ABox), second
// everything else; nullopt when there is only one component.
std::optional<SplitSpec> split_kb(const KnowledgeBase& kb);

Concept rename(const Concept& c, const std::function<std::string(const std::string&)>& f);
Axiom rename(const Axiom& axiom, const std::function<std::string(const std::string&)>& f);
KnowledgeBase rename(const KnowledgeBase& kb, const std::function<std::string(const std::string&)>& f);
// Appends suffix to every symbol name.
KnowledgeBase rename_apart(const KnowledgeBase& kb, const std::string& suffix);
Axiom rename_apart(const Axiom& axiom, const std::string& suffix);

// (¬)B(a) for every basic concept B and individual a of sig.
std::vector<Axiom> literal_probes(const Signature& sig);
// B₁ ⊑ B₂ and B₁ ⊑ ¬B₂ over distinct basic concepts of sig.
std::vector<Axiom> inclusion_probes(const Signature& sig);
std::vector<Axiom> probe_family(const Signature& sig);

// Basic concepts of sig other than ⊤, in index order.
std::vector<Concept> basic_concepts(const Signature& sig);

}  // namespace paralite

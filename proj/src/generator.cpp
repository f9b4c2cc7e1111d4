#include "paralite/generator.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "paralite/universe.hpp"

namespace paralite {

namespace {

std::string numbered(char first, std::size_t span, std::size_t i) {
  std::string out(1, static_cast<char>(first + i % span));
  if (i >= span) out += std::to_string(i / span);
  return out;
}

}  // namespace

std::string concept_name(std::size_t i) { return numbered('A', 26, i); }
std::string role_name(std::size_t i) { return numbered('P', 4, i); }
std::string individual_name(std::size_t i) { return numbered('a', 26, i); }

// {{{ Generator

Generator::Generator(const GeneratorProfile& profile) : profile_(profile), rng_(profile.seed) {
  for (std::size_t i = 0; i < profile_.n_concepts; ++i) concepts_.push_back(concept_name(i));
  for (std::size_t i = 0; i < profile_.n_roles; ++i) roles_.push_back(role_name(i));
  for (std::size_t i = 0; i < profile_.n_individuals; ++i) individuals_.push_back(individual_name(i));
  if (profile_.max_card == 0) profile_.max_card = 1;
}

bool Generator::biased() {
  const auto& p = profile_.inconsistency_bias;
  if (p <= DistanceValue(0)) return false;
  std::uniform_int_distribution<std::int64_t> draw(0, p.denominator() - 1);
  return draw(rng_) < p.numerator();
}

Role Generator::random_role() {
  std::uniform_int_distribution<std::size_t> pick(0, roles_.size() - 1);
  std::bernoulli_distribution inverted(0.5);
  return Role{roles_[pick(rng_)], inverted(rng_)};
}

Concept Generator::surface_concept(std::size_t depth) {
  std::uniform_int_distribution<int> kind(0, depth == 0 ? 2 : 7);
  std::uniform_int_distribution<Number> card(1, profile_.max_card);
  const bool have_concepts = !concepts_.empty();
  const bool have_roles = !roles_.empty();
  for (;;) {
    switch (kind(rng_)) {
      case 0:
      case 1:
        if (have_concepts) {
          std::uniform_int_distribution<std::size_t> pick(0, concepts_.size() - 1);
          return Concept::Name(concepts_[pick(rng_)]);
        }
        break;
      case 2:
        if (have_roles) {
          const Number n = card(rng_);
          return n == 1 ? Concept::Exists(random_role()) : Concept::AtLeast(n, random_role());
        }
        break;
      case 3:
      case 4:
        return Concept::Not(surface_concept(depth - 1));
      case 5:
      case 6:
        return Concept::And(surface_concept(depth - 1), surface_concept(depth - 1));
      case 7:
        return Concept::Or(surface_concept(depth - 1), surface_concept(depth - 1));
    }
    if (!have_concepts && !have_roles) return Concept::Top();
  }
}

Concept Generator::random_concept() { return normalize(surface_concept(profile_.max_depth)); }

void Generator::plant() {
  const std::size_t elements = individuals_.size() + profile_.n_anonymous;
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution edge(elements > 0 ? 1.5 / static_cast<double>(elements) : 0.0);
  model_.member.assign(elements, std::vector<bool>(concepts_.size()));
  for (auto& row : model_.member) {
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = coin(rng_);
  }
  model_.succ.assign(roles_.size(), std::vector<std::vector<std::size_t>>(elements));
  model_.pred = model_.succ;
  for (std::size_t r = 0; r < roles_.size(); ++r) {
    for (std::size_t x = 0; x < elements; ++x) {
      for (std::size_t y = 0; y < elements; ++y) {
        if (edge(rng_)) {
          model_.succ[r][x].push_back(y);
          model_.pred[r][y].push_back(x);
        }
      }
    }
  }
}

bool Generator::holds(const Concept& c, std::size_t element) const {
  switch (c.kind()) {
    case Concept::Kind::kTop:
      return true;
    case Concept::Kind::kName: {
      auto it = std::find(concepts_.begin(), concepts_.end(), c.name());
      return model_.member[element][static_cast<std::size_t>(it - concepts_.begin())];
    }
    case Concept::Kind::kAtLeast: {
      auto it = std::find(roles_.begin(), roles_.end(), c.role().name);
      const auto r = static_cast<std::size_t>(it - roles_.begin());
      const auto& edges = c.role().inverted ? model_.pred[r][element] : model_.succ[r][element];
      return edges.size() >= c.number();
    }
    case Concept::Kind::kNot:
      return !holds(c.lhs(), element);
    case Concept::Kind::kAnd:
      return holds(c.lhs(), element) && holds(c.rhs(), element);
    default:
      return holds(normalize(c), element);
  }
}

bool Generator::holds_everywhere(const Inclusion& inc) const {
  for (std::size_t x = 0; x < model_.member.size(); ++x) {
    if (holds(inc.lhs, x) && !holds(inc.rhs, x)) return false;
  }
  return true;
}

Axiom Generator::axiom() {
  std::uniform_int_distribution<int> kind(0, roles_.empty() || individuals_.empty() ? 1 : 2);
  std::uniform_int_distribution<std::size_t> who(0, individuals_.empty() ? 0 : individuals_.size() - 1);
  switch (individuals_.empty() ? 0 : kind(rng_)) {
    case 0:
      return Inclusion{random_concept(), random_concept()};
    case 1:
      return ConceptAssertion{random_concept(), individuals_[who(rng_)]};
    default: {
      std::uniform_int_distribution<std::size_t> pick(0, roles_.size() - 1);
      const std::string role = roles_[pick(rng_)];
      const std::string s = individuals_[who(rng_)];
      return RoleAssertion{role, s, individuals_[who(rng_)]};
    }
  }
}

KnowledgeBase Generator::kb() {
  plant();
  KnowledgeBase out;
  constexpr int kAttempts = 64;
  for (std::size_t i = 0; i < profile_.n_inclusions; ++i) {
    const bool free = biased();
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      Inclusion inc{random_concept(), random_concept()};
      if (free || holds_everywhere(inc)) {
        out.add(std::move(inc));
        break;
      }
    }
  }
  if (individuals_.empty()) return out;
  std::uniform_int_distribution<std::size_t> who(0, individuals_.size() - 1);
  std::bernoulli_distribution role_assertion(roles_.empty() ? 0.0 : 0.35);
  for (std::size_t i = 0; i < profile_.n_assertions; ++i) {
    const bool free = biased();
    if (role_assertion(rng_)) {
      // Planted edges between named individuals, or any pair when free.
      std::vector<RoleAssertion> options;
      for (std::size_t r = 0; r < roles_.size(); ++r) {
        for (std::size_t x = 0; x < individuals_.size(); ++x) {
          for (std::size_t y = 0; y < individuals_.size(); ++y) {
            const auto& succ = model_.succ[r][x];
            if (free || std::find(succ.begin(), succ.end(), y) != succ.end())
              options.push_back(RoleAssertion{roles_[r], individuals_[x], individuals_[y]});
          }
        }
      }
      if (!options.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        out.add(Assertion{options[pick(rng_)]});
        continue;
      }
    }
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      const std::size_t a = who(rng_);
      Concept c = random_concept();
      if (free || holds(c, a)) {
        out.add(Assertion{ConceptAssertion{std::move(c), individuals_[a]}});
        break;
      }
    }
  }
  return out;
}

KnowledgeBase gen_kb(const GeneratorProfile& profile) { return Generator(profile).kb(); }

// }}}

// {{{ Splitting and renaming

namespace {

std::set<std::string> names_of(const Axiom& axiom) { return symbol_names(signature_of(axiom)); }

std::vector<Axiom> axioms_of(const KnowledgeBase& kb) {
  std::vector<Axiom> out;
  for (const auto& inc : kb.tbox()) out.emplace_back(inc);
  for (const auto& as : kb.abox()) std::visit([&](const auto& a) { out.emplace_back(a); }, as);
  return out;
}

}  // namespace

std::optional<SplitSpec> split_kb(const KnowledgeBase& kb) {
  const auto axioms = axioms_of(kb);
  if (axioms.size() < 2) return std::nullopt;
  std::vector<std::size_t> parent(axioms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    for (const auto& n : names_of(axioms[i])) {
      auto [it, fresh] = owner.emplace(n, i);
      if (!fresh) parent[find(i)] = find(it->second);
    }
  }
  const std::size_t root = find(0);
  SplitSpec out;
  bool split = false;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    if (find(i) == root) {
      out.first.add(axioms[i]);
    } else {
      out.second.add(axioms[i]);
      split = true;
    }
  }
  if (!split) return std::nullopt;
  return out;
}

Concept rename(const Concept& c, const std::function<std::string(const std::string&)>& f) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::kTop:
      return Concept::Top();
    case K::kBot:
      return Concept::Bot();
    case K::kName:
      return Concept::Name(f(c.name()));
    case K::kAtLeast:
      return Concept::AtLeast(c.number(), Role{f(c.role().name), c.role().inverted});
    case K::kAtMost:
      return Concept::AtMost(c.number(), Role{f(c.role().name), c.role().inverted});
    case K::kExists:
      return Concept::Exists(Role{f(c.role().name), c.role().inverted});
    case K::kNot:
      return Concept::Not(rename(c.lhs(), f));
    case K::kAnd:
      return Concept::And(rename(c.lhs(), f), rename(c.rhs(), f));
    case K::kOr:
      return Concept::Or(rename(c.lhs(), f), rename(c.rhs(), f));
  }
  return c;
}

Axiom rename(const Axiom& axiom, const std::function<std::string(const std::string&)>& f) {
  if (const auto* inc = std::get_if<Inclusion>(&axiom)) return Inclusion{rename(inc->lhs, f), rename(inc->rhs, f)};
  if (const auto* ca = std::get_if<ConceptAssertion>(&axiom))
    return ConceptAssertion{rename(ca->what, f), f(ca->individual)};
  const auto& ra = std::get<RoleAssertion>(axiom);
  return RoleAssertion{f(ra.role), f(ra.subject), f(ra.object)};
}

KnowledgeBase rename(const KnowledgeBase& kb, const std::function<std::string(const std::string&)>& f) {
  KnowledgeBase out;
  for (const auto& ax : axioms_of(kb)) out.add(rename(ax, f));
  return out;
}

KnowledgeBase rename_apart(const KnowledgeBase& kb, const std::string& suffix) {
  return rename(kb, [&](const std::string& n) { return n + suffix; });
}

Axiom rename_apart(const Axiom& axiom, const std::string& suffix) {
  return rename(axiom, [&](const std::string& n) { return n + suffix; });
}

// }}}

// {{{ Probes

std::vector<Concept> basic_concepts(const Signature& sig) {
  const BasicConceptIndex index(sig);
  std::vector<Concept> out;
  for (std::size_t i = 1; i < index.size(); ++i) out.push_back(index.at(i).to_concept());
  return out;
}

std::vector<Axiom> literal_probes(const Signature& sig) {
  std::vector<Axiom> out;
  const auto basics = basic_concepts(sig);
  for (const auto& a : sig.individuals) {
    for (const auto& b : basics) {
      out.emplace_back(ConceptAssertion{b, a});
      out.emplace_back(ConceptAssertion{Concept::Not(b), a});
    }
  }
  return out;
}

std::vector<Axiom> inclusion_probes(const Signature& sig) {
  std::vector<Axiom> out;
  const auto basics = basic_concepts(sig);
  for (const auto& b1 : basics) {
    for (const auto& b2 : basics) {
      if (b1 == b2) continue;
      out.emplace_back(Inclusion{b1, b2});
      out.emplace_back(Inclusion{b1, Concept::Not(b2)});
    }
  }
  return out;
}

std::vector<Axiom> probe_family(const Signature& sig) {
  auto out = literal_probes(sig);
  auto more = inclusion_probes(sig);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

// }}}

}  // namespace paralite

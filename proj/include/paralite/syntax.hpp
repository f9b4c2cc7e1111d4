#pragma once

// Abstract syntax of DL-Lite^N_bool knowledge bases, the `.dlkb` surface
// grammar, normalization into the core constructors and signature extraction.

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace paralite {

using Number = std::uint32_t;

struct Role {
  std::string name;
  bool inverted = false;

  Role inverse() const { return Role{name, !inverted}; }

  friend auto operator<=>(const Role&, const Role&) = default;
  friend bool operator==(const Role&, const Role&) = default;
};

// Concept trees. After normalize() only Top, Name, AtLeast, Not and And
// remain; Bot, Exists, AtMost and Or exist only straight out of the parser.
class Concept {
 public:
  enum class Kind : std::uint8_t { kTop, kName, kAtLeast, kNot, kAnd, kBot, kExists, kAtMost, kOr };

  static Concept Top();
  static Concept Bot();
  static Concept Name(std::string name);
  static Concept AtLeast(Number n, Role role);
  static Concept AtMost(Number n, Role role);
  static Concept Exists(Role role);
  static Concept Not(Concept c);
  static Concept And(Concept lhs, Concept rhs);
  static Concept Or(Concept lhs, Concept rhs);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  Number number() const { return number_; }
  const Role& role() const { return role_; }
  // Operand of Not, left operand of And/Or.
  const Concept& lhs() const { return kids_.front(); }
  const Concept& rhs() const { return kids_.back(); }

  bool is_normal() const;

  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);
  friend bool operator==(const Concept& a, const Concept& b) { return (a <=> b) == 0; }

 private:
  Concept() = default;

  Kind kind_ = Kind::kTop;
  std::string name_;
  Number number_ = 0;
  Role role_;
  std::vector<Concept> kids_;
};

struct Inclusion {
  Concept lhs;
  Concept rhs;

  friend auto operator<=>(const Inclusion&, const Inclusion&) = default;
  friend bool operator==(const Inclusion&, const Inclusion&) = default;
};

struct ConceptAssertion {
  Concept what;
  std::string individual;

  friend auto operator<=>(const ConceptAssertion&, const ConceptAssertion&) = default;
  friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
};

// Always stored inverse-free: P-(b,a) becomes P(a,b).
struct RoleAssertion {
  std::string role;
  std::string subject;
  std::string object;

  friend auto operator<=>(const RoleAssertion&, const RoleAssertion&) = default;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

RoleAssertion make_role_assertion(const Role& role, std::string subject, std::string object);

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;
using Axiom = std::variant<Inclusion, ConceptAssertion, RoleAssertion>;

class KnowledgeBase {
 public:
  const std::vector<Inclusion>& tbox() const { return tbox_; }
  const std::vector<Assertion>& abox() const { return abox_; }

  // Duplicates are dropped; first occurrence keeps its position.
  void add(Inclusion inclusion);
  void add(Assertion assertion);
  void add(const Axiom& axiom);

  // K ∪ {axiom}, leaving *this untouched.
  KnowledgeBase with(const Axiom& axiom) const;

  bool empty() const { return tbox_.empty() && abox_.empty(); }
  std::size_t size() const { return tbox_.size() + abox_.size(); }

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  std::vector<Inclusion> tbox_;
  std::vector<Assertion> abox_;
};

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
  std::set<std::string> individuals;
  std::set<Number> numbers{1};

  friend bool operator==(const Signature&, const Signature&) = default;
};

// Union of two signatures; throws ArityError when the result mixes categories.
Signature merge(const Signature& a, const Signature& b);

// Throws ArityError when a name is used in two symbol categories.
Signature signature_of(const KnowledgeBase& kb);
Signature signature_of(const Axiom& axiom);
Signature signature_of(const Concept& c);

// Sig*(K): Sig(K) with Σ_N extended by 1..n for every role fan-out / fan-in n.
Signature sig_star(const KnowledgeBase& kb);
// Sig*(K ∪ {axiom}).
Signature sig_star(const KnowledgeBase& kb, const Axiom& axiom);

// Symbol names only (concepts, roles, individuals); numbers excluded.
std::set<std::string> symbol_names(const Signature& sig);

Concept normalize(const Concept& c);

// Parsing. All entry points return normalized values and throw SyntaxError,
// CardinalityError or ArityError.
KnowledgeBase parse_kb(std::string_view text);
Axiom parse_axiom(std::string_view text);
Concept parse_concept(std::string_view text);
// Parse tree as written (surface constructors preserved).
Concept parse_concept_surface(std::string_view text);

std::string to_string(const Role& role);
std::string to_string(const Concept& c);
std::string to_string(const Inclusion& inclusion);
std::string to_string(const ConceptAssertion& assertion);
std::string to_string(const RoleAssertion& assertion);
std::string to_string(const Assertion& assertion);
std::string to_string(const Axiom& axiom);
// `.dlkb` rendering that parse_kb reads back to an equal KnowledgeBase.
std::string print_kb(const KnowledgeBase& kb);

}  // namespace paralite

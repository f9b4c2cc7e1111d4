#pragma once

// The finite universe T_Σ of Σ-types, type satisfaction of concepts and the
// set algebra (type sets, type groups, role coherence) built on top of it.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paralite/syntax.hpp"

namespace paralite {

inline constexpr std::uint64_t kDefaultMaxTypes = std::uint64_t{1} << 20;
inline constexpr std::size_t kMaxBasicConcepts = 128;

// Membership bitmask over a BasicConceptIndex. Ordering is numeric, which
// coincides with the universe's canonical enumeration order.
class Type {
 public:
  constexpr Type() = default;

  bool has(std::size_t bit) const {
    return bit < 64 ? (lo_ >> bit) & 1u : (hi_ >> (bit - 64)) & 1u;
  }
  void set(std::size_t bit) {
    if (bit < 64)
      lo_ |= std::uint64_t{1} << bit;
    else
      hi_ |= std::uint64_t{1} << (bit - 64);
  }
  void reset(std::size_t bit) {
    if (bit < 64)
      lo_ &= ~(std::uint64_t{1} << bit);
    else
      hi_ &= ~(std::uint64_t{1} << (bit - 64));
  }
  std::size_t count() const { return std::popcount(lo_) + std::popcount(hi_); }
  // Number of basic concepts in exactly one of the two types.
  std::size_t symmetric_difference(const Type& o) const {
    return std::popcount(lo_ ^ o.lo_) + std::popcount(hi_ ^ o.hi_);
  }
  // Highest set bit + 1 (0 for the empty mask).
  std::size_t width() const {
    return hi_ ? 128 - std::countl_zero(hi_) : 64 - std::countl_zero(lo_);
  }

  friend constexpr std::strong_ordering operator<=>(const Type& a, const Type& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }
  friend constexpr bool operator==(const Type&, const Type&) = default;

 private:
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
};

struct BasicConcept {
  enum class Kind : std::uint8_t { kTop, kName, kAtLeast };
  Kind kind = Kind::kTop;
  std::string name;  // concept name (kName)
  Role role;         // kAtLeast
  Number number = 0;

  Concept to_concept() const;
  std::string label() const;
};

// B_Σ = [⊤] ++ sorted Σ_A ++ [≥ n R ordered by (role, direction, n)].
class BasicConceptIndex {
 public:
  explicit BasicConceptIndex(const Signature& sig);

  std::size_t size() const { return concepts_.size(); }
  const BasicConcept& at(std::size_t pos) const { return concepts_.at(pos); }

  std::optional<std::size_t> name_position(const std::string& name) const;
  std::optional<std::size_t> at_least_position(const Role& role, Number n) const;

  std::size_t name_count() const { return names_; }
  std::size_t number_count() const { return numbers_.size(); }
  const std::vector<Number>& numbers() const { return numbers_; }
  // Role directions P, P-, Q, Q-, ... in canonical order.
  std::size_t direction_count() const { return directions_.size(); }
  const Role& direction(std::size_t k) const { return directions_.at(k); }
  std::optional<std::size_t> direction_of(const Role& role) const;
  // Bit of ≥ numbers()[j] R_k.
  std::size_t direction_bit(std::size_t k, std::size_t j) const {
    return 1 + names_ + k * numbers_.size() + j;
  }
  // Bit of ∃R_k (1 is always the smallest number).
  std::size_t exists_bit(std::size_t k) const { return direction_bit(k, 0); }
  // Direction of R⁻ for direction k.
  static std::size_t inverse_direction(std::size_t k) { return k ^ 1u; }

 private:
  std::vector<BasicConcept> concepts_;
  std::vector<Number> numbers_;
  std::vector<Role> directions_;
  std::size_t names_ = 0;
};

// A Ξ: sorted, duplicate-free set of types.
class TypeSet {
 public:
  TypeSet() = default;
  explicit TypeSet(std::vector<Type> types);

  void insert(Type t);
  bool contains(const Type& t) const;
  bool empty() const { return types_.empty(); }
  std::size_t size() const { return types_.size(); }
  auto begin() const { return types_.begin(); }
  auto end() const { return types_.end(); }
  const std::vector<Type>& types() const { return types_; }
  const Type& operator[](std::size_t i) const { return types_[i]; }

  bool is_subset_of(const TypeSet& other) const;

  friend TypeSet intersect(const TypeSet& a, const TypeSet& b);
  friend TypeSet unite(const TypeSet& a, const TypeSet& b);
  friend TypeSet subtract(const TypeSet& a, const TypeSet& b);

  friend auto operator<=>(const TypeSet&, const TypeSet&) = default;
  friend bool operator==(const TypeSet&, const TypeSet&) = default;

 private:
  std::vector<Type> types_;
};

// A Π. Multiplicity matters: it feeds a multiset aggregation.
using TypeGroup = std::vector<TypeSet>;

TypeSet intersect(const TypeSet& a, const TypeSet& b);
TypeSet unite(const TypeSet& a, const TypeSet& b);
TypeSet subtract(const TypeSet& a, const TypeSet& b);
// ∩Π; the empty group has no meaningful intersection and yields the universe.
class TypeUniverse;
TypeSet intersect_all(const TypeUniverse& u, const TypeGroup& group);

class TypeUniverse {
 public:
  static std::shared_ptr<const TypeUniverse> build(const Signature& sig,
                                                   std::uint64_t max_types = kDefaultMaxTypes);

  // 2^|Σ_A| · (|Σ_N|+1)^(2|Σ_R|), as a double so oversize signatures can be reported.
  static double count_for(const Signature& sig);

  const Signature& signature() const { return sig_; }
  const BasicConceptIndex& index() const { return index_; }
  const std::vector<Type>& types() const { return all_.types(); }
  const TypeSet& all() const { return all_; }
  std::size_t size() const { return all_.size(); }

  bool contains(const Type& t) const;
  // Canonical position of t in types(); t must belong to the universe.
  std::size_t position(const Type& t) const;
  // How many of the direction's numbers are present (0..|Σ_N|).
  std::size_t threshold(const Type& t, std::size_t direction) const;
  bool has_exists(const Type& t, std::size_t direction) const {
    return t.has(index_.exists_bit(direction));
  }

  // Stride of direction k in the mixed-radix position encoding.
  std::size_t direction_stride(std::size_t k) const { return strides_.at(k); }

  // "{A, >=1 P}" (⊤ omitted) and "1010..." (bit i = basic concept i).
  std::string describe(const Type& t) const;
  std::string bitstring(const Type& t) const;

  // Type holding ⊤, the given basic concepts (names or ≥ n R) and whatever
  // downward closure adds. Throws UnknownSymbol for non-basic or foreign members.
  Type type_from(std::span<const Concept> members) const;
  Type type_from(std::initializer_list<Concept> members) const {
    return type_from(std::span<const Concept>(members.begin(), members.size()));
  }

 private:
  TypeUniverse(Signature sig, BasicConceptIndex index) : sig_(std::move(sig)), index_(std::move(index)) {}

  Signature sig_;
  BasicConceptIndex index_;
  TypeSet all_;
  std::vector<std::size_t> strides_;
};

using UniversePtr = std::shared_ptr<const TypeUniverse>;

// A concept flattened to postfix form against one universe's bit positions,
// so evaluating it on many types avoids symbol lookups.
class CompiledConcept {
 public:
  CompiledConcept(const TypeUniverse& u, const Concept& c);
  bool operator()(const Type& t) const;

 private:
  enum class Op : std::uint8_t { kTrue, kBit, kNot, kAnd, kOr };
  struct Step {
    Op op;
    std::uint32_t bit;
  };
  void emit(const TypeUniverse& u, const Concept& c);
  std::vector<Step> code_;
};

// Throws UnknownSymbol when c mentions a symbol outside the universe.
bool satisfies(const TypeUniverse& u, const Type& t, const Concept& c);
// τ satisfies C ⊑ D iff τ ∈ T_Σ(¬C ⊔ D).
bool satisfies(const TypeUniverse& u, const Type& t, const Inclusion& inc);
TypeSet types_of(const TypeUniverse& u, const Concept& c);
TypeSet types_of(const TypeUniverse& u, const Inclusion& inc);
// One member per inclusion, in TBox order.
TypeGroup model_type_group(const TypeUniverse& u, std::span<const Inclusion> tbox);

struct Coherence {
  bool coherent = true;
  // Directions R with ∃R ∈ ∪Ξ but ∃R⁻ ∉ ∪Ξ.
  std::vector<Role> missing;
};

Coherence role_coherent(const TypeUniverse& u, const TypeSet& xi);
// Largest role-coherent subset of xi: repeatedly drops types carrying an ∃R
// whose inverse no remaining type carries.
TypeSet coherent_core(const TypeUniverse& u, const TypeSet& xi);

std::string describe(const TypeUniverse& u, const TypeSet& xi);

}  // namespace paralite

#include "paralite/universe.hpp"

#include <algorithm>
#include <cmath>

#include "paralite/error.hpp"
#include "paralite/kernels.hpp"

namespace paralite {

// {{{ BasicConcept / BasicConceptIndex

Concept BasicConcept::to_concept() const {
  switch (kind) {
    case Kind::kTop:
      return Concept::Top();
    case Kind::kName:
      return Concept::Name(name);
    case Kind::kAtLeast:
      return Concept::AtLeast(number, role);
  }
  return Concept::Top();
}

std::string BasicConcept::label() const {
  switch (kind) {
    case Kind::kTop:
      return "Top";
    case Kind::kName:
      return name;
    case Kind::kAtLeast:
      return ">=" + std::to_string(number) + " " + to_string(role);
  }
  return "?";
}

BasicConceptIndex::BasicConceptIndex(const Signature& sig) : numbers_(sig.numbers.begin(), sig.numbers.end()) {
  if (numbers_.empty() || numbers_.front() != 1) numbers_.insert(numbers_.begin(), 1);
  concepts_.push_back(BasicConcept{});
  for (const auto& a : sig.concepts) {
    concepts_.push_back(BasicConcept{BasicConcept::Kind::kName, a, {}, 0});
  }
  names_ = sig.concepts.size();
  for (const auto& p : sig.roles) {
    for (bool inv : {false, true}) {
      Role r{p, inv};
      directions_.push_back(r);
      for (Number n : numbers_) concepts_.push_back(BasicConcept{BasicConcept::Kind::kAtLeast, {}, r, n});
    }
  }
}

std::optional<std::size_t> BasicConceptIndex::name_position(const std::string& name) const {
  auto first = concepts_.begin() + 1;
  auto last = first + static_cast<std::ptrdiff_t>(names_);
  auto it = std::lower_bound(first, last, name, [](const BasicConcept& b, const std::string& n) {
    return b.name < n;
  });
  if (it == last || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - concepts_.begin());
}

std::optional<std::size_t> BasicConceptIndex::direction_of(const Role& role) const {
  auto it = std::lower_bound(directions_.begin(), directions_.end(), role);
  if (it == directions_.end() || *it != role) return std::nullopt;
  return static_cast<std::size_t>(it - directions_.begin());
}

std::optional<std::size_t> BasicConceptIndex::at_least_position(const Role& role, Number n) const {
  auto k = direction_of(role);
  if (!k) return std::nullopt;
  auto it = std::lower_bound(numbers_.begin(), numbers_.end(), n);
  if (it == numbers_.end() || *it != n) return std::nullopt;
  return direction_bit(*k, static_cast<std::size_t>(it - numbers_.begin()));
}

// }}}

// {{{ TypeSet

TypeSet::TypeSet(std::vector<Type> types) : types_(std::move(types)) {
  std::sort(types_.begin(), types_.end());
  types_.erase(std::unique(types_.begin(), types_.end()), types_.end());
}

void TypeSet::insert(Type t) {
  auto it = std::lower_bound(types_.begin(), types_.end(), t);
  if (it == types_.end() || *it != t) types_.insert(it, t);
}

bool TypeSet::contains(const Type& t) const { return std::binary_search(types_.begin(), types_.end(), t); }

bool TypeSet::is_subset_of(const TypeSet& other) const {
  return std::includes(other.types_.begin(), other.types_.end(), types_.begin(), types_.end());
}

TypeSet intersect(const TypeSet& a, const TypeSet& b) {
  TypeSet out;
  std::set_intersection(a.types_.begin(), a.types_.end(), b.types_.begin(), b.types_.end(),
                        std::back_inserter(out.types_));
  return out;
}

TypeSet unite(const TypeSet& a, const TypeSet& b) {
  TypeSet out;
  std::set_union(a.types_.begin(), a.types_.end(), b.types_.begin(), b.types_.end(),
                 std::back_inserter(out.types_));
  return out;
}

TypeSet subtract(const TypeSet& a, const TypeSet& b) {
  TypeSet out;
  std::set_difference(a.types_.begin(), a.types_.end(), b.types_.begin(), b.types_.end(),
                      std::back_inserter(out.types_));
  return out;
}

TypeSet intersect_all(const TypeUniverse& u, const TypeGroup& group) {
  TypeSet out = u.all();
  for (const auto& xi : group) out = intersect(out, xi);
  return out;
}

// }}}

// {{{ TypeUniverse

double TypeUniverse::count_for(const Signature& sig) {
  std::size_t numbers = sig.numbers.size() + (sig.numbers.count(1) ? 0 : 1);
  return std::pow(2.0, static_cast<double>(sig.concepts.size())) *
         std::pow(static_cast<double>(numbers + 1), 2.0 * static_cast<double>(sig.roles.size()));
}

UniversePtr TypeUniverse::build(const Signature& sig, std::uint64_t max_types) {
  const double count = count_for(sig);
  if (count > static_cast<double>(max_types)) {
    throw UniverseTooLarge("universe would hold " + std::to_string(static_cast<long double>(count)) +
                               " types (limit " + std::to_string(max_types) + ")",
                           count);
  }
  BasicConceptIndex index(sig);
  if (index.size() > kMaxBasicConcepts) {
    throw UniverseTooLarge("signature has " + std::to_string(index.size()) +
                               " basic concepts (limit " + std::to_string(kMaxBasicConcepts) + ")",
                           count);
  }
  std::shared_ptr<TypeUniverse> u(new TypeUniverse(sig, std::move(index)));
  const auto& idx = u->index_;
  const std::size_t names = idx.name_count();
  const std::size_t radix = idx.number_count() + 1;
  std::size_t stride = std::size_t{1} << names;
  for (std::size_t k = 0; k < idx.direction_count(); ++k) {
    u->strides_.push_back(stride);
    stride *= radix;
  }
  const auto total = static_cast<std::size_t>(count);
  std::vector<Type> all(total);
  // Position p decodes as (mask, thr_0, thr_1, ...) in mixed radix, which
  // enumerates types in ascending numeric order of their bitmasks.
  for (std::size_t p = 0; p < total; ++p) {
    Type t;
    t.set(0);
    const std::size_t mask = p & ((std::size_t{1} << names) - 1);
    for (std::size_t i = 0; i < names; ++i) {
      if ((mask >> i) & 1u) t.set(1 + i);
    }
    std::size_t rest = p >> names;
    for (std::size_t k = 0; k < idx.direction_count(); ++k) {
      const std::size_t thr = rest % radix;
      rest /= radix;
      for (std::size_t j = 0; j < thr; ++j) t.set(idx.direction_bit(k, j));
    }
    all[p] = t;
  }
  u->all_ = TypeSet(std::move(all));
  return u;
}

std::size_t TypeUniverse::threshold(const Type& t, std::size_t direction) const {
  std::size_t thr = 0;
  while (thr < index_.number_count() && t.has(index_.direction_bit(direction, thr))) ++thr;
  return thr;
}

bool TypeUniverse::contains(const Type& t) const {
  if (!t.has(0) || t.width() > index_.size()) return false;
  for (std::size_t k = 0; k < index_.direction_count(); ++k) {
    const std::size_t thr = threshold(t, k);
    for (std::size_t j = thr; j < index_.number_count(); ++j) {
      if (t.has(index_.direction_bit(k, j))) return false;
    }
  }
  return true;
}

std::size_t TypeUniverse::position(const Type& t) const {
  std::size_t p = 0;
  for (std::size_t i = 0; i < index_.name_count(); ++i) {
    if (t.has(1 + i)) p |= std::size_t{1} << i;
  }
  for (std::size_t k = 0; k < index_.direction_count(); ++k) p += threshold(t, k) * strides_[k];
  return p;
}

std::string TypeUniverse::describe(const Type& t) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 1; i < index_.size(); ++i) {
    if (!t.has(i)) continue;
    if (!first) out += ", ";
    out += index_.at(i).label();
    first = false;
  }
  return out + "}";
}

std::string TypeUniverse::bitstring(const Type& t) const {
  std::string out(index_.size(), '0');
  for (std::size_t i = 0; i < index_.size(); ++i) {
    if (t.has(i)) out[i] = '1';
  }
  return out;
}

Type TypeUniverse::type_from(std::span<const Concept> members) const {
  Type t;
  t.set(0);
  for (const auto& c : members) {
    if (c.kind() == Concept::Kind::kName) {
      auto pos = index_.name_position(c.name());
      if (!pos) throw UnknownSymbol("concept name '" + c.name() + "' not in signature");
      t.set(*pos);
    } else if (c.kind() == Concept::Kind::kAtLeast || c.kind() == Concept::Kind::kExists) {
      const Number n = c.kind() == Concept::Kind::kExists ? 1 : c.number();
      auto k = index_.direction_of(c.role());
      if (!k || !index_.at_least_position(c.role(), n))
        throw UnknownSymbol("'" + to_string(c) + "' not in signature");
      for (std::size_t j = 0; j < index_.number_count() && index_.numbers()[j] <= n; ++j)
        t.set(index_.direction_bit(*k, j));
    } else if (c.kind() != Concept::Kind::kTop) {
      throw UnknownSymbol("'" + to_string(c) + "' is not a basic concept");
    }
  }
  return t;
}

// }}}

// {{{ Satisfaction

CompiledConcept::CompiledConcept(const TypeUniverse& u, const Concept& c) { emit(u, c); }

void CompiledConcept::emit(const TypeUniverse& u, const Concept& c) {
  using K = Concept::Kind;
  const auto& idx = u.index();
  auto cardinality_bit = [&](const Role& r, Number n) -> std::uint32_t {
    auto pos = idx.at_least_position(r, n);
    if (!pos) throw UnknownSymbol("'>= " + std::to_string(n) + " " + to_string(r) + "' not in signature");
    return static_cast<std::uint32_t>(*pos);
  };
  switch (c.kind()) {
    case K::kTop:
      code_.push_back({Op::kTrue, 0});
      break;
    case K::kBot:
      code_.push_back({Op::kTrue, 0});
      code_.push_back({Op::kNot, 0});
      break;
    case K::kName: {
      auto pos = idx.name_position(c.name());
      if (!pos) throw UnknownSymbol("concept name '" + c.name() + "' not in signature");
      code_.push_back({Op::kBit, static_cast<std::uint32_t>(*pos)});
      break;
    }
    case K::kAtLeast:
      code_.push_back({Op::kBit, cardinality_bit(c.role(), c.number())});
      break;
    case K::kExists:
      code_.push_back({Op::kBit, cardinality_bit(c.role(), 1)});
      break;
    case K::kAtMost:
      code_.push_back({Op::kBit, cardinality_bit(c.role(), c.number() + 1)});
      code_.push_back({Op::kNot, 0});
      break;
    case K::kNot:
      emit(u, c.lhs());
      code_.push_back({Op::kNot, 0});
      break;
    case K::kAnd:
      emit(u, c.lhs());
      emit(u, c.rhs());
      code_.push_back({Op::kAnd, 0});
      break;
    case K::kOr:
      emit(u, c.lhs());
      emit(u, c.rhs());
      code_.push_back({Op::kOr, 0});
      break;
  }
}

bool CompiledConcept::operator()(const Type& t) const {
  // Concepts are shallow; a fixed stack avoids allocation per evaluation.
  bool stack[64];
  std::vector<bool> spill;
  bool* st = stack;
  if (code_.size() > 64) {
    spill.resize(code_.size());
    st = nullptr;
  }
  std::size_t sp = 0;
  auto push = [&](bool v) {
    if (st)
      st[sp++] = v;
    else
      spill[sp++] = v;
  };
  auto pop = [&]() -> bool { return st ? st[--sp] : static_cast<bool>(spill[--sp]); };
  for (const auto& step : code_) {
    switch (step.op) {
      case Op::kTrue:
        push(true);
        break;
      case Op::kBit:
        push(t.has(step.bit));
        break;
      case Op::kNot:
        push(!pop());
        break;
      case Op::kAnd: {
        const bool b = pop(), a = pop();
        push(a && b);
        break;
      }
      case Op::kOr: {
        const bool b = pop(), a = pop();
        push(a || b);
        break;
      }
    }
  }
  return pop();
}

namespace {
Concept inclusion_concept(const Inclusion& inc) {
  return Concept::Not(Concept::And(inc.lhs, Concept::Not(inc.rhs)));
}
}  // namespace

bool satisfies(const TypeUniverse& u, const Type& t, const Concept& c) { return CompiledConcept(u, c)(t); }

bool satisfies(const TypeUniverse& u, const Type& t, const Inclusion& inc) {
  return satisfies(u, t, inclusion_concept(inc));
}

TypeSet types_of(const TypeUniverse& u, const Concept& c) { return filter_types(u, CompiledConcept(u, c)); }

TypeSet types_of(const TypeUniverse& u, const Inclusion& inc) { return types_of(u, inclusion_concept(inc)); }

TypeGroup model_type_group(const TypeUniverse& u, std::span<const Inclusion> tbox) {
  TypeGroup group;
  group.reserve(tbox.size());
  for (const auto& inc : tbox) group.push_back(types_of(u, inc));
  return group;
}

// }}}

// {{{ Role coherence

namespace {

// Bit k set iff some type of xi carries ∃R_k.
std::vector<bool> present_directions(const TypeUniverse& u, const TypeSet& xi) {
  std::vector<bool> present(u.index().direction_count(), false);
  for (const auto& t : xi) {
    for (std::size_t k = 0; k < present.size(); ++k) {
      if (u.has_exists(t, k)) present[k] = true;
    }
  }
  return present;
}

}  // namespace

Coherence role_coherent(const TypeUniverse& u, const TypeSet& xi) {
  Coherence out;
  const auto present = present_directions(u, xi);
  for (std::size_t k = 0; k < present.size(); ++k) {
    if (present[k] && !present[BasicConceptIndex::inverse_direction(k)]) {
      out.coherent = false;
      out.missing.push_back(u.index().direction(k));
    }
  }
  return out;
}

TypeSet coherent_core(const TypeUniverse& u, const TypeSet& xi) {
  std::vector<Type> kept(xi.begin(), xi.end());
  for (;;) {
    const auto present = present_directions(u, TypeSet(kept));
    std::vector<bool> orphan(present.size(), false);
    bool any = false;
    for (std::size_t k = 0; k < present.size(); ++k) {
      orphan[k] = present[k] && !present[BasicConceptIndex::inverse_direction(k)];
      any = any || orphan[k];
    }
    if (!any) return TypeSet(std::move(kept));
    std::erase_if(kept, [&](const Type& t) {
      for (std::size_t k = 0; k < orphan.size(); ++k) {
        if (orphan[k] && u.has_exists(t, k)) return true;
      }
      return false;
    });
  }
}

std::string describe(const TypeUniverse& u, const TypeSet& xi) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : xi) {
    if (!first) out += ", ";
    out += u.describe(t);
    first = false;
  }
  return out + "}";
}

// }}}

}  // namespace paralite

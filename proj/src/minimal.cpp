#include "paralite/minimal.hpp"

#include <algorithm>

#include "paralite/error.hpp"
#include "paralite/kernels.hpp"

namespace paralite {

std::string_view to_string(ClosureMode mode) {
  return mode == ClosureMode::kRealizable ? "realizable" : "extend";
}

ClosureMode parse_closure_mode(std::string_view text) {
  if (text == "realizable") return ClosureMode::kRealizable;
  if (text == "extend") return ClosureMode::kExtend;
  throw Error("unknown closure mode '" + std::string(text) + "' (expected realizable or extend)");
}

std::string SemanticsConfig::name() const {
  return std::string(to_string(distance)) + "+" + aggregator.name();
}

LambdaTable::LambdaTable(const TypeUniverse& u, const DistanceFn& d, const Aggregator& f, const TypeGroup& pi,
                         TypeSet pool)
    : pool_(std::move(pool)), values_(lambda_column(u, d, f, pi, pool_)) {}

const DistanceValue& LambdaTable::at(const Type& t) const {
  auto it = std::lower_bound(pool_.begin(), pool_.end(), t);
  if (it == pool_.end() || *it != t) throw Error("type is outside the λ table's pool");
  return values_[static_cast<std::size_t>(it - pool_.begin())];
}

DistanceValue LambdaTable::minimum() const {
  if (values_.empty()) throw EmptyPool();
  return *std::min_element(values_.begin(), values_.end());
}

TypeSet LambdaTable::argmin() const {
  const auto least = minimum();
  std::vector<Type> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == least) out.push_back(pool_[i]);
  }
  return TypeSet(std::move(out));
}

MinimalSetResult minimal_types(const TypeUniverse& u, const SemanticsConfig& cfg, const TypeGroup& pi,
                               const TypeSet& pool) {
  if (pool.empty()) throw EmptyPool();
  MinimalSetResult r;
  r.table = LambdaTable(u, DistanceFn(cfg.distance, u), cfg.aggregator, pi, pool);
  r.minimal = r.table.argmin();
  return r;
}

Repair repair_direction(const TypeUniverse& u, const LambdaTable& table, std::size_t k) {
  const std::size_t needed = BasicConceptIndex::inverse_direction(k);
  Repair repair;
  repair.missing = u.index().direction(k);
  const auto& pool = table.pool();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (u.has_exists(pool[i], needed)) repair.candidates.emplace_back(pool[i], table.values()[i]);
  }
  if (repair.candidates.empty()) {
    throw RepairImpossible("no candidate type carries >=1 " + to_string(u.index().direction(needed)) +
                           " to pair with >=1 " + to_string(repair.missing));
  }
  repair.best = std::min_element(repair.candidates.begin(), repair.candidates.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; })
                    ->second;
  for (const auto& [t, v] : repair.candidates) {
    if (v == repair.best) repair.added.insert(t);
  }
  return repair;
}

TypeSet mu_step(const TypeUniverse& u, const TypeSet& xi, const LambdaTable& table, std::vector<Repair>* log) {
  const auto coherence = role_coherent(u, xi);
  if (coherence.coherent) return xi;
  TypeSet out = xi;
  for (const auto& role : coherence.missing) {
    auto repair = repair_direction(u, table, *u.index().direction_of(role));
    out = unite(out, repair.added);
    if (log) log->push_back(std::move(repair));
  }
  return out;
}

TypeSet mu_step(const TypeUniverse& u, const SemanticsConfig& cfg, const TypeSet& xi, const TypeGroup& pi,
                const TypeSet& pool) {
  const LambdaTable table(u, DistanceFn(cfg.distance, u), cfg.aggregator, pi, pool);
  return mu_step(u, xi, table, nullptr);
}

namespace {

// Runs μ from r.minimal until nothing changes; every step grows the set
// inside a finite pool, so this terminates.
void close_in_place(const TypeUniverse& u, MinimalSetResult& r) {
  const TypeSet start = r.minimal;
  for (;;) {
    TypeSet next = mu_step(u, r.minimal, r.table, &r.repairs);
    if (next == r.minimal) break;
    r.minimal = std::move(next);
    ++r.iterations;
  }
  r.added_by_closure = subtract(r.minimal, start);
}

}  // namespace

MinimalSetResult coherence_closure(const TypeUniverse& u, const SemanticsConfig& cfg, const TypeSet& xi,
                                   const TypeGroup& pi, const TypeSet& pool) {
  MinimalSetResult r;
  r.table = LambdaTable(u, DistanceFn(cfg.distance, u), cfg.aggregator, pi, pool);
  r.minimal = xi;
  close_in_place(u, r);
  return r;
}

MinimalSetResult minimal_model_type_set(const TypeUniverse& u, const SemanticsConfig& cfg,
                                        std::span<const Inclusion> tbox) {
  const TypeGroup pi = model_type_group(u, tbox);
  MinimalSetResult r = minimal_types(u, cfg, pi, u.all());
  if (cfg.closure == ClosureMode::kRealizable && r.table.minimum() == DistanceValue(0)) {
    TypeSet core = coherent_core(u, r.minimal);
    if (!core.empty()) {
      r.removed_by_core = subtract(r.minimal, core);
      r.minimal = std::move(core);
      return r;
    }
  }
  close_in_place(u, r);
  return r;
}

TBoxEntailment tbox_d_entails(const SemanticsConfig& cfg, std::span<const Inclusion> tbox, const Inclusion& psi,
                              std::uint64_t max_types) {
  KnowledgeBase kb;
  for (const auto& inc : tbox) kb.add(inc);
  TBoxEntailment out;
  out.universe = TypeUniverse::build(merge(signature_of(kb), signature_of(Axiom{psi})), max_types);
  out.model_types = minimal_model_type_set(*out.universe, cfg, kb.tbox());
  const CompiledConcept holds(*out.universe,
                              Concept::Not(Concept::And(psi.lhs, Concept::Not(psi.rhs))));
  out.entailed = true;
  for (const auto& t : out.model_types.minimal) {
    if (!holds(t)) {
      out.entailed = false;
      out.witness = t;
      break;
    }
  }
  return out;
}

}  // namespace paralite

#pragma once

// λ-minimal types of a pool, the μ repair operator that restores role
// coherence, minimal model type sets of TBoxes and TBox d-entailment.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paralite/metric.hpp"
#include "paralite/universe.hpp"

namespace paralite {

// How a λ-minimal type set is turned into a role-coherent one.
//   kRealizable: if the minimal types are exactly the model types of a
//     consistent TBox, keep the largest role-coherent part of them; otherwise
//     run μ to its fixpoint. Individuals take their λ-minimal types unclosed.
//   kExtend: always run μ to its fixpoint, for TBoxes and individuals alike.
enum class ClosureMode : std::uint8_t { kRealizable, kExtend };

std::string_view to_string(ClosureMode mode);
ClosureMode parse_closure_mode(std::string_view text);

struct SemanticsConfig {
  DistanceKind distance = DistanceKind::kHamming;
  Aggregator aggregator = Aggregator::sum();
  ClosureMode closure = ClosureMode::kRealizable;

  // "hamming+sum"
  std::string name() const;
};

// λ(·, pi) for every type of a pool, computed once.
class LambdaTable {
 public:
  LambdaTable() = default;
  LambdaTable(const TypeUniverse& u, const DistanceFn& d, const Aggregator& f, const TypeGroup& pi,
              TypeSet pool);

  const TypeSet& pool() const { return pool_; }
  const std::vector<DistanceValue>& values() const { return values_; }
  // Throws Error when t is not in the pool.
  const DistanceValue& at(const Type& t) const;
  // Pool must be nonempty.
  DistanceValue minimum() const;
  TypeSet argmin() const;

 private:
  TypeSet pool_;
  std::vector<DistanceValue> values_;
};

// One repaired direction: R had ∃R but no ∃R⁻, so types carrying ∃R⁻ were
// scored and the cheapest ones added.
struct Repair {
  Role missing;
  std::vector<std::pair<Type, DistanceValue>> candidates;
  DistanceValue best;
  TypeSet added;
};

struct MinimalSetResult {
  TypeSet minimal;
  LambdaTable table;
  TypeSet added_by_closure;
  // Minimal types dropped because they could not be part of a model.
  TypeSet removed_by_core;
  std::vector<Repair> repairs;
  std::size_t iterations = 0;
};

// Λ: the types of pool with the least λ(·, pi). Throws EmptyPool.
MinimalSetResult minimal_types(const TypeUniverse& u, const SemanticsConfig& cfg, const TypeGroup& pi,
                               const TypeSet& pool);

// Adds, for ∃R_k, the pool types with ∃R_k⁻ whose λ is least among such
// types. Throws RepairImpossible when the pool has none.
Repair repair_direction(const TypeUniverse& u, const LambdaTable& table, std::size_t k);

// One application of μ: every missing direction is repaired at once.
TypeSet mu_step(const TypeUniverse& u, const TypeSet& xi, const LambdaTable& table,
                std::vector<Repair>* log = nullptr);
TypeSet mu_step(const TypeUniverse& u, const SemanticsConfig& cfg, const TypeSet& xi, const TypeGroup& pi,
                const TypeSet& pool);

// Fixpoint of μ starting from xi.
MinimalSetResult coherence_closure(const TypeUniverse& u, const SemanticsConfig& cfg, const TypeSet& xi,
                                   const TypeGroup& pi, const TypeSet& pool);

// Λ⁺ of Π_Σ(T) over the whole universe, following cfg.closure.
MinimalSetResult minimal_model_type_set(const TypeUniverse& u, const SemanticsConfig& cfg,
                                        std::span<const Inclusion> tbox);

struct TBoxEntailment {
  bool entailed = false;
  // A minimal model type violating the inclusion.
  std::optional<Type> witness;
  UniversePtr universe;
  MinimalSetResult model_types;
};

// Evaluated over Sig(T ∪ {psi}).
TBoxEntailment tbox_d_entails(const SemanticsConfig& cfg, std::span<const Inclusion> tbox, const Inclusion& psi,
                              std::uint64_t max_types = kDefaultMaxTypes);

}  // namespace paralite

#pragma once

// Human and machine renderings of analyses, verdicts and comparison grids.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "paralite/features.hpp"

namespace paralite {

using Json = nlohmann::ordered_json;

Json signature_json(const Signature& sig);
Json feature_json(const TypeUniverse& u, const Feature& f);
Json verdict_json(const TypeUniverse& u, const Verdict& v);

// Schema: semantics, signature, basic_concepts, minimal_model_types,
// lambda_table, added_by_closure, removed_by_core, individuals,
// allowed_types and (when given) verdict. Types are bitstrings over
// basic_concepts; distances are exact rationals rendered as strings.
Json explain_json(const KbAnalysis& a, const std::optional<Verdict>& verdict = std::nullopt);

// The same content as aligned tables: the minimal model types with their
// λ over the TBox, then one column per profile concept and per-individual λ.
std::string explain_text(const KbAnalysis& a, const std::optional<Verdict>& verdict = std::nullopt);

std::string describe(const TypeUniverse& u, const Feature& f);

struct CompareRow {
  std::string distance;
  std::string aggregator;
  std::string axiom;
  bool entailed = false;
  // Types in the countermodel's Ξ; 0 when entailed.
  std::size_t witness_size = 0;
  double runtime_ms = 0;
};

// Every axiom under every (distance, aggregator) pair, in that nesting order.
std::vector<CompareRow> compare_grid(const KnowledgeBase& kb, std::span<const Axiom> axioms,
                                     std::span<const DistanceKind> distances,
                                     std::span<const Aggregator> aggregators, ClosureMode closure,
                                     const Guards& guards = {});

// Header: distance,aggregator,axiom,verdict,witness-size,runtime-ms
std::string compare_csv(std::span<const CompareRow> rows);

}  // namespace paralite

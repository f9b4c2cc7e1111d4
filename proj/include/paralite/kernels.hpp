#pragma once

// Bulk kernels over a whole universe. Each has an OpenMP version used by the
// library and a plain serial version kept as the reference for tests and the
// benchmark. Both produce identical output in canonical order.

#include <cstdint>
#include <vector>

#include "paralite/metric.hpp"
#include "paralite/universe.hpp"

namespace paralite {

TypeSet filter_types(const TypeUniverse& u, const CompiledConcept& c);
TypeSet filter_types_serial(const TypeUniverse& u, const CompiledConcept& c);

// Integer distance from every universe type (indexed by position) to xi,
// or d.top() everywhere when xi is empty. Hamming uses a multi-source BFS
// over single-bit moves; drastic a membership bitmap.
std::vector<std::uint32_t> distance_column(const TypeUniverse& u, const DistanceFn& d, const TypeSet& xi);
// Brute-force minimum over the members of xi.
std::vector<std::uint32_t> distance_column_serial(const TypeUniverse& u, const DistanceFn& d,
                                                  const TypeSet& xi);

// λ(τ, pi) for each τ of pool, in pool order.
std::vector<DistanceValue> lambda_column(const TypeUniverse& u, const DistanceFn& d, const Aggregator& f,
                                         const TypeGroup& pi, const TypeSet& pool);
std::vector<DistanceValue> lambda_column_serial(const TypeUniverse& u, const DistanceFn& d,
                                                const Aggregator& f, const TypeGroup& pi,
                                                const TypeSet& pool);

}  // namespace paralite

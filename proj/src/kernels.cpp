#include "paralite/kernels.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>

#include "paralite/error.hpp"

namespace paralite {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::ptrdiff_t signed_size(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

std::vector<std::size_t> positions_of(const TypeUniverse& u, const TypeSet& xi) {
  std::vector<std::size_t> out;
  out.reserve(xi.size());
  for (const auto& t : xi) {
    if (!u.contains(t)) throw UniverseMismatch("type " + u.bitstring(t) + " is not in the universe");
    out.push_back(u.position(t));
  }
  return out;
}

std::vector<std::uint32_t> hamming_bfs(const TypeUniverse& u, const TypeSet& xi) {
  const auto& idx = u.index();
  const std::size_t names = idx.name_count();
  const std::size_t radix = idx.number_count() + 1;
  std::vector<std::uint32_t> dist(u.size(), kUnreached);
  std::vector<std::size_t> frontier = positions_of(u, xi);
  for (auto p : frontier) dist[p] = 0;
  std::vector<std::size_t> next;
  for (std::uint32_t level = 1; !frontier.empty(); ++level) {
    next.clear();
    auto visit = [&](std::size_t q) {
      if (dist[q] == kUnreached) {
        dist[q] = level;
        next.push_back(q);
      }
    };
    for (auto p : frontier) {
      for (std::size_t i = 0; i < names; ++i) visit(p ^ (std::size_t{1} << i));
      for (std::size_t k = 0; k < idx.direction_count(); ++k) {
        const std::size_t stride = u.direction_stride(k);
        const std::size_t thr = (p / stride) % radix;
        if (thr > 0) visit(p - stride);
        if (thr + 1 < radix) visit(p + stride);
      }
    }
    frontier.swap(next);
  }
  return dist;
}

}  // namespace

TypeSet filter_types(const TypeUniverse& u, const CompiledConcept& c) {
  const auto& all = u.types();
  std::vector<char> keep(all.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < signed_size(all.size()); ++i) keep[i] = c(all[i]) ? 1 : 0;
  std::vector<Type> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) out.push_back(all[i]);
  }
  return TypeSet(std::move(out));
}

TypeSet filter_types_serial(const TypeUniverse& u, const CompiledConcept& c) {
  std::vector<Type> out;
  for (const auto& t : u.types()) {
    if (c(t)) out.push_back(t);
  }
  return TypeSet(std::move(out));
}

std::vector<std::uint32_t> distance_column(const TypeUniverse& u, const DistanceFn& d, const TypeSet& xi) {
  if (xi.empty()) return std::vector<std::uint32_t>(u.size(), d.top());
  if (d.kind() == DistanceKind::kHamming) return hamming_bfs(u, xi);
  std::vector<std::uint32_t> dist(u.size(), 1);
  const auto members = positions_of(u, xi);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < signed_size(members.size()); ++i) dist[members[i]] = 0;
  return dist;
}

std::vector<std::uint32_t> distance_column_serial(const TypeUniverse& u, const DistanceFn& d,
                                                  const TypeSet& xi) {
  std::vector<std::uint32_t> dist(u.size(), d.top());
  const auto& all = u.types();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& other : xi) dist[i] = std::min(dist[i], d.raw(all[i], other));
  }
  return dist;
}

std::vector<DistanceValue> lambda_column(const TypeUniverse& u, const DistanceFn& d, const Aggregator& f,
                                         const TypeGroup& pi, const TypeSet& pool) {
  std::vector<std::vector<std::uint32_t>> columns(pi.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < signed_size(pi.size()); ++j) columns[j] = distance_column(u, d, pi[j]);
  const auto rows = positions_of(u, pool);
  std::vector<DistanceValue> out(rows.size());
#pragma omp parallel
  {
    std::vector<DistanceValue> values(pi.size());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < signed_size(rows.size()); ++i) {
      for (std::size_t j = 0; j < pi.size(); ++j) values[j] = DistanceValue(columns[j][rows[i]]);
      out[i] = aggregate(f, values);
    }
  }
  return out;
}

std::vector<DistanceValue> lambda_column_serial(const TypeUniverse& u, const DistanceFn& d,
                                                const Aggregator& f, const TypeGroup& pi,
                                                const TypeSet& pool) {
  (void)u;
  std::vector<DistanceValue> out;
  out.reserve(pool.size());
  for (const auto& t : pool) out.push_back(lambda(d, f, t, pi));
  return out;
}

}  // namespace paralite

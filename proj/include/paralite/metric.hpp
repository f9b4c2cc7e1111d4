#pragma once

// Pseudo-distances between types, distance to a type set, aggregation
// functions and the aggregated distance λ from a type to a type group.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "paralite/universe.hpp"

namespace paralite {

// Exact non-negative rational. Vote yields 0, 1/2, 1; the rest are integers.
using DistanceValue = boost::rational<std::int64_t>;

std::string to_string(const DistanceValue& v);

enum class DistanceKind : std::uint8_t { kHamming, kDrastic };

std::string_view to_string(DistanceKind kind);
DistanceKind parse_distance_kind(std::string_view text);

// A distance bound to one universe, so it knows its 𝐝 (one more than the
// largest distance two types of that universe can have).
class DistanceFn {
 public:
  DistanceFn(DistanceKind kind, const TypeUniverse& u);

  DistanceKind kind() const { return kind_; }
  std::uint32_t top() const { return top_; }
  DistanceValue top_value() const { return DistanceValue(top_); }
  std::size_t width() const { return width_; }

  // Integer distance; no universe check.
  std::uint32_t raw(const Type& a, const Type& b) const {
    if (kind_ == DistanceKind::kDrastic) return a == b ? 0 : 1;
    return static_cast<std::uint32_t>(a.symmetric_difference(b));
  }

 private:
  DistanceKind kind_;
  std::uint32_t top_;
  std::size_t width_;
};

class Aggregator {
 public:
  enum class Kind : std::uint8_t { kSum, kMax, kVote };

  static Aggregator sum() { return Aggregator(Kind::kSum, DistanceValue(0)); }
  static Aggregator max() { return Aggregator(Kind::kMax, DistanceValue(0)); }
  // Throws Error unless 0 < kappa < 1.
  static Aggregator vote(DistanceValue kappa);

  Kind kind() const { return kind_; }
  const DistanceValue& kappa() const { return kappa_; }

  // Strict inequalities survive appending equal extra arguments.
  bool hereditary() const { return kind_ == Kind::kSum; }
  // Strictly increasing in each argument.
  bool monotonic() const { return kind_ == Kind::kSum; }

  // "sum", "max", "vote:1/2".
  std::string name() const;

  friend bool operator==(const Aggregator&, const Aggregator&) = default;

 private:
  Aggregator(Kind kind, DistanceValue kappa) : kind_(kind), kappa_(kappa) {}

  Kind kind_;
  DistanceValue kappa_;
};

// Accepts "sum", "max", "vote:p/q" and "vote" (κ = 1/2).
Aggregator parse_aggregator(std::string_view text);
DistanceValue parse_rational(std::string_view text);

// Throws UniverseMismatch when a type has bits beyond d's universe.
DistanceValue type_distance(const DistanceFn& d, const Type& a, const Type& b);
// min over xi, or 𝐝 when xi is empty.
DistanceValue set_distance(const DistanceFn& d, const Type& t, const TypeSet& xi);
// The empty multiset aggregates to 0.
DistanceValue aggregate(const Aggregator& f, std::span<const DistanceValue> values);
DistanceValue lambda(const DistanceFn& d, const Aggregator& f, const Type& t, const TypeGroup& pi);

}  // namespace paralite

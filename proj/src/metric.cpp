#include "paralite/metric.hpp"

#include <algorithm>
#include <charconv>

#include "paralite/error.hpp"

namespace paralite {

std::string to_string(const DistanceValue& v) {
  if (v.denominator() == 1) return std::to_string(v.numerator());
  return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

std::string_view to_string(DistanceKind kind) {
  return kind == DistanceKind::kHamming ? "hamming" : "drastic";
}

DistanceKind parse_distance_kind(std::string_view text) {
  if (text == "hamming") return DistanceKind::kHamming;
  if (text == "drastic") return DistanceKind::kDrastic;
  throw Error("unknown distance '" + std::string(text) + "' (expected hamming or drastic)");
}

DistanceFn::DistanceFn(DistanceKind kind, const TypeUniverse& u)
    : kind_(kind),
      top_(kind == DistanceKind::kHamming ? static_cast<std::uint32_t>(u.index().size()) : 2),
      width_(u.index().size()) {}

Aggregator Aggregator::vote(DistanceValue kappa) {
  if (kappa <= DistanceValue(0) || kappa >= DistanceValue(1)) throw Error("voting index must lie strictly between 0 and 1, got " + to_string(kappa));
  return Aggregator(Kind::kVote, kappa);
}

std::string Aggregator::name() const {
  switch (kind_) {
    case Kind::kSum:
      return "sum";
    case Kind::kMax:
      return "max";
    case Kind::kVote:
      return "vote:" + std::to_string(kappa_.numerator()) + "/" + std::to_string(kappa_.denominator());
  }
  return "?";
}

DistanceValue parse_rational(std::string_view text) {
  auto number = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw Error("malformed rational '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    // Decimal fractions such as 0.25 are accepted too.
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return DistanceValue(number(text));
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 12) throw Error("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t whole = dot == 0 ? 0 : number(text.substr(0, dot));
    return DistanceValue(whole * scale + (frac.empty() ? 0 : number(frac)), scale);
  }
  const auto den = number(text.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  return DistanceValue(number(text.substr(0, slash)), den);
}

Aggregator parse_aggregator(std::string_view text) {
  if (text == "sum") return Aggregator::sum();
  if (text == "max") return Aggregator::max();
  if (text == "vote") return Aggregator::vote(DistanceValue(1, 2));
  if (text.starts_with("vote:")) return Aggregator::vote(parse_rational(text.substr(5)));
  throw Error("unknown aggregator '" + std::string(text) + "' (expected sum, max or vote:p/q)");
}

DistanceValue type_distance(const DistanceFn& d, const Type& a, const Type& b) {
  if (a.width() > d.width() || b.width() > d.width())
    throw UniverseMismatch("type has basic concepts outside the distance's universe");
  return DistanceValue(d.raw(a, b));
}

DistanceValue set_distance(const DistanceFn& d, const Type& t, const TypeSet& xi) {
  std::uint32_t best = d.top();
  for (const auto& other : xi) {
    best = std::min(best, d.raw(t, other));
    if (best == 0) break;
  }
  return DistanceValue(best);
}

DistanceValue aggregate(const Aggregator& f, std::span<const DistanceValue> values) {
  switch (f.kind()) {
    case Aggregator::Kind::kSum: {
      DistanceValue total(0);
      for (const auto& v : values) total += v;
      return total;
    }
    case Aggregator::Kind::kMax: {
      DistanceValue best(0);
      for (const auto& v : values) best = std::max(best, v);
      return best;
    }
    case Aggregator::Kind::kVote: {
      const auto n = static_cast<std::int64_t>(values.size());
      const auto zeros = static_cast<std::int64_t>(std::count(values.begin(), values.end(), DistanceValue(0)));
      if (zeros == n) return DistanceValue(0);
      const auto p = f.kappa().numerator();
      const auto q = f.kappa().denominator();
      const std::int64_t quorum = (p * n + q - 1) / q;
      if (quorum <= zeros) return DistanceValue(1, 2);
      return DistanceValue(1);
    }
  }
  return DistanceValue(0);
}

DistanceValue lambda(const DistanceFn& d, const Aggregator& f, const Type& t, const TypeGroup& pi) {
  std::vector<DistanceValue> values;
  values.reserve(pi.size());
  for (const auto& xi : pi) values.push_back(set_distance(d, t, xi));
  return aggregate(f, values);
}

}  // namespace paralite

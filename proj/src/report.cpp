#include "paralite/report.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

namespace paralite {

namespace {

Json type_list(const TypeUniverse& u, const TypeSet& xi) {
  Json out = Json::array();
  for (const auto& t : xi) out.push_back(u.bitstring(t));
  return out;
}

Json semantics_json(const Semantics& s) {
  Json out;
  if (const auto* cfg = std::get_if<SemanticsConfig>(&s)) {
    out["distance"] = std::string(to_string(cfg->distance));
    out["agg"] = cfg->aggregator.name();
    out["closure"] = std::string(to_string(cfg->closure));
  } else {
    out["distance"] = "classical";
  }
  return out;
}

// Left-aligned columns separated by two spaces.
class Table {
 public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string render(const std::string& indent) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
    }
    std::string out;
    for (const auto& r : rows_) {
      std::string line = indent;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - display_width(r[i]) + 2, ' ');
      }
      out += line + "\n";
    }
    return out;
  }

 private:
  // Counts code points, so "λ" and "⊤" take one column.
  static std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  }

  std::vector<std::vector<std::string>> rows_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

Json signature_json(const Signature& sig) {
  Json out;
  out["concepts"] = sig.concepts;
  out["roles"] = sig.roles;
  out["individuals"] = sig.individuals;
  out["numbers"] = sig.numbers;
  return out;
}

Json feature_json(const TypeUniverse& u, const Feature& f) {
  Json out;
  out["xi"] = type_list(u, f.xi);
  Json types;
  for (const auto& [a, t] : f.herbrand.types) types[a] = u.bitstring(t);
  out["types"] = types.is_null() ? Json::object() : types;
  Json kept = Json::array();
  for (const auto& ra : f.herbrand.kept) kept.push_back(to_string(ra));
  out["kept"] = kept;
  out["readable"] = describe(u, f);
  return out;
}

Json verdict_json(const TypeUniverse& u, const Verdict& v) {
  Json out;
  out["entailed"] = v.entailed;
  out["witness"] = v.witness ? feature_json(u, *v.witness) : Json(nullptr);
  return out;
}

std::string describe(const TypeUniverse& u, const Feature& f) {
  std::vector<std::string> parts;
  for (const auto& [a, t] : f.herbrand.types) parts.push_back(a + ": " + u.describe(t));
  std::vector<std::string> kept;
  for (const auto& ra : f.herbrand.kept) kept.push_back(to_string(ra));
  return "<" + paralite::describe(u, f.xi) + ", [" + join(parts, "; ") + "], {" + join(kept, ", ") + "}>";
}

Json explain_json(const KbAnalysis& a, const std::optional<Verdict>& verdict) {
  const auto& u = *a.universe;
  Json out;
  out["semantics"] = semantics_json(a.semantics);
  out["signature"] = signature_json(u.signature());
  Json basics = Json::array();
  for (std::size_t i = 0; i < u.index().size(); ++i) basics.push_back(u.index().at(i).label());
  out["basic_concepts"] = basics;
  out["minimal_model_types"] = type_list(u, a.space.pool);
  Json lambda = Json::object();
  if (a.tbox) {
    const auto& table = a.tbox->table;
    for (std::size_t i = 0; i < table.pool().size(); ++i)
      lambda[u.bitstring(table.pool()[i])] = to_string(table.values()[i]);
    out["lambda_table"] = lambda;
    out["added_by_closure"] = type_list(u, a.tbox->added_by_closure);
    out["removed_by_core"] = type_list(u, a.tbox->removed_by_core);
  } else {
    out["lambda_table"] = lambda;
    out["added_by_closure"] = Json::array();
    out["removed_by_core"] = Json::array();
  }
  Json individuals = Json::object();
  Json allowed = Json::object();
  for (const auto& [name, it] : a.individuals) {
    Json entry;
    Json profile = Json::array();
    for (const auto& c : it.profile.concepts) profile.push_back(to_string(c));
    entry["profile"] = profile;
    Json lam = Json::object();
    if (it.minimal) {
      const auto& table = it.minimal->table;
      for (std::size_t i = 0; i < table.pool().size(); ++i)
        lam[u.bitstring(table.pool()[i])] = to_string(table.values()[i]);
      entry["added_by_closure"] = type_list(u, it.minimal->added_by_closure);
    }
    entry["lambda"] = lam;
    individuals[name] = entry;
    allowed[name] = type_list(u, it.allowed);
  }
  out["individuals"] = individuals;
  out["allowed_types"] = allowed;
  out["herbrand_sets"] = a.space.herbrands.size();
  if (verdict) out["verdict"] = verdict_json(u, *verdict);
  return out;
}

std::string explain_text(const KbAnalysis& a, const std::optional<Verdict>& verdict) {
  const auto& u = *a.universe;
  const auto& sig = u.signature();
  std::ostringstream out;
  out << "semantics: " << to_string(a.semantics);
  if (const auto* cfg = std::get_if<SemanticsConfig>(&a.semantics)) out << " (closure " << to_string(cfg->closure) << ")";
  out << "\n";
  auto braces = [](const auto& set) {
    std::vector<std::string> parts;
    for (const auto& x : set) {
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::string>)
        parts.push_back(x);
      else
        parts.push_back(std::to_string(x));
    }
    return "{" + join(parts, ", ") + "}";
  };
  out << "signature: concepts " << braces(sig.concepts) << ", roles " << braces(sig.roles) << ", individuals "
      << braces(sig.individuals) << ", numbers " << braces(sig.numbers) << "\n";
  out << "universe: " << u.size() << " types\n\n";

  out << "minimal model types (" << a.space.pool.size() << "):\n";
  Table types;
  types.row({"type", a.tbox ? "λ" : ""});
  for (const auto& t : a.space.pool) types.row({u.describe(t), a.tbox ? to_string(a.tbox->table.at(t)) : ""});
  out << types.render("  ");
  if (a.tbox) {
    if (!a.tbox->removed_by_core.empty())
      out << "removed (no model realizes them): " << describe(u, a.tbox->removed_by_core) << "\n";
    for (const auto& r : a.tbox->repairs) {
      std::vector<std::string> cands;
      for (const auto& [t, v] : r.candidates) cands.push_back(u.describe(t) + "=" + to_string(v));
      out << "repair for " << to_string(r.missing) << ": candidates " << join(cands, ", ") << "; added "
          << describe(u, r.added) << "\n";
    }
    if (!a.tbox->added_by_closure.empty())
      out << "added by closure: " << describe(u, a.tbox->added_by_closure) << "\n";
  }

  bool any_profile = false;
  for (const auto& [name, it] : a.individuals) any_profile = any_profile || !it.profile.concepts.empty();
  if (any_profile && a.tbox) {
    out << "\nindividual distances:\n";
    Table cols;
    std::vector<std::string> head{"type"};
    for (const auto& [name, it] : a.individuals) {
      if (it.profile.concepts.empty()) continue;
      for (const auto& c : it.profile.concepts) head.push_back(to_string(c));
      head.push_back("λ(" + name + ")");
    }
    cols.row(head);
    const auto* cfg = std::get_if<SemanticsConfig>(&a.semantics);
    const DistanceFn d(cfg->distance, u);
    for (const auto& t : a.space.pool) {
      std::vector<std::string> row{u.describe(t)};
      for (const auto& [name, it] : a.individuals) {
        if (it.profile.concepts.empty()) continue;
        for (const auto& xi : it.profile.group) row.push_back(to_string(set_distance(d, t, xi)));
        row.push_back(to_string(it.minimal->table.at(t)));
      }
      cols.row(row);
    }
    out << cols.render("  ");
  }

  out << "\nallowed types:\n";
  for (const auto& [name, it] : a.individuals) {
    out << "  " << name << ": " << describe(u, it.allowed);
    if (it.profile.concepts.empty()) out << " (no assertions)";
    out << "\n";
  }
  out << "herbrand sets: " << a.space.herbrands.size() << "\n";
  if (verdict) {
    out << "\nverdict: " << (verdict->entailed ? "entailed" : "not entailed") << "\n";
    if (verdict->witness) out << "countermodel: " << describe(u, *verdict->witness) << "\n";
  }
  return out.str();
}

std::vector<CompareRow> compare_grid(const KnowledgeBase& kb, std::span<const Axiom> axioms,
                                     std::span<const DistanceKind> distances,
                                     std::span<const Aggregator> aggregators, ClosureMode closure,
                                     const Guards& guards) {
  std::vector<CompareRow> rows;
  for (const auto& d : distances) {
    for (const auto& f : aggregators) {
      const Reasoner reasoner(kb, SemanticsConfig{d, f, closure}, guards);
      for (const auto& ax : axioms) {
        const auto start = std::chrono::steady_clock::now();
        const Verdict v = reasoner.entails(ax);
        const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
        rows.push_back(CompareRow{std::string(to_string(d)), f.name(), to_string(ax), v.entailed,
                                  v.witness ? v.witness->xi.size() : 0, took.count()});
      }
    }
  }
  return rows;
}

std::string compare_csv(std::span<const CompareRow> rows) {
  std::ostringstream out;
  out << "distance,aggregator,axiom,verdict,witness-size,runtime-ms\n";
  for (const auto& r : rows) {
    out << r.distance << "," << r.aggregator << "," << csv_field(r.axiom) << "," << (r.entailed ? "yes" : "no") << ","
        << r.witness_size << "," << std::fixed << std::setprecision(3) << r.runtime_ms << "\n";
  }
  return out.str();
}

}  // namespace paralite

// paralite: command-line front end.
//
// Exit codes: 0 entailed / consistent, 1 not entailed / inconsistent, 2 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "paralite/error.hpp"
#include "paralite/features.hpp"
#include "paralite/generator.hpp"
#include "paralite/report.hpp"

namespace {

using namespace paralite;

struct Options {
  std::string kb_path;
  std::string axiom;
  std::string distance = "hamming";
  std::string agg = "sum";
  std::string kappa;
  std::string closure = "realizable";
  std::string format = "text";
  std::string out;
  std::string probes = "all";
  std::vector<std::string> kappas{"1/4", "1/2", "3/4"};
  std::uint64_t max_types = kDefaultMaxTypes;
  std::uint64_t max_features = kDefaultMaxFeatures;
  GeneratorProfile profile;
  std::string bias = "0";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw Error("cannot write '" + o.out + "'");
  file << text;
}

Guards guards(const Options& o) { return Guards{o.max_types, o.max_features}; }

SemanticsConfig config(const Options& o) {
  SemanticsConfig cfg;
  cfg.distance = parse_distance_kind(o.distance);
  cfg.aggregator = parse_aggregator(o.kappa.empty() ? o.agg : o.agg + ":" + o.kappa);
  cfg.closure = parse_closure_mode(o.closure);
  return cfg;
}

std::vector<Axiom> probes_for(const std::string& family, const Signature& sig) {
  if (family == "literals") return literal_probes(sig);
  if (family == "inclusions") return inclusion_probes(sig);
  if (family == "all") return probe_family(sig);
  throw Error("unknown probe family '" + family + "' (expected literals, inclusions or all)");
}

int run_entails(const Options& o, const Semantics& semantics) {
  const KnowledgeBase kb = parse_kb(read_file(o.kb_path));
  const Axiom axiom = parse_axiom(o.axiom);
  const Reasoner reasoner(kb, semantics, guards(o));
  const KbAnalysis analysis = reasoner.analysis_for(axiom);
  const Verdict v = decide(analysis.space, axiom);
  if (o.format == "json") {
    emit(o, explain_json(analysis, v).dump(2) + "\n");
  } else {
    std::string text = (v.entailed ? "entailed" : "not entailed") + std::string("\n");
    if (v.witness) text += "countermodel: " + describe(*analysis.universe, *v.witness) + "\n";
    emit(o, text);
  }
  return v.entailed ? 0 : 1;
}

int run_check(const Options& o) {
  const KnowledgeBase kb = parse_kb(read_file(o.kb_path));
  const bool consistent = is_consistent(kb, guards(o));
  const KbAnalysis analysis = analyze(config(o), kb, sig_star(kb), guards(o));
  if (o.format == "json") {
    Json out;
    out["consistent"] = consistent;
    out["signature"] = signature_json(analysis.universe->signature());
    out["minimal_herbrand_sets"] = analysis.space.herbrands.size();
    emit(o, out.dump(2) + "\n");
  } else {
    emit(o, std::string(consistent ? "consistent" : "inconsistent") + "\nminimal herbrand sets: " +
                std::to_string(analysis.space.herbrands.size()) + "\n");
  }
  return consistent ? 0 : 1;
}

int run_explain(const Options& o) {
  const KnowledgeBase kb = parse_kb(read_file(o.kb_path));
  const KbAnalysis analysis = analyze(config(o), kb, sig_star(kb), guards(o));
  emit(o, o.format == "json" ? explain_json(analysis).dump(2) + "\n" : explain_text(analysis));
  return 0;
}

int run_closure(const Options& o) {
  const KnowledgeBase kb = parse_kb(read_file(o.kb_path));
  const auto probes = probes_for(o.probes, sig_star(kb));
  const ProbeResult r = cn_probe(config(o), kb, probes, guards(o));
  if (o.format == "json") {
    Json out;
    Json entailed = Json::array();
    for (const auto& ax : r.entailed) entailed.push_back(to_string(ax));
    out["probes"] = probes.size();
    out["entailed"] = entailed;
    out["consistent"] = r.consistent;
    emit(o, out.dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& ax : r.entailed) text += to_string(ax) + "\n";
    text += std::to_string(r.entailed.size()) + " of " + std::to_string(probes.size()) + " probes entailed; " +
            (r.consistent ? "consistent" : "inconsistent") + "\n";
    emit(o, text);
  }
  return r.consistent ? 0 : 1;
}

int run_compare(const Options& o) {
  const KnowledgeBase kb = parse_kb(read_file(o.kb_path));
  std::vector<Axiom> axioms;
  if (!o.axiom.empty())
    axioms.push_back(parse_axiom(o.axiom));
  else
    axioms = probes_for(o.probes, sig_star(kb));
  const std::vector<DistanceKind> distances{DistanceKind::kHamming, DistanceKind::kDrastic};
  std::vector<Aggregator> aggregators{Aggregator::sum(), Aggregator::max()};
  for (const auto& k : o.kappas) aggregators.push_back(Aggregator::vote(parse_rational(k)));
  const auto rows = compare_grid(kb, axioms, distances, aggregators, parse_closure_mode(o.closure), guards(o));
  emit(o, compare_csv(rows));
  return 0;
}

int run_gen(Options o) {
  o.profile.inconsistency_bias = parse_rational(o.bias);
  if (o.profile.inconsistency_bias < DistanceValue(0) || o.profile.inconsistency_bias > DistanceValue(1))
    throw Error("--bias must lie in [0, 1]");
  emit(o, print_kb(gen_kb(o.profile)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paraconsistent DL-Lite reasoner with distance-based semantics"};
  app.require_subcommand(1);
  Options o;

  auto semantics_flags = [&](CLI::App* cmd) {
    cmd->add_option("--distance", o.distance, "hamming or drastic")->capture_default_str();
    cmd->add_option("--agg", o.agg, "sum, max or vote[:p/q]")->capture_default_str();
    cmd->add_option("--kappa", o.kappa, "voting index p/q, used with --agg vote");
    cmd->add_option("--closure", o.closure, "realizable or extend")->capture_default_str();
  };
  auto common_flags = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    cmd->add_option("--max-types", o.max_types, "universe size limit")->capture_default_str();
    cmd->add_option("--max-features", o.max_features, "feature enumeration limit")->capture_default_str();
    cmd->add_option("--out", o.out, "write output here instead of stdout");
  };

  auto* check = app.add_subcommand("check", "classical consistency, exit 0 if consistent");
  check->add_option("kb", o.kb_path)->required();
  semantics_flags(check);
  common_flags(check);

  auto* entails = app.add_subcommand("entails", "distance-based entailment of one axiom");
  entails->add_option("kb", o.kb_path)->required();
  entails->add_option("axiom", o.axiom)->required();
  semantics_flags(entails);
  common_flags(entails);

  auto* oracle = app.add_subcommand("oracle-entails", "classical entailment of one axiom");
  oracle->add_option("kb", o.kb_path)->required();
  oracle->add_option("axiom", o.axiom)->required();
  common_flags(oracle);

  auto* explain = app.add_subcommand("explain", "minimal model types, λ tables and allowed types");
  explain->add_option("kb", o.kb_path)->required();
  semantics_flags(explain);
  common_flags(explain);

  auto* closure = app.add_subcommand("closure", "entailed probes and their classical consistency");
  closure->add_option("kb", o.kb_path)->required();
  closure->add_option("--probes", o.probes, "literals, inclusions or all")->capture_default_str();
  semantics_flags(closure);
  common_flags(closure);

  auto* compare = app.add_subcommand("compare", "verdict grid over distances and aggregators, as CSV");
  compare->add_option("kb", o.kb_path)->required();
  compare->add_option("axiom", o.axiom, "axiom to evaluate; defaults to the probe family");
  compare->add_option("--probes", o.probes, "literals, inclusions or all")->capture_default_str();
  compare->add_option("--kappa", o.kappas, "voting indexes of the grid")->capture_default_str();
  compare->add_option("--closure", o.closure, "realizable or extend")->capture_default_str();
  compare->add_option("--max-types", o.max_types)->capture_default_str();
  compare->add_option("--max-features", o.max_features)->capture_default_str();
  compare->add_option("--out", o.out);

  auto* gen = app.add_subcommand("gen", "print a random knowledge base");
  gen->add_option("--seed", o.profile.seed)->capture_default_str();
  gen->add_option("--concepts", o.profile.n_concepts)->capture_default_str();
  gen->add_option("--roles", o.profile.n_roles)->capture_default_str();
  gen->add_option("--individuals", o.profile.n_individuals)->capture_default_str();
  gen->add_option("--max-card", o.profile.max_card)->capture_default_str();
  gen->add_option("--inclusions", o.profile.n_inclusions)->capture_default_str();
  gen->add_option("--assertions", o.profile.n_assertions)->capture_default_str();
  gen->add_option("--bias", o.bias, "share of axioms drawn without a planted model")->capture_default_str();
  gen->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(o);
    if (*entails) return run_entails(o, config(o));
    if (*oracle) return run_entails(o, Classical{});
    if (*explain) return run_explain(o);
    if (*closure) return run_closure(o);
    if (*compare) return run_compare(o);
    if (*gen) return run_gen(o);
  } catch (const std::exception& e) {
    std::cerr << "paralite: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

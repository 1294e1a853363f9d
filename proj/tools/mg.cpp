// mg: checks statements of Lesniewski-style ontology/mereology over finite
// models, and Tarski-style ball geometry over exact rational scenes.
//
// Subcommands: check, suite, geo, bridge, proto. Exit codes: 0 all verdicts
// as expected, 1 mismatch or refutation, 2 usage/parse error, 3 resource
// cap exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mg/bridge.hpp"
#include "mg/checker.hpp"
#include "mg/geometry.hpp"
#include "mg/model.hpp"
#include "mg/parser.hpp"
#include "mg/printer.hpp"
#include "mg/scene.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mg::Error(mg::ErrorCode::BadFile, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string dir_of(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

int exit_code_for(const mg::Error& e) {
  switch (e.code()) {
    case mg::ErrorCode::QuantifierBlowup:
    case mg::ErrorCode::ResourceLimit: return 3;
    default: return 2;
  }
}

struct AtomRange {
  std::size_t lo = 1;
  std::size_t hi = 2;
};

AtomRange parse_atom_range(const std::string& text) {
  AtomRange r;
  std::size_t dots = text.find("..");
  if (dots == std::string::npos) {
    r.lo = r.hi = std::stoul(text);
  } else {
    r.lo = std::stoul(text.substr(0, dots));
    r.hi = std::stoul(text.substr(dots + 2));
  }
  return r;
}

struct CommonFlags {
  bool tsv = false;
  bool unicode = false;
  std::string reading = "annotated";
  std::uint64_t max_assignments = 1'000'000'000;

  mg::EvalLimits limits() const {
    mg::EvalLimits l;
    l.reading = reading == "full" ? mg::Reading::Full : mg::Reading::Annotated;
    l.max_assignments = max_assignments;
    return l;
  }
};

void print_check_report(const mg::CheckReport& rep, bool tsv) {
  if (tsv) {
    std::printf("%s\t%s\t%llu\t-\n", rep.formula_id.c_str(), mg::to_string(rep.verdict),
                static_cast<unsigned long long>(rep.assignments));
    return;
  }
  std::printf("%s [%s]: %s (assignments=%llu, millis=%lld)\n", rep.formula_id.c_str(),
              rep.model_id.c_str(), mg::to_string(rep.verdict),
              static_cast<unsigned long long>(rep.assignments),
              static_cast<long long>(rep.millis + 0.5));
  if (rep.verdict == mg::Verdict::Refuted && !rep.counterexample.empty()) {
    std::printf("  counterexample:");
    for (const auto& [var, val] : rep.counterexample) std::printf(" %s=%s", var.c_str(), val.c_str());
    std::printf("\n");
  }
}

int run_check(const std::string& model_path, const std::string& formula_path,
              const CommonFlags& flags, const std::string& expect) {
  mg::FiniteModel model = mg::parse_model(slurp(model_path)).build();
  std::set<std::string> consts;
  for (const auto& [name, den] : model.constants()) consts.insert(name);
  mg::Formula f = mg::parse_formula(slurp(formula_path), consts);
  if (!flags.tsv) {
    mg::PrintOptions popt;
    popt.unicode = flags.unicode;
    std::printf("formula: %s\n", mg::print_formula(f, popt).c_str());
  }
  mg::CheckReport rep =
      mg::check_validity(model, f, flags.limits(), formula_path, model_path);
  print_check_report(rep, flags.tsv);
  bool expected_valid = expect != "refuted";
  return (rep.verdict == mg::Verdict::Valid) == expected_valid ? 0 : 1;
}

int run_suite(const std::string& registry_path, const AtomRange& atoms,
              const CommonFlags& flags) {
  mg::Registry reg = mg::parse_registry(slurp(registry_path), dir_of(registry_path));
  std::vector<mg::NamedModel> models = mg::generate_models(atoms.lo, atoms.hi);
  mg::SuiteReport suite = mg::run_registry(models, reg, flags.limits());
  if (flags.tsv)
    std::fputs(mg::render_tsv(suite).c_str(), stdout);
  else
    std::fputs(mg::render_human(suite).c_str(), stdout);
  return suite.all_matched ? 0 : 1;
}

int run_geo(const std::string& scene_path, const std::string& query_text,
            const CommonFlags& flags) {
  mg::Scene scene = mg::parse_scene(slurp(scene_path));
  mg::Query q = mg::parse_query(query_text);

  auto ball = [&](std::size_t i) -> const mg::Ball& {
    const mg::Ball* b = scene.find_ball(q.args[i]);
    if (!b) throw mg::Error(mg::ErrorCode::UnknownLabel, "no ball labeled '" + q.args[i] + "'");
    return *b;
  };
  auto need = [&](std::size_t n) {
    if (q.args.size() != n)
      throw mg::Error(mg::ErrorCode::ArityMismatch,
                      q.head + " takes " + std::to_string(n) + " argument(s)");
  };

  std::string value;
  bool truthy = false;
  if (q.head == "et" || q.head == "it") {
    need(2);
    truthy = mg::tangency(q.head == "et" ? mg::Tangency::ET : mg::Tangency::IT, ball(0), ball(1));
  } else if (q.head == "edt" || q.head == "idt") {
    need(3);
    truthy = mg::diam_tangency(q.head == "edt" ? mg::DiamTangency::EDT : mg::DiamTangency::IDT,
                               ball(0), ball(1), ball(2));
  } else if (q.head == "con") {
    need(2);
    truthy = mg::concentric(ball(0), ball(1));
  } else if (q.head == "equid") {
    need(3);
    truthy = mg::equidistant(mg::point_of(ball(0)), mg::point_of(ball(1)),
                             mg::point_of(ball(2)));
  } else if (q.head == "partof" || q.head == "properpart" || q.head == "ext" ||
             q.head == "ov") {
    need(2);
    mg::BallRel rel = q.head == "partof"      ? mg::BallRel::PartOf
                      : q.head == "properpart" ? mg::BallRel::ProperPart
                      : q.head == "ext"        ? mg::BallRel::Ext
                                               : mg::BallRel::Overlap;
    truthy = mg::ball_mereo(rel, ball(0), ball(1));
  } else if (q.head == "ipoint") {
    need(2);
    const mg::Scene::SolidDef* sd = scene.find_solid(q.args[1]);
    const mg::Ball* sb = scene.find_ball(q.args[1]);
    if (!sd && !sb)
      throw mg::Error(mg::ErrorCode::UnknownLabel, "no label '" + q.args[1] + "'");
    mg::Solid solid = sd ? scene.materialize(*sd) : mg::Solid::make({*sb});
    mg::TriBool t = mg::interior_point(mg::point_of(ball(0)), solid);
    value = mg::to_string(t);
    truthy = t == mg::TriBool::Yes;
  } else {
    throw mg::Error(mg::ErrorCode::UnknownDefinition,
                    "no geometry predicate named '" + q.head + "'");
  }
  if (value.empty()) value = truthy ? "true" : "false";
  if (flags.tsv)
    std::printf("%s\t%s\n", query_text.c_str(), value.c_str());
  else
    std::printf("%s = %s\n", query_text.c_str(), value.c_str());
  return truthy ? 0 : 1;
}

void print_bridge_report(const mg::BridgeReport& rep, bool tsv) {
  if (tsv) {
    std::printf("%s\t%s\t%llu\t-\n", rep.headline().c_str(), mg::to_string(rep.agreement),
                static_cast<unsigned long long>(rep.candidates_examined));
    return;
  }
  std::printf("%s: analytic=%s mereological=%s agreement=%s", rep.headline().c_str(),
              mg::to_string(rep.analytic), rep.mereological ? "true" : "false",
              mg::to_string(rep.agreement));
  if (!rep.injected.empty()) {
    std::printf(" injected=");
    for (std::size_t i = 0; i < rep.injected.size(); ++i)
      std::printf("%s%s", i ? "," : "", rep.injected[i].c_str());
  }
  if (!rep.note.empty()) std::printf(" note=\"%s\"", rep.note.c_str());
  std::printf("\n");
}

int run_bridge_one(const mg::Scene& scene, const std::string& def_name,
                   const std::vector<std::string>& args, const CommonFlags& flags) {
  mg::BridgeReport rep = mg::check_definition(scene, mg::def_from_name(def_name), args);
  print_bridge_report(rep, flags.tsv);
  return rep.agreement == mg::Agreement::HardDisagree ? 1 : 0;
}

struct CorpusLine {
  std::string scene_path;
  std::string def;
  std::vector<std::string> args;
  std::string expect_analytic;
  std::string expect_agreement;
};

std::vector<CorpusLine> parse_corpus(const std::string& text, const std::string& base_dir) {
  std::vector<CorpusLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t bar = line.find('|', start);
      std::string field = line.substr(
          start, bar == std::string::npos ? std::string::npos : bar - start);
      std::size_t b = field.find_first_not_of(" \t\r");
      std::size_t e = field.find_last_not_of(" \t\r");
      fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 5)
      throw mg::Error(mg::ErrorCode::BadFile,
                      "corpus line " + std::to_string(line_no) +
                          ": expected scene | def | args | analytic=... | agreement=...");
    CorpusLine c;
    c.scene_path = base_dir + "/" + fields[0];
    c.def = fields[1];
    std::istringstream argin(fields[2]);
    std::string a;
    while (argin >> a) c.args.push_back(a);
    if (fields[3].rfind("analytic=", 0) != 0 || fields[4].rfind("agreement=", 0) != 0)
      throw mg::Error(mg::ErrorCode::BadFile,
                      "corpus line " + std::to_string(line_no) + ": bad expectation fields");
    c.expect_analytic = fields[3].substr(9);
    c.expect_agreement = fields[4].substr(10);
    out.push_back(std::move(c));
  }
  return out;
}

int run_bridge_corpus(const std::string& corpus_path, const CommonFlags& flags) {
  std::vector<CorpusLine> lines = parse_corpus(slurp(corpus_path), dir_of(corpus_path));
  bool ok = true;
  for (const CorpusLine& c : lines) {
    mg::Scene scene = mg::parse_scene(slurp(c.scene_path));
    mg::BridgeReport rep = mg::check_definition(scene, mg::def_from_name(c.def), c.args);
    print_bridge_report(rep, flags.tsv);
    std::string analytic = mg::to_string(rep.analytic);
    if (c.expect_analytic == "true") ok = ok && analytic == "yes";
    else if (c.expect_analytic == "false") ok = ok && analytic == "no";
    else ok = ok && analytic == c.expect_analytic;
    ok = ok && c.expect_agreement == mg::to_string(rep.agreement);
    ok = ok && rep.agreement != mg::Agreement::HardDisagree;
  }
  if (!flags.tsv)
    std::printf("corpus: %s\n", ok ? "all expectations met" : "EXPECTATION MISMATCH");
  return ok ? 0 : 1;
}

int run_proto(const CommonFlags& flags) {
  mg::ProtoReport rep = mg::check_protothetic_extensionality();
  print_check_report(rep.r1, flags.tsv);
  print_check_report(rep.r2, flags.tsv);
  bool witness_ok = rep.r1.counterexample.size() == 3 &&
                    rep.r1.counterexample[0].second == "true" &&
                    rep.r1.counterexample[1].second == "false" &&
                    rep.r1.counterexample[2].second == "const_true";
  return rep.r1.verdict == mg::Verdict::Refuted && witness_ok &&
                 rep.r2.verdict == mg::Verdict::Valid
             ? 0
             : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-model checks for ontology/mereology and exact ball geometry"};
  app.require_subcommand(1);

  CommonFlags flags;
  app.add_flag("--tsv", flags.tsv, "machine-readable tab-separated output");
  app.add_flag("--unicode", flags.unicode, "render formulas with logical symbols");
  app.add_option("--reading", flags.reading, "quantifier reading: full or annotated")
      ->check(CLI::IsMember({"full", "annotated"}));
  app.add_option("--max-assignments", flags.max_assignments,
                 "cap on quantifier instantiations per check");

  auto* check = app.add_subcommand("check", "evaluate one formula on one model");
  check->fallthrough();
  std::string model_path, formula_path, expect = "valid";
  check->add_option("--model", model_path, "model file (.mmod)")->required();
  check->add_option("--formula", formula_path, "formula file (.mgf)")->required();
  check->add_option("--expect", expect, "expected verdict")
      ->check(CLI::IsMember({"valid", "refuted"}));

  auto* suite = app.add_subcommand("suite", "run a registry over generated models");
  suite->fallthrough();
  std::string registry_path, atoms_text = "1..2";
  suite->add_option("--registry", registry_path, "registry file (.mreg)")->required();
  suite->add_option("--atoms", atoms_text, "atom counts, e.g. 1..2 or 3");

  auto* geo = app.add_subcommand("geo", "evaluate a geometry predicate on a scene");
  geo->fallthrough();
  std::string scene_path, query_text;
  geo->add_option("--scene", scene_path, "scene file (.geo)")->required();
  geo->add_option("--query", query_text, "predicate query, e.g. \"et(A,B)\"")->required();

  auto* bridge = app.add_subcommand("bridge", "compare a definition against the analytic predicate");
  bridge->fallthrough();
  std::string bridge_scene, bridge_def, bridge_args_text, corpus_path;
  bool ta4 = false;
  bridge->add_option("--scene", bridge_scene, "scene file (.geo)");
  bridge->add_option("--def", bridge_def, "definition: et it edt idt con equid ipoint solids");
  bridge->add_option("--args", bridge_args_text, "comma-separated labels");
  bridge->add_option("--corpus", corpus_path, "corpus manifest file");
  bridge->add_flag("--ta4", ta4, "run the part-axiom suite on the scene");

  auto* proto = app.add_subcommand("proto", "truth-table check of propositional extensionality");
  proto->fallthrough();
  (void)proto;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(model_path, formula_path, flags, expect);
    if (suite->parsed()) return run_suite(registry_path, parse_atom_range(atoms_text), flags);
    if (geo->parsed()) return run_geo(scene_path, query_text, flags);
    if (bridge->parsed()) {
      if (!corpus_path.empty()) return run_bridge_corpus(corpus_path, flags);
      if (bridge_scene.empty())
        throw mg::Error(mg::ErrorCode::BadFile, "bridge needs --scene or --corpus");
      mg::Scene scene = mg::parse_scene(slurp(bridge_scene));
      if (ta4) {
        mg::SuiteReport rep = mg::check_ta4_suite(scene, bridge_scene);
        if (flags.tsv)
          std::fputs(mg::render_tsv(rep).c_str(), stdout);
        else
          std::fputs(mg::render_human(rep, false).c_str(), stdout);
        return rep.all_matched ? 0 : 1;
      }
      if (bridge_def.empty())
        throw mg::Error(mg::ErrorCode::BadFile, "bridge needs --def/--args, --ta4 or --corpus");
      std::vector<std::string> args;
      std::size_t start = 0;
      while (start <= bridge_args_text.size()) {
        std::size_t comma = bridge_args_text.find(',', start);
        std::string piece = bridge_args_text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!piece.empty()) args.push_back(piece);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return run_bridge_one(scene, bridge_def, args, flags);
    }
    if (proto->parsed()) return run_proto(flags);
  } catch (const mg::Error& e) {
    std::fprintf(stderr, "mg: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mg: internal error: %s\n", e.what());
    return 2;
  }
  return 2;
}

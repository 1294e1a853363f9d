#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mg/ast.hpp"
#include "mg/error.hpp"
#include "mg/model.hpp"
#include "mg/parser.hpp"
#include "mg/printer.hpp"

namespace mg {

/// Quantifier reading: annotated respects ':singular' markers, full treats
/// every quantifier as ranging over all name denotations.
enum class Reading { Annotated, Full };

enum class Verdict { Valid, Refuted };

inline const char* to_string(Verdict v) { return v == Verdict::Valid ? "valid" : "refuted"; }

struct EvalLimits {
  Reading reading = Reading::Annotated;
  std::uint64_t max_assignments = 1'000'000'000;
};

/// Variable bindings, innermost last.
class Env {
 public:
  void bind(const std::string& var, NameDen d) { slots_.emplace_back(var, d); }
  void unbind() { slots_.pop_back(); }
  const NameDen* lookup(const std::string& var) const {
    for (auto it = slots_.rbegin(); it != slots_.rend(); ++it)
      if (it->first == var) return &it->second;
    return nullptr;
  }
  const std::vector<std::pair<std::string, NameDen>>& slots() const { return slots_; }

 private:
  std::vector<std::pair<std::string, NameDen>> slots_;
};

struct CheckReport {
  std::string formula_id;
  std::string model_id;
  Verdict verdict = Verdict::Valid;
  /// Rendered witness bindings; meaningful only when refuted. An outermost
  /// universal prefix is reported with its first falsifying assignment in
  /// lexicographic denotation order.
  std::vector<std::pair<std::string, std::string>> counterexample;
  std::uint64_t assignments = 0;
  double millis = 0.0;
};

namespace detail {

/// Per-check evaluation context: counts quantifier instantiations and
/// memoizes unary functor denotations for the model at hand.
class Evaluator {
 public:
  Evaluator(const FiniteModel& m, Reading reading) : model_(m), reading_(reading) {}

  std::uint64_t assignments() const { return assignments_; }

  NameDen den(const Term& t, const Env& env) {
    if (auto* c = std::get_if<Term::Const>(&t.node)) {
      const NameDen* d = model_.find_constant(c->name);
      if (!d) throw Error(ErrorCode::UnknownConstant, "constant '" + c->name + "' not in model");
      return *d;
    }
    if (auto* v = std::get_if<Term::Var>(&t.node)) {
      const NameDen* d = env.lookup(v->name);
      if (!d) throw Error(ErrorCode::UnboundVariable, "variable '" + v->name + "' unbound");
      return *d;
    }
    const auto& app = std::get<Term::Apply>(t.node);
    if (app.tag == FunctorTag::Union)
      return {den(app.args[0], env).bits | den(app.args[1], env).bits};
    NameDen arg = den(app.args[0], env);
    auto& memo = cache_[static_cast<int>(app.tag)];
    auto it = memo.find(arg.bits);
    if (it != memo.end()) return it->second;
    NameDen result = functor_den(model_, app.tag, {arg});
    memo.emplace(arg.bits, result);
    return result;
  }

  bool eval(const Formula& f, Env& env) {
    if (auto* e = std::get_if<Formula::Eps>(&f.node))
      return eval_epsilon(model_, den(e->args[0], env), den(e->args[1], env));
    if (auto* s = std::get_if<Formula::Seq>(&f.node))
      return eval_equality(model_, EqualityKind::Singular, den(s->args[0], env),
                           den(s->args[1], env));
    if (auto* w = std::get_if<Formula::Weq>(&f.node))
      return eval_equality(model_, EqualityKind::Weak, den(w->args[0], env),
                           den(w->args[1], env));
    if (auto* c = std::get_if<Formula::Conn>(&f.node)) {
      switch (c->op) {
        case Connective::Not: return !eval(c->kids[0], env);
        case Connective::And: return eval(c->kids[0], env) && eval(c->kids[1], env);
        case Connective::Or: return eval(c->kids[0], env) || eval(c->kids[1], env);
        case Connective::Implies: return !eval(c->kids[0], env) || eval(c->kids[1], env);
        case Connective::Iff: return eval(c->kids[0], env) == eval(c->kids[1], env);
      }
    }
    const auto& q = std::get<Formula::Quant>(f.node);
    bool singular = q.domain == QuantDomain::Singular && reading_ == Reading::Annotated;
    const std::size_t m = model_.individual_count();
    if (singular) {
      for (std::size_t i = 0; i < m; ++i) {
        ++assignments_;
        env.bind(q.var, NameDen::singleton(i));
        bool v = eval(q.body[0], env);
        env.unbind();
        if (v != q.universal) return !q.universal;
      }
    } else {
      const std::uint64_t count = std::uint64_t{1} << m;
      for (std::uint64_t bits = 0; bits < count; ++bits) {
        ++assignments_;
        env.bind(q.var, NameDen{bits});
        bool v = eval(q.body[0], env);
        env.unbind();
        if (v != q.universal) return !q.universal;
      }
    }
    return q.universal;
  }

 private:
  const FiniteModel& model_;
  Reading reading_;
  std::uint64_t assignments_ = 0;
  std::unordered_map<std::uint64_t, NameDen> cache_[9];
};

/// Worst-case number of quantifier instantiations, saturating.
inline std::uint64_t estimate_assignments(const FiniteModel& m, const Formula& f,
                                          Reading reading) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (auto* c = std::get_if<Formula::Conn>(&f.node)) {
    std::uint64_t total = 1;
    for (const Formula& kid : c->kids) {
      std::uint64_t e = estimate_assignments(m, kid, reading);
      total = (e > kMax - total) ? kMax : total + e;
    }
    return total;
  }
  if (auto* q = std::get_if<Formula::Quant>(&f.node)) {
    bool singular = q->domain == QuantDomain::Singular && reading == Reading::Annotated;
    std::uint64_t domain = singular ? m.individual_count()
                          : m.individual_count() >= 64
                              ? kMax
                              : std::uint64_t{1} << m.individual_count();
    std::uint64_t body = estimate_assignments(m, q->body[0], reading);
    if (body != 0 && domain > kMax / body) return kMax;
    return domain * body + 1;
  }
  return 1;
}

}  // namespace detail

/// Classical truth value of f under env. Quantifiers enumerate denotations
/// in lexicographic order; the worst-case instantiation count is estimated
/// up front and refused when it exceeds the cap.
inline bool eval_formula(const FiniteModel& m, Env& env, const Formula& f,
                         const EvalLimits& limits = {},
                         std::uint64_t* assignments_out = nullptr) {
  std::uint64_t est = detail::estimate_assignments(m, f, limits.reading);
  if (est > limits.max_assignments)
    throw Error(ErrorCode::QuantifierBlowup,
                "estimated " + std::to_string(est) + " assignments exceeds cap of " +
                    std::to_string(limits.max_assignments));
  detail::Evaluator ev(m, limits.reading);
  bool result = ev.eval(f, env);
  if (assignments_out) *assignments_out = ev.assignments();
  return result;
}

/// Exhaustive validity check of a closed formula. The outermost universal
/// prefix is enumerated explicitly so a refutation carries its first
/// falsifying assignment; every refutation is re-evaluated under the
/// reported environment as a soundness guard.
inline CheckReport check_validity(const FiniteModel& m, const Formula& f,
                                  const EvalLimits& limits = {},
                                  const std::string& formula_id = "",
                                  const std::string& model_id = "") {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport report;
  report.formula_id = formula_id;
  report.model_id = model_id;

  std::uint64_t est = detail::estimate_assignments(m, f, limits.reading);
  if (est > limits.max_assignments)
    throw Error(ErrorCode::QuantifierBlowup,
                "estimated " + std::to_string(est) + " assignments exceeds cap of " +
                    std::to_string(limits.max_assignments));

  // Split off the outermost universal prefix.
  std::vector<const Formula::Quant*> prefix;
  const Formula* matrix = &f;
  while (auto* q = std::get_if<Formula::Quant>(&matrix->node)) {
    if (!q->universal) break;
    prefix.push_back(q);
    matrix = &q->body[0];
  }

  detail::Evaluator ev(m, limits.reading);
  Env env;
  std::optional<std::vector<NameDen>> witness;
  std::uint64_t prefix_assignments = 0;

  auto enumerate = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == prefix.size()) {
      if (ev.eval(*matrix, env)) return true;
      std::vector<NameDen> w;
      for (const auto& slot : env.slots()) w.push_back(slot.second);
      witness = std::move(w);
      return false;
    }
    const Formula::Quant* q = prefix[depth];
    bool singular = q->domain == QuantDomain::Singular && limits.reading == Reading::Annotated;
    std::uint64_t count = singular ? m.individual_count()
                                   : std::uint64_t{1} << m.individual_count();
    for (std::uint64_t k = 0; k < count; ++k) {
      ++prefix_assignments;
      env.bind(q->var, singular ? NameDen::singleton(k) : NameDen{k});
      bool ok = self(self, depth + 1);
      if (!ok) return false;  // leave the binding in place for the report
      env.unbind();
    }
    return true;
  };

  bool valid = enumerate(enumerate, 0);
  report.assignments = ev.assignments() + prefix_assignments;
  report.verdict = valid ? Verdict::Valid : Verdict::Refuted;
  if (!valid) {
    for (std::size_t i = 0; i < prefix.size(); ++i)
      report.counterexample.emplace_back(prefix[i]->var, m.render((*witness)[i]));
    // Soundness guard: the reported environment must falsify the matrix.
    detail::Evaluator recheck(m, limits.reading);
    Env env2;
    for (std::size_t i = 0; i < prefix.size(); ++i) env2.bind(prefix[i]->var, (*witness)[i]);
    if (recheck.eval(*matrix, env2))
      throw std::logic_error("counterexample failed to falsify the formula on re-evaluation");
  }
  report.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// --------------------------------------------------------------------------
// Protothetic extensionality, checked by truth table. Two readings:
//   R1:  forall p q f, (p = q) = (f p = f q)       -- refutable
//   R2:  forall p q, (p = q) = forall f, (f p = f q)   -- valid
// f ranges over the four unary truth functions.
// --------------------------------------------------------------------------

struct ProtoReport {
  CheckReport r1;
  CheckReport r2;
};

inline ProtoReport check_protothetic_extensionality() {
  struct Fn {
    const char* name;
    bool on_true;
    bool on_false;
  };
  static constexpr Fn kFns[4] = {
      {"const_true", true, true},
      {"const_false", false, false},
      {"id", true, false},
      {"not", false, true},
  };
  auto apply = [](const Fn& f, bool x) { return x ? f.on_true : f.on_false; };
  static constexpr bool kBools[2] = {true, false};

  ProtoReport out;
  auto t0 = std::chrono::steady_clock::now();

  out.r1.formula_id = "proto_r1";
  out.r1.model_id = "-";
  out.r1.verdict = Verdict::Valid;
  for (bool p : kBools)
    for (bool q : kBools)
      for (const Fn& f : kFns) {
        ++out.r1.assignments;
        if (((p == q) == (apply(f, p) == apply(f, q)))) continue;
        out.r1.verdict = Verdict::Refuted;
        out.r1.counterexample = {{"p", p ? "true" : "false"},
                                 {"q", q ? "true" : "false"},
                                 {"f", f.name}};
        goto r1_done;
      }
r1_done:
  out.r1.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  t0 = std::chrono::steady_clock::now();
  out.r2.formula_id = "proto_r2";
  out.r2.model_id = "-";
  out.r2.verdict = Verdict::Valid;
  for (bool p : kBools)
    for (bool q : kBools) {
      bool all_agree = true;
      for (const Fn& f : kFns) {
        ++out.r2.assignments;
        all_agree = all_agree && apply(f, p) == apply(f, q);
      }
      if ((p == q) != all_agree) {
        out.r2.verdict = Verdict::Refuted;
        out.r2.counterexample = {{"p", p ? "true" : "false"}, {"q", q ? "true" : "false"}};
      }
    }
  out.r2.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// --------------------------------------------------------------------------
// Extensionality over a library of name-forming functors:
//   A eps (Phi B) and seq(B, C) together force A eps (Phi C).
// Checked exhaustively over all denotation triples for each functor.
// --------------------------------------------------------------------------

inline const std::vector<FunctorTag>& default_functor_library() {
  static const std::vector<FunctorTag> kLib = {
      FunctorTag::Pt,   FunctorTag::El, FunctorTag::Kl,      FunctorTag::Coll,
      FunctorTag::Ov,   FunctorTag::Distinct, FunctorTag::Ext,
  };
  return kLib;
}

inline CheckReport check_mereot16(const FiniteModel& m,
                                  const std::vector<FunctorTag>& library,
                                  const std::string& model_id = "",
                                  std::uint64_t max_assignments = 1'000'000'000) {
  if (library.empty())
    throw Error(ErrorCode::NonemptyLibraryRequired, "functor library must not be empty");
  if (m.individual_count() > 10 ||
      (std::uint64_t{1} << (3 * m.individual_count())) * library.size() > max_assignments)
    throw Error(ErrorCode::QuantifierBlowup,
                "denotation triples exceed the assignment cap on this model");
  auto t0 = std::chrono::steady_clock::now();
  CheckReport report;
  report.formula_id = "MereoT16";
  report.model_id = model_id;
  report.verdict = Verdict::Valid;

  const std::uint64_t count = std::uint64_t{1} << m.individual_count();
  for (FunctorTag phi : library) {
    std::vector<NameDen> den_of(count);
    for (std::uint64_t b = 0; b < count; ++b) den_of[b] = functor_den(m, phi, {NameDen{b}});
    for (std::uint64_t a = 0; a < count && report.verdict == Verdict::Valid; ++a)
      for (std::uint64_t b = 0; b < count && report.verdict == Verdict::Valid; ++b)
        for (std::uint64_t c = 0; c < count; ++c) {
          ++report.assignments;
          NameDen A{a}, B{b}, C{c};
          if (!eval_equality(m, EqualityKind::Singular, B, C)) continue;
          if (!eval_epsilon(m, A, den_of[b])) continue;
          if (eval_epsilon(m, A, den_of[c])) continue;
          report.verdict = Verdict::Refuted;
          report.counterexample = {{"Phi", to_string(phi)},
                                   {"A", m.render(A)},
                                   {"B", m.render(B)},
                                   {"C", m.render(C)}};
          break;
        }
    if (report.verdict == Verdict::Refuted) break;
  }
  report.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// --------------------------------------------------------------------------
// Registry: the persistent list of named claims and their expected verdicts.
// Line format ('#' comments):
//   id | path.mgf | expect=valid|refuted | atoms<=N [| reading=full|annotated]
// A path of @proto_r1, @proto_r2 or @mereot16 names a builtin check instead
// of a formula file.
// --------------------------------------------------------------------------

struct RegistryEntry {
  std::string id;
  std::string path;  // formula file, or builtin name starting with '@'
  bool expect_valid = true;
  std::size_t max_atoms = FiniteModel::kMaxAtoms;
  std::optional<Reading> reading_override;

  bool is_builtin() const { return !path.empty() && path[0] == '@'; }
};

struct Registry {
  std::vector<RegistryEntry> entries;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline Registry parse_registry(const std::string& text, const std::string& base_dir = "") {
  Registry reg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t bar = line.find('|', start);
      fields.push_back(detail::trim(
          line.substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    auto bad = [&](const std::string& why) {
      return Error(ErrorCode::BadFile, "registry line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() < 4) throw bad("expected id | path | expect=... | atoms<=N");
    RegistryEntry e;
    e.id = fields[0];
    if (e.id.empty()) throw bad("empty id");
    if (!seen.insert(e.id).second) throw bad("duplicate id '" + e.id + "'");
    e.path = fields[1];
    if (!e.is_builtin() && !base_dir.empty()) e.path = base_dir + "/" + e.path;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      if (f == "expect=valid") e.expect_valid = true;
      else if (f == "expect=refuted") e.expect_valid = false;
      else if (f.rfind("atoms<=", 0) == 0) e.max_atoms = std::stoul(f.substr(7));
      else if (f == "reading=full") e.reading_override = Reading::Full;
      else if (f == "reading=annotated") e.reading_override = Reading::Annotated;
      else throw bad("unknown field '" + f + "'");
    }
    reg.entries.push_back(std::move(e));
  }
  return reg;
}

struct NamedModel {
  std::string id;
  FiniteModel model;
};

/// One powerset model per atom count in [lo, hi], with standard constants.
inline std::vector<NamedModel> generate_models(std::size_t lo, std::size_t hi) {
  if (lo < 1 || hi > FiniteModel::kMaxAtoms || lo > hi)
    throw Error(ErrorCode::AtomCountOutOfRange, "atom range must lie within 1.." +
                                                    std::to_string(FiniteModel::kMaxAtoms));
  std::vector<NamedModel> out;
  for (std::size_t n = lo; n <= hi; ++n)
    out.push_back({"pow" + std::to_string(n), FiniteModel::make_powerset(n)});
  return out;
}

struct SuiteRow {
  std::string id;
  std::string model_id;
  std::string verdict;  // "valid", "refuted" or "error"
  bool matched = false;
  CheckReport report;  // empty when errored
  std::string error;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  bool all_matched = true;
};

/// Runs every registry entry against every model within its atom cap.
/// Failures are recorded per row; the suite itself never aborts.
inline SuiteReport run_registry(const std::vector<NamedModel>& models, const Registry& reg,
                                const EvalLimits& limits = {}) {
  SuiteReport suite;
  for (const RegistryEntry& entry : reg.entries) {
    EvalLimits entry_limits = limits;
    if (entry.reading_override) entry_limits.reading = *entry.reading_override;

    auto record = [&](const std::string& model_id, CheckReport rep) {
      SuiteRow row;
      row.id = entry.id;
      row.model_id = model_id;
      row.verdict = to_string(rep.verdict);
      row.matched = (rep.verdict == Verdict::Valid) == entry.expect_valid;
      row.report = std::move(rep);
      suite.all_matched = suite.all_matched && row.matched;
      suite.rows.push_back(std::move(row));
    };
    auto record_error = [&](const std::string& model_id, const std::string& what) {
      SuiteRow row;
      row.id = entry.id;
      row.model_id = model_id;
      row.verdict = "error";
      row.matched = false;
      row.error = what;
      suite.all_matched = false;
      suite.rows.push_back(std::move(row));
    };

    if (entry.path == "@proto_r1" || entry.path == "@proto_r2") {
      ProtoReport proto = check_protothetic_extensionality();
      CheckReport rep = entry.path == "@proto_r1" ? proto.r1 : proto.r2;
      rep.formula_id = entry.id;
      record("-", std::move(rep));
      continue;
    }
    if (entry.path == "@mereot16") {
      for (const NamedModel& nm : models) {
        if (nm.model.atom_count() > entry.max_atoms) continue;
        try {
          CheckReport rep = check_mereot16(nm.model, default_functor_library(), nm.id);
          rep.formula_id = entry.id;
          record(nm.id, std::move(rep));
        } catch (const Error& e) {
          record_error(nm.id, e.what());
        }
      }
      continue;
    }
    if (entry.is_builtin()) {
      record_error("-", "unknown builtin '" + entry.path + "'");
      continue;
    }

    std::ifstream file(entry.path);
    if (!file) {
      record_error("-", "cannot open formula file '" + entry.path + "'");
      continue;
    }
    std::stringstream buf;
    buf << file.rdbuf();
    std::string text = buf.str();

    for (const NamedModel& nm : models) {
      if (nm.model.atom_count() > entry.max_atoms) continue;
      try {
        std::set<std::string> consts;
        for (const auto& [name, den] : nm.model.constants()) consts.insert(name);
        Formula f = parse_formula(text, consts);
        record(nm.id, check_validity(nm.model, f, entry_limits, entry.id, nm.id));
      } catch (const Error& e) {
        record_error(nm.id, e.what());
      }
    }
  }
  return suite;
}

/// Machine rendering: id, verdict, assignments and millis separated by
/// tabs. Millis are suppressed (printed as '-') so identical inputs give
/// byte-identical output.
inline std::string render_tsv(const SuiteReport& suite) {
  std::string out;
  for (const SuiteRow& row : suite.rows) {
    out += row.id;
    out += '\t';
    out += row.verdict;
    out += '\t';
    out += std::to_string(row.report.assignments);
    out += "\t-\n";
  }
  return out;
}

inline std::string render_human(const SuiteReport& suite, bool with_timing = true) {
  std::ostringstream out;
  for (const SuiteRow& row : suite.rows) {
    out << (row.matched ? "ok   " : "FAIL ") << row.id << " [" << row.model_id << "] "
        << row.verdict;
    if (row.verdict == "error") {
      out << " (" << row.error << ")";
    } else {
      out << " assignments=" << row.report.assignments;
      if (with_timing) out << " millis=" << static_cast<long long>(row.report.millis + 0.5);
      if (row.report.verdict == Verdict::Refuted && !row.report.counterexample.empty()) {
        out << " counterexample:";
        for (const auto& [var, val] : row.report.counterexample) out << " " << var << "=" << val;
      }
    }
    out << "\n";
  }
  out << (suite.all_matched ? "suite: all verdicts as expected" : "suite: MISMATCHES PRESENT")
      << "\n";
  return out.str();
}

}  // namespace mg

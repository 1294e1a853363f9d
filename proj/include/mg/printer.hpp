#pragma once

#include <string>

#include "mg/ast.hpp"

namespace mg {

/// Canonical formula rendering. The ASCII form reparses to a structurally
/// identical AST; the unicode form is for reports only.
struct PrintOptions {
  bool unicode = false;
};

namespace detail {

inline void print_term(const Term& t, std::string& out) {
  if (auto* c = std::get_if<Term::Const>(&t.node)) {
    out += c->name;
    return;
  }
  if (auto* v = std::get_if<Term::Var>(&t.node)) {
    out += v->name;
    return;
  }
  const auto& app = std::get<Term::Apply>(t.node);
  out += to_string(app.tag);
  out += "(";
  for (std::size_t i = 0; i < app.args.size(); ++i) {
    if (i) out += ",";
    print_term(app.args[i], out);
  }
  out += ")";
}

// Precedence: quantifier binds weakest (0), then <-> (1), -> (2), \/ (3),
// /\ (4), ~ (5), atoms (6). All binaries are right associative, so a left
// operand of the same precedence needs parentheses.
inline int precedence(const Formula& f) {
  if (std::holds_alternative<Formula::Quant>(f.node)) return 0;
  if (auto* c = std::get_if<Formula::Conn>(&f.node)) {
    switch (c->op) {
      case Connective::Iff: return 1;
      case Connective::Implies: return 2;
      case Connective::Or: return 3;
      case Connective::And: return 4;
      case Connective::Not: return 5;
    }
  }
  return 6;
}

inline void print_formula_rec(const Formula& f, int min_prec, const PrintOptions& opt,
                              std::string& out) {
  int prec = precedence(f);
  bool parens = prec < min_prec;
  if (parens) out += "(";
  if (auto* e = std::get_if<Formula::Eps>(&f.node)) {
    print_term(e->args[0], out);
    out += opt.unicode ? " ε " : " eps ";
    print_term(e->args[1], out);
  } else if (auto* s = std::get_if<Formula::Seq>(&f.node)) {
    out += "seq(";
    print_term(s->args[0], out);
    out += ",";
    print_term(s->args[1], out);
    out += ")";
  } else if (auto* w = std::get_if<Formula::Weq>(&f.node)) {
    out += "weq(";
    print_term(w->args[0], out);
    out += ",";
    print_term(w->args[1], out);
    out += ")";
  } else if (auto* c = std::get_if<Formula::Conn>(&f.node)) {
    if (c->op == Connective::Not) {
      out += opt.unicode ? "¬" : "~";
      // seq/weq are self-delimiting and ~ chains; everything else gets
      // parentheses so "~A eps b" never appears.
      const Formula& kid = c->kids[0];
      bool tight = std::holds_alternative<Formula::Seq>(kid.node) ||
                   std::holds_alternative<Formula::Weq>(kid.node) ||
                   (std::holds_alternative<Formula::Conn>(kid.node) &&
                    std::get<Formula::Conn>(kid.node).op == Connective::Not);
      print_formula_rec(kid, tight ? prec : 7, opt, out);
    } else {
      const char* ascii = nullptr;
      const char* uni = nullptr;
      switch (c->op) {
        case Connective::And: ascii = " /\\ "; uni = " ∧ "; break;
        case Connective::Or: ascii = " \\/ "; uni = " ∨ "; break;
        case Connective::Implies: ascii = " -> "; uni = " → "; break;
        case Connective::Iff: ascii = " <-> "; uni = " ↔ "; break;
        case Connective::Not: break;
      }
      print_formula_rec(c->kids[0], prec + 1, opt, out);
      out += opt.unicode ? uni : ascii;
      print_formula_rec(c->kids[1], prec, opt, out);
    }
  } else {
    const auto& q = std::get<Formula::Quant>(f.node);
    if (opt.unicode)
      out += q.universal ? "∀" : "∃";
    else
      out += q.universal ? "forall " : "exists ";
    out += q.var;
    out += q.domain == QuantDomain::Singular ? ":singular" : ":name";
    out += ", ";
    print_formula_rec(q.body[0], 0, opt, out);
  }
  if (parens) out += ")";
}

}  // namespace detail

inline std::string print_term(const Term& t) {
  std::string out;
  detail::print_term(t, out);
  return out;
}

inline std::string print_formula(const Formula& f, const PrintOptions& opt = {}) {
  std::string out;
  detail::print_formula_rec(f, 0, opt, out);
  return out;
}

}  // namespace mg

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mg/error.hpp"
#include "mg/model.hpp"

namespace mg {

/// Term of the name category: a constant, a bound variable, or a functor
/// application. Children live in vectors so the node type stays a value.
struct Term {
  struct Const {
    std::string name;
  };
  struct Var {
    std::string name;
  };
  struct Apply {
    FunctorTag tag;
    std::vector<Term> args;
  };

  std::variant<Const, Var, Apply> node;
  SourceSpan span;

  static Term constant(std::string name, SourceSpan s = {}) {
    return {Const{std::move(name)}, s};
  }
  static Term var(std::string name, SourceSpan s = {}) { return {Var{std::move(name)}, s}; }
  static Term apply(FunctorTag tag, std::vector<Term> args, SourceSpan s = {}) {
    return {Apply{tag, std::move(args)}, s};
  }
};

enum class QuantDomain { Name, Singular };
enum class Connective { Not, And, Or, Implies, Iff };

/// Formula of the proposition category. Atoms are the copula and the two
/// equalities; quantifiers bind name variables over either all denotations
/// or singular ones only.
struct Formula {
  struct Eps {
    std::vector<Term> args;  // [lhs, rhs]
  };
  struct Seq {
    std::vector<Term> args;
  };
  struct Weq {
    std::vector<Term> args;
  };
  struct Conn {
    Connective op;
    std::vector<Formula> kids;  // 1 for Not, 2 otherwise
  };
  struct Quant {
    bool universal = true;
    std::string var;
    QuantDomain domain = QuantDomain::Name;
    std::vector<Formula> body;  // exactly 1
  };

  std::variant<Eps, Seq, Weq, Conn, Quant> node;
  SourceSpan span;

  static Formula eps(Term l, Term r, SourceSpan s = {}) {
    return {Eps{{std::move(l), std::move(r)}}, s};
  }
  static Formula seq(Term l, Term r, SourceSpan s = {}) {
    return {Seq{{std::move(l), std::move(r)}}, s};
  }
  static Formula weq(Term l, Term r, SourceSpan s = {}) {
    return {Weq{{std::move(l), std::move(r)}}, s};
  }
  static Formula negation(Formula f, SourceSpan s = {}) {
    return {Conn{Connective::Not, {std::move(f)}}, s};
  }
  static Formula binary(Connective op, Formula l, Formula r, SourceSpan s = {}) {
    return {Conn{op, {std::move(l), std::move(r)}}, s};
  }
  static Formula quant(bool universal, std::string var, QuantDomain dom, Formula body,
                       SourceSpan s = {}) {
    return {Quant{universal, std::move(var), dom, {std::move(body)}}, s};
  }
};

/// Structural equality, ignoring spans.
inline bool same_term(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* c = std::get_if<Term::Const>(&a.node))
    return c->name == std::get<Term::Const>(b.node).name;
  if (auto* v = std::get_if<Term::Var>(&a.node))
    return v->name == std::get<Term::Var>(b.node).name;
  const auto& fa = std::get<Term::Apply>(a.node);
  const auto& fb = std::get<Term::Apply>(b.node);
  if (fa.tag != fb.tag || fa.args.size() != fb.args.size()) return false;
  for (std::size_t i = 0; i < fa.args.size(); ++i)
    if (!same_term(fa.args[i], fb.args[i])) return false;
  return true;
}

inline bool same_formula(const Formula& a, const Formula& b) {
  if (a.node.index() != b.node.index()) return false;
  auto both_args = [](const std::vector<Term>& x, const std::vector<Term>& y) {
    return same_term(x[0], y[0]) && same_term(x[1], y[1]);
  };
  if (auto* e = std::get_if<Formula::Eps>(&a.node))
    return both_args(e->args, std::get<Formula::Eps>(b.node).args);
  if (auto* s = std::get_if<Formula::Seq>(&a.node))
    return both_args(s->args, std::get<Formula::Seq>(b.node).args);
  if (auto* w = std::get_if<Formula::Weq>(&a.node))
    return both_args(w->args, std::get<Formula::Weq>(b.node).args);
  if (auto* c = std::get_if<Formula::Conn>(&a.node)) {
    const auto& d = std::get<Formula::Conn>(b.node);
    if (c->op != d.op || c->kids.size() != d.kids.size()) return false;
    for (std::size_t i = 0; i < c->kids.size(); ++i)
      if (!same_formula(c->kids[i], d.kids[i])) return false;
    return true;
  }
  const auto& qa = std::get<Formula::Quant>(a.node);
  const auto& qb = std::get<Formula::Quant>(b.node);
  return qa.universal == qb.universal && qa.var == qb.var && qa.domain == qb.domain &&
         same_formula(qa.body[0], qb.body[0]);
}

}  // namespace mg

#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "mg/ast.hpp"
#include "mg/error.hpp"
#include "mg/model.hpp"

// Concrete syntax (ASCII):
//
//   formula := iff
//   iff     := imp ('<->' iff)?                     right associative
//   imp     := or  ('->' imp)?                      right associative
//   or      := and ('\/' or)?                       right associative
//   and     := unary ('/\' and)?                    right associative
//   unary   := '~' unary | quantifier | atom
//   quantifier := ('forall'|'exists') IDENT (':' ('name'|'singular'))? ',' formula
//   atom    := '(' formula ')'
//            | 'seq' '(' term ',' term ')' | 'weq' '(' term ',' term ')'
//            | term 'eps' term
//   term    := IDENT | functor '(' term (',' term)* ')'
//   functor := pt | el | Kl | coll | ov | subcoll | distinct | ext | union
//
// '#' starts a line comment. A quantifier body extends as far right as
// possible. Identifiers match [A-Za-z][A-Za-z0-9_]*; those named in the
// known-constant set parse as constants, the rest as variables.

namespace mg {

namespace lex {

enum class Kind { Ident, LParen, RParen, Comma, Colon, Tilde, And, Or, Arrow, Iff, End };

struct Token {
  Kind kind;
  std::string text;
  SourceSpan span;
};

inline const char* describe(Kind k) {
  switch (k) {
    case Kind::Ident: return "identifier";
    case Kind::LParen: return "'('";
    case Kind::RParen: return "')'";
    case Kind::Comma: return "','";
    case Kind::Colon: return "':'";
    case Kind::Tilde: return "'~'";
    case Kind::And: return "'/\\'";
    case Kind::Or: return "'\\/'";
    case Kind::Arrow: return "'->'";
    case Kind::Iff: return "'<->'";
    case Kind::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> scan(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto push = [&](Kind k, std::size_t begin, std::size_t end) {
    out.push_back({k, text.substr(begin, end - begin), {begin, end}});
  };
  while (i < n) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      push(Kind::Ident, start, i);
      continue;
    }
    switch (c) {
      case '(': push(Kind::LParen, start, ++i); continue;
      case ')': push(Kind::RParen, start, ++i); continue;
      case ',': push(Kind::Comma, start, ++i); continue;
      case ':': push(Kind::Colon, start, ++i); continue;
      case '~': push(Kind::Tilde, start, ++i); continue;
      case '/':
        if (i + 1 < n && text[i + 1] == '\\') {
          i += 2;
          push(Kind::And, start, i);
          continue;
        }
        break;
      case '\\':
        if (i + 1 < n && text[i + 1] == '/') {
          i += 2;
          push(Kind::Or, start, i);
          continue;
        }
        break;
      case '-':
        if (i + 1 < n && text[i + 1] == '>') {
          i += 2;
          push(Kind::Arrow, start, i);
          continue;
        }
        break;
      case '<':
        if (i + 2 < n && text[i + 1] == '-' && text[i + 2] == '>') {
          i += 3;
          push(Kind::Iff, start, i);
          continue;
        }
        break;
      default: break;
    }
    throw ParseError({start, start + 1}, "token",
                     "unexpected character '" + std::string(1, c) + "' at offset " +
                         std::to_string(start));
  }
  out.push_back({Kind::End, "", {n, n}});
  return out;
}

}  // namespace lex

namespace detail {

class FormulaParser {
 public:
  FormulaParser(const std::string& text, const std::set<std::string>& constants,
                bool require_closed)
      : tokens_(lex::scan(text)), constants_(constants), require_closed_(require_closed) {}

  Formula parse() {
    Formula f = formula();
    expect(lex::Kind::End);
    return f;
  }

 private:
  std::vector<lex::Token> tokens_;
  std::size_t pos_ = 0;
  const std::set<std::string>& constants_;
  bool require_closed_;
  std::vector<std::string> scope_;

  const lex::Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const lex::Token& advance() { return tokens_[pos_++]; }
  bool at(lex::Kind k) const { return peek().kind == k; }
  bool at_ident(const char* word) const { return at(lex::Kind::Ident) && peek().text == word; }

  [[noreturn]] void fail(const std::string& expected) const {
    const lex::Token& t = peek();
    std::string got = t.kind == lex::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.span, expected,
                     "expected " + expected + " but found " + got + " at offset " +
                         std::to_string(t.span.begin));
  }

  const lex::Token& expect(lex::Kind k) {
    if (!at(k)) fail(lex::describe(k));
    return advance();
  }

  bool bound(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (*it == name) return true;
    return false;
  }

  static SourceSpan join(SourceSpan a, SourceSpan b) { return {a.begin, b.end}; }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula left = implies();
    if (at(lex::Kind::Iff)) {
      advance();
      Formula right = iff();
      SourceSpan s = join(left.span, right.span);
      return Formula::binary(Connective::Iff, std::move(left), std::move(right), s);
    }
    return left;
  }

  Formula implies() {
    Formula left = disjunction();
    if (at(lex::Kind::Arrow)) {
      advance();
      Formula right = implies();
      SourceSpan s = join(left.span, right.span);
      return Formula::binary(Connective::Implies, std::move(left), std::move(right), s);
    }
    return left;
  }

  Formula disjunction() {
    Formula left = conjunction();
    if (at(lex::Kind::Or)) {
      advance();
      Formula right = disjunction();
      SourceSpan s = join(left.span, right.span);
      return Formula::binary(Connective::Or, std::move(left), std::move(right), s);
    }
    return left;
  }

  Formula conjunction() {
    Formula left = unary();
    if (at(lex::Kind::And)) {
      advance();
      Formula right = conjunction();
      SourceSpan s = join(left.span, right.span);
      return Formula::binary(Connective::And, std::move(left), std::move(right), s);
    }
    return left;
  }

  Formula unary() {
    if (at(lex::Kind::Tilde)) {
      SourceSpan start = advance().span;
      Formula body = unary();
      SourceSpan s = join(start, body.span);
      return Formula::negation(std::move(body), s);
    }
    if (at_ident("forall") || at_ident("exists")) return quantifier();
    return atom();
  }

  Formula quantifier() {
    const lex::Token& kw = advance();
    bool universal = kw.text == "forall";
    if (!at(lex::Kind::Ident)) fail("bound variable name");
    const lex::Token& var = advance();
    if (constants_.count(var.text))
      throw ParseError(var.span, "fresh variable",
                       "bound variable '" + var.text + "' shadows a declared constant");
    QuantDomain dom = QuantDomain::Name;
    if (at(lex::Kind::Colon)) {
      advance();
      if (at_ident("name")) {
        advance();
      } else if (at_ident("singular")) {
        advance();
        dom = QuantDomain::Singular;
      } else {
        fail("'name' or 'singular'");
      }
    }
    expect(lex::Kind::Comma);
    scope_.push_back(var.text);
    Formula body = formula();
    scope_.pop_back();
    SourceSpan s = join(kw.span, body.span);
    return Formula::quant(universal, var.text, dom, std::move(body), s);
  }

  Formula atom() {
    if (at(lex::Kind::LParen)) {
      advance();
      Formula inner = formula();
      expect(lex::Kind::RParen);
      return inner;
    }
    if (at_ident("seq") || at_ident("weq")) {
      const lex::Token& kw = advance();
      expect(lex::Kind::LParen);
      Term l = term();
      expect(lex::Kind::Comma);
      Term r = term();
      SourceSpan close = expect(lex::Kind::RParen).span;
      SourceSpan s = join(kw.span, close);
      return kw.text == "seq" ? Formula::seq(std::move(l), std::move(r), s)
                              : Formula::weq(std::move(l), std::move(r), s);
    }
    Term l = term();
    if (!at_ident("eps")) fail("'eps'");
    advance();
    Term r = term();
    SourceSpan s = join(l.span, r.span);
    return Formula::eps(std::move(l), std::move(r), s);
  }

  Term term() {
    if (!at(lex::Kind::Ident)) fail("term");
    const lex::Token& id = advance();
    if (at(lex::Kind::LParen)) {
      FunctorTag tag;
      if (!functor_from_name(id.text, tag))
        throw Error(ErrorCode::UnknownFunctor, "'" + id.text + "' at offset " +
                                                   std::to_string(id.span.begin) +
                                                   " is not a known functor");
      advance();
      std::vector<Term> args;
      args.push_back(term());
      while (at(lex::Kind::Comma)) {
        advance();
        args.push_back(term());
      }
      SourceSpan close = expect(lex::Kind::RParen).span;
      if (static_cast<int>(args.size()) != arity(tag))
        throw Error(ErrorCode::ArityMismatch,
                    std::string(to_string(tag)) + " expects " + std::to_string(arity(tag)) +
                        " argument(s), got " + std::to_string(args.size()) + " at offset " +
                        std::to_string(id.span.begin));
      return Term::apply(tag, std::move(args), join(id.span, close));
    }
    if (constants_.count(id.text)) return Term::constant(id.text, id.span);
    if (require_closed_ && !bound(id.text))
      throw Error(ErrorCode::UnboundVariable,
                  "variable '" + id.text + "' at offset " + std::to_string(id.span.begin) +
                      " is not bound by any quantifier");
    return Term::var(id.text, id.span);
  }
};

}  // namespace detail

/// Parses one closed formula. Identifiers in known_constants become
/// constants; everything else must be quantifier-bound unless
/// require_closed is false.
inline Formula parse_formula(const std::string& text, const std::set<std::string>& known_constants,
                             bool require_closed = true) {
  return detail::FormulaParser(text, known_constants, require_closed).parse();
}

// --------------------------------------------------------------------------
// Model text format (one directive per line, '#' comments):
//
//   atoms: x y z
//   name planets = {x} {y} {x,y}
//   name e =
// --------------------------------------------------------------------------

struct ModelSpec {
  std::vector<std::string> atoms;
  FiniteModel::ConstantDefs constants;

  FiniteModel build() const { return FiniteModel::make_powerset(atoms, constants); }
};

namespace detail {

inline bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

inline ModelSpec parse_model(const std::string& text) {
  ModelSpec spec;
  bool saw_atoms = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<std::string> words = detail::split_ws(line);
    if (words.empty()) continue;
    auto bad = [&](const std::string& why) -> Error {
      return Error(ErrorCode::BadFile, "line " + std::to_string(line_no) + ": " + why);
    };
    if (words[0] == "atoms:" || (words[0] == "atoms" && words.size() > 1 && words[1] == ":")) {
      if (saw_atoms) throw bad("duplicate atoms directive");
      std::size_t first = words[0] == "atoms:" ? 1 : 2;
      for (std::size_t i = first; i < words.size(); ++i) {
        if (!detail::valid_identifier(words[i])) throw bad("bad atom name '" + words[i] + "'");
        for (const std::string& seen : spec.atoms)
          if (seen == words[i]) throw bad("duplicate atom '" + words[i] + "'");
        spec.atoms.push_back(words[i]);
      }
      if (spec.atoms.empty()) throw bad("atoms directive lists no atoms");
      saw_atoms = true;
      continue;
    }
    if (words[0] == "name") {
      if (!saw_atoms) throw bad("name directive before atoms directive");
      if (words.size() < 3 || words[2] != "=") throw bad("expected: name <ident> = {..} {..}");
      const std::string& cname = words[1];
      if (!detail::valid_identifier(cname)) throw bad("bad constant name '" + cname + "'");
      if (cname == "empty" || cname == "u" || spec.constants.count(cname))
        throw Error(ErrorCode::DuplicateConstant,
                    "line " + std::to_string(line_no) + ": constant '" + cname +
                        "' already defined");
      std::vector<std::vector<std::string>> groups;
      for (std::size_t i = 3; i < words.size(); ++i) {
        const std::string& w = words[i];
        if (w.size() < 2 || w.front() != '{' || w.back() != '}')
          throw bad("expected atom group '{a,b}', got '" + w + "'");
        std::string inner = w.substr(1, w.size() - 2);
        std::vector<std::string> atoms_in_group;
        std::size_t j = 0;
        while (j <= inner.size() && !inner.empty()) {
          std::size_t comma = inner.find(',', j);
          std::string atom =
              inner.substr(j, comma == std::string::npos ? std::string::npos : comma - j);
          if (atom.empty()) throw bad("empty atom in group '" + w + "'");
          bool known = false;
          for (const std::string& a : spec.atoms) known = known || a == atom;
          if (!known)
            throw Error(ErrorCode::UnknownAtomInConstant,
                        "line " + std::to_string(line_no) + ": constant '" + cname +
                            "' uses undeclared atom '" + atom + "'");
          atoms_in_group.push_back(atom);
          if (comma == std::string::npos) break;
          j = comma + 1;
        }
        if (atoms_in_group.empty())
          throw Error(ErrorCode::EmptySetAsIndividual,
                      "line " + std::to_string(line_no) + ": empty group in constant '" +
                          cname + "'");
        groups.push_back(std::move(atoms_in_group));
      }
      spec.constants[cname] = std::move(groups);
      continue;
    }
    throw bad("unknown directive '" + words[0] + "'");
  }
  if (!saw_atoms) throw Error(ErrorCode::BadFile, "model text has no atoms directive");
  return spec;
}

// --------------------------------------------------------------------------
// Query mini-language: a single application "head(arg, ...)" whose head is
// interpreted by the caller (geometry predicates) and whose arguments are
// plain labels. Shares the formula lexer.
// --------------------------------------------------------------------------

struct Query {
  std::string head;
  std::vector<std::string> args;
};

inline Query parse_query(const std::string& text) {
  std::vector<lex::Token> toks = lex::scan(text);
  std::size_t i = 0;
  auto expect = [&](lex::Kind k) -> const lex::Token& {
    if (toks[i].kind != k)
      throw ParseError(toks[i].span, lex::describe(k),
                       std::string("expected ") + lex::describe(k) + " in query at offset " +
                           std::to_string(toks[i].span.begin));
    return toks[i++];
  };
  Query q;
  q.head = expect(lex::Kind::Ident).text;
  expect(lex::Kind::LParen);
  q.args.push_back(expect(lex::Kind::Ident).text);
  while (toks[i].kind == lex::Kind::Comma) {
    ++i;
    q.args.push_back(expect(lex::Kind::Ident).text);
  }
  expect(lex::Kind::RParen);
  expect(lex::Kind::End);
  return q;
}

}  // namespace mg

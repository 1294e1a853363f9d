#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mg/error.hpp"

namespace mg {

/// Denotation of a name: a set of individuals, stored as a bit mask over
/// individual indices. Empty mask = the empty name, one bit = a singular
/// name, more = a plural name. Masks order denotations lexicographically,
/// which is the enumeration order used everywhere for reproducibility.
struct NameDen {
  std::uint64_t bits = 0;

  static NameDen empty() { return {}; }
  static NameDen singleton(std::size_t i) { return {std::uint64_t{1} << i}; }

  bool contains(std::size_t i) const { return (bits >> i) & 1u; }
  int size() const { return std::popcount(bits); }
  bool is_empty() const { return bits == 0; }
  bool is_singular() const { return size() == 1; }
  /// Index of the unique member; only meaningful when is_singular().
  std::size_t the_member() const { return static_cast<std::size_t>(std::countr_zero(bits)); }

  NameDen with(std::size_t i) const { return {bits | (std::uint64_t{1} << i)}; }

  friend bool operator==(const NameDen&, const NameDen&) = default;
  friend auto operator<=>(const NameDen& a, const NameDen& b) { return a.bits <=> b.bits; }
};

/// Name-forming functors of the ontology/mereology layer.
enum class FunctorTag { Pt, El, Kl, Coll, Ov, Subcoll, Distinct, Ext, Union };

inline int arity(FunctorTag t) { return t == FunctorTag::Union ? 2 : 1; }

inline const char* to_string(FunctorTag t) {
  switch (t) {
    case FunctorTag::Pt: return "pt";
    case FunctorTag::El: return "el";
    case FunctorTag::Kl: return "Kl";
    case FunctorTag::Coll: return "coll";
    case FunctorTag::Ov: return "ov";
    case FunctorTag::Subcoll: return "subcoll";
    case FunctorTag::Distinct: return "distinct";
    case FunctorTag::Ext: return "ext";
    case FunctorTag::Union: return "union";
  }
  return "?";
}

inline bool functor_from_name(const std::string& s, FunctorTag& out) {
  if (s == "pt") out = FunctorTag::Pt;
  else if (s == "el") out = FunctorTag::El;
  else if (s == "Kl") out = FunctorTag::Kl;
  else if (s == "coll") out = FunctorTag::Coll;
  else if (s == "ov") out = FunctorTag::Ov;
  else if (s == "subcoll") out = FunctorTag::Subcoll;
  else if (s == "distinct") out = FunctorTag::Distinct;
  else if (s == "ext") out = FunctorTag::Ext;
  else if (s == "union") out = FunctorTag::Union;
  else return false;
  return true;
}

/// A finite universe of individuals carrying a part-or-equal relation and
/// named constants. Two construction paths:
///
///  - make_powerset_model: the canonical finite mereological structures,
///    all nonempty subsets of an atom set ordered by inclusion (a complete
///    Boolean lattice minus its zero, following Tarski and Clay). Individual
///    i stands for atom subset with bit pattern i+1; indices are therefore
///    stable and ordered by subset bit pattern.
///
///  - from_poset: a bespoke finite order (used for ball/solid universes).
///    Lattice-specific operations (oracle denotations) are unavailable.
///
/// Immutable after construction; all member functions are const.
class FiniteModel {
 public:
  static constexpr std::size_t kMaxAtoms = 6;
  static constexpr std::size_t kMaxIndividuals = 64;

  /// Atom subsets (nonempty, over declared atoms) per constant name.
  using ConstantDefs = std::map<std::string, std::vector<std::vector<std::string>>>;

  static FiniteModel make_powerset(std::size_t atom_count, const ConstantDefs& defs = {});
  static FiniteModel make_powerset(const std::vector<std::string>& atoms,
                                   const ConstantDefs& defs = {});

  /// leq must be reflexive; antisymmetry/transitivity are the caller's
  /// responsibility (ball/solid universes may only approximate a poset).
  template <class Leq>
  static FiniteModel from_poset(std::vector<std::string> names, Leq leq) {
    FiniteModel m;
    if (names.size() > kMaxIndividuals)
      throw Error(ErrorCode::ResourceLimit, "universe larger than 64 individuals");
    m.individual_names_ = std::move(names);
    m.down_.resize(m.individual_names_.size());
    for (std::size_t y = 0; y < m.individual_names_.size(); ++y) {
      std::uint64_t row = 0;
      for (std::size_t x = 0; x < m.individual_names_.size(); ++x)
        if (leq(x, y)) row |= std::uint64_t{1} << x;
      m.down_[y] = row;
    }
    m.constants_["empty"] = NameDen::empty();
    m.constants_["u"] = m.all_individuals();
    return m;
  }

  std::size_t individual_count() const { return down_.size(); }
  bool is_powerset() const { return !atoms_.empty(); }
  std::size_t atom_count() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }

  NameDen all_individuals() const {
    if (individual_count() == 64) return {~std::uint64_t{0}};
    return {(std::uint64_t{1} << individual_count()) - 1};
  }

  /// Part-or-equal on individuals.
  bool leq(std::size_t x, std::size_t y) const { return (down_[y] >> x) & 1u; }
  /// Strict part: below but not above (robust if antisymmetry fails).
  bool strictly_below(std::size_t x, std::size_t y) const {
    return x != y && leq(x, y) && !leq(y, x);
  }
  /// Mask of all z with z <= y.
  std::uint64_t down_set(std::size_t y) const { return down_[y]; }

  /// Atom subset of an individual (powerset models only).
  std::uint32_t atom_mask(std::size_t i) const { return static_cast<std::uint32_t>(i + 1); }

  const std::map<std::string, NameDen>& constants() const { return constants_; }
  const NameDen* find_constant(const std::string& name) const {
    auto it = constants_.find(name);
    return it == constants_.end() ? nullptr : &it->second;
  }

  /// Installs a named constant. Assembly-phase helper for bespoke
  /// universes whose constants are computed from the finished order.
  void define_constant(const std::string& name, NameDen d) {
    check_in_model(d, "constant");
    if (!constants_.emplace(name, d).second)
      throw Error(ErrorCode::DuplicateConstant, "constant '" + name + "' already defined");
  }

  /// Display name of an individual, e.g. "{x,y}" in powerset models.
  const std::string& individual_name(std::size_t i) const { return individual_names_[i]; }

  /// Renders a denotation as "{{x},{x,y}}" (members in index order).
  std::string render(NameDen d) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < individual_count(); ++i) {
      if (!d.contains(i)) continue;
      if (!first) out += ",";
      out += individual_names_[i];
      first = false;
    }
    out += "}";
    return out;
  }

  void check_in_model(NameDen d, const char* who) const {
    if ((d.bits & ~all_individuals().bits) != 0)
      throw Error(ErrorCode::ForeignIndividual, std::string(who) + " refers to an individual outside the model");
  }

 private:
  std::vector<std::string> atoms_;             // empty for bespoke universes
  std::vector<std::string> individual_names_;  // display names, by index
  std::vector<std::uint64_t> down_;            // down_[y] = mask of x <= y
  std::map<std::string, NameDen> constants_;
};

// --------------------------------------------------------------------------
// The epsilon copula and the two equalities.
// --------------------------------------------------------------------------

/// "A eps b": A denotes exactly one object and that object falls under b.
inline bool eval_epsilon(const FiniteModel& m, NameDen a, NameDen b) {
  m.check_in_model(a, "epsilon lhs");
  m.check_in_model(b, "epsilon rhs");
  return a.is_singular() && b.contains(a.the_member());
}

enum class EqualityKind { Singular, Weak };

/// Singular equality (holds only between singulars denoting one object);
/// weak equality (same members, an equivalence on all denotations).
inline bool eval_equality(const FiniteModel& m, EqualityKind kind, NameDen lhs, NameDen rhs) {
  m.check_in_model(lhs, "equality lhs");
  m.check_in_model(rhs, "equality rhs");
  if (kind == EqualityKind::Singular)
    return eval_epsilon(m, lhs, rhs) && eval_epsilon(m, rhs, lhs);
  return lhs == rhs;
}

// --------------------------------------------------------------------------
// Functor denotations, definitional route: each clause of the defining
// equivalence is evaluated literally over the model's individuals.
// --------------------------------------------------------------------------

namespace detail {

/// Does candidate s satisfy the class definition w.r.t. name a?
/// Clauses: a nonempty; every a is an element of s; every element of s has
/// a common element with some a.
inline bool satisfies_kl(const FiniteModel& m, NameDen a, std::size_t s) {
  if (a.is_empty()) return false;
  for (std::size_t y = 0; y < m.individual_count(); ++y)
    if (a.contains(y) && !m.leq(y, s)) return false;
  for (std::size_t b = 0; b < m.individual_count(); ++b) {
    if (!m.leq(b, s)) continue;
    bool found = false;
    for (std::size_t c = 0; c < m.individual_count() && !found; ++c) {
      if (!a.contains(c)) continue;
      // common lower bound of c and b
      if ((m.down_set(c) & m.down_set(b)) != 0) found = true;
    }
    if (!found) return false;
  }
  return true;
}

/// Does candidate p satisfy the collection definition w.r.t. name a?
/// Every element of p overlaps some a that is itself an element of p.
inline bool satisfies_coll(const FiniteModel& m, NameDen a, std::size_t p) {
  for (std::size_t q = 0; q < m.individual_count(); ++q) {
    if (!m.leq(q, p)) continue;
    bool found = false;
    for (std::size_t c = 0; c < m.individual_count() && !found; ++c) {
      if (!a.contains(c) || !m.leq(c, p)) continue;
      if ((m.down_set(c) & m.down_set(q)) != 0) found = true;
    }
    if (!found) return false;
  }
  return true;
}

inline NameDen kl_den(const FiniteModel& m, NameDen a) {
  NameDen out;
  for (std::size_t s = 0; s < m.individual_count(); ++s)
    if (satisfies_kl(m, a, s)) out = out.with(s);
  return out;
}

inline NameDen el_den(const FiniteModel& m, NameDen b) {
  std::uint64_t out = 0;
  for (std::size_t y = 0; y < m.individual_count(); ++y)
    if (b.contains(y)) out |= m.down_set(y);
  return {out};
}

/// Sums of nonempty subsets of the elements of a. For small element sets the
/// subsets are enumerated literally; beyond that the equivalent collection
/// reading (sums of subsets of el(a) = collections of el(a)) keeps the cost
/// polynomial. The two routes are themselves compared in tests.
inline NameDen subcoll_den(const FiniteModel& m, NameDen a) {
  NameDen elements = el_den(m, a);
  int n = elements.size();
  if (n <= 12) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m.individual_count(); ++i)
      if (elements.contains(i)) idx.push_back(i);
    NameDen out;
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << n); ++sub) {
      NameDen set;
      for (int k = 0; k < n; ++k)
        if ((sub >> k) & 1u) set = set.with(idx[k]);
      out.bits |= kl_den(m, set).bits;
    }
    return out;
  }
  NameDen out;
  for (std::size_t p = 0; p < m.individual_count(); ++p)
    if (satisfies_coll(m, elements, p)) out = out.with(p);
  return out;
}

}  // namespace detail

/// Definitional denotation of functor f applied to args.
inline NameDen functor_den(const FiniteModel& m, FunctorTag f, const std::vector<NameDen>& args) {
  if (static_cast<int>(args.size()) != arity(f))
    throw Error(ErrorCode::ArityMismatch, std::string(to_string(f)) + " expects " +
                                              std::to_string(arity(f)) + " argument(s)");
  for (const NameDen& a : args) m.check_in_model(a, "functor argument");
  const std::size_t n = m.individual_count();
  switch (f) {
    case FunctorTag::Pt: {
      NameDen out;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (args[0].contains(y) && m.strictly_below(x, y)) {
            out = out.with(x);
            break;
          }
      return out;
    }
    case FunctorTag::El:
      return detail::el_den(m, args[0]);
    case FunctorTag::Kl:
      return detail::kl_den(m, args[0]);
    case FunctorTag::Coll: {
      NameDen out;
      for (std::size_t p = 0; p < n; ++p)
        if (detail::satisfies_coll(m, args[0], p)) out = out.with(p);
      return out;
    }
    case FunctorTag::Ov: {
      // P overlaps Q: some C is an element of both.
      std::uint64_t qdown = detail::el_den(m, args[0]).bits;
      NameDen out;
      for (std::size_t p = 0; p < n; ++p)
        if ((m.down_set(p) & qdown) != 0) out = out.with(p);
      return out;
    }
    case FunctorTag::Subcoll:
      return detail::subcoll_den(m, args[0]);
    case FunctorTag::Distinct:
      return {m.all_individuals().bits & ~args[0].bits};
    case FunctorTag::Ext: {
      NameDen out;
      for (std::size_t x = 0; x < n; ++x) {
        bool exterior = true;
        for (std::size_t y = 0; y < n && exterior; ++y)
          if (args[0].contains(y) && (m.down_set(x) & m.down_set(y)) != 0) exterior = false;
        if (exterior) out = out.with(x);
      }
      return out;
    }
    case FunctorTag::Union:
      return {args[0].bits | args[1].bits};
  }
  throw Error(ErrorCode::UnknownFunctor, "unhandled functor tag");
}

// --------------------------------------------------------------------------
// Functor denotations, lattice route: closed forms that only make sense in
// powerset models. Serves as the independent oracle for functor_den.
// --------------------------------------------------------------------------

namespace detail {

/// All unions of nonempty subsets of the given individuals, as a denotation.
/// Computed by closing over pairwise atom-mask unions.
inline NameDen union_closure(const FiniteModel& m, NameDen members) {
  std::vector<bool> reachable(std::size_t{1} << m.atom_count(), false);
  reachable[0] = true;
  for (std::size_t y = 0; y < m.individual_count(); ++y) {
    if (!members.contains(y)) continue;
    std::uint32_t ymask = m.atom_mask(y);
    for (std::size_t w = reachable.size(); w-- > 0;)
      if (reachable[w]) reachable[w | ymask] = true;
  }
  NameDen out;
  for (std::size_t w = 1; w < reachable.size(); ++w)
    if (reachable[w]) out = out.with(w - 1);
  return out;
}

}  // namespace detail

/// Closed-form denotation over the subset lattice; powerset models only.
inline NameDen oracle_den(const FiniteModel& m, FunctorTag f, const std::vector<NameDen>& args) {
  if (!m.is_powerset())
    throw Error(ErrorCode::ResourceLimit, "oracle denotations need a powerset model");
  if (static_cast<int>(args.size()) != arity(f))
    throw Error(ErrorCode::ArityMismatch, std::string(to_string(f)) + " expects " +
                                              std::to_string(arity(f)) + " argument(s)");
  for (const NameDen& a : args) m.check_in_model(a, "functor argument");
  const std::size_t n = m.individual_count();
  auto submask_closure = [&](NameDen b, bool strict) {
    NameDen out;
    for (std::size_t y = 0; y < n; ++y) {
      if (!b.contains(y)) continue;
      std::uint32_t ym = m.atom_mask(y);
      for (std::size_t x = 0; x < n; ++x) {
        std::uint32_t xm = m.atom_mask(x);
        if ((xm & ~ym) == 0 && (!strict || xm != ym)) out = out.with(x);
      }
    }
    return out;
  };
  switch (f) {
    case FunctorTag::Pt:
      return submask_closure(args[0], /*strict=*/true);
    case FunctorTag::El:
      return submask_closure(args[0], /*strict=*/false);
    case FunctorTag::Kl: {
      if (args[0].is_empty()) return {};
      std::uint32_t lub = 0;
      for (std::size_t y = 0; y < n; ++y)
        if (args[0].contains(y)) lub |= m.atom_mask(y);
      return NameDen::singleton(lub - 1);
    }
    case FunctorTag::Coll:
      return detail::union_closure(m, args[0]);
    case FunctorTag::Subcoll:
      return detail::union_closure(m, submask_closure(args[0], /*strict=*/false));
    case FunctorTag::Ov: {
      std::uint32_t atoms_of_q = 0;
      for (std::size_t y = 0; y < n; ++y)
        if (args[0].contains(y)) atoms_of_q |= m.atom_mask(y);
      NameDen out;
      for (std::size_t x = 0; x < n; ++x)
        if ((m.atom_mask(x) & atoms_of_q) != 0) out = out.with(x);
      return out;
    }
    case FunctorTag::Distinct:
      return {m.all_individuals().bits & ~args[0].bits};
    case FunctorTag::Ext: {
      std::uint32_t atoms_of_b = 0;
      for (std::size_t y = 0; y < n; ++y)
        if (args[0].contains(y)) atoms_of_b |= m.atom_mask(y);
      NameDen out;
      for (std::size_t x = 0; x < n; ++x)
        if ((m.atom_mask(x) & atoms_of_b) == 0) out = out.with(x);
      return out;
    }
    case FunctorTag::Union:
      return {args[0].bits | args[1].bits};
  }
  throw Error(ErrorCode::UnknownFunctor, "unhandled functor tag");
}

// --------------------------------------------------------------------------

inline FiniteModel FiniteModel::make_powerset(const std::vector<std::string>& atoms,
                                              const ConstantDefs& defs) {
  if (atoms.empty() || atoms.size() > kMaxAtoms)
    throw Error(ErrorCode::AtomCountOutOfRange,
                "atom count must be between 1 and " + std::to_string(kMaxAtoms));
  FiniteModel m;
  m.atoms_ = atoms;
  const std::size_t count = (std::size_t{1} << atoms.size()) - 1;
  m.individual_names_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t mask = static_cast<std::uint32_t>(i + 1);
    std::string name = "{";
    bool first = true;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (!((mask >> a) & 1u)) continue;
      if (!first) name += ",";
      name += atoms[a];
      first = false;
    }
    name += "}";
    m.individual_names_.push_back(std::move(name));
  }
  m.down_.resize(count);
  for (std::size_t y = 0; y < count; ++y) {
    std::uint64_t row = 0;
    std::uint32_t ym = static_cast<std::uint32_t>(y + 1);
    for (std::size_t x = 0; x < count; ++x)
      if ((static_cast<std::uint32_t>(x + 1) & ~ym) == 0) row |= std::uint64_t{1} << x;
    m.down_[y] = row;
  }
  m.constants_["empty"] = NameDen::empty();
  m.constants_["u"] = m.all_individuals();
  for (const auto& [name, subsets] : defs) {
    if (m.constants_.count(name))
      throw Error(ErrorCode::DuplicateConstant, "constant '" + name + "' defined twice");
    NameDen den;
    for (const auto& subset : subsets) {
      if (subset.empty())
        throw Error(ErrorCode::EmptySetAsIndividual,
                    "constant '" + name + "' lists an empty atom subset");
      std::uint32_t mask = 0;
      for (const std::string& atom : subset) {
        std::size_t a = 0;
        while (a < atoms.size() && atoms[a] != atom) ++a;
        if (a == atoms.size())
          throw Error(ErrorCode::UnknownAtomInConstant,
                      "constant '" + name + "' uses undeclared atom '" + atom + "'");
        mask |= std::uint32_t{1} << a;
      }
      den = den.with(mask - 1);
    }
    m.constants_[name] = den;
  }
  return m;
}

inline FiniteModel FiniteModel::make_powerset(std::size_t atom_count, const ConstantDefs& defs) {
  if (atom_count < 1 || atom_count > kMaxAtoms)
    throw Error(ErrorCode::AtomCountOutOfRange,
                "atom count must be between 1 and " + std::to_string(kMaxAtoms));
  static const char* kNames[kMaxAtoms] = {"a", "b", "c", "d", "e", "f"};
  std::vector<std::string> atoms(kNames, kNames + atom_count);
  return make_powerset(atoms, defs);
}

}  // namespace mg

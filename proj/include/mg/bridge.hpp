#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mg/checker.hpp"
#include "mg/error.hpp"
#include "mg/geometry.hpp"
#include "mg/model.hpp"
#include "mg/scene.hpp"

// Candidate-restricted evaluation of the ball-geometry definitions.
//
// Each definition is read as its quantified mereological form, with the
// quantifiers restricted to a finite candidate set of balls: the scene,
// plus analytically constructed witness balls injected per check, plus a
// closure pass that gives every properly crossing pair of candidates a
// common part (so candidate exteriority decides exactly on those pairs).
// Nested occurrences of already-defined relations (et, it, edt, idt, con)
// are evaluated analytically, mirroring the bottom-up order in which the
// definitions are introduced; the part order and exteriority of the
// universe itself stay mereological.
//
// Restricting a universal quantifier can only weaken it, so an analytic
// truth must survive as a restricted truth; an analytic falsehood is
// refuted whenever decisive candidates are present, and otherwise reported
// as inconclusive rather than as a disagreement.

namespace mg {

// --------------------------------------------------------------------------
// Witness constructions. All stay inside rational arithmetic; where a true
// Euclidean length would be irrational, a rational bound derived from its
// square is used instead ((1 + d^2)/2 always dominates |d|).
// --------------------------------------------------------------------------

namespace witness {

inline Rat dominating_bound(const Rat& sq) { return (1 + sq) / 2; }

/// A ball centered at `center` lying inside `target` (strictly closer than
/// the boundary). Requires sq_dist(center, target.center) < r^2.
inline Ball inside_reaching(const std::vector<Rat>& center, const Ball& target,
                            std::string label) {
  Rat d2 = sq_dist(center, target.center);
  Rat r2 = target.radius * target.radius;
  if (d2 >= r2) throw std::logic_error("inside_reaching: center not strictly inside");
  return Ball::make(center, (r2 - d2) / (2 * target.radius), std::move(label));
}

/// A ball centered at `center` exterior to `target`. Requires
/// sq_dist(center, target.center) > r^2.
inline Ball outside_avoiding(const std::vector<Rat>& center, const Ball& target,
                             std::string label) {
  Rat d2 = sq_dist(center, target.center);
  Rat r2 = target.radius * target.radius;
  if (d2 <= r2) throw std::logic_error("outside_avoiding: center not strictly outside");
  return Ball::make(center, (d2 - r2) / (2 * dominating_bound(d2)), std::move(label));
}

/// A common part of two properly crossing balls, centered on the radical
/// point of the segment between their centers.
inline std::optional<Ball> overlap_witness(const Ball& a, const Ball& b, std::string label) {
  if (!ball_mereo(BallRel::Overlap, a, b)) return std::nullopt;
  if (ball_mereo(BallRel::PartOf, a, b) || ball_mereo(BallRel::PartOf, b, a))
    return std::nullopt;  // the smaller ball is already a common part
  Rat d2 = sq_dist(a, b);
  Rat t = (d2 + a.radius * a.radius - b.radius * b.radius) / (2 * d2);
  std::vector<Rat> p(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    p[i] = a.center[i] + t * (b.center[i] - a.center[i]);
  Rat da2 = t * t * d2;
  Rat db2 = (1 - t) * (1 - t) * d2;
  Rat ra = (a.radius * a.radius - da2) / (2 * a.radius);
  Rat rb = (b.radius * b.radius - db2) / (2 * b.radius);
  return Ball::make(std::move(p), std::min(ra, rb), std::move(label));
}

/// Two incomparable balls that both contain `a` and stay exterior to `b`;
/// exists whenever a and b are exterior but not tangent.
inline std::vector<Ball> exterior_pair(const Ball& a, const Ball& b, const std::string& prefix) {
  Rat d2 = sq_dist(a, b);
  Rat s = a.radius + b.radius;
  if (d2 <= s * s) throw std::logic_error("exterior_pair: balls not strictly apart");
  Rat dh = dominating_bound(d2);
  Rat gap = (d2 - s * s) / (2 * dh);
  Rat alpha = gap / (4 * dh);
  Rat radius = a.radius + 2 * alpha * dh;
  auto shifted = [&](const Rat& k) {
    std::vector<Rat> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      c[i] = a.center[i] - k * (b.center[i] - a.center[i]);
    return c;
  };
  return {Ball::make(shifted(alpha), radius, prefix + "0"),
          Ball::make(shifted(2 * alpha), radius, prefix + "1")};
}

/// Two incomparable balls containing `a` and contained in `b`; exists
/// whenever a is a proper part of b without touching its boundary.
inline std::vector<Ball> sandwich_pair(const Ball& a, const Ball& b, const std::string& prefix) {
  Rat d2 = sq_dist(a, b);
  Rat gi = b.radius - a.radius;
  if (gi <= 0 || d2 >= gi * gi) throw std::logic_error("sandwich_pair: not strictly interior");
  if (d2 == 0) {
    Rat h = gi / 4;
    Rat radius = a.radius + 2 * h;
    auto shifted = [&](const Rat& k) {
      std::vector<Rat> c = a.center;
      c[0] += k;
      return c;
    };
    return {Ball::make(shifted(h), radius, prefix + "0"),
            Ball::make(shifted(2 * h), radius, prefix + "1")};
  }
  Rat dh = dominating_bound(d2);
  Rat ghat = (gi * gi - d2) / (gi + dh);
  Rat beta = ghat / (4 * dh);
  Rat radius = a.radius + 2 * beta * dh;
  auto shifted = [&](const Rat& k) {
    std::vector<Rat> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      c[i] = a.center[i] + k * (b.center[i] - a.center[i]);
    return c;
  };
  return {Ball::make(shifted(beta), radius, prefix + "0"),
          Ball::make(shifted(2 * beta), radius, prefix + "1")};
}

/// Tangency point of `a` on host `c`: the external one when a is tangent
/// from outside, the boundary contact when a is internally tangent.
inline std::vector<Rat> tangent_point(const Ball& a, const Ball& c, bool external) {
  Rat denom = external ? Rat(a.radius + c.radius) : Rat(c.radius - a.radius);
  std::vector<Rat> p(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    p[i] = c.center[i] + c.radius * (a.center[i] - c.center[i]) / denom;
  return p;
}

/// Two equal balls tangent to host c at the sphere points p and q, big
/// enough to contain balls of radius up to r_extra at those points and to
/// overlap each other whenever p and q are not antipodal.
inline std::vector<Ball> grown_tangent_pair(const Ball& c, const std::vector<Rat>& p,
                                            const std::vector<Rat>& q, const Rat& r_extra,
                                            const std::string& prefix) {
  Rat d2 = sq_dist(p, q);
  Rat k = d2 / (4 * c.radius * c.radius);
  if (k >= 1) throw std::logic_error("grown_tangent_pair: antipodal points");
  Rat tau = 2 / (1 - k) + r_extra / c.radius + 1;
  Rat radius = (tau - 1) * c.radius;
  auto at = [&](const std::vector<Rat>& pt, const std::string& label) {
    std::vector<Rat> ctr(c.dim());
    for (std::size_t i = 0; i < c.dim(); ++i)
      ctr[i] = c.center[i] + tau * (pt[i] - c.center[i]);
    return Ball::make(std::move(ctr), radius, label);
  };
  std::vector<Ball> out;
  out.push_back(at(p, prefix + "0"));
  if (p != q) out.push_back(at(q, prefix + "1"));
  return out;
}

/// For an off-center proper part `inner` < `outer`: two balls externally
/// diametrically tangent to `inner` and internally tangent to `outer`
/// whose tangency points on `outer` are not antipodal. The tangent axis is
/// a coordinate direction chosen off the center line, which always exists
/// in dimension >= 2 when the centers differ.
inline std::vector<Ball> offcenter_spoiler(const Ball& inner, const Ball& outer,
                                           const std::string& prefix) {
  if (inner.dim() < 2) return {};
  std::vector<Rat> w(inner.dim());
  for (std::size_t i = 0; i < inner.dim(); ++i) w[i] = outer.center[i] - inner.center[i];
  Rat d2 = sq_dist(inner.center, outer.center);
  if (d2 == 0) throw std::logic_error("offcenter_spoiler: concentric");
  std::size_t axis = (w[0] * w[0] != d2) ? 0 : 1;
  Rat s = w[axis];
  Rat n = outer.radius * outer.radius - inner.radius * inner.radius - d2;
  Rat rx = (n + 2 * inner.radius * s) / (2 * (inner.radius + outer.radius - s));
  Rat ry = (n - 2 * inner.radius * s) / (2 * (inner.radius + outer.radius + s));
  auto at = [&](const Rat& reach, bool positive, const std::string& label, const Rat& radius) {
    std::vector<Rat> ctr = inner.center;
    ctr[axis] += positive ? reach : -reach;
    return Ball::make(std::move(ctr), radius, label);
  };
  return {at(inner.radius + rx, true, prefix + "0", rx),
          at(inner.radius + ry, false, prefix + "1", ry)};
}

}  // namespace witness

// --------------------------------------------------------------------------
// Scene universe.
// --------------------------------------------------------------------------

struct SceneUniverse {
  std::vector<Ball> balls;  // deduplicated candidates, closure included
  struct SolidEntry {
    std::string label;
    std::vector<std::size_t> members;  // indices into balls
  };
  std::vector<SolidEntry> solids;
  std::map<std::string, std::size_t> label_to_individual;
  FiniteModel model;
  NameDen balls_const;
  NameDen solids_const;

  std::size_t resolve(const std::string& label) const {
    auto it = label_to_individual.find(label);
    if (it == label_to_individual.end())
      throw Error(ErrorCode::UnknownLabel, "no individual labeled '" + label + "'");
    return it->second;
  }
  bool is_ball(std::size_t idx) const { return idx < balls.size(); }
  /// Candidate exteriority: no candidate below both.
  bool uext(std::size_t x, std::size_t y) const {
    return (model.down_set(x) & model.down_set(y)) == 0;
  }
  bool uleq(std::size_t x, std::size_t y) const { return model.leq(x, y); }
};

inline SceneUniverse scene_to_universe(const Scene& scene, const std::vector<Ball>& injected = {}) {
  SceneUniverse u;
  std::map<std::string, std::size_t> ball_index;

  auto add_ball = [&](const Ball& b) -> std::size_t {
    for (std::size_t i = 0; i < u.balls.size(); ++i)
      if (ball_mereo(BallRel::Equal, b, u.balls[i])) {
        if (!b.label.empty()) ball_index.emplace(b.label, i);  // geometric alias
        return i;
      }
    u.balls.push_back(b);
    if (!b.label.empty()) ball_index.emplace(b.label, u.balls.size() - 1);
    return u.balls.size() - 1;
  };

  for (const Ball& b : scene.balls) {
    if (b.dim() != scene.dim)
      throw Error(ErrorCode::DimensionMismatch, "ball '" + b.label + "' has wrong dimension");
    add_ball(b);
  }
  for (const Ball& b : injected) {
    if (b.dim() != scene.dim)
      throw Error(ErrorCode::DimensionMismatch, "injected ball has wrong dimension");
    add_ball(b);
  }

  // Closure: give every properly crossing candidate pair a common part, so
  // candidate exteriority agrees with ball exteriority on these pairs.
  std::size_t fixed = u.balls.size();
  std::size_t wk = 0;
  for (std::size_t i = 0; i < fixed; ++i)
    for (std::size_t j = i + 1; j < fixed; ++j)
      if (auto w = witness::overlap_witness(u.balls[i], u.balls[j], "_w" + std::to_string(wk))) {
        std::size_t before = u.balls.size();
        if (add_ball(*w) == before) ++wk;
      }

  // Solids: labeled, deduplicated by member set; a one-ball solid is the
  // ball itself.
  std::vector<std::set<std::size_t>> seen_sets;
  for (const Scene::SolidDef& def : scene.solids) {
    std::set<std::size_t> members;
    for (const std::string& m : def.members) members.insert(ball_index.at(m));
    if (members.size() == 1) {
      u.label_to_individual[def.label] = *members.begin();
      continue;
    }
    bool duplicate = false;
    for (std::size_t k = 0; k < seen_sets.size(); ++k)
      if (seen_sets[k] == members) {
        u.label_to_individual[def.label] = u.balls.size() + k;
        duplicate = true;
        break;
      }
    if (duplicate) continue;
    seen_sets.push_back(members);
    u.solids.push_back({def.label, {members.begin(), members.end()}});
  }

  const std::size_t nb = u.balls.size();
  const std::size_t total = nb + u.solids.size();
  if (total > FiniteModel::kMaxIndividuals)
    throw Error(ErrorCode::ResourceLimit,
                "scene universe needs " + std::to_string(total) + " individuals (cap 64)");

  // Ball-level part order, then constituent-wise extension to solids.
  std::vector<std::vector<bool>> part(nb, std::vector<bool>(nb));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      part[i][j] = ball_mereo(BallRel::PartOf, u.balls[i], u.balls[j]);

  auto parts_of = [&](std::size_t idx) -> std::vector<std::size_t> {
    if (idx < nb) return {idx};
    return u.solids[idx - nb].members;
  };
  auto leq = [&](std::size_t x, std::size_t y) {
    for (std::size_t cx : parts_of(x)) {
      bool covered = false;
      for (std::size_t cy : parts_of(y)) covered = covered || part[cx][cy];
      if (!covered) return false;
    }
    return true;
  };

  std::vector<std::string> names;
  for (const Ball& b : u.balls) names.push_back(b.label);
  for (const auto& s : u.solids) names.push_back(s.label);
  u.model = FiniteModel::from_poset(names, leq);

  for (std::size_t i = 0; i < nb; ++i) u.balls_const = u.balls_const.with(i);
  // ball_index also carries labels of geometric duplicates, all mapped to
  // the one surviving individual.
  u.label_to_individual.insert(ball_index.begin(), ball_index.end());
  for (std::size_t k = 0; k < u.solids.size(); ++k)
    u.label_to_individual[u.solids[k].label] = nb + k;

  // The solids constant, read off the universe: sums of nonempty sets of
  // elements of collections of balls.
  NameDen coll_balls = functor_den(u.model, FunctorTag::Coll, {u.balls_const});
  for (std::size_t b = 0; b < total; ++b)
    if (coll_balls.contains(b))
      u.solids_const.bits |=
          functor_den(u.model, FunctorTag::Subcoll, {NameDen::singleton(b)}).bits;

  u.model.define_constant("balls", u.balls_const);
  u.model.define_constant("solids", u.solids_const);
  return u;
}

// --------------------------------------------------------------------------
// Definition checks.
// --------------------------------------------------------------------------

enum class DefId { Et, It, Edt, Idt, Con, Equid, Ipoint, Solids };

inline const char* to_string(DefId d) {
  switch (d) {
    case DefId::Et: return "et";
    case DefId::It: return "it";
    case DefId::Edt: return "edt";
    case DefId::Idt: return "idt";
    case DefId::Con: return "con";
    case DefId::Equid: return "equid";
    case DefId::Ipoint: return "ipoint";
    case DefId::Solids: return "solids";
  }
  return "?";
}

inline DefId def_from_name(const std::string& s) {
  if (s == "et") return DefId::Et;
  if (s == "it") return DefId::It;
  if (s == "edt") return DefId::Edt;
  if (s == "idt") return DefId::Idt;
  if (s == "con") return DefId::Con;
  if (s == "equid") return DefId::Equid;
  if (s == "ipoint") return DefId::Ipoint;
  if (s == "solids") return DefId::Solids;
  throw Error(ErrorCode::UnknownDefinition, "no definition named '" + s + "'");
}

inline std::size_t def_arity(DefId d) {
  switch (d) {
    case DefId::Et:
    case DefId::It:
    case DefId::Con:
    case DefId::Ipoint: return 2;
    case DefId::Edt:
    case DefId::Idt:
    case DefId::Equid: return 3;
    case DefId::Solids: return 1;
  }
  return 0;
}

enum class Agreement { Agree, HardDisagree, Inconclusive };

inline const char* to_string(Agreement a) {
  switch (a) {
    case Agreement::Agree: return "agree";
    case Agreement::HardDisagree: return "hard-disagree";
    case Agreement::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct BridgeReport {
  DefId def;
  std::vector<std::string> args;
  TriBool analytic = TriBool::No;
  bool mereological = false;
  Agreement agreement = Agreement::Agree;
  std::uint64_t candidates_examined = 0;
  std::vector<std::string> injected;
  std::string note;

  std::string headline() const {
    std::string s = to_string(def);
    s += "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) s += ",";
      s += args[i];
    }
    s += ")";
    return s;
  }
};

namespace bridge_detail {

struct DefEval {
  const SceneUniverse& u;
  std::uint64_t examined = 0;

  std::vector<std::size_t> ball_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < u.balls.size(); ++i) out.push_back(i);
    return out;
  }

  bool comparable(std::size_t x, std::size_t y) { return u.uleq(x, y) || u.uleq(y, x); }

  bool et(std::size_t a, std::size_t b) {
    if (!u.uext(a, b)) return false;
    for (std::size_t x : ball_indices())
      for (std::size_t y : ball_indices()) {
        ++examined;
        if (u.uleq(a, x) && u.uext(x, b) && u.uleq(a, y) && u.uext(y, b) && !comparable(x, y))
          return false;
      }
    return true;
  }

  bool it(std::size_t a, std::size_t b) {
    if (!u.model.strictly_below(a, b)) return false;
    for (std::size_t x : ball_indices())
      for (std::size_t y : ball_indices()) {
        ++examined;
        if (u.uleq(a, x) && u.uleq(x, b) && u.uleq(a, y) && u.uleq(y, b) && !comparable(x, y))
          return false;
      }
    return true;
  }

  // Hosts are the geometric balls; nested tangencies are analytic.
  bool edt(const Ball& a, const Ball& b, const Ball& c, std::size_t ia, std::size_t ib,
           std::size_t ic) {
    if (!tangency(Tangency::ET, a, c) || !tangency(Tangency::ET, b, c)) return false;
    for (std::size_t x : ball_indices())
      for (std::size_t y : ball_indices()) {
        ++examined;
        if (u.uleq(ia, x) && u.uext(x, ic) && u.uleq(ib, y) && u.uext(y, ic) && !u.uext(x, y))
          return false;
      }
    return true;
  }

  bool idt(const Ball& a, const Ball& b, const Ball& c, std::size_t ic) {
    if (!tangency(Tangency::IT, a, c) || !tangency(Tangency::IT, b, c)) return false;
    for (std::size_t x : ball_indices())
      for (std::size_t y : ball_indices()) {
        ++examined;
        if (u.uext(x, ic) && u.uext(y, ic) && tangency(Tangency::ET, a, u.balls[x]) &&
            tangency(Tangency::ET, b, u.balls[y]) && !u.uext(x, y))
          return false;
      }
    return true;
  }

  bool con(const Ball& a, const Ball& b, std::size_t ia, std::size_t ib) {
    if (ia == ib) return true;
    auto clause = [&](const Ball& inner, const Ball& outer, std::size_t iinner,
                      std::size_t iouter) {
      if (!u.model.strictly_below(iinner, iouter)) return false;
      for (std::size_t x : ball_indices())
        for (std::size_t y : ball_indices()) {
          ++examined;
          if (diam_tangency(DiamTangency::EDT, u.balls[x], u.balls[y], inner) &&
              tangency(Tangency::IT, u.balls[x], outer) &&
              tangency(Tangency::IT, u.balls[y], outer) &&
              !diam_tangency(DiamTangency::IDT, u.balls[x], u.balls[y], outer))
            return false;
        }
      return true;
    };
    return clause(a, b, ia, ib) || clause(b, a, ib, ia);
  }

  bool equid(const Ball& p, const Ball& q, const Ball& c) {
    for (std::size_t x : ball_indices()) {
      ++examined;
      if (!concentric(u.balls[x], c)) continue;
      bool survives = true;
      for (std::size_t y : ball_indices()) {
        ++examined;
        if (!concentric(u.balls[y], p) && !concentric(u.balls[y], q)) continue;
        if (u.uleq(y, x) || u.uext(y, x)) {
          survives = false;
          break;
        }
      }
      if (survives) return true;
    }
    return false;
  }

  bool ipoint(const Ball& p, std::size_t target) {
    if (!u.solids_const.contains(target)) return false;
    for (std::size_t x : ball_indices()) {
      ++examined;
      if (concentric(u.balls[x], p) && u.uleq(x, target)) return true;
    }
    return false;
  }
};

}  // namespace bridge_detail

/// Evaluates one definition on a scene and compares the candidate-restricted
/// mereological verdict with the analytic predicate. Witness balls are
/// injected per the analytic verdict before the universe is assembled.
inline BridgeReport check_definition(const Scene& scene, DefId def,
                                     const std::vector<std::string>& args) {
  if (args.size() != def_arity(def))
    throw Error(ErrorCode::ArityMismatch, std::string(to_string(def)) + " takes " +
                                              std::to_string(def_arity(def)) + " argument(s)");
  BridgeReport report;
  report.def = def;
  report.args = args;

  auto ball_arg = [&](std::size_t i) -> const Ball& {
    const Ball* b = scene.find_ball(args[i]);
    if (!b) throw Error(ErrorCode::UnknownLabel, "no ball labeled '" + args[i] + "'");
    return *b;
  };

  std::vector<Ball> injected;
  TriBool analytic = TriBool::No;

  switch (def) {
    case DefId::Et: {
      const Ball &a = ball_arg(0), &b = ball_arg(1);
      analytic = tangency(Tangency::ET, a, b) ? TriBool::Yes : TriBool::No;
      if (analytic == TriBool::No && ball_mereo(BallRel::Ext, a, b))
        injected = witness::exterior_pair(a, b, "_x");
      // overlapping non-tangent pairs are refuted by the closure witness
      break;
    }
    case DefId::It: {
      const Ball &a = ball_arg(0), &b = ball_arg(1);
      analytic = tangency(Tangency::IT, a, b) ? TriBool::Yes : TriBool::No;
      if (analytic == TriBool::No && ball_mereo(BallRel::ProperPart, a, b))
        injected = witness::sandwich_pair(a, b, "_x");
      break;
    }
    case DefId::Edt: {
      const Ball &a = ball_arg(0), &b = ball_arg(1), &c = ball_arg(2);
      analytic = diam_tangency(DiamTangency::EDT, a, b, c) ? TriBool::Yes : TriBool::No;
      if (analytic == TriBool::No && tangency(Tangency::ET, a, c) &&
          tangency(Tangency::ET, b, c))
        injected = witness::grown_tangent_pair(c, witness::tangent_point(a, c, true),
                                               witness::tangent_point(b, c, true),
                                               a.radius + b.radius, "_x");
      break;
    }
    case DefId::Idt: {
      const Ball &a = ball_arg(0), &b = ball_arg(1), &c = ball_arg(2);
      analytic = diam_tangency(DiamTangency::IDT, a, b, c) ? TriBool::Yes : TriBool::No;
      if (analytic == TriBool::No && tangency(Tangency::IT, a, c) &&
          tangency(Tangency::IT, b, c))
        injected = witness::grown_tangent_pair(c, witness::tangent_point(a, c, false),
                                               witness::tangent_point(b, c, false),
                                               a.radius + b.radius, "_x");
      break;
    }
    case DefId::Con: {
      const Ball &a = ball_arg(0), &b = ball_arg(1);
      analytic = concentric(a, b) ? TriBool::Yes : TriBool::No;
      if (analytic == TriBool::No) {
        if (ball_mereo(BallRel::ProperPart, a, b))
          injected = witness::offcenter_spoiler(a, b, "_x");
        else if (ball_mereo(BallRel::ProperPart, b, a))
          injected = witness::offcenter_spoiler(b, a, "_x");
      }
      break;
    }
    case DefId::Equid: {
      const Ball &p = ball_arg(0), &q = ball_arg(1), &c = ball_arg(2);
      Rat dp2 = sq_dist(c.center, p.center);
      Rat dq2 = sq_dist(c.center, q.center);
      analytic = dp2 == dq2 ? TriBool::Yes : TriBool::No;
      if (analytic == TriBool::Yes) {
        Rat r;
        if (rational_sqrt(dp2, r) && r > 0)
          injected.push_back(Ball::make(c.center, r, "_x0"));
        else
          report.note = "equidistance radius is irrational; no witness injectable";
      } else {
        // Kill every candidate concentric with c on whichever side is
        // strict, so the existential comes out false.
        std::size_t k = 0;
        for (const Ball& cand : scene.balls) {
          if (!concentric(cand, c)) continue;
          Rat r2 = cand.radius * cand.radius;
          const Ball* side = nullptr;
          Rat side_d2;
          if (dp2 != r2) {
            side = &p;
            side_d2 = dp2;
          } else {
            side = &q;
            side_d2 = dq2;
          }
          std::string label = "_x" + std::to_string(k++);
          injected.push_back(side_d2 < r2
                                 ? witness::inside_reaching(side->center, cand, label)
                                 : witness::outside_avoiding(side->center, cand, label));
        }
      }
      break;
    }
    case DefId::Ipoint: {
      const Ball& p = ball_arg(0);
      // Second argument: any individual (a labeled solid or a ball).
      const Scene::SolidDef* sd = scene.find_solid(args[1]);
      const Ball* sb = scene.find_ball(args[1]);
      if (!sd && !sb) throw Error(ErrorCode::UnknownLabel, "no label '" + args[1] + "'");
      Solid solid = sd ? scene.materialize(*sd) : Solid::make({*sb});
      analytic = interior_point(point_of(p), solid);
      if (analytic == TriBool::Yes)
        for (const Ball& part : solid.parts)
          if (sq_dist(p.center, part.center) < part.radius * part.radius) {
            injected.push_back(witness::inside_reaching(p.center, part, "_x0"));
            break;
          }
      break;
    }
    case DefId::Solids: {
      analytic = TriBool::Yes;  // every candidate is a finite sum of balls
      break;
    }
  }

  for (const Ball& b : injected) report.injected.push_back(b.label);
  SceneUniverse u = scene_to_universe(scene, injected);
  bridge_detail::DefEval ev{u};

  bool mereo = false;
  switch (def) {
    case DefId::Et: mereo = ev.et(u.resolve(args[0]), u.resolve(args[1])); break;
    case DefId::It: mereo = ev.it(u.resolve(args[0]), u.resolve(args[1])); break;
    case DefId::Edt:
      mereo = ev.edt(ball_arg(0), ball_arg(1), ball_arg(2), u.resolve(args[0]),
                     u.resolve(args[1]), u.resolve(args[2]));
      break;
    case DefId::Idt:
      mereo = ev.idt(ball_arg(0), ball_arg(1), ball_arg(2), u.resolve(args[2]));
      break;
    case DefId::Con:
      mereo = ev.con(ball_arg(0), ball_arg(1), u.resolve(args[0]), u.resolve(args[1]));
      break;
    case DefId::Equid: mereo = ev.equid(ball_arg(0), ball_arg(1), ball_arg(2)); break;
    case DefId::Ipoint: mereo = ev.ipoint(ball_arg(0), u.resolve(args[1])); break;
    case DefId::Solids: mereo = u.solids_const.contains(u.resolve(args[0])); break;
  }

  report.analytic = analytic;
  report.mereological = mereo;
  report.candidates_examined = ev.examined;

  if (analytic == TriBool::Undecided) {
    report.agreement = Agreement::Inconclusive;
    if (report.note.empty()) report.note = "analytic verdict undecided (boundary sheaf)";
  } else if (analytic == TriBool::Yes) {
    if (mereo) {
      report.agreement = Agreement::Agree;
    } else if (def == DefId::Equid && !report.note.empty()) {
      report.agreement = Agreement::Inconclusive;
    } else {
      report.agreement = Agreement::HardDisagree;
    }
  } else {
    if (!mereo) {
      report.agreement = Agreement::Agree;
    } else {
      report.agreement = Agreement::Inconclusive;
      if (report.note.empty()) report.note = "candidates cannot refute the restricted universal";
    }
  }
  return report;
}

/// The two part-axioms over a scene universe, in both the literal
/// conditional-existential form and the strengthened form, plus the
/// solids-are-downward-closed axiom.
inline SuiteReport check_ta4_suite(const Scene& scene, const std::string& scene_id) {
  SceneUniverse u = scene_to_universe(scene);
  SuiteReport suite;
  auto push = [&](const std::string& id, bool holds) {
    SuiteRow row;
    row.id = id;
    row.model_id = scene_id;
    row.verdict = holds ? "valid" : "refuted";
    row.matched = holds;
    suite.all_matched = suite.all_matched && holds;
    suite.rows.push_back(std::move(row));
  };

  const std::size_t total = u.model.individual_count();
  bool literal = true, strengthened = true, prime = true;
  std::uint64_t pairs = 0;
  for (std::size_t a = 0; a < total; ++a) {
    for (std::size_t b = 0; b < total; ++b) {
      if (!u.uleq(b, a)) continue;
      ++pairs;
      if (u.balls_const.contains(a)) {
        bool exists_conditional = false;  // exists C, C eps balls -> C eps el b
        bool exists_ball_part = false;    // exists C, C eps balls and C eps el b
        for (std::size_t c = 0; c < total; ++c) {
          if (!u.balls_const.contains(c)) exists_conditional = true;
          if (u.uleq(c, b)) {
            exists_conditional = true;
            if (u.balls_const.contains(c)) exists_ball_part = true;
          }
        }
        literal = literal && exists_conditional;
        strengthened = strengthened && exists_ball_part;
      }
      if (u.solids_const.contains(a)) prime = prime && u.solids_const.contains(b);
    }
  }
  push("TA4_literal", literal);
  push("TA4_strengthened", strengthened);
  push("TA4_prime", prime);
  for (SuiteRow& row : suite.rows) row.report.assignments = pairs;
  return suite;
}

}  // namespace mg

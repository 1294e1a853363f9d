#pragma once

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "mg/error.hpp"
#include "mg/rat.hpp"

namespace mg {

/// Closed ball with exact rational center and strictly positive radius.
/// Dimension 1 to 4; all balls of one scene share a dimension.
struct Ball {
  std::vector<Rat> center;
  Rat radius;
  std::string label;

  std::size_t dim() const { return center.size(); }

  static Ball make(std::vector<Rat> center, Rat radius, std::string label = "") {
    if (center.empty() || center.size() > 4)
      throw Error(ErrorCode::DimensionMismatch, "ball dimension must be 1..4");
    if (radius <= 0)
      throw Error(ErrorCode::NonpositiveRadius, "ball '" + label + "' needs radius > 0");
    return Ball{std::move(center), std::move(radius), std::move(label)};
  }
};

/// Canonical representative of a concentricity class: the common center.
struct GPoint {
  std::vector<Rat> coords;

  std::size_t dim() const { return coords.size(); }

  friend bool operator==(const GPoint& a, const GPoint& b) { return a.coords == b.coords; }
};

/// Finite union of balls.
struct Solid {
  std::vector<Ball> parts;

  static Solid make(std::vector<Ball> parts) {
    if (parts.empty()) throw Error(ErrorCode::BadFile, "solid needs at least one ball");
    for (const Ball& b : parts)
      if (b.dim() != parts[0].dim())
        throw Error(ErrorCode::DimensionMismatch, "solid mixes dimensions");
    return Solid{std::move(parts)};
  }
};

enum class TriBool { Yes, No, Undecided };

inline const char* to_string(TriBool t) {
  switch (t) {
    case TriBool::Yes: return "yes";
    case TriBool::No: return "no";
    case TriBool::Undecided: return "undecided";
  }
  return "?";
}

namespace detail {

inline void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, "operands differ in dimension");
}

}  // namespace detail

/// Squared Euclidean distance; every metric predicate below reduces to
/// comparisons of such squares, which keeps all decisions exact.
inline Rat sq_dist(const std::vector<Rat>& p, const std::vector<Rat>& q) {
  detail::require_same_dim(p.size(), q.size());
  Rat sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rat d = p[i] - q[i];
    sum += d * d;
  }
  return sum;
}

inline Rat sq_dist(const Ball& a, const Ball& b) { return sq_dist(a.center, b.center); }
inline Rat sq_dist(const GPoint& a, const GPoint& b) { return sq_dist(a.coords, b.coords); }

// --------------------------------------------------------------------------
// Mereological relations between closed balls, read as regular regions:
// containment admits boundary contact, exteriority means disjoint
// interiors (externally tangent balls count as disjoint).
// --------------------------------------------------------------------------

enum class BallRel { PartOf, ProperPart, Equal, Overlap, Ext };

inline bool ball_mereo(BallRel kind, const Ball& a, const Ball& b) {
  detail::require_same_dim(a.dim(), b.dim());
  Rat d2 = sq_dist(a, b);
  switch (kind) {
    case BallRel::PartOf: {
      if (b.radius < a.radius) return false;
      Rat slack = b.radius - a.radius;
      return d2 <= slack * slack;
    }
    case BallRel::Equal:
      return a.center == b.center && a.radius == b.radius;
    case BallRel::ProperPart:
      return ball_mereo(BallRel::PartOf, a, b) && !ball_mereo(BallRel::Equal, a, b);
    case BallRel::Overlap: {
      Rat reach = a.radius + b.radius;
      return d2 < reach * reach;
    }
    case BallRel::Ext: {
      Rat reach = a.radius + b.radius;
      return d2 >= reach * reach;
    }
  }
  return false;
}

// --------------------------------------------------------------------------
// Tangency. External: touching at one point from outside. Internal: a is a
// proper part of b touching b's boundary sphere.
// --------------------------------------------------------------------------

enum class Tangency { ET, IT };

inline bool tangency(Tangency kind, const Ball& a, const Ball& b) {
  detail::require_same_dim(a.dim(), b.dim());
  Rat d2 = sq_dist(a, b);
  if (kind == Tangency::ET) {
    Rat reach = a.radius + b.radius;
    return d2 == reach * reach;
  }
  if (a.radius >= b.radius) return false;
  Rat slack = b.radius - a.radius;
  return d2 == slack * slack;
}

/// Diametrical tangency of a and b on host c: both tangent to c with the
/// two tangency points antipodal, which the center distances pin down
/// exactly (collinear chain through the host).
enum class DiamTangency { EDT, IDT };

inline bool diam_tangency(DiamTangency kind, const Ball& a, const Ball& b, const Ball& c) {
  detail::require_same_dim(a.dim(), b.dim());
  detail::require_same_dim(a.dim(), c.dim());
  Rat d2 = sq_dist(a, b);
  if (kind == DiamTangency::EDT) {
    if (!tangency(Tangency::ET, a, c) || !tangency(Tangency::ET, b, c)) return false;
    Rat chain = a.radius + 2 * c.radius + b.radius;
    return d2 == chain * chain;
  }
  if (!tangency(Tangency::IT, a, c) || !tangency(Tangency::IT, b, c)) return false;
  Rat chain = 2 * c.radius - a.radius - b.radius;
  return d2 == chain * chain;
}

/// Same center, radii unconstrained.
inline bool concentric(const Ball& a, const Ball& b) {
  detail::require_same_dim(a.dim(), b.dim());
  return a.center == b.center;
}

/// The concentricity class representative of a ball.
inline GPoint point_of(const Ball& b) { return GPoint{b.center}; }

/// p and q lie on a common sphere around c.
inline bool equidistant(const GPoint& p, const GPoint& q, const GPoint& c) {
  detail::require_same_dim(p.dim(), q.dim());
  detail::require_same_dim(p.dim(), c.dim());
  return sq_dist(c, p) == sq_dist(c, q);
}

// --------------------------------------------------------------------------
// Interior points. A sound three-valued test in any dimension: Yes when
// the point sits strictly inside some constituent, No when strictly
// outside all of them, Undecided when it only meets boundary spheres (in
// dimension >= 2 a boundary sheaf may or may not be interior, and we do
// not guess). Dimension 1 admits an exact decision by interval merging.
// --------------------------------------------------------------------------

inline TriBool interior_point(const GPoint& p, const Solid& s) {
  detail::require_same_dim(p.dim(), s.parts[0].dim());
  bool on_boundary = false;
  for (const Ball& b : s.parts) {
    Rat d2 = sq_dist(p.coords, b.center);
    Rat r2 = b.radius * b.radius;
    if (d2 < r2) return TriBool::Yes;
    if (d2 == r2) on_boundary = true;
  }
  return on_boundary ? TriBool::Undecided : TriBool::No;
}

inline bool interior_point_1d_exact(const GPoint& p, const Solid& s) {
  if (p.dim() != 1 || s.parts[0].dim() != 1)
    throw Error(ErrorCode::DimensionRequired1, "exact interiority needs dimension 1");
  std::vector<std::pair<Rat, Rat>> intervals;
  intervals.reserve(s.parts.size());
  for (const Ball& b : s.parts)
    intervals.emplace_back(b.center[0] - b.radius, b.center[0] + b.radius);
  std::sort(intervals.begin(), intervals.end());
  // Merge closed intervals; touching endpoints fuse into one component.
  std::vector<std::pair<Rat, Rat>> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  const Rat& x = p.coords[0];
  for (const auto& iv : merged)
    if (iv.first < x && x < iv.second) return true;
  return false;
}

// --------------------------------------------------------------------------
// Exact similarity transforms, for invariance testing.
// --------------------------------------------------------------------------

struct Translate {
  std::vector<Rat> offset;
};
struct Permute {
  std::vector<std::size_t> axes;  // result coordinate i reads source axes[i]
};
struct FlipSign {
  std::size_t axis = 0;
};
struct Scale {
  Rat factor;
};
using Transform = std::variant<Translate, Permute, FlipSign, Scale>;

inline Ball transform(const Ball& b, const Transform& t) {
  Ball out = b;
  if (auto* tr = std::get_if<Translate>(&t)) {
    detail::require_same_dim(b.dim(), tr->offset.size());
    for (std::size_t i = 0; i < b.dim(); ++i) out.center[i] += tr->offset[i];
    return out;
  }
  if (auto* pm = std::get_if<Permute>(&t)) {
    detail::require_same_dim(b.dim(), pm->axes.size());
    std::vector<bool> seen(b.dim(), false);
    for (std::size_t a : pm->axes) {
      if (a >= b.dim() || seen[a])
        throw Error(ErrorCode::DimensionMismatch, "axes list is not a permutation");
      seen[a] = true;
    }
    for (std::size_t i = 0; i < b.dim(); ++i) out.center[i] = b.center[pm->axes[i]];
    return out;
  }
  if (auto* fl = std::get_if<FlipSign>(&t)) {
    if (fl->axis >= b.dim())
      throw Error(ErrorCode::DimensionMismatch, "flip axis outside dimension");
    out.center[fl->axis] = -out.center[fl->axis];
    return out;
  }
  const auto& sc = std::get<Scale>(t);
  if (sc.factor <= 0) throw Error(ErrorCode::NonpositiveScale, "scale factor must be positive");
  for (Rat& x : out.center) x *= sc.factor;
  out.radius *= sc.factor;
  return out;
}

inline GPoint transform(const GPoint& p, const Transform& t) {
  Ball carrier{p.coords, Rat(1), ""};
  return GPoint{transform(carrier, t).center};
}

}  // namespace mg

#pragma once

// Shared generators and independent reference oracles for the test suites.
// Everything here is deterministic under a fixed seed.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mg/ast.hpp"
#include "mg/geometry.hpp"
#include "mg/model.hpp"
#include "mg/rat.hpp"

namespace mgtest {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// --------------------------------------------------------------------------
// Random closed formulas, depth-bounded, over the standard constants.
// --------------------------------------------------------------------------

class FormulaGen {
 public:
  explicit FormulaGen(Rng& rng) : rng_(rng) {}

  mg::Formula closed(int depth) {
    scope_.clear();
    next_var_ = 0;
    return formula(depth);
  }

  static const std::set<std::string>& constants() {
    static const std::set<std::string> kConsts = {"empty", "u"};
    return kConsts;
  }

 private:
  Rng& rng_;
  std::vector<std::string> scope_;
  int next_var_ = 0;

  mg::Term term(int depth) {
    if (depth <= 0 || pick(rng_, 0, 2) == 0) {
      if (!scope_.empty() && pick(rng_, 0, 2) > 0)
        return mg::Term::var(scope_[static_cast<std::size_t>(pick(
            rng_, 0, static_cast<int>(scope_.size()) - 1))]);
      return mg::Term::constant(pick(rng_, 0, 1) ? "empty" : "u");
    }
    static const mg::FunctorTag kTags[] = {
        mg::FunctorTag::Pt,      mg::FunctorTag::El,       mg::FunctorTag::Kl,
        mg::FunctorTag::Coll,    mg::FunctorTag::Ov,       mg::FunctorTag::Subcoll,
        mg::FunctorTag::Distinct, mg::FunctorTag::Ext,     mg::FunctorTag::Union,
    };
    mg::FunctorTag tag = kTags[pick(rng_, 0, 8)];
    std::vector<mg::Term> args;
    for (int i = 0; i < mg::arity(tag); ++i) args.push_back(term(depth - 1));
    return mg::Term::apply(tag, std::move(args));
  }

  mg::Formula atom() {
    mg::Term l = term(2), r = term(2);
    switch (pick(rng_, 0, 2)) {
      case 0: return mg::Formula::eps(std::move(l), std::move(r));
      case 1: return mg::Formula::seq(std::move(l), std::move(r));
      default: return mg::Formula::weq(std::move(l), std::move(r));
    }
  }

  mg::Formula formula(int depth) {
    if (depth <= 0) return atom();
    switch (pick(rng_, 0, 6)) {
      case 0: return atom();
      case 1: return mg::Formula::negation(formula(depth - 1));
      case 2:
      case 3: {
        mg::Connective op = static_cast<mg::Connective>(pick(rng_, 1, 4));
        return mg::Formula::binary(op, formula(depth - 1), formula(depth - 1));
      }
      default: {
        std::string var = "v" + std::to_string(next_var_++);
        mg::QuantDomain dom = pick(rng_, 0, 1) ? mg::QuantDomain::Singular
                                               : mg::QuantDomain::Name;
        scope_.push_back(var);
        mg::Formula body = formula(depth - 1);
        scope_.pop_back();
        return mg::Formula::quant(pick(rng_, 0, 1) != 0, var, dom, std::move(body));
      }
    }
  }
};

// --------------------------------------------------------------------------
// Random exact-rational geometry.
// --------------------------------------------------------------------------

inline mg::Rat random_rat(Rng& rng, int lo = -20, int hi = 20, int max_den = 8) {
  return mg::Rat(pick(rng, lo, hi), pick(rng, 1, max_den));
}

inline mg::Rat random_positive_rat(Rng& rng, int max_num = 8, int max_den = 4) {
  return mg::Rat(pick(rng, 1, max_num), pick(rng, 1, max_den));
}

inline mg::Ball random_ball(Rng& rng, std::size_t dim, const std::string& label = "") {
  std::vector<mg::Rat> center;
  for (std::size_t i = 0; i < dim; ++i) center.push_back(random_rat(rng));
  return mg::Ball::make(std::move(center), random_positive_rat(rng), label);
}

/// A pair tangent by construction: displace along one axis by exactly the
/// radius sum (external) or difference (internal).
inline std::pair<mg::Ball, mg::Ball> tangent_pair(Rng& rng, std::size_t dim, bool external) {
  mg::Ball a = random_ball(rng, dim);
  mg::Rat rb = external ? random_positive_rat(rng)
                        : mg::Rat(a.radius + random_positive_rat(rng));
  std::vector<mg::Rat> center = a.center;
  std::size_t axis = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(dim) - 1));
  center[axis] += external ? mg::Rat(a.radius + rb) : mg::Rat(rb - a.radius);
  mg::Ball b = mg::Ball::make(std::move(center), rb, "");
  return {a, b};
}

inline mg::Transform random_transform(Rng& rng, std::size_t dim) {
  switch (pick(rng, 0, 3)) {
    case 0: {
      std::vector<mg::Rat> offset;
      for (std::size_t i = 0; i < dim; ++i) offset.push_back(random_rat(rng));
      return mg::Translate{std::move(offset)};
    }
    case 1: {
      std::vector<std::size_t> axes(dim);
      for (std::size_t i = 0; i < dim; ++i) axes[i] = i;
      std::shuffle(axes.begin(), axes.end(), rng);
      return mg::Permute{std::move(axes)};
    }
    case 2:
      return mg::FlipSign{static_cast<std::size_t>(pick(rng, 0, static_cast<int>(dim) - 1))};
    default:
      return mg::Scale{random_positive_rat(rng)};
  }
}

// --------------------------------------------------------------------------
// Independent 1-D interiority oracle: membership of the point and of its two
// grid neighbours, with the grid step at half the minimal gap between the
// distinct values of the endpoint set (the query point included, so the
// step is finer than the point's distance to any endpoint it differs from).
// --------------------------------------------------------------------------

inline bool covered_1d(const mg::Rat& x, const mg::Solid& s) {
  for (const mg::Ball& b : s.parts)
    if (b.center[0] - b.radius <= x && x <= b.center[0] + b.radius) return true;
  return false;
}

inline bool grid_interior_1d(const mg::GPoint& p, const mg::Solid& s) {
  std::vector<mg::Rat> values;
  for (const mg::Ball& b : s.parts) {
    values.push_back(b.center[0] - b.radius);
    values.push_back(b.center[0] + b.radius);
  }
  values.push_back(p.coords[0]);
  std::sort(values.begin(), values.end());
  mg::Rat min_gap(-1);
  for (std::size_t i = 1; i < values.size(); ++i) {
    mg::Rat gap = values[i] - values[i - 1];
    if (gap > 0 && (min_gap < 0 || gap < min_gap)) min_gap = gap;
  }
  if (min_gap < 0) min_gap = 1;  // all endpoints coincide with p
  mg::Rat step = min_gap / 2;
  return covered_1d(p.coords[0] - step, s) && covered_1d(p.coords[0], s) &&
         covered_1d(p.coords[0] + step, s);
}

}  // namespace mgtest

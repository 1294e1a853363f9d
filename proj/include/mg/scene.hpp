#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "mg/error.hpp"
#include "mg/geometry.hpp"

// Scene file format (one directive per line, '#' comments):
//
//   dim: 2
//   ball A (0, 1/2) 3/4
//   solid S = A B
//
// Rationals are "int" or "int/int". Labels are identifiers and must be
// unique across balls and solids.

namespace mg {

struct Scene {
  std::size_t dim = 0;
  std::vector<Ball> balls;
  struct SolidDef {
    std::string label;
    std::vector<std::string> members;  // ball labels
  };
  std::vector<SolidDef> solids;

  const Ball* find_ball(const std::string& label) const {
    for (const Ball& b : balls)
      if (b.label == label) return &b;
    return nullptr;
  }
  const SolidDef* find_solid(const std::string& label) const {
    for (const SolidDef& s : solids)
      if (s.label == label) return &s;
    return nullptr;
  }
  Solid materialize(const SolidDef& def) const {
    std::vector<Ball> parts;
    for (const std::string& m : def.members) parts.push_back(*find_ball(m));
    return Solid::make(std::move(parts));
  }
};

namespace detail {

/// Splits a scene line into identifiers, rational literals and punctuation.
inline std::vector<std::string> scene_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == '(' || c == ')' || c == ',' || c == '=' || c == ':') {
      out.emplace_back(1, c);
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) ||
                               line[i] == '_' || line[i] == '/' || line[i] == '-' ||
                               line[i] == '+'))
      ++i;
    if (i == start)
      throw Error(ErrorCode::BadFile, "unexpected character '" + std::string(1, c) + "'");
    out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

inline Scene parse_scene(const std::string& text) {
  Scene scene;
  std::map<std::string, int> labels;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    auto bad = [&](const std::string& why) {
      return Error(ErrorCode::BadFile, "scene line " + std::to_string(line_no) + ": " + why);
    };
    std::vector<std::string> toks;
    try {
      toks = detail::scene_tokens(line);
    } catch (const Error& e) {
      throw bad(e.what());
    }
    if (toks.empty()) continue;
    std::size_t t = 0;
    auto next = [&]() -> const std::string& {
      if (t >= toks.size()) throw bad("unexpected end of line");
      return toks[t++];
    };
    auto expect = [&](const char* what) {
      const std::string& got = next();
      if (got != what) throw bad(std::string("expected '") + what + "', got '" + got + "'");
    };
    if (toks[0] == "dim") {
      ++t;
      expect(":");
      scene.dim = static_cast<std::size_t>(std::stoul(next()));
      if (scene.dim < 1 || scene.dim > 4) throw bad("dim must be 1..4");
      if (t != toks.size()) throw bad("trailing tokens");
      continue;
    }
    if (scene.dim == 0) throw bad("dim directive must come first");
    if (toks[0] == "ball") {
      ++t;
      std::string label = next();
      if (labels.count(label))
        throw Error(ErrorCode::DuplicateLabel,
                    "scene line " + std::to_string(line_no) + ": label '" + label + "' reused");
      expect("(");
      std::vector<Rat> center;
      center.push_back(parse_rat(next()));
      while (t < toks.size() && toks[t] == ",") {
        ++t;
        center.push_back(parse_rat(next()));
      }
      expect(")");
      if (center.size() != scene.dim)
        throw Error(ErrorCode::DimensionMismatch,
                    "scene line " + std::to_string(line_no) + ": ball '" + label + "' has " +
                        std::to_string(center.size()) + " coordinates in a " +
                        std::to_string(scene.dim) + "-dimensional scene");
      Rat radius = parse_rat(next());
      if (t != toks.size()) throw bad("trailing tokens");
      scene.balls.push_back(Ball::make(std::move(center), std::move(radius), label));
      labels[label] = 1;
      continue;
    }
    if (toks[0] == "solid") {
      ++t;
      std::string label = next();
      if (labels.count(label))
        throw Error(ErrorCode::DuplicateLabel,
                    "scene line " + std::to_string(line_no) + ": label '" + label + "' reused");
      expect("=");
      Scene::SolidDef def;
      def.label = label;
      while (t < toks.size()) {
        const std::string& member = next();
        if (!scene.find_ball(member))
          throw Error(ErrorCode::UnknownLabel, "scene line " + std::to_string(line_no) +
                                                   ": solid '" + label +
                                                   "' references unknown ball '" + member + "'");
        for (const std::string& seen : def.members)
          if (seen == member) throw bad("solid '" + label + "' repeats member '" + member + "'");
        def.members.push_back(member);
      }
      if (def.members.empty()) throw bad("solid '" + label + "' has no members");
      scene.solids.push_back(std::move(def));
      labels[label] = 1;
      continue;
    }
    throw bad("unknown directive '" + toks[0] + "'");
  }
  if (scene.dim == 0) throw Error(ErrorCode::BadFile, "scene has no dim directive");
  return scene;
}

}  // namespace mg

#include "pesgame/relation_kind.hpp"

namespace pesgame {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Pomset: return "pomset";
    case Flavor::Step: return "step";
    case Flavor::Hp: return "hp";
    case Flavor::Hhp: return "hhp";
  }
  return "?";
}

std::string to_string(Mode m) { return m == Mode::Strong ? "strong" : "branching"; }

std::string to_string(RelationKind k) { return to_string(k.flavor) + "/" + to_string(k.mode); }

std::optional<Flavor> parse_flavor(std::string_view s) {
  if (s == "pomset") return Flavor::Pomset;
  if (s == "step") return Flavor::Step;
  if (s == "hp") return Flavor::Hp;
  if (s == "hhp") return Flavor::Hhp;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "strong") return Mode::Strong;
  if (s == "branching") return Mode::Branching;
  return std::nullopt;
}

}  // namespace pesgame

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace pesgame {

enum class Flavor { Pomset, Step, Hp, Hhp };
enum class Mode { Strong, Branching };

struct RelationKind {
  Flavor flavor = Flavor::Pomset;
  Mode mode = Mode::Strong;

  bool history_preserving() const { return flavor == Flavor::Hp || flavor == Flavor::Hhp; }
  bool hereditary() const { return flavor == Flavor::Hhp; }
  bool branching() const { return mode == Mode::Branching; }
  bool steps_only() const { return flavor == Flavor::Step; }

  bool operator==(const RelationKind&) const = default;
};

inline constexpr std::array<RelationKind, 8> kAllKinds{{
    {Flavor::Pomset, Mode::Strong},
    {Flavor::Step, Mode::Strong},
    {Flavor::Hp, Mode::Strong},
    {Flavor::Hhp, Mode::Strong},
    {Flavor::Pomset, Mode::Branching},
    {Flavor::Step, Mode::Branching},
    {Flavor::Hp, Mode::Branching},
    {Flavor::Hhp, Mode::Branching},
}};

std::string to_string(Flavor f);
std::string to_string(Mode m);
/// "pomset/strong", "hhp/branching", ...
std::string to_string(RelationKind k);

std::optional<Flavor> parse_flavor(std::string_view s);
std::optional<Mode> parse_mode(std::string_view s);

/// Semantic switches shared by both decision procedures.
struct CheckOptions {
  /// Compare strong-mode pomsets after τ-erasure instead of on full labels.
  bool strong_erases_tau = false;
};

}  // namespace pesgame

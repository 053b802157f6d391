#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "pesgame/game.hpp"
#include "pesgame/oracle.hpp"
#include "pesgame/relation_kind.hpp"

namespace pesgame {

inline constexpr int kReportFormat = 1;

struct OracleSummary {
  bool equivalent = false;
  std::size_t relation_size = 0;
  bool operator==(const OracleSummary&) const = default;
};

struct GameSummary {
  bool equivalent = false;
  std::string winner;
  std::size_t positions = 0;
  std::size_t moves = 0;
  std::size_t strategy_size = 0;
  bool operator==(const GameSummary&) const = default;
};

/// Machine-readable result of one check invocation.
struct Report {
  int format = kReportFormat;
  std::string left;
  std::string right;
  RelationKind kind;
  std::string engine;
  bool equivalent = false;
  std::optional<OracleSummary> oracle;
  std::optional<GameSummary> game;
  Caps caps;
  std::optional<double> timing_ms;
  std::optional<nlohmann::json> witness;

  bool operator==(const Report&) const;
};

nlohmann::json to_json(const Report& r);
/// Throws std::invalid_argument on a missing field or unknown format.
Report report_from_json(const nlohmann::json& j);

nlohmann::json relation_to_json(const Pes& p1, const Pes& p2, const Relation& r);
/// Strategy entries of the winner reachable from the initial position.
nlohmann::json strategy_to_json(const GameVerdict& v);

}  // namespace pesgame

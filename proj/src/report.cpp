#include "pesgame/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace pesgame {

using nlohmann::json;

bool Report::operator==(const Report& o) const {
  return format == o.format && left == o.left && right == o.right && kind == o.kind && engine == o.engine &&
         equivalent == o.equivalent && oracle == o.oracle && game == o.game &&
         caps.max_events == o.caps.max_events && caps.max_configurations == o.caps.max_configurations &&
         caps.max_positions == o.caps.max_positions && timing_ms == o.timing_ms && witness == o.witness;
}

json to_json(const Report& r) {
  json j;
  j["format"] = r.format;
  j["left"] = r.left;
  j["right"] = r.right;
  j["relation"] = to_string(r.kind.flavor);
  j["mode"] = to_string(r.kind.mode);
  j["engine"] = r.engine;
  j["verdict"] = r.equivalent ? "equivalent" : "inequivalent";
  if (r.oracle) j["oracle"] = {{"equivalent", r.oracle->equivalent}, {"relation_size", r.oracle->relation_size}};
  if (r.game) {
    j["game"] = {{"equivalent", r.game->equivalent},
                 {"winner", r.game->winner},
                 {"positions", r.game->positions},
                 {"moves", r.game->moves},
                 {"strategy_size", r.game->strategy_size}};
  }
  j["caps"] = {{"max_events", r.caps.max_events},
               {"max_configurations", r.caps.max_configurations},
               {"max_positions", r.caps.max_positions}};
  if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.format = j.at("format").get<int>();
    if (r.format != kReportFormat) throw std::invalid_argument("unsupported report format");
    r.left = j.at("left").get<std::string>();
    r.right = j.at("right").get<std::string>();
    const auto flavor = parse_flavor(j.at("relation").get<std::string>());
    const auto mode = parse_mode(j.at("mode").get<std::string>());
    if (!flavor || !mode) throw std::invalid_argument("unknown relation kind in report");
    r.kind = {*flavor, *mode};
    r.engine = j.at("engine").get<std::string>();
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict != "equivalent" && verdict != "inequivalent") throw std::invalid_argument("bad verdict");
    r.equivalent = verdict == "equivalent";
    if (j.contains("oracle")) {
      const json& o = j.at("oracle");
      r.oracle = OracleSummary{o.at("equivalent").get<bool>(), o.at("relation_size").get<std::size_t>()};
    }
    if (j.contains("game")) {
      const json& g = j.at("game");
      r.game = GameSummary{g.at("equivalent").get<bool>(), g.at("winner").get<std::string>(),
                           g.at("positions").get<std::size_t>(), g.at("moves").get<std::size_t>(),
                           g.at("strategy_size").get<std::size_t>()};
    }
    const json& c = j.at("caps");
    r.caps.max_events = c.at("max_events").get<int>();
    r.caps.max_configurations = c.at("max_configurations").get<std::size_t>();
    r.caps.max_positions = c.at("max_positions").get<std::size_t>();
    if (j.contains("timing_ms")) r.timing_ms = j.at("timing_ms").get<double>();
    if (j.contains("witness")) r.witness = j.at("witness");
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

namespace {

json ids(const Pes& p, EventSet s) {
  json a = json::array();
  for (EventId e : s) a.push_back(p.event_id(e));
  return a;
}

}  // namespace

json relation_to_json(const Pes& p1, const Pes& p2, const Relation& r) {
  json out = json::array();
  for (const auto& [c1, c2] : r.pairs) out.push_back({{"left", ids(p1, c1)}, {"right", ids(p2, c2)}});
  for (const auto& t : r.triples) {
    json map = json::array();
    for (const auto& [a, b] : t.pairs) map.push_back({p1.event_id(a), p2.event_id(b)});
    out.push_back({{"left", ids(p1, t.left)}, {"map", map}, {"right", ids(p2, t.right)}});
  }
  return out;
}

json strategy_to_json(const GameVerdict& v) {
  const Arena& a = v.arena;
  const Solution& s = v.solution;
  const Player w = s.winner[a.initial];
  const std::vector<std::size_t> chosen = v.strategy_positions();
  json entries = json::array();
  for (std::size_t p : chosen) {
    const Move& m = a.moves[p][s.choice[p]];
    entries.push_back({{"position", describe_position(a, p)},
                       {"move", describe_move(a, p, m)},
                       {"rule", to_string(m.rule)}});
  }
  return {{"winner", to_string(w)}, {"strategy", entries}};
}

}  // namespace pesgame

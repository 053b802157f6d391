#include "pesgame/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pesgame/dot.hpp"
#include "pesgame/game.hpp"
#include "pesgame/oracle.hpp"
#include "pesgame/pes_format.hpp"
#include "pesgame/report.hpp"

namespace pesgame {

namespace {

struct CommonFlags {
  std::string rel = "pomset";
  std::string mode = "strong";
  int max_events = Caps{}.max_events;
  std::size_t max_configs = Caps{}.max_configurations;
  std::size_t max_positions = Caps{}.max_positions;
  bool erase_tau_strong = false;

  Caps caps() const { return Caps{max_events, max_configs, max_positions}; }
  RelationKind kind() const { return {*parse_flavor(rel), *parse_mode(mode)}; }
  CheckOptions options() const { return CheckOptions{erase_tau_strong}; }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--rel", f.rel, "Relation flavor")->check(CLI::IsMember({"pomset", "step", "hp", "hhp"}));
  cmd->add_option("--mode", f.mode, "strong or branching")->check(CLI::IsMember({"strong", "branching"}));
  cmd->add_option("--max-events", f.max_events, "Event cap per structure");
  cmd->add_option("--max-configs", f.max_configs, "Configuration cap per structure");
  cmd->add_option("--max-positions", f.max_positions, "Arena / relation candidate cap");
  cmd->add_flag("--erase-tau-strong", f.erase_tau_strong, "Compare strong-mode pomsets after erasing silent events");
}

// Thrown after a diagnostic has been printed; carries the exit code.
struct Abort {
  int code;
};

Pes load(const std::string& path, const Caps& caps, std::ostream& err) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot read '" << path << "'\n";
    throw Abort{kExitUsage};
  }
  std::stringstream buf;
  buf << file.rdbuf();
  try {
    return parse_pes(buf.str(), caps);
  } catch (const ParseError& e) {
    err << path << ":" << e.where().line << ":" << e.where().column << ": syntax error: " << e.what() << "\n";
    throw Abort{kExitUsage};
  } catch (const PesError& e) {
    err << path << ": invalid event structure: " << e.what() << "\n";
    throw Abort{kExitUsage};
  } catch (const CapExceeded& e) {
    err << path << ": " << e.what() << "\n";
    throw Abort{kExitCap};
  }
}

int cmd_check(const CommonFlags& flags, const std::string& engine, bool json_out, bool witness, bool timing,
              const std::vector<std::string>& files, std::ostream& out, std::ostream& err) {
  const Caps caps = flags.caps();
  const RelationKind kind = flags.kind();
  const Pes p1 = load(files[0], caps, err);
  const Pes p2 = load(files[1], caps, err);

  Report report;
  report.left = p1.name();
  report.right = p2.name();
  report.kind = kind;
  report.engine = engine;
  report.caps = caps;

  const auto started = std::chrono::steady_clock::now();
  std::optional<Verdict> oracle;
  std::optional<GameVerdict> game;
  try {
    if (engine != "game") oracle = check(p1, p2, kind, caps, flags.options());
    if (engine != "oracle") game = game_check(p1, p2, kind, caps, flags.options());
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  }
  if (timing) {
    report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }

  nlohmann::json witness_json;
  if (oracle) {
    report.oracle = OracleSummary{oracle->equivalent, oracle->witness.size()};
    if (witness) witness_json["relation"] = relation_to_json(p1, p2, oracle->witness);
  }
  if (game) {
    report.game = GameSummary{game->equivalent, to_string(game->solution.winner[game->arena.initial]),
                              game->arena.positions.size(), game->arena.move_count(), game->strategy_size()};
    if (witness) witness_json["game"] = strategy_to_json(*game);
  }
  if (witness) report.witness = witness_json;
  report.equivalent = oracle ? oracle->equivalent : game->equivalent;
  const bool disagree = oracle && game && oracle->equivalent != game->equivalent;

  if (json_out) {
    out << to_json(report).dump(2) << "\n";
  } else {
    out << to_string(kind) << ": " << p1.name() << " vs " << p2.name() << ": "
        << (report.equivalent ? "equivalent" : "inequivalent") << "\n";
    if (oracle) {
      out << "  oracle: " << (oracle->equivalent ? "equivalent" : "inequivalent") << ", greatest relation has "
          << oracle->witness.size() << " elements\n";
    }
    if (game) {
      out << "  game: " << report.game->winner << " wins, " << report.game->positions << " positions, "
          << report.game->moves << " moves, strategy size " << report.game->strategy_size << "\n";
    }
    if (report.timing_ms) out << "  time: " << *report.timing_ms << " ms\n";
    if (witness && oracle) {
      out << "relation:\n";
      for (const auto& e : witness_json["relation"]) out << "  " << e.dump() << "\n";
    }
    if (witness && game) {
      out << "strategy (" << witness_json["game"]["winner"].get<std::string>() << "):\n";
      for (const auto& e : witness_json["game"]["strategy"]) {
        out << "  " << e["position"].get<std::string>() << " => " << e["move"].get<std::string>() << "\n";
      }
    }
  }
  if (disagree) {
    err << "error: oracle and game engines disagree\n";
    return kExitDisagreement;
  }
  return report.equivalent ? kExitEquivalent : kExitInequivalent;
}

int cmd_play(const CommonFlags& flags, const std::string& as, const std::vector<std::string>& files, std::istream& in,
             std::ostream& out, std::ostream& err) {
  const Caps caps = flags.caps();
  const Pes p1 = load(files[0], caps, err);
  const Pes p2 = load(files[1], caps, err);
  GameVerdict game;
  try {
    game = game_check(p1, p2, flags.kind(), caps, flags.options());
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  }
  const Player human = as == "spoiler" ? Player::Spoiler : Player::Duplicator;
  const Arena& arena = game.arena;
  GameSession session(arena, game.solution, human);
  out << to_string(flags.kind()) << " game on " << p1.name() << " vs " << p2.name() << "; you play " << to_string(human)
      << "\n";

  while (!session.finished()) {
    const std::size_t pos = session.current();
    if (!session.human_to_move()) {
      const std::size_t before = session.transcript().steps.size();
      session.machine_move();
      const TranscriptStep& step = session.transcript().steps[before];
      const Move& m = arena.moves[step.position][step.move];
      out << to_string(step.mover) << " (machine): " << describe_move(arena, step.position, m) << " ["
          << to_string(m.rule) << "]\n";
      continue;
    }
    out << "position " << describe_position(arena, pos) << "\n";
    const auto& moves = session.legal_moves();
    for (std::size_t i = 0; i < moves.size(); ++i) {
      out << "  [" << i << "] " << describe_move(arena, pos, moves[i]) << "\n";
    }
    while (true) {
      out << "choose> " << std::flush;
      std::string line;
      if (!std::getline(in, line)) {
        out << "\n";
        err << "aborted: end of input\n";
        return kExitUsage;
      }
      std::size_t idx = 0;
      std::istringstream parse(line);
      std::string rest;
      if ((parse >> idx) && !(parse >> rest) && idx < moves.size()) {
        session.choose(idx);
        break;
      }
      out << "invalid choice, enter a number between 0 and " << (moves.size() - 1) << "\n";
    }
  }

  const Transcript& t = session.transcript();
  switch (t.reason) {
    case EndReason::SpoilerStuck: out << "Spoiler has no moves — Duplicator wins\n"; break;
    case EndReason::DuplicatorStuck: out << "Duplicator stuck — Spoiler wins\n"; break;
    case EndReason::HereditaryViolation:
      out << "position " << describe_position(arena, t.final_position) << " extends the lost triple "
          << describe_position(arena, *game.solution.demoted_by[t.final_position]) << " — Spoiler wins\n";
      break;
    case EndReason::Incomplete: break;
  }
  if (t.winner && *t.winner != human) {
    out << "machine strategy:";
    for (const TranscriptStep& s : t.steps) {
      if (s.by_machine) out << " " << to_string(s.rule);
    }
    out << "\n";
  }
  return kExitEquivalent;
}

int cmd_export(const CommonFlags& flags, const std::string& what, const std::vector<std::string>& files,
               std::ostream& out, std::ostream& err) {
  const Caps caps = flags.caps();
  if (what == "configs") {
    if (files.size() != 1) {
      err << "error: export --what configs takes one file\n";
      return kExitUsage;
    }
    const Pes p = load(files[0], caps, err);
    try {
      out << configurations_dot(p, caps);
    } catch (const CapExceeded& e) {
      err << "error: " << e.what() << "\n";
      return kExitCap;
    }
    return kExitEquivalent;
  }
  if (files.size() != 2) {
    err << "error: export --what arena takes two files\n";
    return kExitUsage;
  }
  const Pes p1 = load(files[0], caps, err);
  const Pes p2 = load(files[1], caps, err);
  try {
    const GameVerdict game = game_check(p1, p2, flags.kind(), caps, flags.options());
    out << arena_dot(game.arena, game.solution);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  }
  return kExitEquivalent;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truly concurrent bisimulation checker for prime event structures", "pesgame"};
  app.require_subcommand(1);

  CommonFlags check_flags;
  std::string engine = "both";
  bool json_out = false;
  bool witness = false;
  bool timing = false;
  std::vector<std::string> check_files;
  CLI::App* check = app.add_subcommand("check", "Decide a bisimilarity between two structures");
  add_common(check, check_flags);
  check->add_option("--engine", engine, "oracle, game or both")->check(CLI::IsMember({"oracle", "game", "both"}));
  check->add_flag("--json", json_out, "Emit the JSON report");
  check->add_flag("--witness", witness, "Include the relation or winning strategy");
  check->add_flag("--timing", timing, "Include wall-clock timing");
  check->add_option("files", check_files, "Two .pes files")->required()->expected(2);

  CommonFlags play_flags;
  std::string as = "spoiler";
  std::vector<std::string> play_files;
  CLI::App* play = app.add_subcommand("play", "Play the game interactively against the solver");
  add_common(play, play_flags);
  play->add_option("--as", as, "Your role")->check(CLI::IsMember({"spoiler", "duplicator"}));
  play->add_option("files", play_files, "Two .pes files")->required()->expected(2);

  CommonFlags export_flags;
  std::string what = "arena";
  std::vector<std::string> export_files;
  CLI::App* exp = app.add_subcommand("export", "Write a DOT graph of an arena or configuration graph");
  add_common(exp, export_flags);
  exp->add_option("--what", what, "arena or configs")->check(CLI::IsMember({"arena", "configs"}));
  exp->add_option("files", export_files, "One or two .pes files")->required()->expected(1, 2);

  std::vector<const char*> argv{"pesgame"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitEquivalent;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_flags, engine, json_out, witness, timing, check_files, out, err);
    if (play->parsed()) return cmd_play(play_flags, as, play_files, in, out, err);
    return cmd_export(export_flags, what, export_files, out, err);
  } catch (const Abort& a) {
    return a.code;
  }
}

}  // namespace pesgame

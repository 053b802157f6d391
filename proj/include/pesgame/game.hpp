#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pesgame/pes.hpp"
#include "pesgame/pomset.hpp"
#include "pesgame/relation_kind.hpp"

namespace pesgame {

enum class Player { Spoiler, Duplicator };

std::string to_string(Player p);

enum class PositionKind {
  Play,       // Spoiler to move from [(C1,C2)] or [(C1,f,C2)]
  Challenge,  // Duplicator to answer a pending challenge
  Accepted,   // Duplicator has matched a termination challenge
};

/// Game position. Configurations are always stored in the (PES1, PES2)
/// orientation; `challenged` records which side Spoiler moved on.
struct Position {
  PositionKind kind = PositionKind::Play;
  EventSet left;
  EventSet right;
  std::vector<EventPair> pairs;  // hp and hhp only
  Side challenged = Side::Left;
  bool termination = false;
  EventSet challenge;         // X, or {e} in hp games
  EventSet challenge_target;  // C' on the challenged side

  Player owner() const { return kind == PositionKind::Challenge ? Player::Duplicator : Player::Spoiler; }
  bool operator==(const Position&) const = default;
};

enum class MoveRule {
  SpoilerChallengeLeft,
  SpoilerChallengeRight,
  SpoilerTerminationChallenge,
  DuplicatorAbsorbTau,
  DuplicatorMatch,
  DuplicatorTauStep,
  DuplicatorTerminate,
};

std::string to_string(MoveRule r);

struct Move {
  std::size_t target = 0;
  MoveRule rule = MoveRule::DuplicatorMatch;
  Side side = Side::Left;  // side whose configuration the move extends
  EventSet events;
};

struct Arena {
  RelationKind kind;
  Pes left_pes;
  Pes right_pes;
  std::vector<Position> positions;
  std::vector<std::vector<Move>> moves;
  std::size_t initial = 0;

  std::size_t move_count() const;
  /// Play position holding this triple (hp flavors) or pair, if reachable.
  std::optional<std::size_t> find_play(EventSet left, EventSet right, const std::vector<EventPair>& pairs = {}) const;
};

Arena build_arena(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps = {},
                  const CheckOptions& options = {});

/// Positions in an order where every move goes from a later to an earlier
/// entry; throws std::logic_error on a cycle.
std::vector<std::size_t> topological_order(const Arena& a);

struct Solution {
  std::vector<Player> winner;
  /// For positions won by their owner: index of the chosen move (lowest
  /// winning index), else -1.
  std::vector<int> choice;
  /// Play positions pruned by the hereditary condition; demoted_by names a
  /// Spoiler-won position whose triple is a restriction of this one.
  std::vector<char> demoted;
  std::vector<std::optional<std::size_t>> demoted_by;

  std::vector<std::pair<std::size_t, std::size_t>> strategy_of(Player p, const Arena& a) const;
};

/// Backward induction. Spoiler positions without moves are Duplicator wins,
/// Duplicator positions without moves are Spoiler wins.
Solution solve(const Arena& a);

/// Backward induction with iterated demotion of triple positions that sit
/// above a Spoiler-won triple, until no demotion happens.
Solution solve_hereditary(const Arena& a, RelationKind kind);

struct GameVerdict {
  bool equivalent = false;
  Arena arena;
  Solution solution;

  /// Positions where the winner's strategy is consulted when play starts at
  /// the initial position, in increasing index order.
  std::vector<std::size_t> strategy_positions() const;
  std::size_t strategy_size() const { return strategy_positions().size(); }
};

GameVerdict game_check(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps = {},
                       const CheckOptions& options = {});

std::string describe_position(const Arena& a, std::size_t pos);
std::string describe_move(const Arena& a, std::size_t pos, const Move& m);

enum class EndReason { SpoilerStuck, DuplicatorStuck, HereditaryViolation, Incomplete };

std::string to_string(EndReason r);

struct TranscriptStep {
  std::size_t position = 0;
  std::size_t move = 0;
  Player mover = Player::Spoiler;
  bool by_machine = false;
  MoveRule rule = MoveRule::DuplicatorMatch;
};

struct Transcript {
  std::vector<TranscriptStep> steps;
  std::size_t final_position = 0;
  std::optional<Player> winner;
  EndReason reason = EndReason::Incomplete;

  /// One line per step plus the closing verdict line.
  std::string render(const Arena& a) const;
};

/// Drives a single play: the external player moves through `choose`, the
/// machine answers with the solution's strategy (lowest-index move when it
/// is already losing).
class GameSession {
 public:
  GameSession(const Arena& a, const Solution& s, Player human);

  std::size_t current() const { return current_; }
  bool finished() const;
  bool human_to_move() const;
  const std::vector<Move>& legal_moves() const { return arena_->moves[current_]; }

  /// Applies the external player's move; throws std::out_of_range on an
  /// illegal index.
  void choose(std::size_t move_index);
  /// Applies the machine's move; requires !human_to_move().
  void machine_move();

  const Transcript& transcript() const { return transcript_; }

 private:
  void apply(std::size_t move_index, bool by_machine);
  void settle();

  const Arena* arena_;
  const Solution* solution_;
  Player human_;
  std::size_t current_;
  Transcript transcript_;
};

/// Plays `human_moves` for the external player and lets the machine answer
/// until the play ends or the external moves run out.
Transcript replay(const Arena& a, const Solution& s, Player human, std::span<const std::size_t> human_moves);

}  // namespace pesgame

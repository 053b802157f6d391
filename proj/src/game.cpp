#include "pesgame/game.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pesgame {

std::string to_string(Player p) { return p == Player::Spoiler ? "Spoiler" : "Duplicator"; }

std::string to_string(MoveRule r) {
  switch (r) {
    case MoveRule::SpoilerChallengeLeft: return "spoiler-challenge-left";
    case MoveRule::SpoilerChallengeRight: return "spoiler-challenge-right";
    case MoveRule::SpoilerTerminationChallenge: return "spoiler-termination-challenge";
    case MoveRule::DuplicatorAbsorbTau: return "duplicator-absorb-tau";
    case MoveRule::DuplicatorMatch: return "duplicator-match";
    case MoveRule::DuplicatorTauStep: return "duplicator-tau-step";
    case MoveRule::DuplicatorTerminate: return "duplicator-terminate";
  }
  return "?";
}

std::string to_string(EndReason r) {
  switch (r) {
    case EndReason::SpoilerStuck: return "spoiler-stuck";
    case EndReason::DuplicatorStuck: return "duplicator-stuck";
    case EndReason::HereditaryViolation: return "hereditary-violation";
    case EndReason::Incomplete: return "incomplete";
  }
  return "?";
}

namespace {

struct PositionHash {
  std::size_t operator()(const Position& p) const noexcept {
    std::size_t h = (std::size_t{p.left.bits()} << 32) ^ p.right.bits();
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(static_cast<std::size_t>(p.kind));
    mix(static_cast<std::size_t>(p.challenged) * 2 + (p.termination ? 1 : 0));
    mix(p.challenge.bits());
    for (const auto& [a, b] : p.pairs) mix(std::size_t{a} << 8 | b);
    return h;
  }
};

Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

class ArenaBuilder {
 public:
  ArenaBuilder(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps, const CheckOptions& options)
      : kind_(kind), caps_(caps), options_(options), s1_(p1, caps), s2_(p2, caps), iso_(p1, p2) {
    arena_.kind = kind;
    arena_.left_pes = p1;
    arena_.right_pes = p2;
  }

  Arena build() {
    Position start;
    arena_.initial = intern(start);
    while (!queue_.empty()) {
      const std::size_t i = queue_.front();
      queue_.pop_front();
      // Copy: intern() may reallocate the position vector.
      const Position p = arena_.positions[i];
      std::vector<Move> out;
      switch (p.kind) {
        case PositionKind::Play: spoiler_moves(p, out); break;
        case PositionKind::Challenge: duplicator_moves(p, out); break;
        case PositionKind::Accepted: break;
      }
      arena_.moves[i] = std::move(out);
    }
    return std::move(arena_);
  }

 private:
  const Pes& pes(Side s) const { return s == Side::Left ? arena_.left_pes : arena_.right_pes; }
  const StateSpace& space(Side s) const { return s == Side::Left ? s1_ : s2_; }
  static EventSet& cfg(Position& p, Side s) { return s == Side::Left ? p.left : p.right; }
  static EventSet cfg(const Position& p, Side s) { return s == Side::Left ? p.left : p.right; }

  std::size_t intern(const Position& p) {
    auto [it, inserted] = index_.emplace(p, arena_.positions.size());
    if (inserted) {
      if (arena_.positions.size() >= caps_.max_positions) {
        throw CapExceeded("arena exceeds " + std::to_string(caps_.max_positions) + " positions");
      }
      arena_.positions.push_back(p);
      arena_.moves.emplace_back();
      queue_.push_back(it->second);
    }
    return it->second;
  }

  Position play(EventSet left, EventSet right, std::vector<EventPair> pairs) {
    Position q;
    q.left = left;
    q.right = right;
    q.pairs = std::move(pairs);
    return q;
  }

  PosetalTriple triple_of(const Position& p) const {
    return PosetalTriple{p.left, p.right, kind_.branching() ? MapMode::Weak : MapMode::Strong, p.pairs};
  }

  void spoiler_moves(const Position& p, std::vector<Move>& out) {
    for (Side side : {Side::Left, Side::Right}) {
      const MoveRule rule = side == Side::Left ? MoveRule::SpoilerChallengeLeft : MoveRule::SpoilerChallengeRight;
      const StateSpace& s = space(side);
      const std::size_t i = s.index_of(cfg(p, side));
      auto challenge = [&](EventSet x) {
        Position d = p;
        d.kind = PositionKind::Challenge;
        d.challenged = side;
        d.challenge = x;
        d.challenge_target = cfg(p, side) | x;
        out.push_back({intern(d), rule, side, x});
      };
      if (kind_.history_preserving()) {
        for (EventId e : s.enabled_events(i)) challenge(EventSet::single(e));
      } else {
        for (const Transition& t : s.moves(i, kind_.steps_only())) challenge(t.pomset);
      }
    }
    if (!kind_.branching()) return;
    for (Side side : {Side::Left, Side::Right}) {
      const StateSpace& s = space(side);
      if (!s.terminal(s.index_of(cfg(p, side)))) continue;
      Position d = p;
      d.kind = PositionKind::Challenge;
      d.challenged = side;
      d.termination = true;
      out.push_back({intern(d), MoveRule::SpoilerTerminationChallenge, side, {}});
    }
  }

  bool iso(Side challenged, EventSet challenge, EventSet response) {
    const bool erase = kind_.branching() || options_.strong_erases_tau;
    return challenged == Side::Left ? iso_.isomorphic(challenge, response, erase)
                                    : iso_.isomorphic(response, challenge, erase);
  }

  void duplicator_moves(const Position& d, std::vector<Move>& out) {
    const Side ch = d.challenged;
    const Side resp = opposite(ch);
    const StateSpace& rs = space(resp);
    const std::size_t j = rs.index_of(cfg(d, resp));
    Position base = play(d.left, d.right, d.pairs);

    if (d.termination) {
      if (rs.terminal(j)) {
        Position acc;
        acc.kind = PositionKind::Accepted;
        out.push_back({intern(acc), MoveRule::DuplicatorTerminate, resp, {}});
      }
      tau_steps(base, resp, out);
      return;
    }

    if (!kind_.history_preserving()) {
      if (kind_.branching() && is_tau_pomset(pes(ch), d.challenge)) {
        Position q = base;
        cfg(q, ch) = d.challenge_target;
        out.push_back({intern(q), MoveRule::DuplicatorAbsorbTau, ch, d.challenge});
      }
      for (const Transition& t : rs.moves(j, kind_.steps_only())) {
        if (!iso(ch, d.challenge, t.pomset)) continue;
        Position q = base;
        cfg(q, ch) = d.challenge_target;
        cfg(q, resp) = t.target;
        out.push_back({intern(q), MoveRule::DuplicatorMatch, resp, t.pomset});
      }
      if (kind_.branching()) tau_steps(base, resp, out);
      return;
    }

    const EventId e = *d.challenge.begin();
    const PosetalTriple f = triple_of(d);
    if (kind_.branching() && pes(ch).is_tau(e)) {
      const ExtendResult r = absorb_silent(arena_.left_pes, arena_.right_pes, f, ch, e);
      if (const auto* g = std::get_if<PosetalTriple>(&r)) {
        out.push_back({intern(play(g->left, g->right, g->pairs)), MoveRule::DuplicatorAbsorbTau, ch, d.challenge});
      }
    }
    for (EventId r : rs.enabled_events(j)) {
      const ExtendResult x = ch == Side::Left ? extend_map(arena_.left_pes, arena_.right_pes, f, e, r)
                                              : extend_map(arena_.left_pes, arena_.right_pes, f, r, e);
      if (const auto* g = std::get_if<PosetalTriple>(&x)) {
        out.push_back({intern(play(g->left, g->right, g->pairs)), MoveRule::DuplicatorMatch, resp,
                       EventSet::single(r)});
      }
    }
    if (kind_.branching()) tau_steps(base, resp, out);
  }

  // Duplicator performs one τ event on the responding side and the pending
  // challenge is dropped.
  void tau_steps(const Position& base, Side resp, std::vector<Move>& out) {
    const StateSpace& rs = space(resp);
    const std::size_t j = rs.index_of(cfg(base, resp));
    for (EventId t : rs.enabled_events(j)) {
      if (!pes(resp).is_tau(t)) continue;
      Position q = base;
      cfg(q, resp) = cfg(base, resp).with(t);
      out.push_back({intern(q), MoveRule::DuplicatorTauStep, resp, EventSet::single(t)});
    }
  }

  RelationKind kind_;
  Caps caps_;
  CheckOptions options_;
  Arena arena_;
  StateSpace s1_;
  StateSpace s2_;
  IsoCache iso_;
  std::unordered_map<Position, std::size_t, PositionHash> index_;
  std::deque<std::size_t> queue_;
};

Solution solve_with_sinks(const Arena& a, const std::vector<char>& sinks) {
  const std::vector<std::size_t> order = topological_order(a);
  const std::size_t n = a.positions.size();
  Solution s;
  s.winner.assign(n, Player::Duplicator);
  s.choice.assign(n, -1);
  s.demoted = sinks;
  s.demoted.resize(n, 0);
  s.demoted_by.assign(n, std::nullopt);
  for (std::size_t i : order) {
    if (s.demoted[i]) {
      s.winner[i] = Player::Spoiler;
      continue;
    }
    const Player owner = a.positions[i].owner();
    const auto& ms = a.moves[i];
    // The owner wins iff some move leads to a position the owner wins.
    int pick = -1;
    for (std::size_t k = 0; k < ms.size(); ++k) {
      if (s.winner[ms[k].target] == owner) {
        pick = static_cast<int>(k);
        break;
      }
    }
    if (pick >= 0) {
      s.winner[i] = owner;
      s.choice[i] = pick;
    } else {
      s.winner[i] = owner == Player::Spoiler ? Player::Duplicator : Player::Spoiler;
    }
  }
  return s;
}

}  // namespace

std::size_t Arena::move_count() const {
  std::size_t n = 0;
  for (const auto& ms : moves) n += ms.size();
  return n;
}

std::optional<std::size_t> Arena::find_play(EventSet l, EventSet r, const std::vector<EventPair>& pairs) const {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Position& p = positions[i];
    if (p.kind == PositionKind::Play && p.left == l && p.right == r && p.pairs == pairs) return i;
  }
  return std::nullopt;
}

Arena build_arena(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps, const CheckOptions& options) {
  return ArenaBuilder(p1, p2, kind, caps, options).build();
}

std::vector<std::size_t> topological_order(const Arena& a) {
  const std::size_t n = a.positions.size();
  enum : char { kNew, kOpen, kDone };
  std::vector<char> state(n, kNew);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (state[root] != kNew) continue;
    stack.emplace_back(root, 0);
    state[root] = kOpen;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < a.moves[v].size()) {
        const std::size_t w = a.moves[v][next++].target;
        if (state[w] == kOpen) throw std::logic_error("cycle in game arena");
        if (state[w] == kNew) {
          state[w] = kOpen;
          stack.emplace_back(w, 0);
        }
      } else {
        state[v] = kDone;
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  return order;
}

std::vector<std::pair<std::size_t, std::size_t>> Solution::strategy_of(Player p, const Arena& a) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < choice.size(); ++i) {
    if (choice[i] >= 0 && a.positions[i].owner() == p && winner[i] == p) {
      out.emplace_back(i, static_cast<std::size_t>(choice[i]));
    }
  }
  return out;
}

Solution solve(const Arena& a) { return solve_with_sinks(a, {}); }

Solution solve_hereditary(const Arena& a, RelationKind kind) {
  if (!kind.hereditary()) throw std::invalid_argument("solve_hereditary needs an hhp relation kind");
  const MapMode mode = kind.branching() ? MapMode::Weak : MapMode::Strong;
  std::vector<std::size_t> plays;
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    if (a.positions[i].kind == PositionKind::Play) plays.push_back(i);
  }
  auto triple = [&](std::size_t i) {
    const Position& p = a.positions[i];
    return PosetalTriple{p.left, p.right, mode, p.pairs};
  };
  auto weight = [&](std::size_t i) { return a.positions[i].left.size() + a.positions[i].right.size(); };
  std::sort(plays.begin(), plays.end(), [&](std::size_t x, std::size_t y) { return weight(x) < weight(y); });

  std::vector<char> sinks(a.positions.size(), 0);
  std::vector<std::optional<std::size_t>> by(a.positions.size());
  while (true) {
    Solution s = solve_with_sinks(a, sinks);
    bool demoted_any = false;
    for (std::size_t hi : plays) {
      if (s.winner[hi] != Player::Duplicator) continue;
      const PosetalTriple big = triple(hi);
      for (std::size_t lo : plays) {
        if (weight(lo) >= weight(hi)) break;
        if (s.winner[lo] == Player::Spoiler && is_restriction(triple(lo), big)) {
          sinks[hi] = 1;
          by[hi] = lo;
          demoted_any = true;
          break;
        }
      }
    }
    if (!demoted_any) {
      s.demoted_by = by;
      return s;
    }
  }
}

std::vector<std::size_t> GameVerdict::strategy_positions() const {
  const Player w = solution.winner[arena.initial];
  std::vector<char> seen(arena.positions.size(), 0);
  std::vector<std::size_t> stack{arena.initial};
  std::vector<std::size_t> out;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (seen[v] || solution.demoted[v]) continue;
    seen[v] = 1;
    if (arena.positions[v].owner() == w) {
      if (solution.choice[v] < 0) continue;
      out.push_back(v);
      stack.push_back(arena.moves[v][solution.choice[v]].target);
    } else {
      for (const Move& m : arena.moves[v]) stack.push_back(m.target);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GameVerdict game_check(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps,
                       const CheckOptions& options) {
  GameVerdict v;
  v.arena = build_arena(p1, p2, kind, caps, options);
  v.solution = kind.hereditary() ? solve_hereditary(v.arena, kind) : solve(v.arena);
  v.equivalent = v.solution.winner[v.arena.initial] == Player::Duplicator;
  return v;
}

std::string describe_position(const Arena& a, std::size_t pos) {
  const Position& p = a.positions[pos];
  if (p.kind == PositionKind::Accepted) return "[accepted]";
  std::ostringstream os;
  auto core = [&] {
    os << "(" << format_events(a.left_pes, p.left);
    if (a.kind.history_preserving()) {
      os << ", {";
      bool first = true;
      for (const auto& [x, y] : p.pairs) {
        if (!first) os << ",";
        os << a.left_pes.event_id(x) << "->" << a.right_pes.event_id(y);
        first = false;
      }
      os << "}";
    }
    os << ", " << format_events(a.right_pes, p.right) << ")";
  };
  if (p.kind == PositionKind::Play) {
    os << "[";
    core();
    os << "]";
    return os.str();
  }
  os << "<";
  core();
  const Pes& cp = p.challenged == Side::Left ? a.left_pes : a.right_pes;
  const char* side = p.challenged == Side::Left ? "left" : "right";
  if (p.termination) {
    os << ", terminate " << side << ">";
  } else {
    os << ", " << side << " X=" << format_events(cp, p.challenge) << " to " << format_events(cp, p.challenge_target)
       << ">";
  }
  return os.str();
}

std::string describe_move(const Arena& a, std::size_t pos, const Move& m) {
  (void)pos;
  const Pes& pes = m.side == Side::Left ? a.left_pes : a.right_pes;
  const std::string side = m.side == Side::Left ? "left" : "right";
  switch (m.rule) {
    case MoveRule::SpoilerChallengeLeft:
    case MoveRule::SpoilerChallengeRight:
      return "challenge " + side + " X=" + format_events(pes, m.events);
    case MoveRule::SpoilerTerminationChallenge:
      return "challenge termination on " + side;
    case MoveRule::DuplicatorAbsorbTau:
      return "absorb silent X=" + format_events(pes, m.events) + " on " + side;
    case MoveRule::DuplicatorMatch:
      return "match " + side + " X=" + format_events(pes, m.events);
    case MoveRule::DuplicatorTauStep:
      return "silent step " + side + " X=" + format_events(pes, m.events);
    case MoveRule::DuplicatorTerminate:
      return "terminate on " + side;
  }
  return "?";
}

std::string Transcript::render(const Arena& a) const {
  std::ostringstream os;
  for (const TranscriptStep& s : steps) {
    os << to_string(s.mover) << (s.by_machine ? " (machine)" : "") << " at " << describe_position(a, s.position)
       << ": " << describe_move(a, s.position, a.moves[s.position][s.move]) << " [" << to_string(s.rule) << "]\n";
  }
  switch (reason) {
    case EndReason::SpoilerStuck: os << "Spoiler stuck; Duplicator wins\n"; break;
    case EndReason::DuplicatorStuck: os << "Duplicator stuck; Spoiler wins\n"; break;
    case EndReason::HereditaryViolation:
      os << "Position " << describe_position(a, final_position)
         << " lies above a lost triple; Spoiler wins\n";
      break;
    case EndReason::Incomplete: os << "play unfinished\n"; break;
  }
  return os.str();
}

GameSession::GameSession(const Arena& a, const Solution& s, Player human)
    : arena_(&a), solution_(&s), human_(human), current_(a.initial) {
  settle();
}

bool GameSession::finished() const { return transcript_.reason != EndReason::Incomplete; }

bool GameSession::human_to_move() const {
  return !finished() && arena_->positions[current_].owner() == human_;
}

void GameSession::choose(std::size_t move_index) {
  if (!human_to_move()) throw std::logic_error("not the external player's turn");
  if (move_index >= legal_moves().size()) throw std::out_of_range("illegal move index " + std::to_string(move_index));
  apply(move_index, false);
}

void GameSession::machine_move() {
  if (finished() || human_to_move()) throw std::logic_error("not the machine's turn");
  const int c = solution_->choice[current_];
  apply(c >= 0 ? static_cast<std::size_t>(c) : 0, true);
}

void GameSession::apply(std::size_t move_index, bool by_machine) {
  const Move& m = arena_->moves[current_][move_index];
  transcript_.steps.push_back({current_, move_index, arena_->positions[current_].owner(), by_machine, m.rule});
  current_ = m.target;
  settle();
}

void GameSession::settle() {
  transcript_.final_position = current_;
  if (!solution_->demoted.empty() && solution_->demoted[current_]) {
    transcript_.reason = EndReason::HereditaryViolation;
    transcript_.winner = Player::Spoiler;
  } else if (arena_->moves[current_].empty()) {
    const bool spoiler = arena_->positions[current_].owner() == Player::Spoiler;
    transcript_.reason = spoiler ? EndReason::SpoilerStuck : EndReason::DuplicatorStuck;
    transcript_.winner = spoiler ? Player::Duplicator : Player::Spoiler;
  }
}

Transcript replay(const Arena& a, const Solution& s, Player human, std::span<const std::size_t> human_moves) {
  GameSession session(a, s, human);
  std::size_t next = 0;
  while (!session.finished()) {
    if (session.human_to_move()) {
      if (next == human_moves.size()) break;
      session.choose(human_moves[next++]);
    } else {
      session.machine_move();
    }
  }
  return session.transcript();
}

}  // namespace pesgame

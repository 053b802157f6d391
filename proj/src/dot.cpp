#include "pesgame/dot.hpp"

#include <sstream>

namespace pesgame {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string configurations_dot(const Pes& p, const Caps& caps) {
  const StateSpace space(p, caps);
  std::ostringstream os;
  os << "digraph " << quoted(p.name()) << " {\n";
  os << "  rankdir=BT;\n  node [shape=ellipse];\n";
  const auto& cs = space.configurations();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    os << "  c" << i << " [label=" << quoted(format_events(p, cs[i]));
    if (space.terminal(i)) os << ", peripheries=2";
    os << "];\n";
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (const Transition& t : space.pomset_moves(i)) {
      os << "  c" << i << " -> c" << space.index_of(t.target) << " [label=" << quoted(format_events(p, t.pomset))
         << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string arena_dot(const Arena& a, const Solution& s) {
  std::ostringstream os;
  os << "digraph arena {\n";
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    const bool spoiler = a.positions[i].owner() == Player::Spoiler;
    const bool dup_wins = s.winner[i] == Player::Duplicator;
    os << "  p" << i << " [shape=" << (spoiler ? "box" : "diamond") << ", style=filled, color="
       << (dup_wins ? "blue" : "red") << ", fillcolor=" << (dup_wins ? "lightblue" : "pink")
       << ", label=" << quoted(describe_position(a, i));
    if (i == a.initial) os << ", penwidth=3";
    if (!s.demoted.empty() && s.demoted[i]) os << ", peripheries=2";
    os << "];\n";
  }
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    for (const Move& m : a.moves[i]) {
      os << "  p" << i << " -> p" << m.target << " [label=" << quoted(describe_move(a, i, m)) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace pesgame

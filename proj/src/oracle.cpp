#include "pesgame/oracle.hpp"

#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace pesgame {

namespace {

// Transfer conditions of all eight relations over an indexed candidate
// universe. `alive` is the membership vector the conditions are checked
// against; both the fixpoint and the witness re-check go through here.
class TransferChecker {
 public:
  TransferChecker(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps, const CheckOptions& options)
      : p1_(p1), p2_(p2), kind_(kind), options_(options), s1_(p1, caps), s2_(p2, caps), iso_(p1, p2) {
    if (kind.history_preserving()) {
      const MapMode mode = kind.branching() ? MapMode::Weak : MapMode::Strong;
      for (EventSet c1 : s1_.configurations()) {
        for (EventSet c2 : s2_.configurations()) {
          for (auto& t : enumerate_isomorphisms(p1, c1, p2, c2, mode)) {
            triple_index_.emplace(t, triples_.size());
            triples_.push_back(std::move(t));
            if (triples_.size() > caps.max_positions) {
              throw CapExceeded("posetal product exceeds " + std::to_string(caps.max_positions) + " triples");
            }
          }
        }
      }
    } else {
      const std::size_t total = s1_.configurations().size() * s2_.configurations().size();
      if (total > caps.max_positions) {
        throw CapExceeded("configuration product exceeds " + std::to_string(caps.max_positions) + " pairs");
      }
    }
  }

  std::size_t universe_size() const {
    return kind_.history_preserving() ? triples_.size()
                                      : s1_.configurations().size() * s2_.configurations().size();
  }

  std::size_t initial() const {
    if (kind_.history_preserving()) {
      return triple_index_.at(PosetalTriple{{}, {}, map_mode(), {}});
    }
    return pair_index(s1_.index_of({}), s2_.index_of({}));
  }

  Relation materialize(const std::vector<char>& alive) const {
    Relation r;
    const std::size_t n2 = s2_.configurations().size();
    for (std::size_t k = 0; k < alive.size(); ++k) {
      if (!alive[k]) continue;
      if (kind_.history_preserving()) {
        r.triples.push_back(triples_[k]);
      } else {
        r.pairs.push_back({s1_.configurations()[k / n2], s2_.configurations()[k % n2]});
      }
    }
    return r;
  }

  std::vector<char> membership(const Relation& r) const {
    std::vector<char> alive(universe_size(), 0);
    if (kind_.history_preserving()) {
      if (!r.pairs.empty()) throw std::invalid_argument("configuration pairs given for a posetal relation");
      for (const auto& t : r.triples) {
        auto it = triple_index_.find(t);
        if (it == triple_index_.end()) throw std::invalid_argument("malformed posetal triple in relation");
        alive[it->second] = 1;
      }
    } else {
      if (!r.triples.empty()) throw std::invalid_argument("posetal triples given for a configuration relation");
      for (const auto& [c1, c2] : r.pairs) {
        if (!p1_.is_configuration(c1) || !p2_.is_configuration(c2)) {
          throw std::invalid_argument("relation element is not a pair of configurations");
        }
        alive[pair_index(s1_.index_of(c1), s2_.index_of(c2))] = 1;
      }
    }
    return alive;
  }

  bool transfer(std::size_t k, const std::vector<char>& alive) {
    if (kind_.history_preserving()) return transfer_triple(triples_[k], alive);
    const std::size_t n2 = s2_.configurations().size();
    return transfer_pair(k / n2, k % n2, alive);
  }

  bool downward_closed(std::size_t k, const std::vector<char>& alive) const {
    const PosetalTriple& t = triples_[k];
    bool ok = true;
    for_each_immediate_subtriple(t, [&](const PosetalTriple& sub) {
      if (ok && !alive[triple_index_.at(sub)]) ok = false;
    });
    return ok;
  }

 private:
  MapMode map_mode() const { return kind_.branching() ? MapMode::Weak : MapMode::Strong; }

  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * s2_.configurations().size() + j; }

  bool live_pair(std::size_t i, std::size_t j, const std::vector<char>& alive) const {
    return alive[pair_index(i, j)];
  }

  bool live_triple(const PosetalTriple& t, const std::vector<char>& alive) const {
    auto it = triple_index_.find(t);
    return it != triple_index_.end() && alive[it->second];
  }

  // One direction of the pomset/step conditions: every move of `from` (at
  // configuration index i) is answered by `to` (at j). `flip` maps an
  // oriented (challenger, responder) index pair back to (left, right).
  template <class Flip>
  bool answers_pair(const StateSpace& from, const StateSpace& to, std::size_t i, std::size_t j, bool from_left,
                    const std::vector<char>& alive, Flip flip) {
    const bool steps = kind_.steps_only();
    const bool erase = kind_.branching() || options_.strong_erases_tau;
    auto iso = [&](EventSet challenge, EventSet response) {
      return from_left ? iso_.isomorphic(challenge, response, erase) : iso_.isomorphic(response, challenge, erase);
    };
    auto live = [&](std::size_t a, std::size_t b) {
      auto [l, r] = flip(a, b);
      return live_pair(l, r, alive);
    };
    for (const Transition& t1 : from.moves(i, steps)) {
      const std::size_t i1 = from.index_of(t1.target);
      bool answered = false;
      if (!kind_.branching()) {
        for (const Transition& t2 : to.moves(j, steps)) {
          if (iso(t1.pomset, t2.pomset) && live(i1, to.index_of(t2.target))) {
            answered = true;
            break;
          }
        }
      } else {
        answered = is_tau_pomset(from.pes(), t1.pomset) && live(i1, j);
        for (std::size_t j0 : to.tau_reach(j)) {
          if (answered) break;
          if (!live(i, j0)) continue;
          for (const Transition& t2 : to.moves(j0, steps)) {
            if (iso(t1.pomset, t2.pomset) && live(i1, to.index_of(t2.target))) {
              answered = true;
              break;
            }
          }
        }
      }
      if (!answered) return false;
    }
    if (kind_.branching() && from.terminal(i)) {
      bool matched = false;
      for (std::size_t j0 : to.tau_reach(j)) {
        if (live(i, j0) && to.terminal(j0)) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
    return true;
  }

  bool transfer_pair(std::size_t i, std::size_t j, const std::vector<char>& alive) {
    auto same = [](std::size_t a, std::size_t b) { return std::pair{a, b}; };
    auto swapped = [](std::size_t a, std::size_t b) { return std::pair{b, a}; };
    return answers_pair(s1_, s2_, i, j, true, alive, same) && answers_pair(s2_, s1_, j, i, false, alive, swapped);
  }

  // Extension of t by a challenge event on `side` answered by `response` on
  // the other side.
  std::optional<PosetalTriple> extend(const PosetalTriple& t, Side side, EventId challenge, EventId response) const {
    ExtendResult r = side == Side::Left ? extend_map(p1_, p2_, t, challenge, response)
                                        : extend_map(p1_, p2_, t, response, challenge);
    if (auto* g = std::get_if<PosetalTriple>(&r)) return std::move(*g);
    return std::nullopt;
  }

  bool answers_triple(const PosetalTriple& t, Side side, const std::vector<char>& alive) const {
    const bool left = side == Side::Left;
    const Pes& from_pes = left ? p1_ : p2_;
    const StateSpace& from = left ? s1_ : s2_;
    const StateSpace& to = left ? s2_ : s1_;
    const EventSet from_cfg = left ? t.left : t.right;
    const EventSet to_cfg = left ? t.right : t.left;
    auto with_other = [&](EventSet c) {
      PosetalTriple u = t;
      (left ? u.right : u.left) = c;
      return u;
    };

    for (EventId e : from.enabled_events(from.index_of(from_cfg))) {
      bool answered = false;
      if (kind_.branching() && from_pes.is_tau(e)) {
        const ExtendResult absorbed = absorb_silent(p1_, p2_, t, side, e);
        if (const auto* g = std::get_if<PosetalTriple>(&absorbed)) answered = live_triple(*g, alive);
      }
      const std::size_t j = to.index_of(to_cfg);
      std::vector<std::size_t> prefixes = kind_.branching() ? to.tau_reach(j) : std::vector<std::size_t>{j};
      for (std::size_t j0 : prefixes) {
        if (answered) break;
        const PosetalTriple t0 = with_other(to.configurations()[j0]);
        if (kind_.branching() && !live_triple(t0, alive)) continue;
        for (EventId r : to.enabled_events(j0)) {
          auto g = extend(t0, side, e, r);
          if (g && live_triple(*g, alive)) {
            answered = true;
            break;
          }
        }
      }
      if (!answered) return false;
    }
    if (kind_.branching() && from.terminal(from.index_of(from_cfg))) {
      bool matched = false;
      for (std::size_t j0 : to.tau_reach(to.index_of(to_cfg))) {
        if (to.terminal(j0) && live_triple(with_other(to.configurations()[j0]), alive)) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
    return true;
  }

  bool transfer_triple(const PosetalTriple& t, const std::vector<char>& alive) const {
    return answers_triple(t, Side::Left, alive) && answers_triple(t, Side::Right, alive);
  }

  // Sub-triples one removal step below t: a maximal unmapped τ event on
  // either side (weak mode), or a maximal mapped pair.
  template <class Fn>
  void for_each_immediate_subtriple(const PosetalTriple& t, Fn&& fn) const {
    auto maximal = [](const Pes& p, EventSet c, EventId e) { return (p.successors_of(e) & c) == EventSet::single(e); };
    if (t.mode == MapMode::Weak) {
      for (EventId e : p1_.tau_events() & t.left) {
        if (maximal(p1_, t.left, e) && t.image_of(e) < 0) {
          PosetalTriple u = t;
          u.left = t.left.without(e);
          fn(u);
        }
      }
      for (EventId e : p2_.tau_events() & t.right) {
        if (maximal(p2_, t.right, e) && t.preimage_of(e) < 0) {
          PosetalTriple u = t;
          u.right = t.right.without(e);
          fn(u);
        }
      }
    }
    for (std::size_t k = 0; k < t.pairs.size(); ++k) {
      const auto [a, b] = t.pairs[k];
      if (maximal(p1_, t.left, a) && maximal(p2_, t.right, b)) {
        PosetalTriple u = t;
        u.left = t.left.without(a);
        u.right = t.right.without(b);
        u.pairs.erase(u.pairs.begin() + static_cast<std::ptrdiff_t>(k));
        fn(u);
      }
    }
  }

  const Pes& p1_;
  const Pes& p2_;
  RelationKind kind_;
  CheckOptions options_;
  StateSpace s1_;
  StateSpace s2_;
  IsoCache iso_;
  std::vector<PosetalTriple> triples_;
  std::unordered_map<PosetalTriple, std::size_t, TripleHash> triple_index_;
};

std::vector<char> fixpoint(TransferChecker& checker, RelationKind kind) {
  std::vector<char> alive(checker.universe_size(), 1);
  auto prune_transfer = [&] {
    bool removed_any = false;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = 0; k < alive.size(); ++k) {
        if (alive[k] && !checker.transfer(k, alive)) {
          alive[k] = 0;
          changed = removed_any = true;
        }
      }
    }
    return removed_any;
  };
  prune_transfer();
  if (!kind.hereditary()) return alive;
  while (true) {
    bool pruned = false;
    for (std::size_t k = 0; k < alive.size(); ++k) {
      if (alive[k] && !checker.downward_closed(k, alive)) {
        alive[k] = 0;
        pruned = true;
      }
    }
    if (!pruned) break;
    prune_transfer();
  }
  return alive;
}

}  // namespace

Relation candidate_universe(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps) {
  TransferChecker checker(p1, p2, kind, caps, {});
  return checker.materialize(std::vector<char>(checker.universe_size(), 1));
}

Relation greatest_relation(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps,
                           const CheckOptions& options) {
  TransferChecker checker(p1, p2, kind, caps, options);
  return checker.materialize(fixpoint(checker, kind));
}

Verdict check(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps, const CheckOptions& options) {
  TransferChecker checker(p1, p2, kind, caps, options);
  const std::vector<char> alive = fixpoint(checker, kind);
  return Verdict{alive[checker.initial()] != 0, kind, checker.materialize(alive)};
}

bool verify_witness(const Pes& p1, const Pes& p2, RelationKind kind, const Relation& relation, const Caps& caps,
                    const CheckOptions& options) {
  TransferChecker checker(p1, p2, kind, caps, options);
  const std::vector<char> alive = checker.membership(relation);
  for (std::size_t k = 0; k < alive.size(); ++k) {
    if (!alive[k]) continue;
    if (!checker.transfer(k, alive)) return false;
    if (kind.hereditary() && !checker.downward_closed(k, alive)) return false;
  }
  return true;
}

}  // namespace pesgame

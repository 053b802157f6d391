#include "pesgame/pes.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace pesgame {

bool Pes::is_consistent(EventSet s) const {
  for (EventId e : s) {
    if (!conflict_[e].disjoint(s)) return false;
  }
  return true;
}

bool Pes::is_downward_closed(EventSet s) const {
  for (EventId e : s) {
    if (!below_[e].subset_of(s)) return false;
  }
  return true;
}

bool Pes::pairwise_concurrent(EventSet s) const {
  for (EventId e : s) {
    // ⌈e⌉ and ⌊e⌋ both contain e, so strip it before testing.
    if (!(below_[e].without(e)).disjoint(s) || !(above_[e].without(e)).disjoint(s)) return false;
    if (!conflict_[e].disjoint(s)) return false;
  }
  return true;
}

EventSet Pes::enabled(EventSet c) const {
  EventSet out;
  for (EventId e : all_events() - c) {
    if (below_[e].without(e).subset_of(c) && conflict_[e].disjoint(c)) out = out.with(e);
  }
  return out;
}

int Pes::find(const std::string& id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  return it == ids_.end() ? -1 : static_cast<int>(it - ids_.begin());
}

Pes validate_pes(const RawPes& raw, const Caps& caps) {
  const int n = static_cast<int>(raw.events.size());
  if (n > caps.max_events || n > kMaxEventsHard) {
    throw CapExceeded("event cap exceeded: " + std::to_string(n) + " events, cap is " +
                      std::to_string(std::min(caps.max_events, kMaxEventsHard)));
  }

  Pes p;
  p.name_ = raw.name;
  std::map<std::string, EventId> index;
  for (int i = 0; i < n; ++i) {
    const auto& ev = raw.events[i];
    if (!index.emplace(ev.id, static_cast<EventId>(i)).second) {
      throw PesError(PesError::Kind::DuplicateEvent, "duplicate event '" + ev.id + "'");
    }
    p.ids_.push_back(ev.id);
    p.labels_.push_back(Label::named(ev.label));
    if (p.labels_.back().is_tau) p.tau_ = p.tau_.with(static_cast<EventId>(i));
  }
  auto lookup = [&](const std::string& id) -> EventId {
    auto it = index.find(id);
    if (it == index.end()) throw PesError(PesError::Kind::UnknownEvent, "unknown event '" + id + "'");
    return it->second;
  };

  p.below_.assign(n, EventSet{});
  for (int i = 0; i < n; ++i) p.below_[i] = EventSet::single(static_cast<EventId>(i));
  for (const auto& [a, b] : raw.causes) {
    const EventId ea = lookup(a);
    const EventId eb = lookup(b);
    if (ea == eb) throw PesError(PesError::Kind::CausalityCycle, "causality cycle through '" + a + "'");
    p.below_[eb] = p.below_[eb].with(ea);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int e = 0; e < n; ++e) {
      EventSet closed = p.below_[e];
      for (EventId c : p.below_[e]) closed |= p.below_[c];
      if (closed != p.below_[e]) {
        p.below_[e] = closed;
        changed = true;
      }
    }
  }
  p.above_.assign(n, EventSet{});
  for (int e = 0; e < n; ++e) {
    for (EventId c : p.below_[e]) {
      if (c != e && p.below_[c].contains(static_cast<EventId>(e))) {
        throw PesError(PesError::Kind::CausalityCycle,
                       "causality cycle between '" + p.ids_[c] + "' and '" + p.ids_[e] + "'");
      }
      p.above_[c] = p.above_[c].with(static_cast<EventId>(e));
    }
  }

  p.conflict_.assign(n, EventSet{});
  for (const auto& [a, b] : raw.conflicts) {
    const EventId ea = lookup(a);
    const EventId eb = lookup(b);
    if (ea == eb) throw PesError(PesError::Kind::SelfConflict, "event '" + a + "' in conflict with itself");
    if (p.leq(ea, eb) || p.leq(eb, ea)) {
      throw PesError(PesError::Kind::ComparableConflict,
                     "conflict between causally related events '" + a + "' and '" + b + "'");
    }
    // Heredity: everything above a conflicts with everything above b.
    for (EventId x : p.above_[ea]) p.conflict_[x] |= p.above_[eb];
    for (EventId y : p.above_[eb]) p.conflict_[y] |= p.above_[ea];
  }
  for (int e = 0; e < n; ++e) {
    if (p.conflict_[e].contains(static_cast<EventId>(e))) {
      throw PesError(PesError::Kind::SelfConflict,
                     "event '" + p.ids_[e] + "' inherits a conflict with itself");
    }
  }

  p.termination_.kind = raw.termination.kind;
  if (raw.termination.kind == TerminationPolicy::Kind::Explicit) {
    std::set<EventSet> seen;
    for (const auto& ids : raw.termination.configurations) {
      EventSet c;
      for (const auto& id : ids) c = c.with(lookup(id));
      if (!p.is_configuration(c)) {
        throw PesError(PesError::Kind::BadTermination,
                       "terminating set " + format_events(p, c) + " is not a configuration");
      }
      seen.insert(c);
    }
    p.termination_.configurations.assign(seen.begin(), seen.end());
  }
  return p;
}

RawPes to_raw(const Pes& p) {
  RawPes raw;
  raw.name = p.name();
  const int n = p.size();
  for (EventId e = 0; e < n; ++e) raw.events.push_back({p.event_id(e), p.label(e).name});
  for (EventId b = 0; b < n; ++b) {
    const EventSet strict = p.causes_of(b).without(b);
    for (EventId a : strict) {
      // a is an immediate cause when nothing sits strictly between a and b.
      bool covered = true;
      for (EventId m : strict) {
        if (m != a && p.leq(a, m)) covered = false;
      }
      if (covered) raw.causes.emplace_back(p.event_id(a), p.event_id(b));
    }
  }
  for (EventId a = 0; a < n; ++a) {
    for (EventId b = a + 1; b < n; ++b) {
      if (!p.in_conflict(a, b)) continue;
      bool minimal = true;
      for (EventId a2 : p.causes_of(a)) {
        for (EventId b2 : p.causes_of(b)) {
          if ((a2 != a || b2 != b) && p.in_conflict(a2, b2)) minimal = false;
        }
      }
      if (minimal) raw.conflicts.emplace_back(p.event_id(a), p.event_id(b));
    }
  }
  raw.termination.kind = p.termination().kind;
  for (EventSet c : p.termination().configurations) {
    std::vector<std::string> ids;
    for (EventId e : c) ids.push_back(p.event_id(e));
    raw.termination.configurations.push_back(std::move(ids));
  }
  return raw;
}

RelationTables relations_of(const Pes& p) {
  const int n = p.size();
  RelationTables t;
  auto matrix = [n] { return std::vector<std::vector<bool>>(n, std::vector<bool>(n, false)); };
  t.leq = matrix();
  t.conflict = matrix();
  t.consistent = matrix();
  t.concurrent = matrix();
  for (EventId a = 0; a < n; ++a) {
    for (EventId b = 0; b < n; ++b) {
      t.leq[a][b] = p.leq(a, b);
      t.conflict[a][b] = p.in_conflict(a, b);
      t.consistent[a][b] = p.consistent(a, b);
      t.concurrent[a][b] = p.concurrent(a, b);
    }
  }
  return t;
}

std::vector<EventSet> enumerate_configurations(const Pes& p, const Caps& caps) {
  // Every configuration is reachable from ∅ by single-event extensions.
  std::unordered_set<EventSet> seen{EventSet{}};
  std::deque<EventSet> queue{EventSet{}};
  while (!queue.empty()) {
    const EventSet c = queue.front();
    queue.pop_front();
    for (EventId e : p.enabled(c)) {
      const EventSet next = c.with(e);
      if (seen.insert(next).second) {
        if (seen.size() > caps.max_configurations) {
          throw CapExceeded("configuration cap exceeded: more than " +
                            std::to_string(caps.max_configurations) + " configurations");
        }
        queue.push_back(next);
      }
    }
  }
  std::vector<EventSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<Transition> extensions(const Pes& p, EventSet c, bool steps_only) {
  std::vector<Transition> out;
  // Any X with C ∪ X a configuration avoids events conflicting with C.
  EventSet candidates;
  for (EventId e : p.all_events() - c) {
    if (p.conflicts_of(e).disjoint(c)) candidates = candidates.with(e);
  }
  for_each_nonempty_subset(candidates, [&](EventSet x) {
    if (!p.is_configuration(c | x)) return;
    if (steps_only && !p.pairwise_concurrent(x)) return;
    out.push_back({c, x, c | x, steps_only ? TransitionKind::Step : TransitionKind::Pomset});
  });
  std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) { return a.target < b.target; });
  return out;
}

}  // namespace

std::vector<Transition> pomset_transitions(const Pes& p, EventSet c) { return extensions(p, c, false); }

std::vector<Transition> step_transitions(const Pes& p, EventSet c) { return extensions(p, c, true); }

std::vector<EventSet> tau_closure(const Pes& p, EventSet c) {
  std::set<EventSet> seen{c};
  std::deque<EventSet> queue{c};
  while (!queue.empty()) {
    const EventSet cur = queue.front();
    queue.pop_front();
    for (EventId e : p.enabled(cur) & p.tau_events()) {
      if (seen.insert(cur.with(e)).second) queue.push_back(cur.with(e));
    }
  }
  return {seen.begin(), seen.end()};
}

bool is_tau_pomset(const Pes& p, EventSet x) { return x.subset_of(p.tau_events()); }

bool terminates(const Pes& p, EventSet c) {
  switch (p.termination().kind) {
    case TerminationPolicy::Kind::Maximal:
      return p.enabled(c).empty();
    case TerminationPolicy::Kind::None:
      return false;
    case TerminationPolicy::Kind::Explicit: {
      const auto& cs = p.termination().configurations;
      return std::binary_search(cs.begin(), cs.end(), c);
    }
  }
  return false;
}

std::string format_events(const Pes& p, EventSet s) {
  std::string out = "{";
  bool first = true;
  for (EventId e : s) {
    if (!first) out += ",";
    out += p.event_id(e);
    first = false;
  }
  return out + "}";
}

StateSpace::StateSpace(const Pes& p, const Caps& caps) : pes_(&p), configs_(enumerate_configurations(p, caps)) {
  const std::size_t n = configs_.size();
  for (std::size_t i = 0; i < n; ++i) index_.emplace(configs_[i], i);
  pomset_.resize(n);
  step_.resize(n);
  enabled_.resize(n);
  tau_reach_.resize(n);
  terminal_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const EventSet c = configs_[i];
    pomset_[i] = pomset_transitions(p, c);
    step_[i] = step_transitions(p, c);
    for (EventId e : p.enabled(c)) enabled_[i].push_back(e);
    for (EventSet r : tau_closure(p, c)) tau_reach_[i].push_back(index_.at(r));
    terminal_[i] = terminates(p, c);
  }
}

std::size_t StateSpace::index_of(EventSet c) const {
  auto it = index_.find(c);
  if (it == index_.end()) throw std::out_of_range("not a configuration: " + format_events(*pes_, c));
  return it->second;
}

}  // namespace pesgame

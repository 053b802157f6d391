#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pesgame/event_set.hpp"

namespace pesgame {

/// The reserved silent label.
inline constexpr const char* kTauName = "tau";

struct Label {
  std::string name;
  bool is_tau = false;

  static Label named(std::string n) {
    const bool tau = (n == kTauName);
    return Label{std::move(n), tau};
  }
  bool operator==(const Label&) const = default;
};

/// Size limits that turn state-space blow-ups into clean errors.
struct Caps {
  int max_events = 12;
  std::size_t max_configurations = 4096;
  std::size_t max_positions = 200000;
};

/// Thrown when an instance exceeds one of the configured caps.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Semantic errors found while validating a declared event structure.
class PesError : public std::runtime_error {
 public:
  enum class Kind {
    DuplicateEvent,
    UnknownEvent,
    CausalityCycle,
    SelfConflict,
    ComparableConflict,
    BadTermination,
  };

  PesError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct TerminationPolicy {
  enum class Kind { Maximal, None, Explicit };
  Kind kind = Kind::Maximal;
  std::vector<EventSet> configurations;  // Explicit only, sorted

  bool operator==(const TerminationPolicy&) const = default;
};

/// Declarations as written by a user: immediate causes and generating
/// conflicts, not yet closed.
struct RawPes {
  struct Event {
    std::string id;
    std::string label;
  };
  struct RawTermination {
    TerminationPolicy::Kind kind = TerminationPolicy::Kind::Maximal;
    std::vector<std::vector<std::string>> configurations;
  };

  std::string name;
  std::vector<Event> events;
  std::vector<std::pair<std::string, std::string>> causes;
  std::vector<std::pair<std::string, std::string>> conflicts;
  RawTermination termination;
};

/// Derived relation tables, indexed [e][e'] in declaration order.
struct RelationTables {
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<bool>> conflict;
  std::vector<std::vector<bool>> consistent;
  std::vector<std::vector<bool>> concurrent;

  bool operator==(const RelationTables&) const = default;
};

/// A validated finite labelled prime event structure. Causality is kept as
/// its reflexive-transitive closure and conflict as its symmetric hereditary
/// closure. Immutable after construction.
class Pes {
 public:
  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(ids_.size()); }
  EventSet all_events() const { return EventSet::first_n(size()); }

  const std::string& event_id(EventId e) const { return ids_[e]; }
  const Label& label(EventId e) const { return labels_[e]; }
  bool is_tau(EventId e) const { return tau_.contains(e); }
  EventSet tau_events() const { return tau_; }

  /// ⌈e⌉, including e itself.
  EventSet causes_of(EventId e) const { return below_[e]; }
  EventSet successors_of(EventId e) const { return above_[e]; }
  EventSet conflicts_of(EventId e) const { return conflict_[e]; }

  bool leq(EventId a, EventId b) const { return below_[b].contains(a); }
  bool in_conflict(EventId a, EventId b) const { return conflict_[a].contains(b); }
  bool consistent(EventId a, EventId b) const { return !in_conflict(a, b); }
  bool concurrent(EventId a, EventId b) const {
    return !leq(a, b) && !leq(b, a) && !in_conflict(a, b);
  }

  /// The τ-erased view Ĉ.
  EventSet visible(EventSet s) const { return s - tau_; }

  bool is_consistent(EventSet s) const;
  bool is_downward_closed(EventSet s) const;
  bool is_configuration(EventSet s) const { return is_consistent(s) && is_downward_closed(s); }
  bool pairwise_concurrent(EventSet s) const;

  /// Events e ∉ c such that c ∪ {e} is a configuration.
  EventSet enabled(EventSet c) const;

  const TerminationPolicy& termination() const { return termination_; }

  /// Looks up an event by identifier; returns -1 when undeclared.
  int find(const std::string& id) const;

  bool operator==(const Pes&) const = default;

 private:
  friend Pes validate_pes(const RawPes& raw, const Caps& caps);

  std::string name_;
  std::vector<std::string> ids_;
  std::vector<Label> labels_;
  EventSet tau_;
  std::vector<EventSet> below_;
  std::vector<EventSet> above_;
  std::vector<EventSet> conflict_;
  TerminationPolicy termination_;
};

Pes validate_pes(const RawPes& raw, const Caps& caps = {});

/// Inverse of validate_pes up to closure: immediate causes (covers) and
/// minimal generating conflicts.
RawPes to_raw(const Pes& p);

RelationTables relations_of(const Pes& p);

enum class TransitionKind { Pomset, Step, TauStar };

struct Transition {
  EventSet source;
  EventSet pomset;
  EventSet target;
  TransitionKind kind = TransitionKind::Pomset;

  bool operator==(const Transition&) const = default;
};

/// All configurations, ordered by bitmask value; throws CapExceeded past
/// caps.max_configurations.
std::vector<EventSet> enumerate_configurations(const Pes& p, const Caps& caps = {});

std::vector<Transition> pomset_transitions(const Pes& p, EventSet c);
std::vector<Transition> step_transitions(const Pes& p, EventSet c);

/// Configurations reachable from c by zero or more τ-only transitions,
/// ordered by bitmask value; always contains c.
std::vector<EventSet> tau_closure(const Pes& p, EventSet c);

bool is_tau_pomset(const Pes& p, EventSet x);
bool terminates(const Pes& p, EventSet c);

/// Renders an event set as "{a,b}" using declared identifiers.
std::string format_events(const Pes& p, EventSet s);

/// Precomputed configuration graph of one PES, shared by the oracle and the
/// game builder.
class StateSpace {
 public:
  StateSpace(const Pes& p, const Caps& caps);

  const Pes& pes() const { return *pes_; }
  const std::vector<EventSet>& configurations() const { return configs_; }
  std::size_t index_of(EventSet c) const;

  const std::vector<Transition>& pomset_moves(std::size_t i) const { return pomset_[i]; }
  const std::vector<Transition>& step_moves(std::size_t i) const { return step_[i]; }
  const std::vector<Transition>& moves(std::size_t i, bool steps_only) const {
    return steps_only ? step_[i] : pomset_[i];
  }
  /// Single-event extensions; used by hp games and τ-step rules.
  const std::vector<EventId>& enabled_events(std::size_t i) const { return enabled_[i]; }
  const std::vector<std::size_t>& tau_reach(std::size_t i) const { return tau_reach_[i]; }
  bool terminal(std::size_t i) const { return terminal_[i]; }

 private:
  const Pes* pes_;
  std::vector<EventSet> configs_;
  std::unordered_map<EventSet, std::size_t> index_;
  std::vector<std::vector<Transition>> pomset_;
  std::vector<std::vector<Transition>> step_;
  std::vector<std::vector<EventId>> enabled_;
  std::vector<std::vector<std::size_t>> tau_reach_;
  std::vector<bool> terminal_;
};

}  // namespace pesgame

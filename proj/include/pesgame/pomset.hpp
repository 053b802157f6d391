#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "pesgame/event_set.hpp"
#include "pesgame/pes.hpp"

namespace pesgame {

/// A subset of a PES viewed as a labelled partial order; the order is always
/// the restriction of the owner's causality.
struct Pomset {
  const Pes* owner = nullptr;
  EventSet events;
};

/// True iff a label- and order-preserving bijection exists between the two
/// pomsets (between their visible parts when erase_tau is set).
bool pomset_isomorphic(const Pomset& x1, const Pomset& x2, bool erase_tau);

/// Memoizes pomset_isomorphic for subsets of one fixed pair of structures.
class IsoCache {
 public:
  IsoCache(const Pes& p1, const Pes& p2) : p1_(&p1), p2_(&p2) {}
  bool isomorphic(EventSet x1, EventSet x2, bool erase_tau);

 private:
  const Pes* p1_;
  const Pes* p2_;
  std::unordered_map<std::uint64_t, bool> memo_[2];
};

/// strong: f covers every event. weak: f is a partial isomorphism that covers
/// every visible event; a silent event is either paired with a silent event
/// of the other side or left unmapped (absorbed).
enum class MapMode { Strong, Weak };

using EventPair = std::pair<EventId, EventId>;

/// A posetal triple (C1, f, C2): configurations of PES1 and PES2 with an
/// order isomorphism f between them, stored as pairs sorted by the PES1 side.
struct PosetalTriple {
  EventSet left;
  EventSet right;
  MapMode mode = MapMode::Strong;
  std::vector<EventPair> pairs;

  /// Image of e1 under f, or -1.
  int image_of(EventId e1) const;
  /// Pre-image of e2 under f, or -1.
  int preimage_of(EventId e2) const;

  bool operator==(const PosetalTriple&) const = default;
};

struct TripleHash {
  std::size_t operator()(const PosetalTriple& t) const noexcept;
};

/// Every isomorphism between c1 and c2 in the given mode, in lexicographic
/// order of pair lists. Empty iff the two are not isomorphic.
std::vector<PosetalTriple> enumerate_isomorphisms(const Pes& p1, EventSet c1, const Pes& p2, EventSet c2,
                                                  MapMode mode);

enum class ExtendFailure { LabelMismatch, OrderViolation, Precondition };

using ExtendResult = std::variant<PosetalTriple, ExtendFailure>;

/// f[e1 ↦ e2]. Silent events may only be paired with silent events.
ExtendResult extend_map(const Pes& p1, const Pes& p2, const PosetalTriple& f, EventId e1, EventId e2);

enum class Side { Left, Right };

/// f[e ↦ τ] for a τ-labelled e on the given side (weak mode only): the pairs
/// are unchanged and that side's configuration grows by e.
ExtendResult absorb_silent(const Pes& p1, const Pes& p2, const PosetalTriple& f, Side side, EventId e);

/// Pointwise containment: both configurations and the graph of f.
bool triple_leq(const PosetalTriple& t1, const PosetalTriple& t2);

/// t1 is t2 cut down to smaller configurations: pointwise containment where
/// each pair of t2 is kept exactly when both of its events remain. For valid
/// strong triples this is triple_leq.
bool is_restriction(const PosetalTriple& t1, const PosetalTriple& t2);

/// Checks every PosetalTriple invariant against the two structures.
bool is_valid_triple(const Pes& p1, const Pes& p2, const PosetalTriple& t);

}  // namespace pesgame

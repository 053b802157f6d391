#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "pesgame/pes.hpp"
#include "pesgame/pomset.hpp"
#include "pesgame/relation_kind.hpp"

namespace pesgame {

struct ConfigPair {
  EventSet left;
  EventSet right;
  auto operator<=>(const ConfigPair&) const = default;
};

/// A candidate bisimulation: configuration pairs for the pomset and step
/// flavors, posetal triples for hp and hhp. Only one of the two is used.
struct Relation {
  std::vector<ConfigPair> pairs;
  std::vector<PosetalTriple> triples;

  std::size_t size() const { return pairs.size() + triples.size(); }
  bool operator==(const Relation&) const = default;
};

struct Verdict {
  bool equivalent = false;
  RelationKind kind;
  /// The greatest relation; it contains the empty pair or triple exactly when
  /// equivalent is set.
  Relation witness;
};

/// Every element the fixpoint starts from: all configuration pairs, or all
/// strong/weak posetal triples, in canonical order.
Relation candidate_universe(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps = {});

/// Largest subset of the candidate universe closed under the transfer
/// conditions of `kind` (and downward closed for hhp), by iterated removal.
Relation greatest_relation(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps = {},
                           const CheckOptions& options = {});

Verdict check(const Pes& p1, const Pes& p2, RelationKind kind, const Caps& caps = {},
              const CheckOptions& options = {});

/// Re-checks the closure conditions of `kind` on an arbitrary set. Throws
/// std::invalid_argument when an element is not a pair of configurations or
/// not a valid posetal triple of the expected mode.
bool verify_witness(const Pes& p1, const Pes& p2, RelationKind kind, const Relation& relation,
                    const Caps& caps = {}, const CheckOptions& options = {});

}  // namespace pesgame

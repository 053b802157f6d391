#include <doctest.h>

#include "pes_testing.hpp"
#include "pesgame/pomset.hpp"

using namespace pesgame;
using testing::fixture;

namespace {

EventSet ev(const Pes& p, std::initializer_list<const char*> ids) {
  EventSet s;
  for (const char* id : ids) s = s.with(static_cast<EventId>(p.find(id)));
  return s;
}

EventId id(const Pes& p, const char* name) { return static_cast<EventId>(p.find(name)); }

Pes two_as() { return parse_pes("pes AA\nevent x : a\nevent y : a\n"); }

}  // namespace

TEST_CASE("pomset isomorphism examples") {
  const Pes par = fixture("PAR");
  const Pes ch = fixture("CH");
  CHECK_FALSE(pomset_isomorphic({&par, ev(par, {"a", "b"})}, {&ch, ev(ch, {"a1", "b1"})}, false));
  CHECK_FALSE(pomset_isomorphic({&par, ev(par, {"a", "b"})}, {&ch, ev(ch, {"a1", "b1"})}, true));
  for (EventSet c : enumerate_configurations(ch)) {
    CHECK(pomset_isomorphic({&ch, c}, {&ch, c}, false));
    CHECK(pomset_isomorphic({&ch, c}, {&ch, c}, true));
  }
  const Pes tau = fixture("TAU");
  CHECK(pomset_isomorphic({&tau, ev(tau, {"t"})}, {&par, EventSet()}, true));
  CHECK_FALSE(pomset_isomorphic({&tau, ev(tau, {"t"})}, {&par, EventSet()}, false));
  const Pes pa = fixture("PA");
  CHECK(pomset_isomorphic({&tau, ev(tau, {"t", "a"})}, {&pa, ev(pa, {"a"})}, true));
  CHECK_FALSE(pomset_isomorphic({&tau, ev(tau, {"t", "a"})}, {&pa, ev(pa, {"a"})}, false));
}

TEST_CASE("enumerating isomorphisms") {
  const Pes p0 = fixture("P0");
  const auto empty = enumerate_isomorphisms(p0, EventSet(), p0, EventSet(), MapMode::Strong);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].pairs.empty());

  const Pes par = fixture("PAR");
  const Pes aa = two_as();
  CHECK(enumerate_isomorphisms(aa, ev(aa, {"x", "y"}), aa, ev(aa, {"x", "y"}), MapMode::Strong).size() == 2);
  CHECK(enumerate_isomorphisms(par, ev(par, {"a", "b"}), par, ev(par, {"a", "b"}), MapMode::Strong).size() == 1);

  const Pes seq = fixture("SEQ");
  CHECK(enumerate_isomorphisms(seq, ev(seq, {"a"}), par, ev(par, {"b"}), MapMode::Strong).empty());
}

TEST_CASE("extending maps") {
  const Pes seq = fixture("SEQ");
  PosetalTriple empty{EventSet(), EventSet(), MapMode::Strong, {}};
  auto r = extend_map(seq, seq, empty, id(seq, "a"), id(seq, "a"));
  REQUIRE(std::holds_alternative<PosetalTriple>(r));
  CHECK(std::get<PosetalTriple>(r).pairs == std::vector<EventPair>{{id(seq, "a"), id(seq, "a")}});

  const Pes ch = fixture("CH");
  PosetalTriple f{ev(ch, {"a1"}), ev(seq, {"a"}), MapMode::Strong, {{id(ch, "a1"), id(seq, "a")}}};
  r = extend_map(ch, seq, f, id(ch, "b1"), id(seq, "b"));
  REQUIRE(std::holds_alternative<PosetalTriple>(r));
  const auto& g = std::get<PosetalTriple>(r);
  CHECK(g.left == ev(ch, {"a1", "b1"}));
  CHECK(g.right == ev(seq, {"a", "b"}));
  CHECK(g.pairs.size() == 2);
  CHECK(g.image_of(id(ch, "b1")) == id(seq, "b"));

  const Pes par = fixture("PAR");
  r = extend_map(par, par, empty, id(par, "a"), id(par, "b"));
  CHECK(std::get<ExtendFailure>(r) == ExtendFailure::LabelMismatch);

  // b2 is not enabled at {a1}.
  r = extend_map(ch, seq, f, id(ch, "b2"), id(seq, "b"));
  CHECK(std::get<ExtendFailure>(r) == ExtendFailure::Precondition);

  // {a} of PAR and {a} of SEQ: adding b concurrently on the left but causally
  // on the right breaks order reflection.
  PosetalTriple h{ev(par, {"a"}), ev(seq, {"a"}), MapMode::Strong, {{id(par, "a"), id(seq, "a")}}};
  r = extend_map(par, seq, h, id(par, "b"), id(seq, "b"));
  CHECK(std::get<ExtendFailure>(r) == ExtendFailure::OrderViolation);
}

TEST_CASE("weak maps ignore silent events") {
  const Pes tau = fixture("TAU");
  const Pes pa = fixture("PA");
  PosetalTriple empty{EventSet(), EventSet(), MapMode::Weak, {}};
  auto r = absorb_silent(tau, pa, empty, Side::Left, id(tau, "t"));
  REQUIRE(std::holds_alternative<PosetalTriple>(r));
  CHECK(std::get<PosetalTriple>(r).left == ev(tau, {"t"}));
  CHECK(std::get<PosetalTriple>(r).pairs.empty());
  r = extend_map(tau, pa, std::get<PosetalTriple>(r), id(tau, "a"), id(pa, "a"));
  REQUIRE(std::holds_alternative<PosetalTriple>(r));
  CHECK(is_valid_triple(tau, pa, std::get<PosetalTriple>(r)));

  CHECK(std::holds_alternative<ExtendFailure>(absorb_silent(tau, pa, empty, Side::Right, id(pa, "a"))));

  const auto weak = enumerate_isomorphisms(tau, ev(tau, {"t"}), pa, EventSet(), MapMode::Weak);
  CHECK(weak.size() == 1);
  CHECK(enumerate_isomorphisms(tau, ev(tau, {"t"}), pa, EventSet(), MapMode::Strong).empty());
}

TEST_CASE("pointwise containment of triples") {
  const Pes ch = fixture("CH");
  const Pes aa = parse_pes("pes Q\nevent x : a\nevent y : a\nevent z : b\ncause y < z\n");
  const PosetalTriple bottom{EventSet(), EventSet(), MapMode::Strong, {}};
  const PosetalTriple small{ev(ch, {"a1"}), ev(aa, {"x"}), MapMode::Strong, {{id(ch, "a1"), id(aa, "x")}}};
  const PosetalTriple big{ev(ch, {"a1", "b1"}), ev(aa, {"y", "z"}), MapMode::Strong,
                          {{id(ch, "a1"), id(aa, "y")}, {id(ch, "b1"), id(aa, "z")}}};
  CHECK(is_valid_triple(ch, aa, small));
  CHECK(is_valid_triple(ch, aa, big));
  CHECK(triple_leq(bottom, small));
  CHECK(triple_leq(bottom, big));
  CHECK(triple_leq(big, big));
  CHECK_FALSE(triple_leq(small, big));
  CHECK(is_restriction(bottom, big));
  CHECK_FALSE(is_restriction(small, big));
}

TEST_CASE("restrictions keep silent pairs whole") {
  // c # t against itself: after pairing t with t, dropping t on one side only
  // is pointwise smaller but not a restriction.
  const Pes p = parse_pes("pes S\nevent c : c\nevent t : tau\nconflict c # t\n");
  const EventId t = id(p, "t");
  const PosetalTriple both{EventSet::single(t), EventSet::single(t), MapMode::Weak, {{t, t}}};
  const PosetalTriple one_side{EventSet::single(t), EventSet(), MapMode::Weak, {}};
  const PosetalTriple absorbed{EventSet::single(t), EventSet::single(t), MapMode::Weak, {}};
  CHECK(is_valid_triple(p, p, both));
  CHECK(is_valid_triple(p, p, one_side));
  CHECK(is_valid_triple(p, p, absorbed));
  CHECK(triple_leq(one_side, both));
  CHECK_FALSE(is_restriction(one_side, both));
  CHECK(is_restriction(one_side, absorbed));
  CHECK(is_restriction(PosetalTriple{{}, {}, MapMode::Weak, {}}, both));

  const auto r = extend_map(p, p, PosetalTriple{{}, {}, MapMode::Weak, {}}, t, t);
  REQUIRE(std::holds_alternative<PosetalTriple>(r));
  CHECK(std::get<PosetalTriple>(r) == both);
  CHECK(enumerate_isomorphisms(p, EventSet::single(t), p, EventSet::single(t), MapMode::Weak).size() == 2);
}

TEST_CASE("restriction agrees with containment on strong triples") {
  std::mt19937 rng(19);
  for (int round = 0; round < 60; ++round) {
    const Pes p = testing::random_pes(rng, 4, "P");
    const Pes q = testing::add_silent_events(rng, p);
    for (MapMode mode : {MapMode::Strong, MapMode::Weak}) {
      std::vector<PosetalTriple> all;
      for (EventSet c1 : enumerate_configurations(p)) {
        for (EventSet c2 : enumerate_configurations(q)) {
          for (auto& t : enumerate_isomorphisms(p, c1, q, c2, mode)) all.push_back(std::move(t));
        }
      }
      for (const auto& a : all) {
        for (const auto& b : all) {
          if (is_restriction(a, b)) CHECK(triple_leq(a, b));
          if (mode == MapMode::Strong) CHECK(is_restriction(a, b) == triple_leq(a, b));
        }
      }
    }
  }
}

TEST_CASE("isomorphism properties on random structures") {
  std::mt19937 rng(3);
  for (int round = 0; round < 120; ++round) {
    const Pes p = testing::random_pes(rng, 5, "P");
    const Pes q = testing::random_pes(rng, 5, "Q");
    const Pes r = testing::rename_events(rng, q);
    const auto cp = enumerate_configurations(p);
    const auto cq = enumerate_configurations(q);
    for (EventSet x : cp) {
      for (EventSet y : cq) {
        for (bool erase : {false, true}) {
          const bool iso = pomset_isomorphic({&p, x}, {&q, y}, erase);
          CHECK(iso == testing::brute_iso(p, x, q, y, erase));
          CHECK(iso == pomset_isomorphic({&q, y}, {&p, x}, erase));
          const MapMode mode = erase ? MapMode::Weak : MapMode::Strong;
          const auto maps = enumerate_isomorphisms(p, x, q, y, mode);
          CHECK(maps.empty() != iso);
          CHECK(maps.size() == (erase ? testing::brute_weak_maps(p, x, q, y) : testing::brute_isos(p, x, q, y, false)).size());
          for (const auto& t : maps) CHECK(is_valid_triple(p, q, t));
        }
      }
    }
    // Transitivity through a renamed copy of q.
    for (EventSet x : cp) {
      for (EventSet y : cq) {
        if (!pomset_isomorphic({&p, x}, {&q, y}, false)) continue;
        for (EventSet z : enumerate_configurations(r)) {
          if (pomset_isomorphic({&q, y}, {&r, z}, false)) CHECK(pomset_isomorphic({&p, x}, {&r, z}, false));
        }
      }
    }
  }
}

TEST_CASE("extend_map agrees with enumeration of the enlarged configurations") {
  std::mt19937 rng(5);
  for (int round = 0; round < 120; ++round) {
    const Pes p = testing::random_pes(rng, 4, "P");
    const Pes q = round % 2 ? testing::add_silent_events(rng, p) : testing::random_pes(rng, 4, "Q");
    for (MapMode mode : {MapMode::Strong, MapMode::Weak}) {
      for (EventSet c1 : enumerate_configurations(p)) {
        for (EventSet c2 : enumerate_configurations(q)) {
          for (const PosetalTriple& f : enumerate_isomorphisms(p, c1, q, c2, mode)) {
            for (EventId e1 : p.enabled(c1)) {
              for (EventId e2 : q.enabled(c2)) {
                const auto r = extend_map(p, q, f, e1, e2);
                const auto all = enumerate_isomorphisms(p, c1.with(e1), q, c2.with(e2), mode);
                std::vector<EventPair> pairs = f.pairs;
                pairs.push_back({e1, e2});
                std::sort(pairs.begin(), pairs.end());
                const bool listed = std::any_of(all.begin(), all.end(), [&](const auto& t) { return t.pairs == pairs; });
                CHECK(std::holds_alternative<PosetalTriple>(r) == listed);
                if (const auto* t = std::get_if<PosetalTriple>(&r)) {
                  CHECK(is_valid_triple(p, q, *t));
                  CHECK(triple_leq(f, *t));
                }
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("pointwise containment is a partial order") {
  std::mt19937 rng(9);
  for (int round = 0; round < 60; ++round) {
    const Pes p = testing::random_pes(rng, 4, "P");
    const Pes q = testing::random_pes(rng, 4, "Q");
    std::vector<PosetalTriple> all;
    for (EventSet c1 : enumerate_configurations(p)) {
      for (EventSet c2 : enumerate_configurations(q)) {
        for (auto& t : enumerate_isomorphisms(p, c1, q, c2, MapMode::Strong)) all.push_back(std::move(t));
      }
    }
    for (const auto& a : all) {
      CHECK(triple_leq(a, a));
      for (const auto& b : all) {
        if (triple_leq(a, b) && triple_leq(b, a)) CHECK(a == b);
        for (const auto& c : all) {
          if (triple_leq(a, b) && triple_leq(b, c)) CHECK(triple_leq(a, c));
        }
      }
    }
  }
}

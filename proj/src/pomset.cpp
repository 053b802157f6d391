#include "pesgame/pomset.hpp"

#include <algorithm>
#include <map>

namespace pesgame {

namespace {

// Backtracking over label-respecting bijections dom -> cod. `emit` receives
// each complete assignment and returns false to stop the search.
class BijectionSearch {
 public:
  BijectionSearch(const Pes& p1, EventSet dom, const Pes& p2, EventSet cod)
      : p1_(p1), p2_(p2), dom_(dom.begin(), dom.end()), cod_(cod.begin(), cod.end()) {}

  template <class Emit>
  void run(Emit&& emit) {
    if (dom_.size() != cod_.size()) return;
    if (!same_label_multiset()) return;
    image_.assign(dom_.size(), 0);
    used_.assign(cod_.size(), false);
    stop_ = false;
    descend(0, emit);
  }

 private:
  bool same_label_multiset() const {
    std::map<std::string, int> count;
    for (EventId e : dom_) ++count[p1_.label(e).name];
    for (EventId e : cod_) {
      if (--count[p2_.label(e).name] < 0) return false;
    }
    return true;
  }

  template <class Emit>
  void descend(std::size_t i, Emit& emit) {
    if (stop_) return;
    if (i == dom_.size()) {
      std::vector<EventPair> pairs;
      pairs.reserve(dom_.size());
      for (std::size_t k = 0; k < dom_.size(); ++k) pairs.emplace_back(dom_[k], image_[k]);
      if (!emit(pairs)) stop_ = true;
      return;
    }
    const EventId d = dom_[i];
    for (std::size_t j = 0; j < cod_.size(); ++j) {
      if (used_[j]) continue;
      const EventId t = cod_[j];
      if (p1_.label(d).name != p2_.label(t).name) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        ok = p1_.leq(dom_[k], d) == p2_.leq(image_[k], t) && p1_.leq(d, dom_[k]) == p2_.leq(t, image_[k]);
      }
      if (!ok) continue;
      used_[j] = true;
      image_[i] = t;
      descend(i + 1, emit);
      used_[j] = false;
      if (stop_) return;
    }
  }

  const Pes& p1_;
  const Pes& p2_;
  std::vector<EventId> dom_;
  std::vector<EventId> cod_;
  std::vector<EventId> image_;
  std::vector<bool> used_;
  bool stop_ = false;
};

bool order_compatible(const Pes& p1, const Pes& p2, const std::vector<EventPair>& pairs, EventId e1, EventId e2) {
  for (const auto& [d1, d2] : pairs) {
    if (p1.leq(d1, e1) != p2.leq(d2, e2) || p1.leq(e1, d1) != p2.leq(e2, d2)) return false;
  }
  return true;
}

}  // namespace

bool pomset_isomorphic(const Pomset& x1, const Pomset& x2, bool erase_tau) {
  const EventSet a = erase_tau ? x1.owner->visible(x1.events) : x1.events;
  const EventSet b = erase_tau ? x2.owner->visible(x2.events) : x2.events;
  bool found = false;
  BijectionSearch(*x1.owner, a, *x2.owner, b).run([&](const std::vector<EventPair>&) {
    found = true;
    return false;
  });
  return found;
}

bool IsoCache::isomorphic(EventSet x1, EventSet x2, bool erase_tau) {
  const std::uint64_t key = (std::uint64_t{x1.bits()} << 32) | x2.bits();
  auto& memo = memo_[erase_tau ? 1 : 0];
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const bool r = pomset_isomorphic({p1_, x1}, {p2_, x2}, erase_tau);
  memo.emplace(key, r);
  return r;
}

int PosetalTriple::image_of(EventId e1) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), EventPair{e1, 0});
  return (it != pairs.end() && it->first == e1) ? it->second : -1;
}

int PosetalTriple::preimage_of(EventId e2) const {
  for (const auto& [a, b] : pairs) {
    if (b == e2) return a;
  }
  return -1;
}

std::size_t TripleHash::operator()(const PosetalTriple& t) const noexcept {
  std::size_t h = (std::size_t{t.left.bits()} << 32) ^ t.right.bits();
  h ^= static_cast<std::size_t>(t.mode) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  for (const auto& [a, b] : t.pairs) {
    h ^= (std::size_t{a} << 8 | b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<PosetalTriple> enumerate_isomorphisms(const Pes& p1, EventSet c1, const Pes& p2, EventSet c2,
                                                  MapMode mode) {
  std::vector<PosetalTriple> out;
  auto collect = [&](EventSet dom, EventSet cod) {
    BijectionSearch(p1, dom, p2, cod).run([&](const std::vector<EventPair>& pairs) {
      out.push_back(PosetalTriple{c1, c2, mode, pairs});
      return true;
    });
  };
  if (mode == MapMode::Strong) {
    collect(c1, c2);
  } else {
    // Every visible event is mapped; silent events may be paired among
    // themselves or left out.
    const EventSet t1 = p1.tau_events() & c1;
    const EventSet t2 = p2.tau_events() & c2;
    auto with_subsets = [&](EventSet s1, EventSet s2) {
      if (s1.size() == s2.size()) collect(p1.visible(c1) | s1, p2.visible(c2) | s2);
    };
    with_subsets(EventSet(), EventSet());
    for_each_nonempty_subset(t1, [&](EventSet s1) {
      for_each_nonempty_subset(t2, [&](EventSet s2) { with_subsets(s1, s2); });
    });
  }
  std::sort(out.begin(), out.end(), [](const PosetalTriple& a, const PosetalTriple& b) { return a.pairs < b.pairs; });
  return out;
}

ExtendResult extend_map(const Pes& p1, const Pes& p2, const PosetalTriple& f, EventId e1, EventId e2) {
  if (e1 >= p1.size() || e2 >= p2.size() || f.left.contains(e1) || f.right.contains(e2) ||
      !p1.enabled(f.left).contains(e1) || !p2.enabled(f.right).contains(e2)) {
    return ExtendFailure::Precondition;
  }
  if (p1.label(e1).name != p2.label(e2).name) return ExtendFailure::LabelMismatch;
  PosetalTriple g = f;
  g.left = f.left.with(e1);
  g.right = f.right.with(e2);
  if (!order_compatible(p1, p2, f.pairs, e1, e2)) return ExtendFailure::OrderViolation;
  g.pairs.insert(std::lower_bound(g.pairs.begin(), g.pairs.end(), EventPair{e1, e2}), EventPair{e1, e2});
  return g;
}

ExtendResult absorb_silent(const Pes& p1, const Pes& p2, const PosetalTriple& f, Side side, EventId e) {
  const Pes& p = side == Side::Left ? p1 : p2;
  const EventSet c = side == Side::Left ? f.left : f.right;
  if (f.mode != MapMode::Weak || e >= p.size() || !p.enabled(c).contains(e)) return ExtendFailure::Precondition;
  if (!p.is_tau(e)) return ExtendFailure::LabelMismatch;
  PosetalTriple g = f;
  (side == Side::Left ? g.left : g.right) = c.with(e);
  return g;
}

bool triple_leq(const PosetalTriple& t1, const PosetalTriple& t2) {
  if (!t1.left.subset_of(t2.left) || !t1.right.subset_of(t2.right)) return false;
  return std::includes(t2.pairs.begin(), t2.pairs.end(), t1.pairs.begin(), t1.pairs.end());
}

bool is_restriction(const PosetalTriple& t1, const PosetalTriple& t2) {
  if (!triple_leq(t1, t2)) return false;
  for (const auto& [a, b] : t2.pairs) {
    if (t1.left.contains(a) != t1.right.contains(b)) return false;
    if (t1.left.contains(a) && !std::binary_search(t1.pairs.begin(), t1.pairs.end(), EventPair{a, b})) return false;
  }
  return true;
}

bool is_valid_triple(const Pes& p1, const Pes& p2, const PosetalTriple& t) {
  if (!p1.is_configuration(t.left) || !p2.is_configuration(t.right)) return false;
  if (!std::is_sorted(t.pairs.begin(), t.pairs.end())) return false;
  EventSet seen1;
  EventSet seen2;
  for (const auto& [a, b] : t.pairs) {
    if (!t.left.contains(a) || !t.right.contains(b)) return false;
    if (seen1.contains(a) || seen2.contains(b)) return false;
    seen1 = seen1.with(a);
    seen2 = seen2.with(b);
    if (p1.label(a).name != p2.label(b).name) return false;
  }
  if (t.mode == MapMode::Strong && (seen1 != t.left || seen2 != t.right)) return false;
  if (!p1.visible(t.left).subset_of(seen1) || !p2.visible(t.right).subset_of(seen2)) return false;
  for (const auto& [a, b] : t.pairs) {
    if (!order_compatible(p1, p2, t.pairs, a, b)) return false;
  }
  return true;
}

}  // namespace pesgame

#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <iterator>

namespace pesgame {

using EventId = std::uint8_t;

/// Hard upper bound on events per structure; the configurable cap is
/// usually much lower.
inline constexpr int kMaxEventsHard = 32;

/// A finite set of events of one PES, stored as a bitmask indexed by
/// declaration order. Configurations, pomsets and steps are all EventSets.
class EventSet {
 public:
  constexpr EventSet() = default;
  constexpr explicit EventSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr EventSet single(EventId e) { return EventSet(std::uint32_t{1} << e); }
  static constexpr EventSet first_n(int n) {
    return EventSet(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(EventId e) const { return (bits_ >> e) & 1U; }
  constexpr bool subset_of(EventSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(EventSet other) const { return (bits_ & other.bits_) == 0; }

  constexpr EventSet with(EventId e) const { return EventSet(bits_ | (std::uint32_t{1} << e)); }
  constexpr EventSet without(EventId e) const { return EventSet(bits_ & ~(std::uint32_t{1} << e)); }

  constexpr EventSet operator|(EventSet o) const { return EventSet(bits_ | o.bits_); }
  constexpr EventSet operator&(EventSet o) const { return EventSet(bits_ & o.bits_); }
  constexpr EventSet operator-(EventSet o) const { return EventSet(bits_ & ~o.bits_); }
  constexpr EventSet& operator|=(EventSet o) { bits_ |= o.bits_; return *this; }
  constexpr EventSet& operator&=(EventSet o) { bits_ &= o.bits_; return *this; }

  constexpr auto operator<=>(const EventSet&) const = default;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = EventId;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = EventId;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr EventId operator*() const { return static_cast<EventId>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { auto old = *this; ++*this; return old; }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint32_t rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

 private:
  std::uint32_t bits_ = 0;
};

/// Calls fn on every non-empty subset of `universe`, in increasing bitmask order.
template <class Fn>
void for_each_nonempty_subset(EventSet universe, Fn&& fn) {
  const std::uint32_t u = universe.bits();
  // Enumerate submasks in increasing numeric order.
  std::uint32_t sub = 0;
  while (true) {
    sub = (sub - u) & u;
    if (sub == 0) break;
    fn(EventSet(sub));
  }
}

}  // namespace pesgame

template <>
struct std::hash<pesgame::EventSet> {
  std::size_t operator()(pesgame::EventSet s) const noexcept { return std::hash<std::uint32_t>{}(s.bits()); }
};

#pragma once

#include <string>

#include "pesgame/game.hpp"
#include "pesgame/pes.hpp"

namespace pesgame {

/// Configuration graph of p: one node per configuration, one edge per
/// pomset transition labelled with its event set.
std::string configurations_dot(const Pes& p, const Caps& caps = {});

/// Arena as a digraph: Spoiler positions are boxes, Duplicator positions
/// diamonds; fill colour is the winner (blue Duplicator, red Spoiler).
std::string arena_dot(const Arena& a, const Solution& s);

}  // namespace pesgame

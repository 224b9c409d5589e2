#pragma once

// Example automata shared by the tests.

#include <random>
#include <string>
#include <vector>

#include "hda/hda.hh"
#include "hda/ipomset.hh"
#include "hda/path.hh"
#include "hda/st.hh"

namespace fixture {

using hda::Hda;

/// Reads data/<name>.hda.json.
Hda load(const std::string& name);

/// Square a||b with two start cells (a vertex and a b-edge) and three accept cells.
Hda square_two_starts();
/// Square a||b plus an extra b-then-c route on the right.
Hda square_with_detour();
/// Deterministic one-letter HDA with nine vertices and three squares.
Hda one_letter_chain();
/// Two 3x2 grids: a then b alongside c, once with c below and once with c above.
Hda two_grids();
/// Bricks (a||b)cd and ab(c||d) from v0 to v1 and looping on v1.
Hda bricks();
/// Single square a||b from corner to corner.
Hda square();
/// Two disjoint copies of square().
Hda square_twice();
/// One vertex with a loop for each letter; everything is start and accept.
Hda universal_width_one(const std::vector<std::string>& letters);
/// Copy with no start cells.
Hda without_start(const Hda& x);
/// Copy with no accept cells.
Hda without_accept(const Hda& x);

hda::Ipomset ip(const std::string& text);

/// Random valid HDA: a few vertices, random edges, squares where four edges close up,
/// random start and accept cells. At most max_cells cells.
Hda random_hda(std::mt19937& rng, const std::vector<std::string>& letters, std::size_t max_cells);

/// Random ST-automaton with conclist labels of width at most k.
hda::StAutomaton random_st(std::mt19937& rng, const std::vector<std::string>& letters, std::size_t states,
                           std::size_t k);

/// Random legal path from a random cell with up to `moves` moves, some of them empty.
hda::Path random_path(std::mt19937& rng, const Hda& x, std::size_t moves);

} // namespace fixture

#pragma once

// Naive reference procedures for HDAs and ST-automata. They use only the
// elementary faces of an Hda and the transition list of an StAutomaton.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hda/hda.hh"
#include "hda/ipomset.hh"
#include "hda/st.hh"

namespace oracle {

/// Composite face computed by removing positions in ascending order.
hda::CellId face_ascending(const hda::Hda& x, hda::CellId c, int nu, std::vector<std::size_t> positions);

/// Keys of ev(alpha) over all accepting paths with at most max_moves nonempty moves.
std::set<std::string> accepted_keys(const hda::Hda& x, std::size_t max_moves);

/// P is the event ipomset of some accepting path, searched up to the length of
/// its sparse decomposition.
bool hda_member(const hda::Hda& x, const hda::Ipomset& p);

/// Number of accepting paths with ev = p whose moves alternate direction and are nonempty.
std::size_t count_alternating_paths(const hda::Hda& x, const hda::Ipomset& p);

/// ev keys of paths from a start cell that visit no cell twice, with their end cells.
std::map<std::string, std::set<hda::CellId>> simple_path_evs(const hda::Hda& x);

/// Printed labels of every accepting path with at most max_transitions transitions.
std::set<std::string> st_words(const hda::StAutomaton& a, std::size_t max_transitions);

/// Word acceptance by exploring every path.
bool st_accepts(const hda::StAutomaton& a, const hda::StepWord& w);

/// Alternation of identities and steps with matching interfaces, checked letter by letter.
bool coherent(const hda::StepWord& w);

/// Coherent words of width at most k with at most max_steps non-identity steps.
std::vector<hda::StepWord> coherent_words(const std::vector<std::string>& letters, std::size_t k,
                                          std::size_t max_steps);

} // namespace oracle

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hda/hda.hh"
#include "hda/ipomset.hh"
#include "hda/st.hh"

namespace hda {

/// A regular language given by an HDA, with its ST-automaton built once.
class Language {
public:
    explicit Language(Hda x);

    const Hda& hda() const { return hda_; }
    const StAutomaton& st() const { return st_; }

private:
    Hda hda_;
    StAutomaton st_;
};

bool member(const Language& l, const Ipomset& p);

struct InclusionVerdict {
    bool holds = true;
    /// An ipomset in the left language and not in the right one.
    std::optional<Ipomset> counterexample;
};

InclusionVerdict include(const Language& l1, const Language& l2);

struct EquivalenceVerdict {
    bool holds = true;
    std::optional<Ipomset> counterexample;
    /// True when the counterexample lies in the first language.
    bool in_first = false;
};

EquivalenceVerdict equivalent(const Language& l1, const Language& l2);

struct EmptinessVerdict {
    bool empty = true;
    std::optional<Ipomset> witness;
};

EmptinessVerdict empty(const Language& l);

/// The product HDA.
Language intersect(const Language& l1, const Language& l2);

using Membership = std::function<bool(const Ipomset&)>;

/// A width-k ipomset above P outside L, if any. Throws WidthExceeded.
std::optional<Ipomset> complement_witness(const Membership& in_l, std::size_t k, const Ipomset& p);

/// P lies in the down-closure of the width-k ipomsets outside L. Throws WidthExceeded.
bool complement_member(const Language& l, std::size_t k, const Ipomset& p);
/// Same, for a language given only by its membership test.
bool complement_member(const Membership& in_l, std::size_t k, const Ipomset& p);

/// Emptiness of the width-k complement; the witness is an ipomset of width at most k outside L.
EmptinessVerdict complement_empty(const Language& l, std::size_t k);

struct PreEntry {
    Ipomset ipomset;
    std::vector<CellId> targets;
};

/// Event ipomsets of paths from a start cell that never revisit a cell, with the
/// end cells of such sparse paths. Ordered by interface size, then size, then key.
std::vector<PreEntry> pre_set(const Language& l);

/// The same HDA started from the end cells of sparse paths from a start cell with event ipomset p.
Language prefix_quotient(const Language& l, const Ipomset& p);

struct LanguageDeterminism {
    bool deterministic = true;
    /// P below Q in Pre with different nonempty quotients.
    std::optional<std::pair<Ipomset, Ipomset>> pair;
    /// An ipomset in exactly one of the two quotients.
    std::optional<Ipomset> separator;
    bool separator_in_first = false;
};

LanguageDeterminism is_deterministic_language(const Language& l);

} // namespace hda

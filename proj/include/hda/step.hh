#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hda {

using Label = std::string;

/// Labels of concurrently active events, top to bottom in event order.
using Conclist = std::vector<Label>;

std::string to_string(const Conclist& u);

/// Finite ordered set of labels.
class Alphabet {
public:
    Alphabet() = default;
    /// Throws hda::Error on an empty list or duplicates.
    explicit Alphabet(std::vector<Label> symbols);

    const std::vector<Label>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool contains(const Label& l) const;

    /// Symbols of this alphabet followed by the new symbols of the other one.
    Alphabet merged(const Alphabet& other) const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<Label> symbols_;
};

bool is_label(std::string_view s);

enum class StepKind { identity, starter, terminator };

/// A starter, terminator or identity over a conclist U with marked positions A.
/// The identity is the canonical representative of the empty starter/terminator.
struct Step {
    StepKind kind = StepKind::identity;
    Conclist conclist;
    std::vector<bool> marked;

    static Step identity(Conclist u);
    /// Falls back to the identity when nothing is marked.
    static Step starter(Conclist u, std::vector<bool> marked);
    static Step terminator(Conclist u, std::vector<bool> marked);

    bool is_identity() const { return kind == StepKind::identity; }
    std::size_t width() const { return conclist.size(); }
    std::size_t marked_count() const;
    std::vector<std::size_t> marked_positions() const;

    Conclist source() const;
    Conclist target() const;

    auto operator<=>(const Step&) const = default;
    bool operator==(const Step&) const = default;
};

using StepWord = std::vector<Step>;

/// Bracket syntax: `[a+ b]`, `[a- b]`, `[a b]`.
std::string to_string(const Step& s);
std::string to_string(const StepWord& w);

/// Parses brackets into steps without checking composability.
/// Throws SyntaxError.
StepWord parse_step_word(std::string_view text);

/// Non-identity steps alternate, identities only as a lone single step.
bool is_sparse(const StepWord& w);

/// Throws InterfaceMismatch naming the first step whose source differs from
/// the previous target.
void check_composable(const StepWord& w);

/// Drops identities and merges adjacent steps of the same kind.
/// An all-identity word becomes a single identity. Throws InterfaceMismatch.
StepWord merge_steps(const StepWord& w);

/// Coherent word: identities interleaved around the steps of a word without identities.
StepWord coherent_word(const StepWord& sparse);

} // namespace hda

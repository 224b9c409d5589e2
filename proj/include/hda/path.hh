#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hda/hda.hh"
#include "hda/ipomset.hh"

namespace hda {

enum class Direction { up, down };

/// Up(A): A are positions of the cell moved to. Down(A): positions of the cell moved from.
struct Move {
    Direction direction;
    std::vector<std::size_t> positions;

    bool operator==(const Move&) const = default;
};

/// cells[i] --moves[i]--> cells[i+1].
struct Path {
    std::vector<CellId> cells;
    std::vector<Move> moves;

    CellId source() const { return cells.front(); }
    CellId target() const { return cells.back(); }
    bool operator==(const Path&) const = default;
};

/// Throws IllegalMove naming the first bad move.
void check_path(const Hda& x, const Path& p);

/// The step each move contributes, preceded by the identity of the origin.
StepWord path_steps(const Hda& x, const Path& p);

/// Event ipomset. Throws IllegalMove.
Ipomset ev_path(const Hda& x, const Path& p);

/// Drops empty moves and merges runs of moves in the same direction.
Path sparsify(const Hda& x, const Path& p);
bool is_sparse_path(const Path& p);

/// Non-identity steps leaving a cell, each with the cell it leads to.
/// Starters first, then terminators, each group sorted.
std::vector<std::pair<Step, CellId>> outgoing_steps(const Hda& x, CellId c);

/// Cells reached from c by one step (identities stay put when the type matches).
std::vector<CellId> successors(const Hda& x, CellId c, const Step& s);

/// Cells reachable from `from` by a path whose steps are w, in order.
std::vector<CellId> run_word(const Hda& x, const std::vector<CellId>& from, const StepWord& w);

/// Start cells whose type is u.
std::vector<CellId> start_cells_of_type(const Hda& x, const Conclist& u);

/// Cells on some accepting path, sorted.
std::vector<CellId> essential_cells(const Hda& x);

struct StructuralViolation {
    enum class Kind { start_cells_share_type, ambiguous_upstep };
    Kind kind;
    CellId base;                ///< the shared lower face (ambiguous_upstep only)
    std::vector<std::size_t> positions;
    std::vector<CellId> cells;  ///< the competing cells
};

struct StructuralDeterminism {
    bool deterministic = true;
    std::vector<StructuralViolation> violations;
};

/// At most one start cell per type, and for every essential x at most one y
/// of each type with a given lower face x.
StructuralDeterminism is_deterministic_hda(const Hda& x);

std::string describe(const Hda& x, const StructuralViolation& v);

/// Number of sparse accepting paths whose event ipomset is p. Throws Error on overflow.
std::uint64_t count_sparse_accepting_paths(const Hda& x, const Ipomset& p);

/// An accepting path through x_0 ... x_n matching the pieces, and a repeat x_i = x_j.
struct PumpWitness {
    std::size_t i = 0, j = 0;
    std::vector<CellId> cells;
    /// pumped[r-1] repeats pieces i+1..j r times; accepted[r-1] is its membership.
    std::vector<Ipomset> pumped;
    std::vector<bool> accepted;

    bool all_accepted() const;
};

/// The pieces are glued in order. Requires n > |cells| and m <= n - |cells| - 1.
/// Throws NotAccepted, DecompositionTooShort, InterfaceMismatch.
PumpWitness pump(const Hda& x, const std::vector<Ipomset>& pieces, std::size_t m, std::size_t r_max);

/// Pieces i+1..j (1-based) repeated r times between the rest.
Ipomset pumped_ipomset(const std::vector<Ipomset>& pieces, std::size_t i, std::size_t j, std::size_t r);

/// Event ipomsets of accepting paths with at most max_steps non-identity steps,
/// sorted and deduplicated. Every accepted ipomset whose sparse decomposition
/// has at most max_steps steps appears.
std::vector<Ipomset> language_up_to(const Hda& x, std::size_t max_steps);

} // namespace hda

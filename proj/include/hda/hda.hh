#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hda/error.hh"
#include "hda/step.hh"

namespace hda {

using CellId = std::size_t;

/// One cell as written in a file; faces are cell names.
struct RawCell {
    std::string id;
    Conclist events;
    std::vector<std::string> d0;
    std::vector<std::string> d1;
};

struct RawHda {
    std::vector<Label> alphabet;
    std::vector<RawCell> cells;
    std::vector<std::string> start;
    std::vector<std::string> accept;
};

enum class HdaViolationKind {
    malformed,  ///< empty/duplicate alphabet, duplicate cell ids, labels outside the alphabet
    face_arity_mismatch,
    face_label_mismatch,
    precubical_identity_violation,
    dangling_reference,
};

std::string_view to_string(HdaViolationKind k);

struct HdaViolation {
    HdaViolationKind kind;
    std::vector<std::string> cells;
    std::vector<std::size_t> positions;
    std::string message;
};

std::vector<HdaViolation> validate_hda(const RawHda& raw);

class InvalidHda : public Error {
public:
    explicit InvalidHda(std::vector<HdaViolation> v);
    const std::vector<HdaViolation>& violations() const { return violations_; }

private:
    std::vector<HdaViolation> violations_;
};

/// An upstep target: a cell y together with the positions A of ev(y) such
/// that the lower face of y at A is the cell the upstep starts from.
struct Coface {
    CellId cell;
    std::vector<std::size_t> positions;
};

/// Finite HDA. Cells are numbered in file order.
class Hda {
public:
    Hda() = default;
    /// Throws InvalidHda.
    explicit Hda(const RawHda& raw);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t cell_count() const { return cells_.size(); }
    std::size_t dim() const { return dim_; }

    const std::string& name(CellId c) const { return cells_[c].name; }
    const Conclist& events(CellId c) const { return cells_[c].events; }
    std::size_t cell_dim(CellId c) const { return cells_[c].events.size(); }
    /// Elementary faces, indexed by event position.
    CellId lower(CellId c, std::size_t i) const { return cells_[c].d0[i]; }
    CellId upper(CellId c, std::size_t i) const { return cells_[c].d1[i]; }

    std::optional<CellId> find(std::string_view name) const;
    /// Throws Error for unknown names.
    CellId at(std::string_view name) const;

    bool is_start(CellId c) const { return start_[c]; }
    bool is_accept(CellId c) const { return accept_[c]; }
    std::vector<CellId> start_cells() const;
    std::vector<CellId> accept_cells() const;

    /// Every (y, A), A nonempty, whose lower face at A is c; sorted.
    const std::vector<Coface>& cofaces(CellId c) const { return cofaces_[c]; }

    RawHda raw() const;

private:
    struct Cell {
        std::string name;
        Conclist events;
        std::vector<CellId> d0, d1;
    };

    void index();

    Alphabet alphabet_;
    std::vector<Cell> cells_;
    std::vector<bool> start_, accept_;
    std::unordered_map<std::string, CellId> by_name_;
    std::vector<std::vector<Coface>> cofaces_;
    std::size_t dim_ = 0;
};

/// Composite face at a set of positions (any order, duplicates rejected).
/// nu is 0 for lower and 1 for upper. Throws PositionOutOfRange.
CellId face(const Hda& x, CellId c, int nu, const std::vector<std::size_t>& positions);

/// Cells of dimension at most k.
Hda skeleton(const Hda& x, std::size_t k);

/// Pairs of cells with equal event lists; faces componentwise.
/// The alphabet is the union of both alphabets.
Hda product(const Hda& x1, const Hda& x2);

/// The 0/1 masks of a position list over a conclist of the given length.
std::vector<bool> position_mask(std::size_t length, const std::vector<std::size_t>& positions);

} // namespace hda

#include "hda/hda.hh"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace hda {

std::string_view to_string(HdaViolationKind k) {
    switch (k) {
        case HdaViolationKind::malformed: return "Malformed";
        case HdaViolationKind::face_arity_mismatch: return "FaceArityMismatch";
        case HdaViolationKind::face_label_mismatch: return "FaceLabelMismatch";
        case HdaViolationKind::precubical_identity_violation: return "PrecubicalIdentityViolation";
        case HdaViolationKind::dangling_reference: return "DanglingReference";
    }
    return "?";
}

namespace {

std::string describe(const std::vector<HdaViolation>& v) {
    std::string out = "invalid HDA";
    for (const auto& x : v) {
        out += "; ";
        out += to_string(x.kind);
        out += ": ";
        out += x.message;
    }
    return out;
}

Conclist without(const Conclist& u, std::size_t i) {
    Conclist r = u;
    r.erase(r.begin() + static_cast<long>(i));
    return r;
}

} // namespace

InvalidHda::InvalidHda(std::vector<HdaViolation> v) : Error(describe(v)), violations_(std::move(v)) {}

std::vector<HdaViolation> validate_hda(const RawHda& raw) {
    std::vector<HdaViolation> out;
    auto report = [&](HdaViolationKind k, std::vector<std::string> cells, std::vector<std::size_t> pos,
                      std::string msg) { out.push_back({k, std::move(cells), std::move(pos), std::move(msg)}); };

    std::set<Label> sigma;
    try {
        Alphabet a(raw.alphabet);
        sigma.insert(a.symbols().begin(), a.symbols().end());
    } catch (const Error& e) {
        report(HdaViolationKind::malformed, {}, {}, std::string("alphabet: ") + e.what());
        sigma.insert(raw.alphabet.begin(), raw.alphabet.end());
    }

    std::map<std::string, std::size_t> index;
    for (std::size_t c = 0; c < raw.cells.size(); ++c) {
        const auto& cell = raw.cells[c];
        if (cell.id.empty()) report(HdaViolationKind::malformed, {}, {}, "cell " + std::to_string(c) + " has no id");
        if (!index.emplace(cell.id, c).second)
            report(HdaViolationKind::malformed, {cell.id}, {}, "duplicate cell id " + cell.id);
    }
    auto lookup = [&](const std::string& id) -> const RawCell* {
        auto it = index.find(id);
        return it == index.end() ? nullptr : &raw.cells[it->second];
    };

    // A cell is sound when its own faces can be followed safely.
    std::map<std::string, bool> sound;
    for (const auto& cell : raw.cells) {
        bool ok = true;
        for (std::size_t i = 0; i < cell.events.size(); ++i)
            if (!sigma.count(cell.events[i])) {
                report(HdaViolationKind::malformed, {cell.id}, {i},
                       "label " + cell.events[i] + " of cell " + cell.id + " is not in the alphabet");
            }
        for (int nu = 0; nu < 2; ++nu) {
            const auto& faces = nu == 0 ? cell.d0 : cell.d1;
            const char* field = nu == 0 ? "d0" : "d1";
            if (faces.size() != cell.events.size()) {
                report(HdaViolationKind::face_arity_mismatch, {cell.id}, {},
                       "cell " + cell.id + " has " + std::to_string(cell.events.size()) + " events but " +
                           std::to_string(faces.size()) + " " + field + " entries");
                ok = false;
                continue;
            }
            for (std::size_t i = 0; i < faces.size(); ++i) {
                const RawCell* f = lookup(faces[i]);
                if (!f) {
                    report(HdaViolationKind::dangling_reference, {cell.id, faces[i]}, {i},
                           std::string(field) + "[" + std::to_string(i) + "] of " + cell.id + " names undefined cell " +
                               faces[i]);
                    ok = false;
                    continue;
                }
                if (f->events != without(cell.events, i)) {
                    report(HdaViolationKind::face_label_mismatch, {cell.id, f->id}, {i},
                           std::string(field) + "[" + std::to_string(i) + "] of " + cell.id + " is " + f->id +
                               " of type " + to_string(f->events) + ", expected " +
                               to_string(without(cell.events, i)));
                    ok = false;
                }
            }
        }
        sound[cell.id] = ok;
    }

    for (const auto* list : {&raw.start, &raw.accept})
        for (const auto& id : *list)
            if (!lookup(id))
                report(HdaViolationKind::dangling_reference, {id}, {},
                       std::string(list == &raw.start ? "start" : "accept") + " names undefined cell " + id);

    auto elementary = [&](const RawCell& c, int nu, std::size_t i) -> const RawCell* {
        return lookup(nu == 0 ? c.d0[i] : c.d1[i]);
    };
    for (const auto& cell : raw.cells) {
        if (!sound[cell.id]) continue;
        const std::size_t n = cell.events.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (int nu = 0; nu < 2; ++nu)
                    for (int mu = 0; mu < 2; ++mu) {
                        const RawCell* a = elementary(cell, mu, j);
                        const RawCell* b = elementary(cell, nu, i);
                        if (!sound[a->id] || !sound[b->id]) continue;
                        const RawCell* lhs = elementary(*a, nu, i);
                        const RawCell* rhs = elementary(*b, mu, j - 1);
                        if (lhs != rhs)
                            report(HdaViolationKind::precubical_identity_violation, {cell.id, lhs->id, rhs->id},
                                   {i, j},
                                   "cell " + cell.id + ": d" + std::to_string(nu) + "[" + std::to_string(i) + "] d" +
                                       std::to_string(mu) + "[" + std::to_string(j) + "] is " + lhs->id + " but d" +
                                       std::to_string(mu) + "[" + std::to_string(j - 1) + "] d" +
                                       std::to_string(nu) + "[" + std::to_string(i) + "] is " + rhs->id);
                    }
    }
    return out;
}

Hda::Hda(const RawHda& raw) {
    auto v = validate_hda(raw);
    if (!v.empty()) throw InvalidHda(std::move(v));
    alphabet_ = Alphabet(raw.alphabet);
    for (CellId c = 0; c < raw.cells.size(); ++c) by_name_.emplace(raw.cells[c].id, c);
    cells_.reserve(raw.cells.size());
    for (const auto& rc : raw.cells) {
        Cell c{rc.id, rc.events, {}, {}};
        for (const auto& f : rc.d0) c.d0.push_back(by_name_.at(f));
        for (const auto& f : rc.d1) c.d1.push_back(by_name_.at(f));
        dim_ = std::max(dim_, c.events.size());
        cells_.push_back(std::move(c));
    }
    start_.assign(cells_.size(), false);
    accept_.assign(cells_.size(), false);
    for (const auto& id : raw.start) start_[by_name_.at(id)] = true;
    for (const auto& id : raw.accept) accept_[by_name_.at(id)] = true;
    index();
}

void Hda::index() {
    if (dim_ > 20) throw Error("HDA dimension " + std::to_string(dim_) + " is too large");
    cofaces_.assign(cells_.size(), {});
    for (CellId y = 0; y < cells_.size(); ++y) {
        const std::size_t n = cells_[y].events.size();
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<std::size_t> a;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1u) a.push_back(i);
            CellId x = face(*this, y, 0, a);
            cofaces_[x].push_back({y, std::move(a)});
        }
    }
    for (auto& list : cofaces_)
        std::sort(list.begin(), list.end(), [](const Coface& a, const Coface& b) {
            return std::tie(a.cell, a.positions) < std::tie(b.cell, b.positions);
        });
}

std::optional<CellId> Hda::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

CellId Hda::at(std::string_view name) const {
    auto c = find(name);
    if (!c) throw Error("unknown cell " + std::string(name));
    return *c;
}

std::vector<CellId> Hda::start_cells() const {
    std::vector<CellId> out;
    for (CellId c = 0; c < cells_.size(); ++c)
        if (start_[c]) out.push_back(c);
    return out;
}

std::vector<CellId> Hda::accept_cells() const {
    std::vector<CellId> out;
    for (CellId c = 0; c < cells_.size(); ++c)
        if (accept_[c]) out.push_back(c);
    return out;
}

RawHda Hda::raw() const {
    RawHda r;
    r.alphabet = alphabet_.symbols();
    for (const auto& c : cells_) {
        RawCell rc{c.name, c.events, {}, {}};
        for (CellId f : c.d0) rc.d0.push_back(cells_[f].name);
        for (CellId f : c.d1) rc.d1.push_back(cells_[f].name);
        r.cells.push_back(std::move(rc));
    }
    for (CellId c : start_cells()) r.start.push_back(cells_[c].name);
    for (CellId c : accept_cells()) r.accept.push_back(cells_[c].name);
    return r;
}

CellId face(const Hda& x, CellId c, int nu, const std::vector<std::size_t>& positions) {
    std::vector<std::size_t> a = positions;
    std::sort(a.begin(), a.end(), std::greater<>());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
        throw PositionOutOfRange("repeated position in face of " + x.name(c));
    for (std::size_t i : a) {
        if (i >= x.cell_dim(c))
            throw PositionOutOfRange("position " + std::to_string(i) + " out of range for cell " + x.name(c) +
                                     " of dimension " + std::to_string(x.cell_dim(c)));
    }
    // Highest position first, so the lower positions keep their meaning.
    for (std::size_t i : a) c = nu == 0 ? x.lower(c, i) : x.upper(c, i);
    return c;
}

Hda skeleton(const Hda& x, std::size_t k) {
    RawHda full = x.raw();
    RawHda r;
    r.alphabet = full.alphabet;
    std::set<std::string> kept;
    for (auto& c : full.cells)
        if (c.events.size() <= k) {
            kept.insert(c.id);
            r.cells.push_back(std::move(c));
        }
    for (auto& id : full.start)
        if (kept.count(id)) r.start.push_back(id);
    for (auto& id : full.accept)
        if (kept.count(id)) r.accept.push_back(id);
    return Hda(r);
}

Hda product(const Hda& x1, const Hda& x2) {
    const std::size_t n2 = x2.cell_count();
    std::vector<std::optional<std::string>> names(x1.cell_count() * n2);
    for (CellId a = 0; a < x1.cell_count(); ++a)
        for (CellId b = 0; b < n2; ++b)
            if (x1.events(a) == x2.events(b)) names[a * n2 + b] = "(" + x1.name(a) + "," + x2.name(b) + ")";

    RawHda r;
    r.alphabet = x1.alphabet().merged(x2.alphabet()).symbols();
    for (CellId a = 0; a < x1.cell_count(); ++a)
        for (CellId b = 0; b < n2; ++b) {
            if (!names[a * n2 + b]) continue;
            RawCell c{*names[a * n2 + b], x1.events(a), {}, {}};
            for (std::size_t i = 0; i < c.events.size(); ++i) {
                c.d0.push_back(*names[x1.lower(a, i) * n2 + x2.lower(b, i)]);
                c.d1.push_back(*names[x1.upper(a, i) * n2 + x2.upper(b, i)]);
            }
            if (x1.is_start(a) && x2.is_start(b)) r.start.push_back(c.id);
            if (x1.is_accept(a) && x2.is_accept(b)) r.accept.push_back(c.id);
            r.cells.push_back(std::move(c));
        }
    return Hda(r);
}

std::vector<bool> position_mask(std::size_t length, const std::vector<std::size_t>& positions) {
    std::vector<bool> m(length, false);
    for (std::size_t i : positions) {
        if (i >= length) throw PositionOutOfRange("position " + std::to_string(i) + " out of range");
        m[i] = true;
    }
    return m;
}

} // namespace hda

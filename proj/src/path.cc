#include "hda/path.hh"

#include <algorithm>
#include <map>
#include <set>

namespace hda {

namespace {

bool sorted_unique(const std::vector<std::size_t>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] >= v[i]) return false;
    return true;
}

std::vector<CellId> to_list(const std::vector<bool>& mask) {
    std::vector<CellId> out;
    for (CellId c = 0; c < mask.size(); ++c)
        if (mask[c]) out.push_back(c);
    return out;
}

bool accepted_by_simulation(const Hda& x, const Ipomset& p) {
    const StepWord& w = p.sparse_word();
    for (CellId c : run_word(x, start_cells_of_type(x, w.front().source()), w))
        if (x.is_accept(c)) return true;
    return false;
}

} // namespace

void check_path(const Hda& x, const Path& p) {
    if (p.cells.empty()) throw IllegalMove(0, "a path needs an origin cell");
    if (p.cells.size() != p.moves.size() + 1)
        throw IllegalMove(0, "a path with " + std::to_string(p.moves.size()) + " moves needs " +
                                 std::to_string(p.moves.size() + 1) + " cells");
    for (CellId c : p.cells)
        if (c >= x.cell_count()) throw IllegalMove(0, "cell index " + std::to_string(c) + " out of range");
    for (std::size_t i = 0; i < p.moves.size(); ++i) {
        const Move& mv = p.moves[i];
        const CellId from = p.cells[i], to = p.cells[i + 1];
        if (!sorted_unique(mv.positions)) throw IllegalMove(i, "positions must be increasing");
        if (mv.positions.empty()) {
            if (from != to) throw IllegalMove(i, "an empty move must stay at " + x.name(from));
            continue;
        }
        const CellId big = mv.direction == Direction::up ? to : from;
        const CellId small = mv.direction == Direction::up ? from : to;
        if (mv.positions.back() >= x.cell_dim(big))
            throw IllegalMove(i, "position out of range for " + x.name(big));
        if (face(x, big, mv.direction == Direction::up ? 0 : 1, mv.positions) != small)
            throw IllegalMove(i, std::string(mv.direction == Direction::up ? "lower" : "upper") + " face of " +
                                     x.name(big) + " is not " + x.name(small));
    }
}

StepWord path_steps(const Hda& x, const Path& p) {
    check_path(x, p);
    StepWord w{Step::identity(x.events(p.source()))};
    for (std::size_t i = 0; i < p.moves.size(); ++i) {
        const Move& mv = p.moves[i];
        if (mv.direction == Direction::up) {
            const Conclist& u = x.events(p.cells[i + 1]);
            w.push_back(Step::starter(u, position_mask(u.size(), mv.positions)));
        } else {
            const Conclist& u = x.events(p.cells[i]);
            w.push_back(Step::terminator(u, position_mask(u.size(), mv.positions)));
        }
    }
    return w;
}

Ipomset ev_path(const Hda& x, const Path& p) { return compose(path_steps(x, p)); }

Path sparsify(const Hda& x, const Path& p) {
    check_path(x, p);
    Path out{{p.source()}, {}};
    for (std::size_t i = 0; i < p.moves.size(); ++i) {
        const Move& mv = p.moves[i];
        if (mv.positions.empty()) continue;
        const CellId to = p.cells[i + 1];
        if (out.moves.empty() || out.moves.back().direction != mv.direction) {
            out.moves.push_back(mv);
            out.cells.push_back(to);
            continue;
        }
        Move& last = out.moves.back();
        std::vector<std::size_t> merged;
        if (mv.direction == Direction::up) {
            // Earlier positions refer to the middle cell; renumber them in `to`.
            std::vector<std::size_t> free;
            for (std::size_t k = 0; k < x.cell_dim(to); ++k)
                if (!std::binary_search(mv.positions.begin(), mv.positions.end(), k)) free.push_back(k);
            merged = mv.positions;
            for (std::size_t a : last.positions) merged.push_back(free[a]);
        } else {
            const CellId from = out.cells[out.cells.size() - 2];
            std::vector<std::size_t> free;
            for (std::size_t k = 0; k < x.cell_dim(from); ++k)
                if (!std::binary_search(last.positions.begin(), last.positions.end(), k)) free.push_back(k);
            merged = last.positions;
            for (std::size_t b : mv.positions) merged.push_back(free[b]);
        }
        std::sort(merged.begin(), merged.end());
        last.positions = std::move(merged);
        out.cells.back() = to;
    }
    return out;
}

bool is_sparse_path(const Path& p) {
    for (std::size_t i = 0; i < p.moves.size(); ++i) {
        if (p.moves[i].positions.empty()) return false;
        if (i > 0 && p.moves[i].direction == p.moves[i - 1].direction) return false;
    }
    return true;
}

std::vector<std::pair<Step, CellId>> outgoing_steps(const Hda& x, CellId c) {
    std::vector<std::pair<Step, CellId>> starters, terminators;
    for (const Coface& cf : x.cofaces(c)) {
        const Conclist& u = x.events(cf.cell);
        starters.emplace_back(Step::starter(u, position_mask(u.size(), cf.positions)), cf.cell);
    }
    const Conclist& u = x.events(c);
    for (std::uint32_t mask = 1; mask < (1u << u.size()); ++mask) {
        std::vector<std::size_t> a;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (mask >> i & 1u) a.push_back(i);
        terminators.emplace_back(Step::terminator(u, position_mask(u.size(), a)), face(x, c, 1, a));
    }
    std::sort(starters.begin(), starters.end());
    std::sort(terminators.begin(), terminators.end());
    starters.insert(starters.end(), terminators.begin(), terminators.end());
    return starters;
}

std::vector<CellId> successors(const Hda& x, CellId c, const Step& s) {
    switch (s.kind) {
        case StepKind::identity:
            if (x.events(c) == s.conclist) return {c};
            return {};
        case StepKind::terminator:
            if (x.events(c) != s.conclist) return {};
            return {face(x, c, 1, s.marked_positions())};
        case StepKind::starter: {
            std::vector<CellId> out;
            const auto a = s.marked_positions();
            for (const Coface& cf : x.cofaces(c))
                if (cf.positions == a && x.events(cf.cell) == s.conclist) out.push_back(cf.cell);
            return out;
        }
    }
    return {};
}

std::vector<CellId> run_word(const Hda& x, const std::vector<CellId>& from, const StepWord& w) {
    std::vector<CellId> current = from;
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
    for (const Step& s : w) {
        std::vector<bool> next(x.cell_count(), false);
        for (CellId c : current)
            for (CellId d : successors(x, c, s)) next[d] = true;
        current = to_list(next);
        if (current.empty()) break;
    }
    return current;
}

std::vector<CellId> start_cells_of_type(const Hda& x, const Conclist& u) {
    std::vector<CellId> out;
    for (CellId c : x.start_cells())
        if (x.events(c) == u) out.push_back(c);
    return out;
}

std::vector<CellId> essential_cells(const Hda& x) {
    const std::size_t n = x.cell_count();
    std::vector<std::vector<CellId>> fwd(n), bwd(n);
    for (CellId c = 0; c < n; ++c)
        for (std::size_t i = 0; i < x.cell_dim(c); ++i) {
            // upstep lower(c,i) -> c, downstep c -> upper(c,i)
            fwd[x.lower(c, i)].push_back(c);
            bwd[c].push_back(x.lower(c, i));
            fwd[c].push_back(x.upper(c, i));
            bwd[x.upper(c, i)].push_back(c);
        }
    auto reach = [n](const std::vector<CellId>& seeds, const std::vector<std::vector<CellId>>& adj) {
        std::vector<bool> seen(n, false);
        std::vector<CellId> stack = seeds;
        for (CellId s : seeds) seen[s] = true;
        while (!stack.empty()) {
            CellId c = stack.back();
            stack.pop_back();
            for (CellId d : adj[c])
                if (!seen[d]) {
                    seen[d] = true;
                    stack.push_back(d);
                }
        }
        return seen;
    };
    auto from_start = reach(x.start_cells(), fwd);
    auto to_accept = reach(x.accept_cells(), bwd);
    std::vector<CellId> out;
    for (CellId c = 0; c < n; ++c)
        if (from_start[c] && to_accept[c]) out.push_back(c);
    return out;
}

StructuralDeterminism is_deterministic_hda(const Hda& x) {
    StructuralDeterminism out;
    std::map<Conclist, std::vector<CellId>> starts;
    for (CellId c : x.start_cells()) starts[x.events(c)].push_back(c);
    for (auto& [u, cells] : starts)
        if (cells.size() > 1)
            out.violations.push_back({StructuralViolation::Kind::start_cells_share_type, 0, {}, cells});
    for (CellId c : essential_cells(x)) {
        std::map<std::pair<Conclist, std::vector<std::size_t>>, std::vector<CellId>> ups;
        for (const Coface& cf : x.cofaces(c)) ups[{x.events(cf.cell), cf.positions}].push_back(cf.cell);
        for (auto& [key, cells] : ups)
            if (cells.size() > 1)
                out.violations.push_back({StructuralViolation::Kind::ambiguous_upstep, c, key.second, cells});
    }
    out.deterministic = out.violations.empty();
    return out;
}

std::string describe(const Hda& x, const StructuralViolation& v) {
    std::string names;
    for (CellId c : v.cells) names += (names.empty() ? "" : ",") + x.name(c);
    if (v.kind == StructuralViolation::Kind::start_cells_share_type)
        return "start cells " + names + " share type " + to_string(x.events(v.cells.front()));
    std::string pos;
    for (std::size_t p : v.positions) pos += (pos.empty() ? "" : ",") + std::to_string(p);
    return "cells " + names + " of type " + to_string(x.events(v.cells.front())) + " all start {" + pos + "} from " +
           x.name(v.base);
}

std::uint64_t count_sparse_accepting_paths(const Hda& x, const Ipomset& p) {
    const StepWord& w = p.sparse_word();
    std::vector<std::uint64_t> count(x.cell_count(), 0);
    for (CellId c : start_cells_of_type(x, w.front().source())) count[c] = 1;
    for (const Step& s : w) {
        std::vector<std::uint64_t> next(x.cell_count(), 0);
        for (CellId c = 0; c < x.cell_count(); ++c) {
            if (count[c] == 0) continue;
            for (CellId d : successors(x, c, s))
                if (__builtin_add_overflow(next[d], count[c], &next[d])) throw Error("path count overflows 64 bits");
        }
        count = std::move(next);
    }
    std::uint64_t total = 0;
    for (CellId c : x.accept_cells())
        if (__builtin_add_overflow(total, count[c], &total)) throw Error("path count overflows 64 bits");
    return total;
}

bool PumpWitness::all_accepted() const {
    return std::all_of(accepted.begin(), accepted.end(), [](bool b) { return b; });
}

Ipomset pumped_ipomset(const std::vector<Ipomset>& pieces, std::size_t i, std::size_t j, std::size_t r) {
    if (!(i < j && j <= pieces.size())) throw Error("pumping window out of range");
    std::vector<const Ipomset*> seq;
    for (std::size_t t = 0; t < i; ++t) seq.push_back(&pieces[t]);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t t = i; t < j; ++t) seq.push_back(&pieces[t]);
    for (std::size_t t = j; t < pieces.size(); ++t) seq.push_back(&pieces[t]);
    if (seq.empty()) return to_ipomset(Step::identity(pieces[i].source_conclist()));
    Ipomset acc = *seq.front();
    for (std::size_t t = 1; t < seq.size(); ++t) acc = glue(acc, *seq[t]);
    return acc;
}

PumpWitness pump(const Hda& x, const std::vector<Ipomset>& pieces, std::size_t m, std::size_t r_max) {
    if (pieces.empty()) throw DecompositionTooShort("no pieces");
    const std::size_t n = pieces.size();
    const std::size_t cells = x.cell_count();
    Ipomset whole = pieces.front();
    for (std::size_t t = 1; t < n; ++t) whole = glue(whole, pieces[t]);

    std::vector<std::vector<CellId>> layers{start_cells_of_type(x, pieces.front().source_conclist())};
    for (const Ipomset& q : pieces) layers.push_back(run_word(x, layers.back(), q.sparse_word()));
    PumpWitness out;
    out.cells.assign(n + 1, 0);
    bool found = false;
    for (CellId c : layers[n])
        if (x.is_accept(c)) {
            out.cells[n] = c;
            found = true;
            break;
        }
    if (!found) throw NotAccepted("the glued pieces are not accepted");
    if (n <= cells)
        throw DecompositionTooShort("decomposition has " + std::to_string(n) + " pieces; more than " +
                                    std::to_string(cells) + " are needed");
    if (m + cells + 1 > n)
        throw DecompositionTooShort("offset " + std::to_string(m) + " leaves fewer than " + std::to_string(cells + 1) +
                                    " pieces");
    for (std::size_t t = n; t-- > 0;) {
        for (CellId c : layers[t]) {
            auto r = run_word(x, {c}, pieces[t].sparse_word());
            if (std::binary_search(r.begin(), r.end(), out.cells[t + 1])) {
                out.cells[t] = c;
                break;
            }
        }
    }

    const std::size_t k = cells + 1;
    found = false;
    for (std::size_t j = m + 1; j <= m + k && !found; ++j)
        for (std::size_t i = m; i < j; ++i)
            if (out.cells[i] == out.cells[j]) {
                out.i = i;
                out.j = j;
                found = true;
                break;
            }
    if (!found) throw Error("no repeated cell in the pumping window");

    for (std::size_t r = 1; r <= r_max; ++r) {
        out.pumped.push_back(pumped_ipomset(pieces, out.i, out.j, r));
        out.accepted.push_back(accepted_by_simulation(x, out.pumped.back()));
    }
    return out;
}

std::vector<Ipomset> language_up_to(const Hda& x, std::size_t max_steps) {
    std::set<Ipomset> result;
    std::set<std::pair<CellId, std::string>> seen;
    std::vector<std::pair<CellId, Ipomset>> frontier;
    for (CellId c : x.start_cells()) {
        Ipomset id = to_ipomset(Step::identity(x.events(c)));
        if (seen.insert({c, id.key()}).second) frontier.emplace_back(c, id);
    }
    for (std::size_t depth = 0;; ++depth) {
        for (const auto& [c, p] : frontier)
            if (x.is_accept(c)) result.insert(p);
        if (depth == max_steps) break;
        std::vector<std::pair<CellId, Ipomset>> next;
        for (const auto& [c, p] : frontier)
            for (const auto& [s, d] : outgoing_steps(x, c)) {
                Ipomset q = glue(p, to_ipomset(s));
                if (seen.insert({d, q.key()}).second) next.emplace_back(d, std::move(q));
            }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    return {result.begin(), result.end()};
}

} // namespace hda

#include "fixtures.hh"

#include <algorithm>

#include "hda/hda_io.hh"

#ifndef HDA_DATA_DIR
#error "HDA_DATA_DIR must point at the data directory"
#endif

namespace fixture {

using hda::RawCell;
using hda::RawHda;

Hda load(const std::string& name) { return hda::load_hda(std::string(HDA_DATA_DIR) + "/" + name + ".hda.json"); }

Hda square_two_starts() { return load("square_two_starts"); }
Hda square_with_detour() { return load("square_with_detour"); }
Hda one_letter_chain() { return load("one_letter_chain"); }
Hda two_grids() { return load("two_grids"); }
Hda bricks() { return load("bricks"); }
Hda square() { return load("square"); }

Hda square_twice() {
    RawHda one = square().raw();
    RawHda r;
    r.alphabet = one.alphabet;
    for (const char* copy : {"1", "2"}) {
        auto rename = [&](const std::string& n) { return n + copy; };
        for (const RawCell& c : one.cells) {
            RawCell d{rename(c.id), c.events, {}, {}};
            for (const auto& f : c.d0) d.d0.push_back(rename(f));
            for (const auto& f : c.d1) d.d1.push_back(rename(f));
            r.cells.push_back(d);
        }
        for (const auto& s : one.start) r.start.push_back(rename(s));
        for (const auto& s : one.accept) r.accept.push_back(rename(s));
    }
    return Hda(r);
}

Hda universal_width_one(const std::vector<std::string>& letters) {
    RawHda r;
    r.alphabet = letters;
    r.cells.push_back({"v", {}, {}, {}});
    r.start.push_back("v");
    r.accept.push_back("v");
    for (const auto& l : letters) {
        r.cells.push_back({"loop_" + l, {l}, {"v"}, {"v"}});
        r.start.push_back("loop_" + l);
        r.accept.push_back("loop_" + l);
    }
    return Hda(r);
}

Hda without_start(const Hda& x) {
    RawHda r = x.raw();
    r.start.clear();
    return Hda(r);
}

Hda without_accept(const Hda& x) {
    RawHda r = x.raw();
    r.accept.clear();
    return Hda(r);
}

hda::Ipomset ip(const std::string& text) { return hda::parse_ipomset(text); }

Hda random_hda(std::mt19937& rng, const std::vector<std::string>& letters, std::size_t max_cells) {
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    RawHda r;
    r.alphabet = letters;
    const std::size_t nv = 1 + pick(std::min<std::size_t>(4, max_cells));
    for (std::size_t i = 0; i < nv; ++i) r.cells.push_back({"v" + std::to_string(i), {}, {}, {}});
    struct Edge {
        std::string id, label;
        std::size_t from, to;
    };
    std::vector<Edge> edges;
    const std::size_t ne = pick(std::min<std::size_t>(6, max_cells - nv) + 1);
    for (std::size_t i = 0; i < ne; ++i) {
        Edge e{"e" + std::to_string(i), letters[pick(letters.size())], pick(nv), pick(nv)};
        r.cells.push_back({e.id, {e.label}, {"v" + std::to_string(e.from)}, {"v" + std::to_string(e.to)}});
        edges.push_back(e);
    }
    std::size_t squares = 0;
    // e: l0 v->w, g: l1 v->x, h: l1 w->y, f: l0 x->y
    for (const Edge& e : edges)
        for (const Edge& g : edges)
            for (const Edge& h : edges)
                for (const Edge& f : edges) {
                    if (r.cells.size() >= max_cells) continue;
                    if (g.from != e.from || h.from != e.to || f.from != g.to || f.to != h.to) continue;
                    if (h.label != g.label || f.label != e.label) continue;
                    if (pick(3) != 0) continue;
                    r.cells.push_back({"q" + std::to_string(squares++), {e.label, g.label}, {g.id, e.id}, {h.id, f.id}});
                }
    for (const RawCell& c : r.cells) {
        if (pick(4) == 0) r.start.push_back(c.id);
        if (pick(4) == 0) r.accept.push_back(c.id);
    }
    return Hda(r);
}

hda::StAutomaton random_st(std::mt19937& rng, const std::vector<std::string>& letters, std::size_t states,
                           std::size_t k) {
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    hda::Alphabet sigma(letters);
    auto pool = hda::conclists_up_to(sigma, k);
    std::vector<hda::Conclist> labels;
    std::vector<bool> initial, final;
    for (std::size_t q = 0; q < states; ++q) {
        labels.push_back(pool[pick(pool.size())]);
        initial.push_back(pick(3) == 0);
        final.push_back(pick(3) == 0);
    }
    std::vector<hda::StAutomaton::Transition> ts;
    for (std::size_t p = 0; p < states; ++p)
        for (const hda::Step& s : hda::steps_from(sigma, labels[p], k))
            for (std::size_t q = 0; q < states; ++q)
                if (labels[q] == s.target() && pick(3) == 0) ts.push_back({p, s, q});
    return hda::StAutomaton(sigma, k, labels, ts, initial, final);
}

hda::Path random_path(std::mt19937& rng, const Hda& x, std::size_t moves) {
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    hda::Path p{{static_cast<hda::CellId>(pick(x.cell_count()))}, {}};
    for (std::size_t i = 0; i < moves; ++i) {
        const hda::CellId c = p.target();
        const auto& ups = x.cofaces(c);
        const std::size_t d = x.cell_dim(c);
        const std::size_t choice = pick(10);
        if (choice == 0) {
            p.moves.push_back({pick(2) ? hda::Direction::up : hda::Direction::down, {}});
            p.cells.push_back(c);
        } else if (choice < 6 && !ups.empty()) {
            const auto& cf = ups[pick(ups.size())];
            p.moves.push_back({hda::Direction::up, cf.positions});
            p.cells.push_back(cf.cell);
        } else if (d > 0) {
            std::vector<std::size_t> a;
            while (a.empty())
                for (std::size_t k = 0; k < d; ++k)
                    if (pick(2)) a.push_back(k);
            p.cells.push_back(hda::face(x, c, 1, a));
            p.moves.push_back({hda::Direction::down, a});
        }
    }
    return p;
}

} // namespace fixture

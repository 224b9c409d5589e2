#include "hda/decide.hh"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "hda/path.hh"

namespace hda {

Language::Language(Hda x) : hda_(std::move(x)), st_(st_of_hda(hda_)) {}

bool member(const Language& l, const Ipomset& p) {
    if (width(p) > l.hda().dim()) return false;
    return accepts(l.st(), coherent_word(p.sparse_word()));
}

InclusionVerdict include(const Language& l1, const Language& l2) {
    InclusionResult r = inclusion(l1.st(), l2.st());
    if (r.included) return {};
    return {false, compose(*r.counterexample)};
}

EquivalenceVerdict equivalent(const Language& l1, const Language& l2) {
    InclusionVerdict a = include(l1, l2);
    if (!a.holds) return {false, a.counterexample, true};
    InclusionVerdict b = include(l2, l1);
    if (!b.holds) return {false, b.counterexample, false};
    return {};
}

EmptinessVerdict empty(const Language& l) {
    EmptinessResult r = emptiness(l.st());
    if (r.empty) return {};
    return {false, compose(*r.witness)};
}

Language intersect(const Language& l1, const Language& l2) { return Language(product(l1.hda(), l2.hda())); }

std::optional<Ipomset> complement_witness(const Membership& in_l, std::size_t k, const Ipomset& p) {
    for (const Ipomset& q : supersumptions(p, k))
        if (!in_l(q)) return q;
    return std::nullopt;
}

bool complement_member(const Membership& in_l, std::size_t k, const Ipomset& p) {
    return complement_witness(in_l, k, p).has_value();
}

bool complement_member(const Language& l, std::size_t k, const Ipomset& p) {
    return complement_member([&](const Ipomset& q) { return member(l, q); }, k, p);
}

EmptinessVerdict complement_empty(const Language& l, std::size_t k) {
    StAutomaton c = complement_words(st_of_hda(skeleton(l.hda(), k), k));
    EmptinessResult r = emptiness(c);
    if (r.empty) return {};
    return {false, compose(*r.witness)};
}

namespace {

auto pre_order_key(const Ipomset& p) {
    return std::make_tuple(p.source_events().size() + p.target_events().size(), twice_size(p), p.key());
}

struct PreSearch {
    const Hda& x;
    std::map<Ipomset, std::set<CellId>> found;
    std::vector<bool> visited;

    void extend(CellId c, const Ipomset& ev, int last) {
        found[ev].insert(c);
        if (last != 0)
            for (const Coface& cf : x.cofaces(c)) {
                if (visited[cf.cell]) continue;
                const Conclist& u = x.events(cf.cell);
                visit(cf.cell, glue(ev, to_ipomset(Step::starter(u, position_mask(u.size(), cf.positions)))), 0);
            }
        if (last != 1) {
            const Conclist& u = x.events(c);
            for (std::uint32_t mask = 1; mask < (1u << u.size()); ++mask) {
                std::vector<std::size_t> a;
                for (std::size_t i = 0; i < u.size(); ++i)
                    if (mask >> i & 1u) a.push_back(i);
                CellId d = face(x, c, 1, a);
                if (visited[d]) continue;
                visit(d, glue(ev, to_ipomset(Step::terminator(u, position_mask(u.size(), a)))), 1);
            }
        }
    }

    void visit(CellId c, const Ipomset& ev, int last) {
        visited[c] = true;
        extend(c, ev, last);
        visited[c] = false;
    }
};

} // namespace

std::vector<PreEntry> pre_set(const Language& l) {
    const Hda& x = l.hda();
    PreSearch search{x, {}, std::vector<bool>(x.cell_count(), false)};
    for (CellId c : x.start_cells()) search.visit(c, to_ipomset(Step::identity(x.events(c))), -1);
    std::vector<PreEntry> out;
    for (auto& [p, cells] : search.found) out.push_back({p, {cells.begin(), cells.end()}});
    std::sort(out.begin(), out.end(),
              [](const PreEntry& a, const PreEntry& b) { return pre_order_key(a.ipomset) < pre_order_key(b.ipomset); });
    return out;
}

Language prefix_quotient(const Language& l, const Ipomset& p) {
    const Hda& x = l.hda();
    const StepWord& w = p.sparse_word();
    std::vector<CellId> targets = run_word(x, start_cells_of_type(x, w.front().source()), w);
    RawHda raw = x.raw();
    raw.start.clear();
    for (CellId c : targets) raw.start.push_back(x.name(c));
    return Language(Hda(raw));
}

LanguageDeterminism is_deterministic_language(const Language& l) {
    const Hda& x = l.hda();
    const std::vector<PreEntry> pre = pre_set(l);

    // The quotient by P only depends on the cells P leads to.
    std::vector<std::vector<CellId>> reached;
    for (const PreEntry& e : pre) {
        const StepWord& w = e.ipomset.sparse_word();
        reached.push_back(run_word(x, start_cells_of_type(x, w.front().source()), w));
    }
    std::map<std::vector<CellId>, Language> quotients;
    auto quotient = [&](std::size_t i) -> const Language& {
        auto it = quotients.find(reached[i]);
        if (it == quotients.end()) it = quotients.emplace(reached[i], prefix_quotient(l, pre[i].ipomset)).first;
        return it->second;
    };
    std::map<std::vector<CellId>, bool> nonempty;
    auto has_continuation = [&](std::size_t i) {
        auto it = nonempty.find(reached[i]);
        if (it == nonempty.end()) it = nonempty.emplace(reached[i], !empty(quotient(i)).empty).first;
        return it->second;
    };
    std::set<std::pair<std::vector<CellId>, std::vector<CellId>>> equal_quotients;

    // Subsumption keeps labels and interfaces, so only entries agreeing on them are compared.
    std::map<std::string, std::vector<std::size_t>> groups;
    std::vector<const std::vector<std::size_t>*> group_of(pre.size());
    for (std::size_t i = 0; i < pre.size(); ++i) {
        const Ipomset& p = pre[i].ipomset;
        std::vector<Label> labels;
        for (Event e = 0; e < p.event_count(); ++e) labels.push_back(p.label(e));
        std::sort(labels.begin(), labels.end());
        std::string signature = to_string(p.source_conclist()) + to_string(p.target_conclist());
        for (const Label& lab : labels) signature += " " + lab;
        groups[signature].push_back(i);
    }
    for (const auto& [signature, members] : groups)
        for (std::size_t i : members) group_of[i] = &members;

    for (std::size_t i = 0; i < pre.size(); ++i)
        for (std::size_t j : *group_of[i]) {
            const Ipomset& p = pre[i].ipomset;
            const Ipomset& q = pre[j].ipomset;
            // Cheap tests first; each one alone rules the pair out.
            if (i == j || reached[i] == reached[j]) continue;
            if (equal_quotients.count({reached[i], reached[j]}) || !has_continuation(j)) continue;
            if (!subsumes(p, q)) continue;
            EquivalenceVerdict v = equivalent(quotient(i), quotient(j));
            if (!v.holds) return {false, std::make_pair(p, q), v.counterexample, v.in_first};
            equal_quotients.insert({reached[i], reached[j]});
        }
    return {};
}

} // namespace hda

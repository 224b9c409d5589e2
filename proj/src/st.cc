#include "hda/st.hh"

#include <algorithm>
#include <deque>
#include <sstream>

#include "hda/path.hh"

namespace hda {

StAutomaton::StAutomaton(Alphabet alphabet, std::size_t width_bound, std::vector<Conclist> labels,
                         std::vector<Transition> transitions, std::vector<bool> initial, std::vector<bool> final,
                         std::vector<std::string> names)
    : alphabet_(std::move(alphabet)),
      width_bound_(width_bound),
      labels_(std::move(labels)),
      names_(std::move(names)),
      transitions_(std::move(transitions)),
      initial_(std::move(initial)),
      final_(std::move(final)) {
    const std::size_t n = labels_.size();
    if (initial_.size() != n || final_.size() != n) throw Error("initial/final flags must cover every state");
    if (names_.empty())
        for (std::size_t q = 0; q < n; ++q) names_.push_back(std::to_string(q));
    if (names_.size() != n) throw Error("one name per state expected");
    for (const auto& u : labels_)
        if (u.size() > width_bound_) throw Error("state label " + to_string(u) + " exceeds the width bound");
    out_.assign(n, {});
    for (std::size_t t = 0; t < transitions_.size(); ++t) {
        const Transition& tr = transitions_[t];
        if (tr.from >= n || tr.to >= n) throw Error("transition " + std::to_string(t) + " names a missing state");
        if (tr.step.is_identity()) throw Error("transition " + std::to_string(t) + " carries an identity");
        if (tr.step.width() > width_bound_) throw Error("transition " + std::to_string(t) + " exceeds the width bound");
        if (tr.step.source() != labels_[tr.from] || tr.step.target() != labels_[tr.to])
            throw Error("transition " + std::to_string(t) + " " + to_string(tr.step) + " does not fit its states");
        out_[tr.from].push_back(t);
    }
}

std::vector<StateId> StAutomaton::post(StateId q, const Step& s) const {
    std::vector<StateId> r;
    for (std::size_t t : out_[q])
        if (transitions_[t].step == s) r.push_back(transitions_[t].to);
    return r;
}

std::vector<StateId> StAutomaton::post(const std::vector<StateId>& qs, const Step& s) const {
    std::vector<StateId> r;
    for (StateId q : qs)
        for (StateId p : post(q, s)) r.push_back(p);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

StAutomaton st_of_hda(const Hda& x, std::size_t width_bound) {
    std::vector<Conclist> labels;
    std::vector<std::string> names;
    std::vector<bool> initial, final;
    std::vector<StAutomaton::Transition> ts;
    for (CellId c = 0; c < x.cell_count(); ++c) {
        labels.push_back(x.events(c));
        names.push_back(x.name(c));
        initial.push_back(x.is_start(c));
        final.push_back(x.is_accept(c));
        for (auto& [s, d] : outgoing_steps(x, c)) ts.push_back({c, s, d});
    }
    return StAutomaton(x.alphabet(), std::max(width_bound, x.dim()), std::move(labels), std::move(ts),
                       std::move(initial), std::move(final), std::move(names));
}

StepWord word_label(const StAutomaton& a, const StPath& path) {
    if (path.states.size() != path.transitions.size() + 1) throw Error("path needs one more state than transitions");
    for (StateId q : path.states)
        if (q >= a.state_count()) throw Error("state " + std::to_string(q) + " out of range");
    StepWord w{Step::identity(a.label(path.states.front()))};
    for (std::size_t i = 0; i < path.transitions.size(); ++i) {
        if (path.transitions[i] >= a.transition_count()) throw Error("transition index out of range");
        const auto& tr = a.transitions()[path.transitions[i]];
        if (tr.from != path.states[i] || tr.to != path.states[i + 1])
            throw Error("transition " + std::to_string(i) + " does not connect the listed states");
        w.push_back(tr.step);
        w.push_back(Step::identity(a.label(tr.to)));
    }
    return w;
}

bool is_coherent(const StepWord& w) {
    if (w.size() % 2 == 0) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].is_identity() != (i % 2 == 0)) return false;
        if (i > 0 && w[i - 1].target() != w[i].source()) return false;
    }
    return true;
}

bool accepts(const StAutomaton& a, const StepWord& w) {
    if (!is_coherent(w)) return false;
    std::vector<StateId> cur;
    for (StateId q = 0; q < a.state_count(); ++q)
        if (a.is_initial(q) && a.label(q) == w.front().conclist) cur.push_back(q);
    for (std::size_t i = 1; i < w.size() && !cur.empty(); i += 2) cur = a.post(cur, w[i]);
    return std::any_of(cur.begin(), cur.end(), [&](StateId q) { return a.is_final(q); });
}

std::vector<Conclist> conclists_up_to(const Alphabet& sigma, std::size_t k) {
    std::vector<Conclist> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= k; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (const auto& l : sigma.symbols()) {
                Conclist u = out[i];
                u.push_back(l);
                out.push_back(std::move(u));
            }
        begin = end;
    }
    return out;
}

std::vector<Step> steps_from(const Alphabet& sigma, const Conclist& u, std::size_t k) {
    std::vector<Step> out;
    const std::size_t n = u.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<bool> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = mask >> i & 1u;
        out.push_back(Step::terminator(u, m));
    }
    for (std::size_t len = n + 1; len <= k; ++len) {
        const std::size_t fresh = len - n;
        for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != fresh) continue;
            // Every labelling of the fresh positions, as a counter in base |sigma|.
            std::vector<std::size_t> digit(fresh, 0);
            while (true) {
                Conclist v;
                std::vector<bool> m;
                std::size_t old = 0, f = 0;
                for (std::size_t i = 0; i < len; ++i) {
                    if (mask >> i & 1u) {
                        v.push_back(sigma.symbols()[digit[f++]]);
                        m.push_back(true);
                    } else {
                        v.push_back(u[old++]);
                        m.push_back(false);
                    }
                }
                out.push_back(Step::starter(std::move(v), std::move(m)));
                std::size_t d = 0;
                while (d < fresh && ++digit[d] == sigma.size()) digit[d++] = 0;
                if (d == fresh) break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

StAutomaton match_automaton(const Alphabet& sigma, std::size_t k) {
    std::vector<Conclist> states = conclists_up_to(sigma, k);
    std::map<Conclist, StateId> index;
    for (StateId q = 0; q < states.size(); ++q) index[states[q]] = q;
    std::vector<StAutomaton::Transition> ts;
    std::vector<std::string> names;
    for (StateId q = 0; q < states.size(); ++q) {
        names.push_back(to_string(states[q]));
        for (Step& s : steps_from(sigma, states[q], k)) {
            StateId to = index.at(s.target());
            ts.push_back({q, std::move(s), to});
        }
    }
    const std::size_t n = states.size();
    return StAutomaton(sigma, k, std::move(states), std::move(ts), std::vector<bool>(n, true),
                       std::vector<bool>(n, true), std::move(names));
}

namespace {

struct SearchNode {
    StateId a;
    std::vector<StateId> b;
    std::size_t parent;  // npos for roots
    Step via;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

StepWord trace_word(const std::vector<SearchNode>& nodes, std::size_t i, const std::vector<Conclist>& root_labels) {
    std::vector<const Step*> steps;
    std::size_t root = i;
    while (nodes[root].parent != npos) {
        steps.push_back(&nodes[root].via);
        root = nodes[root].parent;
    }
    std::reverse(steps.begin(), steps.end());
    StepWord w{Step::identity(root_labels[root])};
    for (const Step* s : steps) {
        w.push_back(*s);
        w.push_back(Step::identity(s->target()));
    }
    return w;
}

bool meets_final(const StAutomaton& b, const std::vector<StateId>& qs) {
    return std::any_of(qs.begin(), qs.end(), [&](StateId q) { return b.is_final(q); });
}

} // namespace

InclusionResult inclusion(const StAutomaton& a, const StAutomaton& b) {
    std::vector<SearchNode> nodes;
    std::vector<Conclist> root_label;
    std::map<std::pair<StateId, std::vector<StateId>>, std::size_t> seen;
    std::deque<std::size_t> queue;
    auto visit = [&](StateId p, std::vector<StateId> s, std::size_t parent, const Step& via) {
        auto key = std::make_pair(p, s);
        if (seen.count(key)) return;
        seen.emplace(std::move(key), nodes.size());
        nodes.push_back({p, std::move(s), parent, via});
        root_label.push_back(a.label(p));
        queue.push_back(nodes.size() - 1);
    };
    for (StateId p = 0; p < a.state_count(); ++p) {
        if (!a.is_initial(p)) continue;
        std::vector<StateId> s;
        for (StateId q = 0; q < b.state_count(); ++q)
            if (b.is_initial(q) && b.label(q) == a.label(p)) s.push_back(q);
        visit(p, std::move(s), npos, Step{});
    }
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        if (a.is_final(nodes[i].a) && !meets_final(b, nodes[i].b))
            return {false, trace_word(nodes, i, root_label)};
        for (std::size_t t : a.outgoing(nodes[i].a)) {
            const auto& tr = a.transitions()[t];
            visit(tr.to, b.post(nodes[i].b, tr.step), i, tr.step);
        }
    }
    return {true, std::nullopt};
}

StAutomaton complement_words(const StAutomaton& a) {
    const std::size_t k = a.width_bound();
    std::map<std::pair<Conclist, std::vector<StateId>>, StateId> index;
    std::vector<Conclist> labels;
    std::vector<std::vector<StateId>> subsets;
    std::vector<bool> initial;
    std::vector<StAutomaton::Transition> ts;
    std::map<Conclist, std::vector<Step>> steps_cache;

    auto state = [&](const Conclist& u, std::vector<StateId> s) {
        auto key = std::make_pair(u, s);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        StateId id = labels.size();
        index.emplace(std::move(key), id);
        labels.push_back(u);
        subsets.push_back(std::move(s));
        initial.push_back(false);
        return id;
    };
    for (const Conclist& u : conclists_up_to(a.alphabet(), k)) {
        std::vector<StateId> s;
        for (StateId q = 0; q < a.state_count(); ++q)
            if (a.is_initial(q) && a.label(q) == u) s.push_back(q);
        initial[state(u, std::move(s))] = true;
    }
    for (StateId d = 0; d < labels.size(); ++d) {
        const Conclist u = labels[d];
        auto cached = steps_cache.find(u);
        if (cached == steps_cache.end()) cached = steps_cache.emplace(u, steps_from(a.alphabet(), u, k)).first;
        for (const Step& s : cached->second) {
            StateId to = state(s.target(), a.post(subsets[d], s));
            ts.push_back({d, s, to});
        }
    }
    std::vector<bool> final;
    std::vector<std::string> names;
    for (StateId d = 0; d < labels.size(); ++d) {
        final.push_back(!meets_final(a, subsets[d]));
        std::string n = to_string(labels[d]) + "{";
        for (std::size_t i = 0; i < subsets[d].size(); ++i) n += (i ? "," : "") + a.name(subsets[d][i]);
        names.push_back(n + "}");
    }
    return StAutomaton(a.alphabet(), k, std::move(labels), std::move(ts), std::move(initial), std::move(final),
                       std::move(names));
}

EmptinessResult emptiness(const StAutomaton& a) {
    std::vector<std::size_t> parent(a.state_count(), npos);
    std::vector<const Step*> via(a.state_count(), nullptr);
    std::vector<bool> seen(a.state_count(), false);
    std::deque<StateId> queue;
    for (StateId q = 0; q < a.state_count(); ++q)
        if (a.is_initial(q)) {
            seen[q] = true;
            queue.push_back(q);
        }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        if (a.is_final(q)) {
            std::vector<const Step*> steps;
            StateId r = q;
            while (parent[r] != npos) {
                steps.push_back(via[r]);
                r = parent[r];
            }
            std::reverse(steps.begin(), steps.end());
            StepWord w{Step::identity(a.label(r))};
            for (const Step* s : steps) {
                w.push_back(*s);
                w.push_back(Step::identity(s->target()));
            }
            return {false, std::move(w)};
        }
        for (std::size_t t : a.outgoing(q)) {
            const auto& tr = a.transitions()[t];
            if (seen[tr.to]) continue;
            seen[tr.to] = true;
            parent[tr.to] = q;
            via[tr.to] = &tr.step;
            queue.push_back(tr.to);
        }
    }
    return {true, std::nullopt};
}

std::string export_st(const StAutomaton& a) {
    std::ostringstream out;
    out << "st-automaton width=" << a.width_bound() << " alphabet=";
    for (std::size_t i = 0; i < a.alphabet().size(); ++i) out << (i ? "," : "") << a.alphabet().symbols()[i];
    out << " states=" << a.state_count() << " transitions=" << a.transition_count() << "\n";
    for (StateId q = 0; q < a.state_count(); ++q) {
        out << "state " << q << " " << a.name(q) << " " << to_string(a.label(q));
        if (a.is_initial(q)) out << " initial";
        if (a.is_final(q)) out << " final";
        out << "\n";
    }
    for (const auto& tr : a.transitions()) out << "transition " << tr.from << " " << tr.to << " " << to_string(tr.step) << "\n";
    return out.str();
}

} // namespace hda

#include <algorithm>
#include <array>
#include <bit>
#include <set>

#include "hda/ipomset.hh"
#include "ipomset_builder.hh"

namespace hda {

namespace {

// Backtracking search for a bijection, with events as bits of 64-bit masks.
class SubsumptionSearch {
public:
    SubsumptionSearch(const Ipomset& p, const Ipomset& q) : p_(p), q_(q), n_(p.event_count()) {}

    bool run() {
        for (Event x = 0; x < n_; ++x) {
            label_p_[x] = label_id(p_.label(x));
            label_q_[x] = label_id(q_.label(x));
            succ_p_[x] = p_.successor_mask(x);
            pred_p_[x] = p_.predecessor_mask(x);
            before_p_[x] = p_.before_mask(x);
            succ_q_[x] = q_.successor_mask(x);
            pred_q_[x] = q_.predecessor_mask(x);
            before_q_[x] = q_.before_mask(x);
            candidates_[x] = 0;
        }
        std::array<std::size_t, 64> pp, sp;
        for (Event x = 0; x < n_; ++x) {
            pp[x] = static_cast<std::size_t>(std::popcount(pred_p_[x]));
            sp[x] = static_cast<std::size_t>(std::popcount(succ_p_[x]));
        }
        for (Event x = 0; x < n_; ++x) order_[x] = x;
        std::sort(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(n_), [&](Event a, Event b) {
            if (pp[a] != pp[b]) return pp[a] < pp[b];
            return sp[a] > sp[b];
        });
        for (Event x = 0; x < n_; ++x) {
            for (Event c = 0; c < n_; ++c) {
                if (label_q_[c] != label_p_[x] || q_.in_source(c) != p_.in_source(x) ||
                    q_.in_target(c) != p_.in_target(x))
                    continue;
                if (std::popcount(pred_q_[c]) > std::popcount(pred_p_[x]) ||
                    std::popcount(succ_q_[c]) > std::popcount(succ_p_[x]))
                    continue;
                candidates_[x] |= std::uint64_t{1} << c;
            }
            if (!candidates_[x]) return false;
        }
        return extend(0, 0);
    }

private:
    std::size_t label_id(const Label& l) {
        for (std::size_t i = 0; i < labels_seen_; ++i)
            if (*labels_[i] == l) return i;
        labels_[labels_seen_] = &l;
        return labels_seen_++;
    }

    bool consistent(Event x, Event c, std::size_t depth) const {
        for (std::size_t i = 0; i < depth; ++i) {
            const Event y = order_[i];
            const Event d = image_[y];
            const std::uint64_t ybit = std::uint64_t{1} << y, dbit = std::uint64_t{1} << d;
            if ((succ_q_[c] & dbit) && !(succ_p_[x] & ybit)) return false;
            if ((pred_q_[c] & dbit) && !(pred_p_[x] & ybit)) return false;
            if (!((succ_p_[x] | pred_p_[x]) & ybit)) {
                if ((before_p_[x] & ybit) && !(before_q_[c] & dbit)) return false;
                if ((before_p_[y] & (std::uint64_t{1} << x)) && !(before_q_[d] & (std::uint64_t{1} << c))) return false;
            }
        }
        return true;
    }

    bool extend(std::size_t depth, std::uint64_t used) {
        if (depth == n_) return true;
        const Event x = order_[depth];
        for (std::uint64_t rest = candidates_[x] & ~used; rest; rest &= rest - 1) {
            const auto c = static_cast<Event>(std::countr_zero(rest));
            if (!consistent(x, c, depth)) continue;
            image_[x] = c;
            if (extend(depth + 1, used | std::uint64_t{1} << c)) return true;
        }
        return false;
    }

    const Ipomset& p_;
    const Ipomset& q_;
    std::size_t n_;
    // Only the first n entries are used.
    std::array<const Label*, 128> labels_;
    std::size_t labels_seen_ = 0;
    std::array<std::size_t, 64> label_p_, label_q_;
    std::array<std::uint64_t, 64> succ_p_, pred_p_, succ_q_, pred_q_, before_p_, before_q_;
    std::array<std::uint64_t, 64> candidates_;
    std::array<Event, 64> order_;
    std::array<Event, 64> image_;
};

bool is_interval(const Relation& r) {
    const std::size_t n = r.size();
    for (Event x = 0; x < n; ++x)
        for (Event y = 0; y < n; ++y) {
            if (!r(x, y)) continue;
            for (Event z = 0; z < n; ++z)
                for (Event w = 0; w < n; ++w)
                    if (r(z, w) && !r(x, w) && !r(z, y)) return false;
        }
    return true;
}

std::size_t antichain_width(const Relation& r) {
    const std::size_t n = r.size();
    std::vector<std::uint32_t> comparable(n, 0);
    for (Event x = 0; x < n; ++x)
        for (Event y = 0; y < n; ++y)
            if (r(x, y) || r(y, x)) comparable[x] |= 1u << y;
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        auto c = static_cast<std::size_t>(std::popcount(mask));
        if (c <= best) continue;
        bool ok = true;
        for (Event x = 0; x < n && ok; ++x)
            if ((mask >> x & 1u) && (comparable[x] & mask)) ok = false;
        if (ok) best = c;
    }
    return best;
}

} // namespace

bool subsumes(const Ipomset& p, const Ipomset& q) {
    if (p == q) return true;
    const std::size_t n = p.event_count();
    if (q.event_count() != n) return false;
    // A bijection keeping every precedence pair is an isomorphism, so Q needs strictly fewer.
    if (q.precedence_pair_count() >= p.precedence_pair_count()) return false;
    if (n > 64) throw Error("subsumption is limited to 64 events");
    return SubsumptionSearch(p, q).run();
}

std::vector<Ipomset> supersumptions(const Ipomset& p, std::size_t k) {
    if (width(p) > k)
        throw WidthExceeded("width " + std::to_string(width(p)) + " exceeds bound " + std::to_string(k));
    const std::size_t n = p.event_count();
    if (n > 16) throw Error("supersumption enumeration is limited to 16 events");
    std::vector<std::pair<Event, Event>> pairs;
    for (Event x = 0; x < n; ++x)
        for (Event y = 0; y < n; ++y)
            if (p.precedes(x, y)) pairs.emplace_back(x, y);
    if (pairs.size() > 24) throw Error("supersumption enumeration is limited to 24 precedence pairs");

    std::vector<bool> src(n), tgt(n);
    std::vector<Label> labels;
    for (Event e = 0; e < n; ++e) {
        src[e] = p.in_source(e);
        tgt[e] = p.in_target(e);
        labels.push_back(p.label(e));
    }
    std::set<Ipomset> found;
    const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        Relation prec(n);
        std::vector<std::pair<Event, Event>> dropped;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (mask >> i & 1u)
                prec.set(pairs[i].first, pairs[i].second);
            else
                dropped.push_back(pairs[i]);
        }
        if (!prec.transitive() || !is_interval(prec) || antichain_width(prec) > k) continue;
        const std::uint64_t orientations = std::uint64_t{1} << dropped.size();
        for (std::uint64_t o = 0; o < orientations; ++o) {
            Relation evord(n);
            for (Event x = 0; x < n; ++x)
                for (Event y = 0; y < n; ++y)
                    if (x != y && !p.comparable(x, y) && p.event_before(x, y)) evord.set(x, y);
            for (std::size_t i = 0; i < dropped.size(); ++i) {
                auto [x, y] = dropped[i];
                if (o >> i & 1u)
                    evord.set(y, x);
                else
                    evord.set(x, y);
            }
            evord.close_transitively();
            if (!evord.irreflexive()) continue;
            Ipomset q = IpomsetBuilder::make(labels, src, tgt, prec, evord);
            if (!found.count(q) && subsumes(p, q)) found.insert(std::move(q));
        }
    }
    return {found.begin(), found.end()};
}

bool in_down_closure(const Ipomset& p, const std::vector<Ipomset>& generators) {
    return std::any_of(generators.begin(), generators.end(), [&](const Ipomset& q) { return subsumes(p, q); });
}

} // namespace hda

#include "oracles.hh"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oracle {

using hda::Event;
using hda::Step;
using hda::StepWord;

bool subsumes_all_bijections(const Ipomset& p, const Ipomset& q) {
    const std::size_t n = p.event_count();
    if (q.event_count() != n) return false;
    std::vector<Event> f(n);
    std::iota(f.begin(), f.end(), 0);
    do {
        bool ok = true;
        for (Event x = 0; x < n && ok; ++x)
            ok = p.label(x) == q.label(f[x]) && p.in_source(x) == q.in_source(f[x]) &&
                 p.in_target(x) == q.in_target(f[x]);
        for (Event x = 0; x < n && ok; ++x)
            for (Event y = 0; y < n && ok; ++y) {
                if (x == y) continue;
                if (q.precedes(f[x], f[y]) && !p.precedes(x, y)) ok = false;
                bool incomparable = !p.precedes(x, y) && !p.precedes(y, x);
                if (incomparable && p.event_before(x, y) && !q.event_before(f[x], f[y])) ok = false;
            }
        if (ok) return true;
    } while (std::next_permutation(f.begin(), f.end()));
    return false;
}

PermutedImages::PermutedImages(const Ipomset& p, const std::vector<std::string>& labels)
    : n_(p.event_count()), event_order_(0) {
    if (n_ > 8) throw std::invalid_argument("at most 8 events");
    auto bit = [](std::size_t x, std::size_t y) { return std::uint64_t{1} << (8 * x + y); };
    for (Event x = 0; x < n_; ++x)
        for (Event y = 0; y < n_; ++y)
            if (p.event_before(x, y)) event_order_ |= bit(x, y);
    std::vector<Event> f(n_);
    std::iota(f.begin(), f.end(), 0);
    do {
        // Event x of P becomes event f[x].
        Image im{0, 0, 0};
        for (Event x = 0; x < n_; ++x) {
            const auto id = static_cast<std::uint64_t>(
                std::find(labels.begin(), labels.end(), p.label(x)) - labels.begin());
            const std::uint64_t color = id << 2 | (p.in_source(x) ? 2u : 0u) | (p.in_target(x) ? 1u : 0u);
            im.colors |= color << (8 * f[x]);
            for (Event y = 0; y < n_; ++y) {
                if (p.precedes(x, y)) im.precedence |= bit(f[x], f[y]);
                if (x != y && !p.precedes(x, y) && !p.precedes(y, x) && p.event_before(x, y))
                    im.incomparable_ev |= bit(f[x], f[y]);
            }
        }
        images_.push_back(im);
    } while (std::next_permutation(f.begin(), f.end()));
}

bool PermutedImages::subsumes(const PermutedImages& q) const {
    if (q.n_ != n_) return false;
    const Image& target = q.images_.front();
    for (const Image& im : images_)
        if (im.colors == target.colors && (target.precedence & ~im.precedence) == 0 &&
            (im.incomparable_ev & ~q.event_order_) == 0)
            return true;
    return false;
}

TargetIndex::TargetIndex(const std::vector<PermutedImages>& qs) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& id = qs[i].images_.front();
        if (i == 0) n_ = qs[i].n_;
        if (qs[i].n_ != n_) throw std::invalid_argument("targets differ in size");
        buckets_[id.colors].push_back({i, id.precedence, qs[i].event_order_});
    }
}

std::vector<std::size_t> TargetIndex::above(const PermutedImages& p) const {
    std::vector<std::size_t> out;
    if (p.n_ != n_) return out;
    for (const auto& im : p.images_) {
        const auto it = buckets_.find(im.colors);
        if (it == buckets_.end()) continue;
        for (const Entry& e : it->second)
            if ((e.precedence & ~im.precedence) == 0 && (im.incomparable_ev & ~e.event_order) == 0)
                out.push_back(e.index);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t width_by_antichains(const Ipomset& p) {
    const std::size_t n = p.event_count();
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Event> es;
        for (Event e = 0; e < n; ++e)
            if (mask >> e & 1u) es.push_back(e);
        bool anti = true;
        for (Event x : es)
            for (Event y : es)
                if (p.precedes(x, y)) anti = false;
        if (anti) best = std::max(best, es.size());
    }
    return best;
}

namespace {

void all_conclists(const std::vector<std::string>& labels, std::size_t max_len, hda::Conclist& cur,
                   std::vector<hda::Conclist>& out) {
    out.push_back(cur);
    if (cur.size() == max_len) return;
    for (const auto& l : labels) {
        cur.push_back(l);
        all_conclists(labels, max_len, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Ipomset> all_ipomsets(const std::vector<std::string>& labels, std::size_t max_events) {
    std::set<Ipomset> seen;
    std::vector<Ipomset> frontier;
    std::vector<hda::Conclist> sources;
    hda::Conclist cur;
    all_conclists(labels, max_events, cur, sources);
    for (const auto& u : sources) {
        Ipomset id = hda::to_ipomset(Step::identity(u));
        if (seen.insert(id).second) frontier.push_back(id);
    }
    while (!frontier.empty()) {
        std::vector<Ipomset> next;
        for (const Ipomset& p : frontier) {
            hda::Conclist t = p.target_conclist();
            std::vector<Ipomset> steps;
            if (p.event_count() < max_events) {
                for (std::size_t pos = 0; pos <= t.size(); ++pos)
                    for (const auto& l : labels) {
                        hda::Conclist u = t;
                        u.insert(u.begin() + static_cast<long>(pos), l);
                        std::vector<bool> m(u.size(), false);
                        m[pos] = true;
                        steps.push_back(hda::to_ipomset(Step::starter(u, m)));
                    }
            }
            for (std::size_t pos = 0; pos < t.size(); ++pos) {
                std::vector<bool> m(t.size(), false);
                m[pos] = true;
                steps.push_back(hda::to_ipomset(Step::terminator(t, m)));
            }
            for (const Ipomset& s : steps) {
                Ipomset q = hda::glue(p, s);
                if (seen.insert(q).second) next.push_back(q);
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

StepWord random_step_word(std::mt19937& rng, const std::vector<std::string>& labels, std::size_t max_events,
                          std::size_t max_width) {
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    hda::Conclist cur;
    std::size_t initial = pick(std::min(max_width, max_events) + 1);
    initial = std::min<std::size_t>(initial, 2);
    for (std::size_t i = 0; i < initial; ++i) cur.push_back(labels[pick(labels.size())]);
    std::size_t events = cur.size();
    StepWord w;
    std::size_t length = 1 + pick(8);
    for (std::size_t i = 0; i < length; ++i) {
        switch (pick(4)) {
            case 0:
                w.push_back(Step::identity(cur));
                break;
            case 1:
            case 2: {
                std::size_t room = std::min(max_events - events, max_width - std::min(max_width, cur.size()));
                if (room == 0) break;
                std::size_t m = 1 + pick(room);
                hda::Conclist u = cur;
                std::vector<bool> marked(u.size(), false);
                for (std::size_t j = 0; j < m; ++j) {
                    std::size_t pos = pick(u.size() + 1);
                    u.insert(u.begin() + static_cast<long>(pos), labels[pick(labels.size())]);
                    marked.insert(marked.begin() + static_cast<long>(pos), true);
                }
                events += m;
                w.push_back(Step::starter(u, marked));
                cur = u;
                break;
            }
            default: {
                if (cur.empty()) break;
                std::vector<bool> marked(cur.size(), false);
                for (std::size_t j = 0; j < cur.size(); ++j) marked[j] = pick(2) == 1;
                marked[pick(cur.size())] = true;
                Step s = Step::terminator(cur, marked);
                cur = s.target();
                w.push_back(std::move(s));
                break;
            }
        }
    }
    if (w.empty()) w.push_back(Step::identity(cur));
    return w;
}

Ipomset random_ipomset(std::mt19937& rng, const std::vector<std::string>& labels, std::size_t max_events,
                       std::size_t max_width) {
    return hda::compose(random_step_word(rng, labels, max_events, max_width));
}

Ipomset word(const std::string& labels) {
    hda::RawIpomset raw;
    for (char c : labels) raw.labels.emplace_back(1, c);
    for (Event x = 0; x < labels.size(); ++x)
        for (Event y = x + 1; y < labels.size(); ++y) raw.precedence.emplace_back(x, y);
    return Ipomset(raw);
}

Ipomset discrete(const std::string& labels) {
    hda::RawIpomset raw;
    for (char c : labels) raw.labels.emplace_back(1, c);
    for (Event x = 0; x < labels.size(); ++x)
        for (Event y = x + 1; y < labels.size(); ++y) raw.event_order.emplace_back(x, y);
    return Ipomset(raw);
}

} // namespace oracle

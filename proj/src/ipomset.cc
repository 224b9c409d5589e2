#include "hda/ipomset.hh"

#include <algorithm>
#include <climits>

#include "ipomset_builder.hh"

namespace hda {

void Relation::close_transitively() {
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t i = 0; i < n_; ++i) {
            if (!(*this)(i, k)) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if ((*this)(k, j)) set(i, j);
        }
}

bool Relation::irreflexive() const {
    for (std::size_t i = 0; i < n_; ++i)
        if ((*this)(i, i)) return false;
    return true;
}

bool Relation::transitive() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            if (!(*this)(i, k)) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if ((*this)(k, j) && !(*this)(i, j)) return false;
        }
    return true;
}

std::size_t Relation::pair_count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string_view to_string(IpomsetViolationKind k) {
    switch (k) {
        case IpomsetViolationKind::malformed: return "Malformed";
        case IpomsetViolationKind::not_partial_order: return "NotPartialOrder";
        case IpomsetViolationKind::incomparable_pair: return "IncomparablePair";
        case IpomsetViolationKind::interface_not_extremal: return "InterfaceNotExtremal";
        case IpomsetViolationKind::not_interval: return "NotInterval";
    }
    return "?";
}

namespace {

std::string describe(const std::vector<IpomsetViolation>& v) {
    std::string out = "invalid ipomset:";
    for (const auto& x : v) out += " " + std::string(to_string(x.kind)) + " (" + x.message + ")";
    return out;
}

std::string events_text(std::initializer_list<Event> es) {
    std::string out;
    for (Event e : es) {
        if (!out.empty()) out += ",";
        out += std::to_string(e);
    }
    return out;
}

void check_order(const Relation& r, std::string_view name, std::vector<IpomsetViolation>& out) {
    const std::size_t n = r.size();
    for (Event x = 0; x < n; ++x)
        if (r(x, x))
            out.push_back({IpomsetViolationKind::not_partial_order, {x},
                           std::string(name) + " is not irreflexive at " + std::to_string(x)});
    for (Event x = 0; x < n; ++x)
        for (Event y = 0; y < n; ++y) {
            if (x == y || !r(x, y)) continue;
            for (Event z = 0; z < n; ++z)
                if (z != y && r(y, z) && !r(x, z))
                    out.push_back({IpomsetViolationKind::not_partial_order, {x, y, z},
                                   std::string(name) + " is not transitive on " + events_text({x, y, z})});
        }
}

} // namespace

std::vector<IpomsetViolation> validate_ipomset(const RawIpomset& raw) {
    std::vector<IpomsetViolation> out;
    const std::size_t n = raw.labels.size();
    if (!raw.source.empty() && raw.source.size() != n)
        out.push_back({IpomsetViolationKind::malformed, {}, "source flags do not match the event count"});
    if (!raw.target.empty() && raw.target.size() != n)
        out.push_back({IpomsetViolationKind::malformed, {}, "target flags do not match the event count"});
    for (std::size_t e = 0; e < n; ++e)
        if (!is_label(raw.labels[e]))
            out.push_back({IpomsetViolationKind::malformed, {e}, "bad label '" + raw.labels[e] + "'"});
    Relation prec(n), evord(n);
    auto load = [&](const auto& pairs, Relation& r, std::string_view name) {
        for (auto [x, y] : pairs) {
            if (x >= n || y >= n) {
                out.push_back({IpomsetViolationKind::malformed, {},
                               std::string(name) + " pair out of range: " + events_text({x, y})});
                continue;
            }
            r.set(x, y);
        }
    };
    load(raw.precedence, prec, "precedence");
    load(raw.event_order, evord, "event order");
    if (!out.empty()) return out;

    const std::size_t before = out.size();
    check_order(prec, "precedence", out);
    check_order(evord, "event order", out);
    const bool orders_ok = out.size() == before;

    for (Event x = 0; x < n; ++x)
        for (Event y = x + 1; y < n; ++y)
            if (!prec(x, y) && !prec(y, x) && !evord(x, y) && !evord(y, x))
                out.push_back({IpomsetViolationKind::incomparable_pair, {x, y},
                               "events " + events_text({x, y}) + " are related by neither order"});

    auto src = [&](Event e) { return !raw.source.empty() && raw.source[e]; };
    auto tgt = [&](Event e) { return !raw.target.empty() && raw.target[e]; };
    for (Event x = 0; x < n; ++x)
        for (Event y = 0; y < n; ++y) {
            if (!prec(y, x)) continue;
            if (src(x))
                out.push_back({IpomsetViolationKind::interface_not_extremal, {x, y},
                               "source event " + std::to_string(x) + " has predecessor " + std::to_string(y)});
            if (tgt(y))
                out.push_back({IpomsetViolationKind::interface_not_extremal, {y, x},
                               "target event " + std::to_string(y) + " has successor " + std::to_string(x)});
        }

    if (orders_ok) {
        for (Event x = 0; x < n; ++x)
            for (Event y = 0; y < n; ++y) {
                if (!prec(x, y)) continue;
                for (Event z = 0; z < n; ++z)
                    for (Event w = 0; w < n; ++w) {
                        if (!prec(z, w) || std::pair(z, w) <= std::pair(x, y)) continue;
                        if (!prec(x, w) && !prec(z, y))
                            out.push_back({IpomsetViolationKind::not_interval, {x, y, z, w},
                                           "2+2 on " + events_text({x, y, z, w})});
                    }
            }
    }
    return out;
}

InvalidIpomset::InvalidIpomset(std::vector<IpomsetViolation> v) : Error(describe(v)), violations_(std::move(v)) {}

Ipomset::Ipomset() { canonicalize(); }

Ipomset::Ipomset(const RawIpomset& raw) {
    auto violations = validate_ipomset(raw);
    if (!violations.empty()) throw InvalidIpomset(std::move(violations));
    const std::size_t n = raw.labels.size();
    labels_ = raw.labels;
    source_ = raw.source.empty() ? std::vector<bool>(n, false) : raw.source;
    target_ = raw.target.empty() ? std::vector<bool>(n, false) : raw.target;
    prec_ = Relation(n);
    evord_ = Relation(n);
    for (auto [x, y] : raw.precedence) prec_.set(x, y);
    for (auto [x, y] : raw.event_order) evord_.set(x, y);
    canonicalize();
}

Ipomset::Ipomset(std::vector<Label> labels, std::vector<bool> source, std::vector<bool> target, Relation prec,
                 Relation evord)
    : labels_(std::move(labels)), source_(std::move(source)), target_(std::move(target)), prec_(std::move(prec)),
      evord_(std::move(evord)) {
    canonicalize();
}

namespace {

void sort_by_event_order(std::vector<Event>& es, const Relation& evord) {
    std::sort(es.begin(), es.end(), [&](Event a, Event b) { return evord(a, b); });
}

Conclist labels_of(const std::vector<Event>& es, const std::vector<Label>& labels) {
    Conclist out;
    out.reserve(es.size());
    for (Event e : es) out.push_back(labels[e]);
    return out;
}

} // namespace

void Ipomset::canonicalize() {
    const std::size_t n = labels_.size();
    std::vector<bool> started = source_, done(n, false);
    std::vector<Event> active = source_events();
    sparse_.clear();

    auto finished = [&] {
        for (Event e = 0; e < n; ++e)
            if (!started[e] || (!target_[e] && !done[e])) return false;
        return true;
    };
    while (!finished()) {
        bool progress = false;
        std::vector<Event> fresh;
        for (Event x = 0; x < n; ++x) {
            if (started[x]) continue;
            bool ok = true;
            for (Event y = 0; y < n && ok; ++y)
                if (prec_(y, x) && !done[y]) ok = false;
            if (ok) fresh.push_back(x);
        }
        if (!fresh.empty()) {
            for (Event x : fresh) started[x] = true;
            active.insert(active.end(), fresh.begin(), fresh.end());
            sort_by_event_order(active, evord_);
            std::vector<bool> marked(active.size());
            for (std::size_t i = 0; i < active.size(); ++i)
                marked[i] = std::find(fresh.begin(), fresh.end(), active[i]) != fresh.end();
            sparse_.push_back(Step::starter(labels_of(active, labels_), std::move(marked)));
            progress = true;
        }
        std::vector<bool> marked(active.size(), false);
        bool any = false;
        for (std::size_t i = 0; i < active.size(); ++i) {
            Event x = active[i];
            if (target_[x]) continue;
            bool ok = true;
            for (Event y = 0; y < n && ok; ++y)
                if (!started[y] && !prec_(x, y)) ok = false;
            if (ok) marked[i] = any = true;
        }
        if (any) {
            sparse_.push_back(Step::terminator(labels_of(active, labels_), marked));
            std::vector<Event> rest;
            for (std::size_t i = 0; i < active.size(); ++i) {
                if (marked[i])
                    done[active[i]] = true;
                else
                    rest.push_back(active[i]);
            }
            active = std::move(rest);
            progress = true;
        }
        if (!progress) throw Error("ipomset has no step decomposition");
    }
    if (sparse_.empty()) sparse_.push_back(Step::identity(labels_of(active, labels_)));
    key_ = to_string(sparse_);

    prec_pairs_ = prec_.pair_count();
    if (n > 64) return;
    masks_.assign(3 * n, 0);
    for (Event x = 0; x < n; ++x)
        for (Event y = 0; y < n; ++y) {
            if (prec_(x, y)) masks_[x] |= std::uint64_t{1} << y, masks_[n + y] |= std::uint64_t{1} << x;
            if (evord_(x, y)) masks_[2 * n + x] |= std::uint64_t{1} << y;
        }
}

std::vector<Event> Ipomset::source_events() const {
    std::vector<Event> out;
    for (Event e = 0; e < labels_.size(); ++e)
        if (source_[e]) out.push_back(e);
    sort_by_event_order(out, evord_);
    return out;
}

std::vector<Event> Ipomset::target_events() const {
    std::vector<Event> out;
    for (Event e = 0; e < labels_.size(); ++e)
        if (target_[e]) out.push_back(e);
    sort_by_event_order(out, evord_);
    return out;
}

Conclist Ipomset::source_conclist() const { return labels_of(source_events(), labels_); }
Conclist Ipomset::target_conclist() const { return labels_of(target_events(), labels_); }

bool Ipomset::is_identity() const { return sparse_.size() == 1 && sparse_.front().is_identity(); }

RawIpomset Ipomset::raw() const {
    RawIpomset r;
    r.labels = labels_;
    r.source = source_;
    r.target = target_;
    const std::size_t n = labels_.size();
    for (Event x = 0; x < n; ++x)
        for (Event y = 0; y < n; ++y) {
            if (prec_(x, y)) r.precedence.emplace_back(x, y);
            if (evord_(x, y)) r.event_order.emplace_back(x, y);
        }
    return r;
}

std::size_t width(const Ipomset& p) {
    std::size_t w = 0;
    for (const Step& s : p.sparse_word()) w = std::max(w, s.width());
    return w;
}

std::size_t twice_size(const Ipomset& p) {
    std::size_t t = 2 * p.event_count();
    for (Event e = 0; e < p.event_count(); ++e) t -= (p.in_source(e) ? 1 : 0) + (p.in_target(e) ? 1 : 0);
    return t;
}

double size(const Ipomset& p) { return static_cast<double>(twice_size(p)) / 2.0; }

bool equal(const Ipomset& p, const Ipomset& q) { return p == q; }

Ipomset glue(const Ipomset& p, const Ipomset& q) {
    if (p.target_conclist() != q.source_conclist())
        throw InterfaceMismatch(0, "cannot glue: target " + to_string(p.target_conclist()) + " differs from source " +
                                       to_string(q.source_conclist()));
    const std::size_t np = p.event_count(), nq = q.event_count();
    std::vector<Event> map_q(nq);
    auto tp = p.target_events();
    auto sq = q.source_events();
    for (std::size_t i = 0; i < sq.size(); ++i) map_q[sq[i]] = tp[i];
    std::vector<Label> labels;
    for (Event e = 0; e < np; ++e) labels.push_back(p.label(e));
    for (Event e = 0; e < nq; ++e) {
        if (q.in_source(e)) continue;
        map_q[e] = labels.size();
        labels.push_back(q.label(e));
    }
    const std::size_t n = labels.size();
    std::vector<bool> src(n, false), tgt(n, false);
    Relation prec(n), evord(n);
    for (Event e = 0; e < np; ++e) src[e] = p.in_source(e);
    for (Event e = 0; e < nq; ++e) tgt[map_q[e]] = q.in_target(e);
    for (Event x = 0; x < np; ++x)
        for (Event y = 0; y < np; ++y) {
            if (p.precedes(x, y)) prec.set(x, y);
            if (p.event_before(x, y)) evord.set(x, y);
        }
    for (Event x = 0; x < nq; ++x)
        for (Event y = 0; y < nq; ++y) {
            if (q.precedes(x, y)) prec.set(map_q[x], map_q[y]);
            if (q.event_before(x, y)) evord.set(map_q[x], map_q[y]);
        }
    for (Event x = 0; x < np; ++x) {
        if (p.in_target(x)) continue;
        for (Event y = 0; y < nq; ++y)
            if (!q.in_source(y)) prec.set(x, map_q[y]);
    }
    evord.close_transitively();
    if (!evord.irreflexive()) throw Error("glue produced a cyclic event order");
    return IpomsetBuilder::make(std::move(labels), std::move(src), std::move(tgt), std::move(prec), std::move(evord));
}

Ipomset parallel(const Ipomset& p, const Ipomset& q) {
    const std::size_t np = p.event_count(), nq = q.event_count(), n = np + nq;
    // a precedence pair on each side is a 2+2
    if (p.precedence().pair_count() > 0 && q.precedence().pair_count() > 0)
        throw InvalidIpomset({{IpomsetViolationKind::not_interval, {}, "both operands of a parallel composition have precedence"}});
    std::vector<Label> labels;
    std::vector<bool> src(n), tgt(n);
    Relation prec(n), evord(n);
    for (Event e = 0; e < np; ++e) {
        labels.push_back(p.label(e));
        src[e] = p.in_source(e);
        tgt[e] = p.in_target(e);
    }
    for (Event e = 0; e < nq; ++e) {
        labels.push_back(q.label(e));
        src[np + e] = q.in_source(e);
        tgt[np + e] = q.in_target(e);
    }
    for (Event x = 0; x < np; ++x)
        for (Event y = 0; y < np; ++y) {
            if (p.precedes(x, y)) prec.set(x, y);
            if (p.event_before(x, y)) evord.set(x, y);
        }
    for (Event x = 0; x < nq; ++x)
        for (Event y = 0; y < nq; ++y) {
            if (q.precedes(x, y)) prec.set(np + x, np + y);
            if (q.event_before(x, y)) evord.set(np + x, np + y);
        }
    for (Event x = 0; x < np; ++x)
        for (Event y = 0; y < nq; ++y) evord.set(x, np + y);
    return IpomsetBuilder::make(std::move(labels), std::move(src), std::move(tgt), std::move(prec), std::move(evord));
}

Ipomset compose(const StepWord& w) {
    if (w.empty()) throw Error("cannot compose an empty step word");
    check_composable(w);
    constexpr long never = LONG_MAX;
    std::vector<Label> labels;
    std::vector<long> begin, end;
    std::vector<Event> active;
    std::vector<std::pair<Event, Event>> above;
    auto record = [&] {
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j) above.emplace_back(active[i], active[j]);
    };
    for (const Label& l : w.front().source()) {
        active.push_back(labels.size());
        labels.push_back(l);
        begin.push_back(-1);
        end.push_back(never);
    }
    record();
    for (std::size_t t = 0; t < w.size(); ++t) {
        const Step& s = w[t];
        const long now = static_cast<long>(t);
        if (s.kind == StepKind::starter) {
            std::vector<Event> next;
            std::size_t p = 0;
            for (std::size_t i = 0; i < s.conclist.size(); ++i) {
                if (s.marked[i]) {
                    next.push_back(labels.size());
                    labels.push_back(s.conclist[i]);
                    begin.push_back(now);
                    end.push_back(never);
                } else {
                    next.push_back(active[p++]);
                }
            }
            active = std::move(next);
            record();
        } else if (s.kind == StepKind::terminator) {
            std::vector<Event> next;
            for (std::size_t i = 0; i < s.conclist.size(); ++i) {
                if (s.marked[i])
                    end[active[i]] = now;
                else
                    next.push_back(active[i]);
            }
            active = std::move(next);
        }
    }
    const std::size_t n = labels.size();
    std::vector<bool> src(n), tgt(n);
    Relation prec(n), evord(n);
    for (Event x = 0; x < n; ++x) {
        src[x] = begin[x] < 0;
        tgt[x] = end[x] == never;
        for (Event y = 0; y < n; ++y)
            if (end[x] < begin[y]) prec.set(x, y);
    }
    for (auto [x, y] : above) evord.set(x, y);
    evord.close_transitively();
    if (!evord.irreflexive()) throw Error("composition produced a cyclic event order");
    return IpomsetBuilder::make(std::move(labels), std::move(src), std::move(tgt), std::move(prec), std::move(evord));
}

Ipomset to_ipomset(const Step& s) { return compose(StepWord{s}); }

StepWord sparse_decomposition(const Ipomset& p) { return p.sparse_word(); }

StepWord dense_decomposition(const Ipomset& p) {
    if (twice_size(p) == 0) throw IdentityHasNoDenseDecomposition();
    const std::size_t n = p.event_count();
    std::vector<bool> started(n), done(n, false);
    for (Event e = 0; e < n; ++e) started[e] = p.in_source(e);
    std::vector<Event> active = p.source_events();
    const Relation& evord = p.event_order();
    StepWord out;

    auto least = [&](const std::vector<Event>& es) {
        Event best = es.front();
        for (Event e : es)
            if (evord(e, best)) best = e;
        return best;
    };
    auto labels = [&] {
        Conclist u;
        for (Event e : active) u.push_back(p.label(e));
        return u;
    };
    auto finished = [&] {
        for (Event e = 0; e < n; ++e)
            if (!started[e] || (!p.in_target(e) && !done[e])) return false;
        return true;
    };
    while (!finished()) {
        std::vector<Event> startable;
        for (Event x = 0; x < n; ++x) {
            if (started[x]) continue;
            bool ok = true;
            for (Event y = 0; y < n && ok; ++y)
                if (p.precedes(y, x) && !done[y]) ok = false;
            if (ok) startable.push_back(x);
        }
        if (!startable.empty()) {
            Event x = least(startable);
            started[x] = true;
            active.push_back(x);
            sort_by_event_order(active, evord);
            std::vector<bool> marked(active.size());
            for (std::size_t i = 0; i < active.size(); ++i) marked[i] = active[i] == x;
            out.push_back(Step::starter(labels(), std::move(marked)));
            continue;
        }
        std::vector<Event> terminable;
        for (Event x : active) {
            if (p.in_target(x)) continue;
            bool ok = true;
            for (Event y = 0; y < n && ok; ++y)
                if (!started[y] && !p.precedes(x, y)) ok = false;
            if (ok) terminable.push_back(x);
        }
        if (terminable.empty()) throw Error("dense decomposition got stuck");
        Event x = least(terminable);
        std::vector<bool> marked(active.size());
        for (std::size_t i = 0; i < active.size(); ++i) marked[i] = active[i] == x;
        out.push_back(Step::terminator(labels(), std::move(marked)));
        done[x] = true;
        active.erase(std::find(active.begin(), active.end(), x));
    }
    return out;
}

Ipomset parse_ipomset(std::string_view text) { return compose(parse_step_word(text)); }

std::string print_ipomset(const Ipomset& p) { return p.key(); }

} // namespace hda

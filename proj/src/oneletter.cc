#include "hda/oneletter.hh"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hda/path.hh"

namespace hda {

std::string_view to_string(UpViolationKind k) {
    switch (k) {
        case UpViolationKind::bad_shape: return "BadShape";
        case UpViolationKind::zero_value: return "ZeroValue";
        case UpViolationKind::drop_too_steep: return "DropTooSteep";
        case UpViolationKind::tau_out_of_range: return "TauOutOfRange";
    }
    return "?";
}

namespace {

std::string describe(const std::vector<UpViolation>& v) {
    std::string out = "invalid ultimately periodic function";
    for (const auto& x : v) out += "; " + std::string(to_string(x.kind)) + ": " + x.message;
    return out;
}

} // namespace

InvalidUpFunction::InvalidUpFunction(std::vector<UpViolation> v) : Error(describe(v)), violations_(std::move(v)) {}

std::vector<UpViolation> up_violations(const UpFunction& phi) {
    std::vector<UpViolation> out;
    const std::size_t len = phi.s + phi.r;
    if (phi.r == 0) out.push_back({UpViolationKind::bad_shape, 0, "period r must be at least 1"});
    if (phi.f.size() != len || phi.tau.size() != len) {
        out.push_back({UpViolationKind::bad_shape, 0,
                       "f and tau need s+r = " + std::to_string(len) + " entries, got " +
                           std::to_string(phi.f.size()) + " and " + std::to_string(phi.tau.size())});
        return out;
    }
    if (phi.r == 0) return out;
    for (std::size_t n = 0; n < len; ++n) {
        if (phi.f[n] == 0) out.push_back({UpViolationKind::zero_value, n, "f(" + std::to_string(n) + ") = 0"});
        const std::size_t next = n + 1 < len ? n + 1 : phi.s;
        if (phi.f[next] + 1 < phi.f[n])
            out.push_back({UpViolationKind::drop_too_steep, n,
                           "f(" + std::to_string(n + 1) + ") = " + std::to_string(phi.f[next]) + " < f(" +
                               std::to_string(n) + ") - 1 = " + std::to_string(phi.f[n] - 1)});
        for (std::size_t k : phi.tau[n])
            if (k > phi.f[n])
                out.push_back({UpViolationKind::tau_out_of_range, n,
                               "tau(" + std::to_string(n) + ") contains " + std::to_string(k) + " > f(" +
                                   std::to_string(n) + ") = " + std::to_string(phi.f[n])});
    }
    return out;
}

UpFunction validate_up(UpFunction phi) {
    auto v = up_violations(phi);
    if (!v.empty()) throw InvalidUpFunction(std::move(v));
    for (auto& t : phi.tau) {
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
    }
    return phi;
}

std::size_t wrap_index(const UpFunction& phi, std::size_t n) {
    const std::size_t len = phi.s + phi.r;
    if (n < len) return n;
    const std::size_t steps = (n - len + 1 + phi.r - 1) / phi.r;  // ceil((n-s-r+1)/r)
    return n - phi.r * steps;
}

UpFunction minimize_period(const UpFunction& phi) {
    auto same = [&](std::size_t a, std::size_t b) {
        a = wrap_index(phi, a);
        b = wrap_index(phi, b);
        return phi.f[a] == phi.f[b] && phi.tau[a] == phi.tau[b];
    };
    std::size_t r = phi.r;
    for (std::size_t d = 1; d <= phi.r; ++d) {
        if (phi.r % d) continue;
        bool ok = true;
        for (std::size_t n = phi.s; n < phi.s + phi.r && ok; ++n) ok = same(n, n + d);
        if (ok) {
            r = d;
            break;
        }
    }
    std::size_t s = phi.s;
    while (s > 0 && same(s - 1, s - 1 + r)) --s;
    UpFunction out{r, s, {}, {}};
    for (std::size_t n = 0; n < s + r; ++n) {
        out.f.push_back(phi.f[wrap_index(phi, n)]);
        out.tau.push_back(phi.tau[wrap_index(phi, n)]);
    }
    return out;
}

Hda build(const UpFunction& raw_phi, const Label& letter) {
    const UpFunction phi = validate_up(raw_phi);
    auto name = [](std::size_t k, std::size_t n) { return "x" + std::to_string(k) + "_" + std::to_string(n); };
    RawHda x;
    x.alphabet = {letter};
    const std::size_t len = phi.s + phi.r;
    for (std::size_t k = 0;; ++k) {
        bool any = false;
        for (std::size_t n = 0; n < len; ++n) {
            if (k > phi.f[n]) continue;
            any = true;
            RawCell c{name(k, n), Conclist(k, letter), {}, {}};
            const std::size_t next = wrap_index(phi, n + 1);
            for (std::size_t i = 0; i < k; ++i) {
                c.d0.push_back(name(k - 1, n));
                c.d1.push_back(name(k - 1, next));
            }
            if (std::binary_search(phi.tau[n].begin(), phi.tau[n].end(), k)) x.accept.push_back(c.id);
            x.cells.push_back(std::move(c));
        }
        if (!any) break;
    }
    x.start = {name(0, 0)};
    return Hda(x);
}

OneLetterError::OneLetterError(Kind k, const std::string& msg) : Error(msg), kind_(k) {}

std::string_view to_string(OneLetterError::Kind k) {
    switch (k) {
        case OneLetterError::Kind::not_one_letter: return "NotOneLetter";
        case OneLetterError::Kind::not_deterministic: return "NotDeterministic";
        case OneLetterError::Kind::not_accessible: return "NotAccessible";
        case OneLetterError::Kind::multiple_start_cells: return "MultipleStartCells";
    }
    return "?";
}

UpFunction analyze(const Hda& x) {
    using K = OneLetterError::Kind;
    if (x.alphabet().size() != 1) throw OneLetterError(K::not_one_letter, "alphabet has more than one letter");
    auto starts = x.start_cells();
    if (starts.size() != 1 || x.cell_dim(starts.front()) != 0)
        throw OneLetterError(K::multiple_start_cells, "exactly one start cell, a vertex, is required");
    const CellId v0 = starts.front();

    std::vector<bool> seen(x.cell_count(), false);
    std::vector<CellId> stack{v0};
    seen[v0] = true;
    while (!stack.empty()) {
        CellId c = stack.back();
        stack.pop_back();
        std::vector<CellId> next;
        for (const Coface& cf : x.cofaces(c)) next.push_back(cf.cell);
        for (std::size_t i = 0; i < x.cell_dim(c); ++i) next.push_back(x.upper(c, i));
        for (CellId d : next)
            if (!seen[d]) {
                seen[d] = true;
                stack.push_back(d);
            }
    }
    for (CellId c = 0; c < x.cell_count(); ++c)
        if (!seen[c]) throw OneLetterError(K::not_accessible, "cell " + x.name(c) + " is not reachable");

    for (CellId c = 0; c < x.cell_count(); ++c) {
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ups;
        for (const Coface& cf : x.cofaces(c))
            if (++ups[{x.cell_dim(cf.cell), cf.positions}] > 1)
                throw OneLetterError(K::not_deterministic,
                                     "two cells of dimension " + std::to_string(x.cell_dim(cf.cell)) +
                                         " start from " + x.name(c) + " at the same positions");
    }

    // Vertices are cells; the sink (if needed) is numbered cell_count().
    const CellId sink = x.cell_count();
    auto suc = [&](CellId v) -> CellId {
        if (v == sink) return sink;
        for (const Coface& cf : x.cofaces(v))
            if (x.cell_dim(cf.cell) == 1) return x.upper(cf.cell, 0);
        return sink;
    };
    std::vector<CellId> seq;
    std::map<CellId, std::size_t> first;
    for (CellId v = v0; !first.count(v); v = suc(v)) {
        first[v] = seq.size();
        seq.push_back(v);
    }
    const std::size_t s0 = first.at(suc(seq.back()));
    const std::size_t r0 = seq.size() - s0;

    // Each cell is based at its lowest vertex.
    std::map<CellId, std::size_t> top;
    std::map<CellId, std::vector<std::size_t>> accepting;
    for (CellId c = 0; c < x.cell_count(); ++c) {
        std::vector<std::size_t> all(x.cell_dim(c));
        std::iota(all.begin(), all.end(), 0);
        CellId base = face(x, c, 0, all);
        top[base] = std::max(top[base], x.cell_dim(c));
        if (x.is_accept(c)) accepting[base].push_back(x.cell_dim(c));
    }
    UpFunction phi{r0, s0, {}, {}};
    for (CellId v : seq) {
        phi.f.push_back(v == sink ? 1 : std::max<std::size_t>(1, top[v]));
        auto t = accepting[v];
        std::sort(t.begin(), t.end());
        phi.tau.push_back(t);
    }
    return minimize_period(phi);
}

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view t) : text_(t) {}

    std::size_t pos() const { return pos_; }
    bool done() const { return pos_ == text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }

    void expect(std::string_view lit) {
        if (text_.substr(pos_, lit.size()) != lit) throw SyntaxError(pos_, "expected \"" + std::string(lit) + "\"");
        pos_ += lit.size();
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    std::size_t number() {
        const std::size_t start = pos_;
        std::size_t v = 0;
        while (!done() && peek() >= '0' && peek() <= '9') {
            if (v > 1'000'000) throw SyntaxError(start, "number too large");
            v = v * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
        }
        if (pos_ == start) throw SyntaxError(start, "expected a number");
        return v;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

UpFunction parse_up(std::string_view text) {
    Cursor c(text);
    UpFunction phi;
    c.expect("r=");
    phi.r = c.number();
    c.expect(" s=");
    phi.s = c.number();
    c.expect(" f=");
    do phi.f.push_back(c.number());
    while (c.accept(','));
    c.expect(" tau=");
    do {
        c.expect("{");
        std::vector<std::size_t> t;
        if (!c.accept('}')) {
            do t.push_back(c.number());
            while (c.accept(','));
            c.expect("}");
        }
        phi.tau.push_back(std::move(t));
    } while (c.accept(';'));
    if (!c.done()) throw SyntaxError(c.pos(), "unexpected trailing text");
    return phi;
}

std::string print_up(const UpFunction& phi) {
    std::string out = "r=" + std::to_string(phi.r) + " s=" + std::to_string(phi.s) + " f=";
    for (std::size_t n = 0; n < phi.f.size(); ++n) out += (n ? "," : "") + std::to_string(phi.f[n]);
    out += " tau=";
    for (std::size_t n = 0; n < phi.tau.size(); ++n) {
        out += n ? ";{" : "{";
        for (std::size_t i = 0; i < phi.tau[n].size(); ++i) out += (i ? "," : "") + std::to_string(phi.tau[n][i]);
        out += "}";
    }
    return out;
}

} // namespace hda

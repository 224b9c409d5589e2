#include "hda/step.hh"

#include <algorithm>

#include "hda/error.hh"

namespace hda {

std::string to_string(const Conclist& u) {
    std::string out = "[";
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i > 0) out += ' ';
        out += u[i];
    }
    return out + "]";
}

bool is_label(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

Alphabet::Alphabet(std::vector<Label> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error("alphabet is empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (!is_label(symbols_[i])) throw Error("bad label '" + symbols_[i] + "' in alphabet");
        for (std::size_t j = 0; j < i; ++j)
            if (symbols_[i] == symbols_[j]) throw Error("duplicate label '" + symbols_[i] + "' in alphabet");
    }
}

bool Alphabet::contains(const Label& l) const {
    return std::find(symbols_.begin(), symbols_.end(), l) != symbols_.end();
}

Alphabet Alphabet::merged(const Alphabet& other) const {
    std::vector<Label> out = symbols_;
    for (const Label& l : other.symbols_)
        if (!contains(l)) out.push_back(l);
    return Alphabet(std::move(out));
}

Step Step::identity(Conclist u) {
    Step s;
    s.kind = StepKind::identity;
    s.marked.assign(u.size(), false);
    s.conclist = std::move(u);
    return s;
}

namespace {

Step make_marked(StepKind kind, Conclist u, std::vector<bool> marked) {
    if (marked.size() != u.size()) throw Error("marked set does not fit the conclist");
    if (std::none_of(marked.begin(), marked.end(), [](bool b) { return b; }))
        return Step::identity(std::move(u));
    Step s;
    s.kind = kind;
    s.conclist = std::move(u);
    s.marked = std::move(marked);
    return s;
}

} // namespace

Step Step::starter(Conclist u, std::vector<bool> marked) {
    return make_marked(StepKind::starter, std::move(u), std::move(marked));
}

Step Step::terminator(Conclist u, std::vector<bool> marked) {
    return make_marked(StepKind::terminator, std::move(u), std::move(marked));
}

std::size_t Step::marked_count() const {
    return static_cast<std::size_t>(std::count(marked.begin(), marked.end(), true));
}

std::vector<std::size_t> Step::marked_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < marked.size(); ++i)
        if (marked[i]) out.push_back(i);
    return out;
}

Conclist Step::source() const {
    if (kind != StepKind::starter) return conclist;
    Conclist out;
    for (std::size_t i = 0; i < conclist.size(); ++i)
        if (!marked[i]) out.push_back(conclist[i]);
    return out;
}

Conclist Step::target() const {
    if (kind != StepKind::terminator) return conclist;
    Conclist out;
    for (std::size_t i = 0; i < conclist.size(); ++i)
        if (!marked[i]) out.push_back(conclist[i]);
    return out;
}

std::string to_string(const Step& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.conclist.size(); ++i) {
        if (i > 0) out += ' ';
        out += s.conclist[i];
        if (s.marked[i]) out += s.kind == StepKind::starter ? '+' : '-';
    }
    return out + "]";
}

std::string to_string(const StepWord& w) {
    std::string out;
    for (const Step& s : w) out += to_string(s);
    return out;
}

StepWord parse_step_word(std::string_view text) {
    auto is_label_char = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    };
    StepWord out;
    std::size_t pos = 0;
    if (text.empty()) throw SyntaxError(0, "empty input");
    while (pos < text.size()) {
        if (text[pos] != '[') throw SyntaxError(pos, "expected '['");
        ++pos;
        Conclist labels;
        std::vector<bool> marked;
        char marker = 0;
        std::size_t marker_pos = 0;
        if (pos < text.size() && text[pos] == ']') {
            ++pos;
            out.push_back(Step::identity({}));
            continue;
        }
        while (true) {
            std::size_t begin = pos;
            while (pos < text.size() && is_label_char(text[pos])) ++pos;
            if (pos == begin) throw SyntaxError(pos, "expected a label");
            labels.emplace_back(text.substr(begin, pos - begin));
            bool m = false;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
                if (marker != 0 && marker != text[pos])
                    throw SyntaxError(pos, "bracket mixes '+' and '-' (first marker at " +
                                               std::to_string(marker_pos) + ")");
                if (marker == 0) marker_pos = pos;
                marker = text[pos];
                m = true;
                ++pos;
            }
            marked.push_back(m);
            if (pos >= text.size()) throw SyntaxError(pos, "unterminated bracket");
            if (text[pos] == ']') {
                ++pos;
                break;
            }
            if (text[pos] != ' ') throw SyntaxError(pos, "expected ' ' or ']'");
            ++pos;
        }
        if (marker == '+')
            out.push_back(Step::starter(std::move(labels), std::move(marked)));
        else if (marker == '-')
            out.push_back(Step::terminator(std::move(labels), std::move(marked)));
        else
            out.push_back(Step::identity(std::move(labels)));
    }
    return out;
}

bool is_sparse(const StepWord& w) {
    if (w.empty()) return false;
    if (w.size() == 1) return true;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].is_identity()) return false;
        if (i > 0 && w[i].kind == w[i - 1].kind) return false;
    }
    return true;
}

void check_composable(const StepWord& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i - 1].target() != w[i].source())
            throw InterfaceMismatch(i, "step " + std::to_string(i) + " " + to_string(w[i]) +
                                           " does not continue target " + to_string(w[i - 1].target()));
    }
}

StepWord merge_steps(const StepWord& w) {
    if (w.empty()) throw Error("empty step word");
    check_composable(w);
    StepWord out;
    for (const Step& s : w) {
        if (s.is_identity()) continue;
        if (out.empty() || out.back().kind != s.kind) {
            out.push_back(s);
            continue;
        }
        Step& prev = out.back();
        if (s.kind == StepKind::starter) {
            // prev's conclist is s's conclist without s's marked positions
            std::vector<bool> m = s.marked;
            std::size_t p = 0;
            for (std::size_t i = 0; i < s.conclist.size(); ++i) {
                if (s.marked[i]) continue;
                if (prev.marked[p]) m[i] = true;
                ++p;
            }
            prev = Step::starter(s.conclist, std::move(m));
        } else {
            // s's conclist is prev's conclist without prev's marked positions
            std::vector<bool> m = prev.marked;
            std::size_t p = 0;
            for (std::size_t i = 0; i < prev.conclist.size(); ++i) {
                if (prev.marked[i]) continue;
                if (s.marked[p]) m[i] = true;
                ++p;
            }
            prev = Step::terminator(prev.conclist, std::move(m));
        }
    }
    if (out.empty()) out.push_back(Step::identity(w.front().source()));
    return out;
}

StepWord coherent_word(const StepWord& w) {
    if (w.size() == 1 && w.front().is_identity()) return w;
    StepWord out;
    for (const Step& s : w) {
        if (s.is_identity()) continue;
        if (out.empty()) out.push_back(Step::identity(s.source()));
        out.push_back(s);
        out.push_back(Step::identity(s.target()));
    }
    if (out.empty()) out.push_back(Step::identity(w.front().source()));
    return out;
}

} // namespace hda

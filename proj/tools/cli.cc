#include "cli.hh"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "hda/decide.hh"
#include "hda/hda_io.hh"
#include "hda/oneletter.hh"
#include "hda/path.hh"
#include "hda/st.hh"

namespace hdatool {

namespace {

using namespace hda;

struct Record {
    std::string status;
    std::vector<std::pair<std::string, std::string>> fields;

    Record& add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }
};

Record verdict(bool holds) { return Record{holds ? "true" : "false", {}}; }

/// An input problem reported as status=error.
struct InputError {
    std::string kind;
    std::string detail;
    std::vector<std::pair<std::string, std::string>> fields;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

void print(std::ostream& out, const Record& r, bool json) {
    if (json) {
        nlohmann::ordered_json j;
        j["status"] = r.status;
        for (const auto& [k, v] : r.fields) j[k] = v;
        out << j.dump() << "\n";
        return;
    }
    out << "status=" << r.status;
    for (const auto& [k, v] : r.fields) out << " " << k << "=" << quote(v);
    out << "\n";
}

Hda load(const std::string& path) {
    try {
        return load_hda(path);
    } catch (const InvalidHda& e) {
        std::string kinds;
        for (const auto& v : e.violations()) {
            std::string k(to_string(v.kind));
            if (kinds.find(k) == std::string::npos) kinds += (kinds.empty() ? "" : ",") + k;
        }
        throw InputError{"InvalidHda", e.what(), {{"file", path}, {"violations", kinds}}};
    } catch (const FormatError& e) {
        throw InputError{"FormatError", e.what(), {{"file", path}}};
    }
}

Ipomset parse_argument(const std::string& text) {
    try {
        return parse_ipomset(text);
    } catch (const SyntaxError& e) {
        throw InputError{"SyntaxError", e.what(), {{"argument", text}, {"position", std::to_string(e.position())}}};
    } catch (const InterfaceMismatch& e) {
        throw InputError{"InterfaceMismatch", e.what(),
                         {{"argument", text}, {"position", std::to_string(e.position())}}};
    } catch (const InvalidIpomset& e) {
        throw InputError{"InvalidIpomset", e.what(), {{"argument", text}}};
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f || !(f << text)) throw InputError{"IoError", "cannot write " + path, {{"file", path}}};
}

struct Options {
    std::string hda1, hda2, ipomset, output, up;
    std::optional<std::size_t> k;
    std::size_t m = 0, r_max = 3;
    bool dense = false;
};

std::size_t width_bound(const Options& o, const Hda& x) { return o.k ? *o.k : x.dim(); }

Record cmd_validate(const Options& o) {
    Hda x;
    try {
        x = load(o.hda1);
    } catch (const InputError& e) {
        if (e.kind != "InvalidHda") throw;
        Record r = verdict(false);
        for (const auto& f : e.fields) r.add(f.first, f.second);
        return r.add("detail", e.detail);
    }
    return verdict(true)
        .add("cells", std::to_string(x.cell_count()))
        .add("dim", std::to_string(x.dim()))
        .add("detail", "valid HDA");
}

Record cmd_member(const Options& o) {
    const Language l(load(o.hda1));
    const Ipomset p = parse_argument(o.ipomset);
    const bool in = member(l, p);
    return verdict(in).add("ipomset", print_ipomset(p)).add("detail", in ? "accepted" : "not accepted");
}

Record cmd_include(const Options& o) {
    const Language l1(load(o.hda1)), l2(load(o.hda2));
    const InclusionVerdict v = include(l1, l2);
    Record r = verdict(v.holds);
    if (v.counterexample) r.add("witness", print_ipomset(*v.counterexample));
    return r.add("detail", v.holds ? "first language is included in the second"
                                   : "witness is accepted by the first HDA only");
}

Record cmd_equiv(const Options& o) {
    const Language l1(load(o.hda1)), l2(load(o.hda2));
    const EquivalenceVerdict v = equivalent(l1, l2);
    Record r = verdict(v.holds);
    if (v.counterexample)
        r.add("witness", print_ipomset(*v.counterexample)).add("side", v.in_first ? "first" : "second");
    return r.add("detail", v.holds ? "languages are equal"
                                   : std::string("witness is accepted by the ") + (v.in_first ? "first" : "second") +
                                         " HDA only");
}

Record cmd_empty(const Options& o) {
    const EmptinessVerdict v = empty(Language(load(o.hda1)));
    Record r = verdict(v.empty);
    if (v.witness) r.add("witness", print_ipomset(*v.witness));
    return r.add("detail", v.empty ? "language is empty" : "witness is accepted");
}

Record cmd_intersect(const Options& o) {
    const Hda x = product(load(o.hda1), load(o.hda2));
    write_file(o.output, print_hda_json(x));
    return verdict(true).add("cells", std::to_string(x.cell_count())).add("output", o.output);
}

Record cmd_complement_member(const Options& o) {
    const Language l(load(o.hda1));
    const Ipomset p = parse_argument(o.ipomset);
    const std::size_t k = width_bound(o, l.hda());
    std::optional<Ipomset> w;
    try {
        w = complement_witness([&](const Ipomset& q) { return member(l, q); }, k, p);
    } catch (const WidthExceeded& e) {
        throw InputError{"WidthExceeded", e.what(), {{"k", std::to_string(k)}}};
    }
    Record r = verdict(w.has_value());
    r.add("k", std::to_string(k));
    if (w) r.add("witness", print_ipomset(*w));
    return r.add("detail", w ? "witness lies above the ipomset and outside the language"
                             : "every ipomset above it of bounded width is accepted");
}

Record cmd_complement_empty(const Options& o) {
    const Language l(load(o.hda1));
    const std::size_t k = width_bound(o, l.hda());
    const EmptinessVerdict v = complement_empty(l, k);
    Record r = verdict(v.empty);
    r.add("k", std::to_string(k));
    if (v.witness) r.add("witness", print_ipomset(*v.witness));
    return r.add("detail", v.empty ? "every ipomset of bounded width is accepted" : "witness is not accepted");
}

Record cmd_deterministic(const Options& o) {
    const LanguageDeterminism d = is_deterministic_language(Language(load(o.hda1)));
    Record r = verdict(d.deterministic);
    if (d.pair) {
        r.add("lower", print_ipomset(d.pair->first)).add("upper", print_ipomset(d.pair->second));
        if (d.separator) r.add("witness", print_ipomset(*d.separator));
        r.add("detail", std::string("witness continues only the ") + (d.separator_in_first ? "lower" : "upper") +
                            " prefix");
    } else {
        r.add("detail", "prefix quotients agree along subsumption");
    }
    return r;
}

Record cmd_deterministic_hda(const Options& o) {
    const Hda x = load(o.hda1);
    const StructuralDeterminism d = is_deterministic_hda(x);
    Record r = verdict(d.deterministic);
    std::string all;
    for (const auto& v : d.violations) all += (all.empty() ? "" : "; ") + describe(x, v);
    if (!d.deterministic) r.add("violations", std::to_string(d.violations.size()));
    return r.add("detail", d.deterministic ? "structurally deterministic" : all);
}

Record cmd_count_paths(const Options& o) {
    const Hda x = load(o.hda1);
    const Ipomset p = parse_argument(o.ipomset);
    try {
        return verdict(true).add("count", std::to_string(count_sparse_accepting_paths(x, p)));
    } catch (const Error& e) {
        throw InputError{"Overflow", e.what(), {}};
    }
}

Record cmd_pump(const Options& o) {
    const Hda x = load(o.hda1);
    const Ipomset p = parse_argument(o.ipomset);
    StepWord steps;
    if (o.dense) {
        if (p.is_identity()) throw InputError{"DecompositionTooShort", "identities have no dense decomposition", {}};
        steps = dense_decomposition(p);
    } else {
        steps = p.sparse_word();
    }
    std::vector<Ipomset> pieces;
    for (const Step& s : steps) pieces.push_back(to_ipomset(s));
    PumpWitness w;
    try {
        w = pump(x, pieces, o.m, o.r_max);
    } catch (const NotAccepted& e) {
        throw InputError{"NotAccepted", e.what(), {}};
    } catch (const DecompositionTooShort& e) {
        throw InputError{"DecompositionTooShort", e.what(), {{"pieces", std::to_string(pieces.size())}}};
    }
    std::string rejected;
    for (std::size_t r = 1; r <= w.accepted.size(); ++r)
        if (!w.accepted[r - 1]) rejected += (rejected.empty() ? "" : ",") + std::to_string(r);
    Record rec = verdict(w.all_accepted());
    rec.add("i", std::to_string(w.i)).add("j", std::to_string(w.j)).add("cell", x.name(w.cells[w.i]));
    if (!rejected.empty()) rec.add("rejected", rejected);
    return rec.add("detail", w.all_accepted() ? "every pumped ipomset is accepted"
                                              : "some pumped ipomsets are rejected");
}

Record cmd_st_export(const Options& o) {
    const StAutomaton a = st_of_hda(load(o.hda1));
    write_file(o.output, export_st(a));
    return verdict(true)
        .add("states", std::to_string(a.state_count()))
        .add("transitions", std::to_string(a.transition_count()))
        .add("output", o.output);
}

Record cmd_skeleton(const Options& o) {
    const Hda x = skeleton(load(o.hda1), *o.k);
    write_file(o.output, print_hda_json(x));
    return verdict(true).add("cells", std::to_string(x.cell_count())).add("output", o.output);
}

Record cmd_oneletter_analyze(const Options& o) {
    const Hda x = load(o.hda1);
    try {
        return verdict(true).add("up", print_up(analyze(x)));
    } catch (const OneLetterError& e) {
        throw InputError{std::string(to_string(e.kind())), e.what(), {{"file", o.hda1}}};
    }
}

Record cmd_oneletter_build(const Options& o) {
    UpFunction phi;
    try {
        phi = parse_up(o.up);
    } catch (const SyntaxError& e) {
        throw InputError{"SyntaxError", e.what(), {{"argument", o.up}, {"position", std::to_string(e.position())}}};
    }
    Hda x;
    try {
        x = build(phi);
    } catch (const InvalidUpFunction& e) {
        std::string kinds;
        for (const auto& v : e.violations()) {
            std::string k(to_string(v.kind));
            if (kinds.find(k) == std::string::npos) kinds += (kinds.empty() ? "" : ",") + k;
        }
        throw InputError{"InvalidUpFunction", e.what(), {{"violations", kinds}}};
    }
    write_file(o.output, print_hda_json(x));
    return verdict(true).add("cells", std::to_string(x.cell_count())).add("output", o.output);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decision procedures for higher-dimensional automata", "hdatool"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "record style")->check(CLI::IsMember({"text", "json"}));

    Options o;
    std::function<Record(const Options&)> action;
    auto command = [&](CLI::App* sub, std::function<Record(const Options&)> f) {
        sub->callback([&action, f] { action = f; });
        return sub;
    };
    auto hda_arg = [&](CLI::App* sub, std::string& target, const char* name) {
        sub->add_option(name, target, "HDA file")->required();
    };

    auto* validate = command(app.add_subcommand("validate", "check an HDA file"), cmd_validate);
    hda_arg(validate, o.hda1, "hda");

    auto* mem = command(app.add_subcommand("member", "ipomset membership"), cmd_member);
    hda_arg(mem, o.hda1, "hda");
    mem->add_option("ipomset", o.ipomset, "step word")->required();

    auto* inc = command(app.add_subcommand("include", "language inclusion"), cmd_include);
    hda_arg(inc, o.hda1, "hda1");
    hda_arg(inc, o.hda2, "hda2");

    auto* eq = command(app.add_subcommand("equiv", "language equivalence"), cmd_equiv);
    hda_arg(eq, o.hda1, "hda1");
    hda_arg(eq, o.hda2, "hda2");

    auto* emp = command(app.add_subcommand("empty", "language emptiness"), cmd_empty);
    hda_arg(emp, o.hda1, "hda");

    auto* inter = command(app.add_subcommand("intersect", "product HDA"), cmd_intersect);
    hda_arg(inter, o.hda1, "hda1");
    hda_arg(inter, o.hda2, "hda2");
    inter->add_option("-o", o.output, "output file")->required();

    auto* cm = command(app.add_subcommand("complement-member", "membership in the width-k complement"),
                       cmd_complement_member);
    hda_arg(cm, o.hda1, "hda");
    cm->add_option("ipomset", o.ipomset, "step word")->required();
    cm->add_option("-k", o.k, "width bound (default: dimension)");

    auto* ce = command(app.add_subcommand("complement-empty", "emptiness of the width-k complement"),
                       cmd_complement_empty);
    hda_arg(ce, o.hda1, "hda");
    ce->add_option("-k", o.k, "width bound (default: dimension)");

    auto* det = command(app.add_subcommand("deterministic", "is the language deterministic"), cmd_deterministic);
    hda_arg(det, o.hda1, "hda");

    auto* deth = command(app.add_subcommand("deterministic-hda", "structural determinism"), cmd_deterministic_hda);
    hda_arg(deth, o.hda1, "hda");

    auto* cp = command(app.add_subcommand("count-paths", "count sparse accepting paths"), cmd_count_paths);
    hda_arg(cp, o.hda1, "hda");
    cp->add_option("ipomset", o.ipomset, "step word")->required();

    auto* pu = command(app.add_subcommand("pump", "pump an accepted ipomset"), cmd_pump);
    hda_arg(pu, o.hda1, "hda");
    pu->add_option("ipomset", o.ipomset, "step word")->required();
    pu->add_option("-m", o.m, "lowest pumping position");
    pu->add_option("-r", o.r_max, "largest repetition count");
    pu->add_flag("--dense", o.dense, "split into elementary steps instead of the sparse decomposition");

    auto* st = command(app.add_subcommand("st-export", "dump the ST-automaton"), cmd_st_export);
    hda_arg(st, o.hda1, "hda");
    st->add_option("-o", o.output, "output file")->required();

    auto* sk = command(app.add_subcommand("skeleton", "cells of dimension at most k"), cmd_skeleton);
    hda_arg(sk, o.hda1, "hda");
    sk->add_option("-k", o.k, "largest dimension")->required();
    sk->add_option("-o", o.output, "output file")->required();

    auto* one = app.add_subcommand("oneletter", "one-letter HDAs and ultimately periodic functions");
    one->require_subcommand(1);
    auto* an = command(one->add_subcommand("analyze", "read off the function"), cmd_oneletter_analyze);
    hda_arg(an, o.hda1, "hda");
    auto* bu = command(one->add_subcommand("build", "build the HDA of a function"), cmd_oneletter_build);
    bu->add_option("up", o.up, "function text")->required();
    bu->add_option("-o", o.output, "output file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        print(out, Record{"error", {{"error", "UsageError"}, {"detail", e.what()}}}, format == "json");
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const bool json = format == "json";
    try {
        const Record r = action(o);
        print(out, r, json);
        return r.status == "true" ? 0 : 1;
    } catch (const InputError& e) {
        Record r{"error", {{"error", e.kind}}};
        for (const auto& f : e.fields) r.add(f.first, f.second);
        r.add("detail", e.detail);
        print(out, r, json);
        err << e.kind << ": " << e.detail << "\n";
        return 2;
    } catch (const Error& e) {
        print(out, Record{"error", {{"error", "Error"}, {"detail", e.what()}}}, json);
        err << e.what() << "\n";
        return 2;
    }
}

} // namespace hdatool

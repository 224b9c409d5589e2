#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "hda/hda.hh"
#include "hda/st.hh"
#include "support/automata_oracles.hh"
#include "support/fixtures.hh"
#include "support/oracles.hh"

using namespace hda;
using fixture::ip;

namespace {

StepWord w(const char* text) { return parse_step_word(text); }

Hda single_vertex() {
    RawHda r;
    r.alphabet = {"a"};
    r.cells = {{"v", {}, {}, {}}};
    r.start = {"v"};
    r.accept = {"v"};
    return Hda(r);
}

std::size_t transitions_of(const StepWord& word) { return word.size() / 2; }

std::vector<Step> naive_steps_from(const std::vector<std::string>& letters, const Conclist& u, std::size_t k) {
    std::vector<Step> out;
    for (const StepWord& word : oracle::coherent_words(letters, k, 1))
        if (word.size() == 3 && word[1].source() == u) out.push_back(word[1]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("st_of_hda on the square with two starts") {
    const Hda x = fixture::square_two_starts();
    const StAutomaton a = st_of_hda(x);
    CHECK(a.state_count() == 9);
    CHECK(a.transition_count() == 14);
    CHECK(a.width_bound() == 2);
    for (const char* word : {"[b]", "[][b+][b]", "[][a+ b+][a b][a- b][b]", "[b][a+ b][a b][a- b][b]",
                             "[][a+ b+][a b][a- b-][]"}) {
        CHECK_MESSAGE(accepts(a, w(word)), word);
        CHECK(oracle::st_accepts(a, w(word)));
    }
    CHECK(!accepts(a, w("[]")));
    CHECK(!accepts(a, w("[][a+][a][a-][]")));
    CHECK(!accepts(a, w("[][b+]")));
    CHECK(!accepts(a, w("[][b+][b][b]")));
}

TEST_CASE("st_of_hda on a single vertex") {
    const StAutomaton a = st_of_hda(single_vertex());
    CHECK(a.state_count() == 1);
    CHECK(a.transition_count() == 0);
    CHECK(accepts(a, w("[]")));
    CHECK(oracle::st_words(a, 3) == std::set<std::string>{"[]"});
}

TEST_CASE("st_of_hda transitions") {
    std::mt19937 rng(2);
    for (int i = 0; i < 50; ++i) {
        const Hda x = fixture::random_hda(rng, {"a", "b"}, 12);
        const StAutomaton a = st_of_hda(x);
        std::size_t expected = 0;
        for (CellId c = 0; c < x.cell_count(); ++c) expected += 2 * ((std::size_t{1} << x.cell_dim(c)) - 1);
        CHECK(a.transition_count() == expected);
        CHECK(a.width_bound() == x.dim());
        CHECK(st_of_hda(x, 3).width_bound() == std::max<std::size_t>(3, x.dim()));
    }
}

TEST_CASE("word_label") {
    const Hda x = fixture::square_two_starts();
    const StAutomaton a = st_of_hda(x);
    const StateId g = x.at("g"), v = x.at("v");
    CHECK(to_string(word_label(a, {{g}, {}})) == "[b]");
    std::size_t t = a.transitions().size();
    for (std::size_t i : a.outgoing(v))
        if (a.transitions()[i].to == g) t = i;
    REQUIRE(t < a.transitions().size());
    CHECK(word_label(a, {{v, g}, {t}}) == w("[][b+][b]"));
    CHECK_THROWS_AS(word_label(a, {{g, v}, {t}}), Error);

    std::mt19937 rng(4);
    for (int i = 0; i < 200; ++i) {
        StPath p{{static_cast<StateId>(rng() % a.state_count())}, {}};
        for (int s = 0; s < 5 && !a.outgoing(p.states.back()).empty(); ++s) {
            const auto& out = a.outgoing(p.states.back());
            const std::size_t tr = out[rng() % out.size()];
            p.transitions.push_back(tr);
            p.states.push_back(a.transitions()[tr].to);
        }
        const StepWord label = word_label(a, p);
        CHECK(label.size() == 2 * p.transitions.size() + 1);
        CHECK(oracle::coherent(label));
        CHECK(is_coherent(label));
    }
}

TEST_CASE("is_coherent") {
    CHECK(is_coherent(w("[]")));
    CHECK(is_coherent(w("[][a+][a]")));
    CHECK(!is_coherent(w("[][]")));
    CHECK(!is_coherent(w("[][a+][b]")));
    CHECK(!is_coherent(w("[a+]")));
    CHECK(!is_coherent(w("[][a+]")));
    CHECK(!is_coherent(StepWord{}));
}

TEST_CASE("conclists_up_to and steps_from") {
    const Alphabet ab({"a", "b"});
    CHECK(conclists_up_to(ab, 2).size() == 7);
    CHECK(conclists_up_to(ab, 0) == std::vector<Conclist>{{}});
    CHECK(steps_from(ab, {}, 2).size() == 6);
    CHECK(steps_from(ab, {"a"}, 2).size() == 5);
    CHECK(steps_from(ab, {"a", "b"}, 2).size() == 3);
    for (const Conclist& u : conclists_up_to(ab, 3)) {
        auto got = steps_from(ab, u, 3);
        std::sort(got.begin(), got.end());
        CHECK(got == naive_steps_from({"a", "b"}, u, 3));
    }
}

TEST_CASE("match_automaton") {
    const std::vector<std::string> letters{"a", "b"};
    const Alphabet ab(letters);
    for (std::size_t k : {1u, 2u}) {
        const StAutomaton m = match_automaton(ab, k);
        CHECK(accepts(m, w("[]")));
        CHECK(accepts(m, w("[][a+][a]")));
        CHECK(!accepts(m, w("[][]")));
        CHECK(!accepts(m, w("[][a+][b]")));
        std::set<std::string> expected;
        for (const StepWord& word : oracle::coherent_words(letters, k, 3)) {
            expected.insert(to_string(word));
            CHECK(width(compose(word)) <= k);
        }
        CHECK(oracle::st_words(m, 3) == expected);
    }
    CHECK(!accepts(match_automaton(ab, 1), w("[][a+ b+][a b]")));
}

TEST_CASE("inclusion") {
    const StAutomaton detour = st_of_hda(fixture::square_with_detour());
    const StAutomaton square = st_of_hda(fixture::square());
    CHECK(inclusion(detour, detour).included);
    CHECK(inclusion(square, detour).included);
    const InclusionResult r = inclusion(detour, square);
    REQUIRE(!r.included);
    REQUIRE(r.counterexample);
    CHECK(compose(*r.counterexample) == oracle::word("abc"));
    CHECK(oracle::st_accepts(detour, *r.counterexample));
    CHECK(!oracle::st_accepts(square, *r.counterexample));

    const StAutomaton none = st_of_hda(fixture::without_accept(fixture::square()));
    CHECK(!inclusion(square, none).included);
    CHECK(inclusion(none, square).included);
    CHECK(inclusion(none, none).included);
}

TEST_CASE("inclusion agrees with word enumeration") {
    std::mt19937 rng(13);
    const std::vector<std::string> letters{"a", "b"};
    int differing = 0;
    for (int round = 0; round < 150; ++round) {
        const std::size_t k = 1 + rng() % 2;
        const StAutomaton a = fixture::random_st(rng, letters, 1 + rng() % 8, k);
        const StAutomaton b = fixture::random_st(rng, letters, 1 + rng() % 8, k);
        const auto words = oracle::st_words(a, 9);
        std::size_t shortest = SIZE_MAX;
        for (const auto& text : words) {
            const StepWord word = parse_step_word(text);
            if (!oracle::st_accepts(b, word)) shortest = std::min(shortest, transitions_of(word));
        }
        const InclusionResult r = inclusion(a, b);
        if (r.included) {
            CHECK(shortest == SIZE_MAX);
        } else {
            ++differing;
            REQUIRE(r.counterexample);
            CHECK(oracle::st_accepts(a, *r.counterexample));
            CHECK(!oracle::st_accepts(b, *r.counterexample));
            const std::size_t len = transitions_of(*r.counterexample);
            CHECK((len == shortest || (shortest == SIZE_MAX && len > 9)));
        }
    }
    CHECK(differing > 10);
}

TEST_CASE("emptiness") {
    const StAutomaton vertex = st_of_hda(single_vertex());
    const EmptinessResult e = emptiness(vertex);
    CHECK(!e.empty);
    CHECK(e.witness == w("[]"));
    CHECK(emptiness(st_of_hda(fixture::without_accept(fixture::square()))).empty);

    RawHda raw = fixture::square().raw();
    raw.cells.push_back({"z", {}, {}, {}});
    raw.accept = {"z"};
    CHECK(emptiness(st_of_hda(Hda(raw))).empty);

    std::mt19937 rng(17);
    for (int round = 0; round < 100; ++round) {
        const StAutomaton a = fixture::random_st(rng, {"a", "b"}, 1 + rng() % 6, 2);
        const auto words = oracle::st_words(a, 6);
        const EmptinessResult r = emptiness(a);
        if (r.empty) {
            CHECK(words.empty());
        } else {
            REQUIRE(r.witness);
            CHECK(oracle::st_accepts(a, *r.witness));
            std::size_t shortest = SIZE_MAX;
            for (const auto& text : words) shortest = std::min(shortest, transitions_of(parse_step_word(text)));
            if (shortest != SIZE_MAX) CHECK(transitions_of(*r.witness) == shortest);
        }
    }
}

TEST_CASE("complement_words") {
    const std::vector<std::string> letters{"a", "b"};
    SUBCASE("empty language") {
        const StAutomaton c = complement_words(st_of_hda(fixture::without_accept(fixture::square())));
        CHECK(accepts(c, w("[]")));
    }
    SUBCASE("the full square is rejected") {
        const StAutomaton a = st_of_hda(fixture::square_two_starts());
        const StAutomaton c = complement_words(a);
        const StepWord par = coherent_word(ip("[a+ b+][a- b-]").sparse_word());
        CHECK(accepts(a, par));
        CHECK(!accepts(c, par));
        CHECK(accepts(c, coherent_word(oracle::word("aa").sparse_word())));
    }
    SUBCASE("pointwise on coherent words") {
        std::mt19937 rng(23);
        for (int round = 0; round < 20; ++round) {
            const StAutomaton a = fixture::random_st(rng, letters, 1 + rng() % 5, 2);
            const StAutomaton c = complement_words(a);
            const StAutomaton cc = complement_words(c);
            for (const StepWord& word : oracle::coherent_words(letters, 2, 2)) {
                const bool in_a = oracle::st_accepts(a, word);
                CHECK(accepts(c, word) == !in_a);
                CHECK(accepts(cc, word) == in_a);
            }
        }
    }
}

TEST_CASE("ST language matches the HDA language") {
    std::mt19937 rng(29);
    const std::vector<std::string> letters{"a", "b"};
    std::vector<Hda> hdas{fixture::square_two_starts(), fixture::square_with_detour()};
    for (int i = 0; i < 15; ++i) hdas.push_back(fixture::random_hda(rng, letters, 10));
    const auto words = oracle::coherent_words({"a", "b", "c"}, 2, 3);
    for (const Hda& x : hdas) {
        const StAutomaton a = st_of_hda(x, 2);
        const std::set<std::string> lang = oracle::accepted_keys(x, 3);
        for (const StepWord& word : words) {
            bool known = true;
            for (const Step& s : word)
                for (const Label& l : s.conclist) known &= x.alphabet().contains(l);
            if (!known) continue;
            CHECK(accepts(a, word) == (lang.count(compose(word).key()) > 0));
        }
    }
}

TEST_CASE("composition of joined coherent words") {
    std::mt19937 rng(31);
    const auto words = oracle::coherent_words({"a", "b"}, 2, 2);
    for (int i = 0; i < 3000; ++i) {
        const StepWord& u = words[rng() % words.size()];
        const StepWord& v = words[rng() % words.size()];
        if (u.back() != v.front()) continue;
        StepWord joined = u;
        joined.insert(joined.end(), v.begin() + 1, v.end());
        CHECK(is_coherent(joined));
        CHECK(compose(joined) == glue(compose(u), compose(v)));
    }
}

TEST_CASE("StAutomaton construction errors") {
    const Alphabet a({"a"});
    const Step start_a = Step::starter({"a"}, {true});
    CHECK_NOTHROW(StAutomaton(a, 1, {{}, {"a"}}, {{0, start_a, 1}}, {true, false}, {false, true}));
    CHECK_THROWS_AS(StAutomaton(a, 1, {{}, {}}, {{0, start_a, 1}}, {true, false}, {false, true}), Error);
    CHECK_THROWS_AS(StAutomaton(a, 1, {{"a"}}, {{0, Step::identity({"a"}), 0}}, {true}, {true}), Error);
    CHECK_THROWS_AS(StAutomaton(a, 0, {{}, {"a"}}, {{0, start_a, 1}}, {true, false}, {false, true}), Error);
    CHECK_THROWS_AS(StAutomaton(a, 1, {{}}, {}, {true, true}, {true}), Error);
}

TEST_CASE("export_st") {
    const StAutomaton a = st_of_hda(fixture::square_two_starts());
    const std::string text = export_st(a);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "st-automaton width=2 alphabet=a,b states=9 transitions=14");
    std::size_t states = 0, transitions = 0;
    while (std::getline(in, line)) {
        if (line.rfind("state ", 0) == 0) ++states;
        if (line.rfind("transition ", 0) == 0) ++transitions;
    }
    CHECK(states == 9);
    CHECK(transitions == 14);
    CHECK(text.find("state 6 g [b] initial final") != std::string::npos);
}

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hda/hda.hh"
#include "hda/step.hh"

namespace hda {

using StateId = std::size_t;

/// Finite automaton over steps whose states carry conclists. Transitions never
/// carry identities; the identity letters of a word are the state labels.
class StAutomaton {
public:
    struct Transition {
        StateId from;
        Step step;
        StateId to;
    };

    StAutomaton() = default;
    /// Throws Error when a transition disagrees with the state labels, carries an
    /// identity, or exceeds the width bound. Empty names become state numbers.
    StAutomaton(Alphabet alphabet, std::size_t width_bound, std::vector<Conclist> labels,
                std::vector<Transition> transitions, std::vector<bool> initial, std::vector<bool> final,
                std::vector<std::string> names = {});

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t width_bound() const { return width_bound_; }
    std::size_t state_count() const { return labels_.size(); }
    std::size_t transition_count() const { return transitions_.size(); }

    const Conclist& label(StateId q) const { return labels_[q]; }
    const std::string& name(StateId q) const { return names_[q]; }
    bool is_initial(StateId q) const { return initial_[q]; }
    bool is_final(StateId q) const { return final_[q]; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    /// Indices into transitions(), in insertion order.
    const std::vector<std::size_t>& outgoing(StateId q) const { return out_[q]; }

    /// States reached from q by one transition on s.
    std::vector<StateId> post(StateId q, const Step& s) const;
    /// Subset image, sorted.
    std::vector<StateId> post(const std::vector<StateId>& qs, const Step& s) const;

private:
    Alphabet alphabet_;
    std::size_t width_bound_ = 0;
    std::vector<Conclist> labels_;
    std::vector<std::string> names_;
    std::vector<Transition> transitions_;
    std::vector<bool> initial_, final_;
    std::vector<std::vector<std::size_t>> out_;
};

/// States are the cells. The width bound is max(dim X, width_bound).
StAutomaton st_of_hda(const Hda& x, std::size_t width_bound = 0);

/// A path of an ST-automaton: states[i] --transitions[i]--> states[i+1].
struct StPath {
    std::vector<StateId> states;
    std::vector<std::size_t> transitions;
};

/// Identities interleaved with the transition steps. Throws Error on an illegal path.
StepWord word_label(const StAutomaton& a, const StPath& path);

/// Odd length, identities at even positions, steps at odd positions, interfaces matching.
bool is_coherent(const StepWord& w);

/// Word acceptance; incoherent words are rejected.
bool accepts(const StAutomaton& a, const StepWord& w);

/// Conclists over the alphabet of length at most k, shortest first.
std::vector<Conclist> conclists_up_to(const Alphabet& sigma, std::size_t k);

/// Every non-identity step with source u and width at most k.
std::vector<Step> steps_from(const Alphabet& sigma, const Conclist& u, std::size_t k);

/// Accepts exactly the coherent words over steps of width at most k.
StAutomaton match_automaton(const Alphabet& sigma, std::size_t k);

struct InclusionResult {
    bool included = true;
    /// A shortest coherent word accepted by the left automaton only.
    std::optional<StepWord> counterexample;
};

InclusionResult inclusion(const StAutomaton& a, const StAutomaton& b);

/// Coherent words of width at most a.width_bound() over a.alphabet() that a rejects.
StAutomaton complement_words(const StAutomaton& a);

struct EmptinessResult {
    bool empty = true;
    /// A shortest accepted word.
    std::optional<StepWord> witness;
};

EmptinessResult emptiness(const StAutomaton& a);

/// Line-based text dump, see README.
std::string export_st(const StAutomaton& a);

} // namespace hda

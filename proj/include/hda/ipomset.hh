#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hda/error.hh"
#include "hda/step.hh"

namespace hda {

using Event = std::size_t;

/// Square boolean matrix indexed by events.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

    std::size_t size() const { return n_; }
    bool operator()(Event x, Event y) const { return bits_[x * n_ + y] != 0; }
    void set(Event x, Event y, bool v = true) { bits_[x * n_ + y] = v ? 1 : 0; }

    void close_transitively();
    bool irreflexive() const;
    bool transitive() const;
    std::size_t pair_count() const;

    bool operator==(const Relation&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Unvalidated ipomset data, as read from a user.
struct RawIpomset {
    std::vector<Label> labels;
    std::vector<bool> source;  ///< empty means no source events
    std::vector<bool> target;  ///< empty means no target events
    std::vector<std::pair<Event, Event>> precedence;
    std::vector<std::pair<Event, Event>> event_order;
};

enum class IpomsetViolationKind {
    malformed,  ///< sizes or indices out of range
    not_partial_order,
    incomparable_pair,
    interface_not_extremal,
    not_interval,
};

std::string_view to_string(IpomsetViolationKind k);

struct IpomsetViolation {
    IpomsetViolationKind kind;
    std::vector<Event> events;
    std::string message;
};

/// Every violated invariant; empty when the data describes a valid ipomset.
std::vector<IpomsetViolation> validate_ipomset(const RawIpomset& raw);

class InvalidIpomset : public Error {
public:
    explicit InvalidIpomset(std::vector<IpomsetViolation> v);
    const std::vector<IpomsetViolation>& violations() const { return violations_; }

private:
    std::vector<IpomsetViolation> violations_;
};

/// Interval pomset with interfaces. Immutable; equality is isomorphism,
/// decided on the sparse step decomposition computed at construction.
class Ipomset {
public:
    /// The empty ipomset.
    Ipomset();
    /// Throws InvalidIpomset.
    explicit Ipomset(const RawIpomset& raw);

    std::size_t event_count() const { return labels_.size(); }
    const Label& label(Event e) const { return labels_[e]; }
    bool in_source(Event e) const { return source_[e]; }
    bool in_target(Event e) const { return target_[e]; }
    bool precedes(Event x, Event y) const { return prec_(x, y); }
    bool event_before(Event x, Event y) const { return evord_(x, y); }
    bool comparable(Event x, Event y) const { return prec_(x, y) || prec_(y, x); }

    const Relation& precedence() const { return prec_; }
    std::size_t precedence_pair_count() const { return prec_pairs_; }
    /// Rows of precedence and event order as bit masks over events. Only for at most 64 events.
    std::uint64_t successor_mask(Event x) const { return masks_[x]; }
    std::uint64_t predecessor_mask(Event x) const { return masks_[labels_.size() + x]; }
    std::uint64_t before_mask(Event x) const { return masks_[2 * labels_.size() + x]; }
    const Relation& event_order() const { return evord_; }

    /// Source and target events sorted by event order.
    std::vector<Event> source_events() const;
    std::vector<Event> target_events() const;
    Conclist source_conclist() const;
    Conclist target_conclist() const;

    bool is_identity() const;

    /// Canonical form.
    const StepWord& sparse_word() const { return sparse_; }
    /// Printed canonical form; the equality and hash key.
    const std::string& key() const { return key_; }

    RawIpomset raw() const;

    friend bool operator==(const Ipomset& a, const Ipomset& b) { return a.key_ == b.key_; }
    friend std::strong_ordering operator<=>(const Ipomset& a, const Ipomset& b) { return a.key_ <=> b.key_; }

private:
    friend class IpomsetBuilder;
    Ipomset(std::vector<Label> labels, std::vector<bool> source, std::vector<bool> target, Relation prec,
            Relation evord);
    void canonicalize();

    std::vector<Label> labels_;
    std::vector<bool> source_;
    std::vector<bool> target_;
    Relation prec_;
    Relation evord_;
    StepWord sparse_;
    std::string key_;
    std::size_t prec_pairs_ = 0;
    std::vector<std::uint64_t> masks_;
};

/// Largest precedence antichain.
std::size_t width(const Ipomset& p);
/// 2 * (|P| - (|S| + |T|) / 2), an integer.
std::size_t twice_size(const Ipomset& p);
double size(const Ipomset& p);

/// P ⊑ Q. Throws Error beyond 64 events.
bool subsumes(const Ipomset& p, const Ipomset& q);
bool equal(const Ipomset& p, const Ipomset& q);

/// Throws InterfaceMismatch when T_P and S_Q differ as conclists.
Ipomset glue(const Ipomset& p, const Ipomset& q);
/// Throws InvalidIpomset (NotInterval) when both operands have precedence pairs,
/// since the disjoint union then contains a 2+2.
Ipomset parallel(const Ipomset& p, const Ipomset& q);

Ipomset to_ipomset(const Step& s);
/// Left-to-right gluing. Throws InterfaceMismatch(position).
Ipomset compose(const StepWord& w);

StepWord sparse_decomposition(const Ipomset& p);
/// Elementary steps; starts before terminations, ties by event order.
/// Throws IdentityHasNoDenseDecomposition on size 0.
StepWord dense_decomposition(const Ipomset& p);

/// All Q with P ⊑ Q and width(Q) <= k, sorted by key. Throws WidthExceeded.
std::vector<Ipomset> supersumptions(const Ipomset& p, std::size_t k);
bool in_down_closure(const Ipomset& p, const std::vector<Ipomset>& generators);

/// Throws SyntaxError or InterfaceMismatch.
Ipomset parse_ipomset(std::string_view text);
std::string print_ipomset(const Ipomset& p);

} // namespace hda

template <>
struct std::hash<hda::Ipomset> {
    std::size_t operator()(const hda::Ipomset& p) const noexcept { return std::hash<std::string>{}(p.key()); }
};

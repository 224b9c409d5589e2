#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hda/error.hh"
#include "hda/hda.hh"

namespace hda {

/// Ultimately periodic description of a deterministic one-letter HDA:
/// f(n) is the largest number of events startable at the n-th vertex,
/// tau(n) the dimensions of the accepting cells based there.
/// Values for n >= s + r repeat with period r.
struct UpFunction {
    std::size_t r = 1;
    std::size_t s = 0;
    std::vector<std::size_t> f;
    std::vector<std::vector<std::size_t>> tau;

    bool operator==(const UpFunction&) const = default;
};

enum class UpViolationKind { bad_shape, zero_value, drop_too_steep, tau_out_of_range };

std::string_view to_string(UpViolationKind k);

struct UpViolation {
    UpViolationKind kind;
    std::size_t index;
    std::string message;
};

std::vector<UpViolation> up_violations(const UpFunction& phi);

class InvalidUpFunction : public Error {
public:
    explicit InvalidUpFunction(std::vector<UpViolation> v);
    const std::vector<UpViolation>& violations() const { return violations_; }

private:
    std::vector<UpViolation> violations_;
};

/// Returns phi with every tau(n) sorted; throws InvalidUpFunction.
UpFunction validate_up(UpFunction phi);

/// Index in [0, s + r) carrying the value for n.
std::size_t wrap_index(const UpFunction& phi, std::size_t n);

/// The same function with its least period and preperiod.
UpFunction minimize_period(const UpFunction& phi);

/// Cells are named x<k>_<n>: k events based at vertex n. Throws InvalidUpFunction.
Hda build(const UpFunction& phi, const Label& letter = "a");

class OneLetterError : public Error {
public:
    enum class Kind { not_one_letter, not_deterministic, not_accessible, multiple_start_cells };
    OneLetterError(Kind k, const std::string& msg);
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

std::string_view to_string(OneLetterError::Kind k);

/// Reads (r, s, f, tau) off a deterministic accessible one-letter HDA with a single
/// start vertex; a non-accepting sink is added when some vertex has no outgoing edge.
/// Throws OneLetterError.
UpFunction analyze(const Hda& x);

/// `r=1 s=0 f=1 tau={0}`. Throws SyntaxError.
UpFunction parse_up(std::string_view text);
std::string print_up(const UpFunction& phi);

} // namespace hda

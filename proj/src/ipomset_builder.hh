#pragma once

#include "hda/ipomset.hh"

namespace hda {

/// Builds ipomsets from relations the caller guarantees to be valid
/// (results of gluing, composition, enumeration).
class IpomsetBuilder {
public:
    static Ipomset make(std::vector<Label> labels, std::vector<bool> source, std::vector<bool> target,
                        Relation prec, Relation evord) {
        return Ipomset(std::move(labels), std::move(source), std::move(target), std::move(prec),
                       std::move(evord));
    }
};

} // namespace hda

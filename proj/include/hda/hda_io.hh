#pragma once

#include <string>
#include <string_view>

#include "hda/hda.hh"

namespace hda {

/// Reads the JSON HDA format. Throws FormatError on bad JSON or missing fields;
/// the structure itself is not validated here.
RawHda parse_hda_json(std::string_view text);
std::string print_hda_json(const RawHda& raw);
std::string print_hda_json(const Hda& x);

/// parse_hda_json plus validation. Error messages name the file.
Hda load_hda(const std::string& path);
void save_hda(const Hda& x, const std::string& path);

} // namespace hda

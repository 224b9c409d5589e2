#include "hda/hda_io.hh"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hda {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw FormatError(where + " must be a list");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw FormatError(where + "[" + std::to_string(i) + "] must be a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

const json& field(const json& obj, const char* name, const std::string& where) {
    auto it = obj.find(name);
    if (it == obj.end()) throw FormatError(where + " has no field \"" + name + "\"");
    return *it;
}

} // namespace

RawHda parse_hda_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("JSON error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw FormatError("top level must be an object");
    RawHda raw;
    raw.alphabet = string_list(field(doc, "alphabet", "top level"), "alphabet");
    const json& cells = field(doc, "cells", "top level");
    if (!cells.is_array()) throw FormatError("cells must be a list");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string where = "cells[" + std::to_string(i) + "]";
        const json& c = cells[i];
        if (!c.is_object()) throw FormatError(where + " must be an object");
        const json& id = field(c, "id", where);
        if (!id.is_string()) throw FormatError(where + ".id must be a string");
        RawCell cell;
        cell.id = id.get<std::string>();
        cell.events = string_list(field(c, "events", where), where + ".events");
        cell.d0 = string_list(field(c, "d0", where), where + ".d0");
        cell.d1 = string_list(field(c, "d1", where), where + ".d1");
        raw.cells.push_back(std::move(cell));
    }
    raw.start = string_list(field(doc, "start", "top level"), "start");
    raw.accept = string_list(field(doc, "accept", "top level"), "accept");
    return raw;
}

std::string print_hda_json(const RawHda& raw) {
    // One cell per line keeps files diffable.
    auto list = [](const std::vector<std::string>& v) { return json(v).dump(); };
    std::ostringstream out;
    out << "{\n  \"alphabet\": " << list(raw.alphabet) << ",\n  \"cells\": [\n";
    for (std::size_t i = 0; i < raw.cells.size(); ++i) {
        const auto& c = raw.cells[i];
        out << "    {\"id\": " << json(c.id).dump() << ", \"events\": " << list(c.events) << ", \"d0\": " << list(c.d0)
            << ", \"d1\": " << list(c.d1) << "}" << (i + 1 < raw.cells.size() ? "," : "") << "\n";
    }
    out << "  ],\n  \"start\": " << list(raw.start) << ",\n  \"accept\": " << list(raw.accept) << "\n}\n";
    return out.str();
}

std::string print_hda_json(const Hda& x) { return print_hda_json(x.raw()); }

Hda load_hda(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Hda(parse_hda_json(buf.str()));
    } catch (const InvalidHda&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void save_hda(const Hda& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError(path + ": cannot write");
    out << print_hda_json(x);
}

} // namespace hda

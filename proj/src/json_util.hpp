// SPDX-License-Identifier: Apache-2.0
#pragma once

// Path-aware accessors for the interchange readers. Every failure is a
// ParseError naming the offending document path.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bmx/errors.hpp"

namespace bmx::detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline Json parse_document(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
}

/// Checks the "notation" tag and returns the "process" object.
inline const Json& process_body(const Json& doc, std::string_view notation, bool require_tag) {
    if (!doc.is_object()) throw ParseError("document is not an object");
    auto tag = doc.find("notation");
    if (tag == doc.end()) {
        if (require_tag) throw ParseError("missing notation tag");
    } else if (!tag->is_string() || tag->get<std::string>() != notation) {
        throw ParseError("notation tag is not \"" + std::string(notation) + "\"");
    }
    auto body = doc.find("process");
    if (body == doc.end() || !body->is_object()) throw ParseError("missing process object");
    return *body;
}

inline std::string at(std::string_view array, std::size_t index) {
    return std::string(array) + "[" + std::to_string(index) + "]";
}

inline const Json& array_field(const Json& obj, const char* key, const std::string& path) {
    static const Json empty = Json::array();
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return empty;
    if (!it->is_array()) throw ParseError(key + std::string(" is not an array at ") + path);
    return *it;
}

inline std::string string_field(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing ") + key + " at " + path);
    if (!it->is_string()) throw ParseError(std::string(key) + " is not a string at " + path);
    return it->get<std::string>();
}

inline std::optional<std::string> optional_string(const Json& obj, const char* key,
                                                  const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw ParseError(std::string(key) + " is not a string at " + path);
    return it->get<std::string>();
}

inline const Json& object_at(const Json& arr, std::size_t i, const std::string& path) {
    if (!arr[i].is_object()) throw ParseError("expected object at " + path);
    return arr[i];
}

}  // namespace bmx::detail

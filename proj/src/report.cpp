// SPDX-License-Identifier: Apache-2.0
#include "bmx/report.hpp"

#include <sstream>

#include <json.hpp>

namespace bmx {

void ValidationReport::add(std::string element, std::string rule, std::string message) {
    violations.push_back({std::move(element), std::move(rule), std::move(message)});
}

std::set<std::string> ValidationReport::rules() const {
    std::set<std::string> out;
    for (const auto& v : violations) out.insert(v.rule);
    return out;
}

bool ValidationReport::has(const std::string& rule) const {
    for (const auto& v : violations)
        if (v.rule == rule) return true;
    return false;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.rule << " @ " << v.element << ": " << v.message << '\n';
    return os.str();
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["valid"] = empty();
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : violations)
        j["violations"].push_back({{"element", v.element}, {"rule", v.rule}, {"message", v.message}});
    return j.dump(2) + "\n";
}

}  // namespace bmx

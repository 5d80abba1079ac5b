// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <vector>

namespace bmx {

/// One broken well-formedness rule, anchored at the element that breaks it.
struct Violation {
    std::string element;
    std::string rule;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Result of a validator. Violations are data, not failures.
struct ValidationReport {
    std::vector<Violation> violations;

    bool empty() const { return violations.empty(); }
    std::size_t size() const { return violations.size(); }

    void add(std::string element, std::string rule, std::string message);

    /// Distinct rule ids present in the report.
    std::set<std::string> rules() const;
    bool has(const std::string& rule) const;

    /// One line per violation: "<rule> @ <element>: <message>".
    std::string to_text() const;
    std::string to_json() const;
};

}  // namespace bmx

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

#include "bmx/report.hpp"

namespace bmx {

/// Malformed interchange document or unresolvable structure (duplicate ids,
/// dangling references, illegal enumeration values).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure while projecting a model through a mapping definition.
class MappingError : public std::runtime_error {
public:
    enum class Kind {
        Precondition,   // input model does not validate
        NonTotal,       // no rule matches an element
        XorViolation,   // two rules of one xor group match
        Unabsorbable,   // control structure with no inverse image
        InvalidResult,  // synthesized model fails its validator
        BadDefinition,  // definition references unknown classes/attributes
    };

    MappingError(Kind kind, const std::string& what, ValidationReport report = {})
        : std::runtime_error(what), kind_(kind), report_(std::move(report)) {}

    Kind kind() const noexcept { return kind_; }
    const ValidationReport& report() const noexcept { return report_; }

private:
    Kind kind_;
    ValidationReport report_;
};

}  // namespace bmx

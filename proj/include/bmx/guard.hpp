// SPDX-License-Identifier: Apache-2.0
#pragma once

// Guard predicates over source-instance attributes. The vocabulary is closed:
// attribute=Literal, conjunction (&), negation (!), parentheses and `true`.
// Evaluation is total and side-effect free.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bmx::guard {

using Attributes = std::map<std::string, std::string, std::less<>>;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct True {};
struct Equals {
    std::string attribute;
    std::string literal;
};
struct Not {
    ExprPtr operand;
};
struct And {
    std::vector<ExprPtr> operands;
};

struct Expr {
    std::variant<True, Equals, Not, And> node;
};

class Predicate {
public:
    /// The always-true predicate.
    Predicate();

    /// Throws ParseError on malformed text.
    static Predicate parse(std::string_view text);

    bool evaluate(const Attributes& attributes) const;

    /// Equalities asserted by the top-level conjunction (positive atoms only).
    /// Inverse projection uses these to restore attribute values.
    std::vector<Equals> implied_equalities() const;

    /// Attribute names mentioned anywhere in the expression.
    std::vector<std::string> attributes() const;

    /// Canonical text; parse(p.to_string()) is equivalent to p.
    std::string to_string() const;

    bool is_trivial() const;

private:
    explicit Predicate(ExprPtr root) : root_(std::move(root)) {}
    ExprPtr root_;
};

}  // namespace bmx::guard

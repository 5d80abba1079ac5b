// SPDX-License-Identifier: Apache-2.0
#include "bmx/guard.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "bmx/errors.hpp"

namespace bmx::guard {

namespace {

ExprPtr make(decltype(Expr::node) node) { return std::make_shared<const Expr>(Expr{std::move(node)}); }

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

//   expr  := unary ('&' unary)*
//   unary := '!' unary | '(' expr ')' | 'true' | word '=' word | word '!=' word
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        auto e = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    ExprPtr expr() {
        std::vector<ExprPtr> operands{unary()};
        while (accept('&')) operands.push_back(unary());
        if (operands.size() == 1) return operands.front();
        return make(And{std::move(operands)});
    }

    ExprPtr unary() {
        if (accept('!')) return make(Not{unary()});
        if (accept('(')) {
            auto e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        auto lhs = word();
        if (lhs == "true") return make(True{});
        if (accept('!')) {
            if (!accept('=')) fail("expected '=' after '!'");
            return make(Not{make(Equals{lhs, word()})});
        }
        if (!accept('=')) fail("expected '=' after " + lhs);
        return make(Equals{lhs, word()});
    }

    std::string word() {
        skip();
        const auto begin = pos_;
        while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
        if (begin == pos_) fail("expected a name");
        return std::string(text_.substr(begin, pos_ - begin));
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("guard \"" + std::string(text_) + "\": " + why + " at offset " +
                         std::to_string(pos_));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool eval(const Expr& e, const Attributes& attrs) {
    return std::visit(Overloaded{
                          [](const True&) { return true; },
                          [&](const Equals& eq) {
                              auto it = attrs.find(eq.attribute);
                              return it != attrs.end() && it->second == eq.literal;
                          },
                          [&](const Not& n) { return !eval(*n.operand, attrs); },
                          [&](const And& a) {
                              return std::all_of(a.operands.begin(), a.operands.end(),
                                                 [&](const ExprPtr& op) { return eval(*op, attrs); });
                          },
                      },
                      e.node);
}

std::string print(const Expr& e) {
    return std::visit(Overloaded{
                          [](const True&) { return std::string("true"); },
                          [](const Equals& eq) { return eq.attribute + "=" + eq.literal; },
                          [](const Not& n) {
                              const bool wrap = std::holds_alternative<And>(n.operand->node);
                              return "!" + (wrap ? "(" + print(*n.operand) + ")" : print(*n.operand));
                          },
                          [](const And& a) {
                              std::string out;
                              for (const auto& op : a.operands) {
                                  if (!out.empty()) out += " & ";
                                  out += print(*op);
                              }
                              return out;
                          },
                      },
                      e.node);
}

void collect(const Expr& e, std::set<std::string>& names) {
    std::visit(Overloaded{
                   [](const True&) {},
                   [&](const Equals& eq) { names.insert(eq.attribute); },
                   [&](const Not& n) { collect(*n.operand, names); },
                   [&](const And& a) {
                       for (const auto& op : a.operands) collect(*op, names);
                   },
               },
               e.node);
}

}  // namespace

Predicate::Predicate() : root_(make(True{})) {}

Predicate Predicate::parse(std::string_view text) {
    bool blank = std::all_of(text.begin(), text.end(),
                             [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (blank) return Predicate();
    return Predicate(Parser(text).parse());
}

bool Predicate::evaluate(const Attributes& attributes) const { return eval(*root_, attributes); }

std::vector<Equals> Predicate::implied_equalities() const {
    std::vector<Equals> out;
    if (const auto* eq = std::get_if<Equals>(&root_->node)) {
        out.push_back(*eq);
    } else if (const auto* conj = std::get_if<And>(&root_->node)) {
        for (const auto& op : conj->operands)
            if (const auto* e = std::get_if<Equals>(&op->node)) out.push_back(*e);
    }
    return out;
}

std::vector<std::string> Predicate::attributes() const {
    std::set<std::string> names;
    collect(*root_, names);
    return {names.begin(), names.end()};
}

std::string Predicate::to_string() const { return print(*root_); }

bool Predicate::is_trivial() const { return std::holds_alternative<True>(root_->node); }

}  // namespace bmx::guard

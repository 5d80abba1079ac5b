// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "bmx/errors.hpp"
#include "bmx/grade.hpp"
#include "builders.hpp"
#include "faults.hpp"
#include "generators.hpp"

using namespace bmx;
using grade::Condition;
using testgen::GradeDraft;

namespace {

const char* kMinimal = R"({"notation":"grade-bm","process":{"name":"m",
  "tasks":[{"id":"A","name":"A","triggering":"NONE","branching":"NONE"}],
  "starts":["s"],"ends":["e"],
  "flows":[{"id":"f1","source":"s","target":"A"},{"id":"f2","source":"A","target":"e"}]}})";

std::string message_of(const std::string& document) {
    try {
        grade::read(document);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

// Two parallel branches, joined by an AND-triggered task.
grade::Process and_model() {
    return GradeDraft()
        .start()
        .task("A", Condition::None, Condition::And)
        .task("B")
        .task("C")
        .task("D", Condition::And)
        .end()
        .flow("s", "A")
        .flow("A", "B")
        .flow("A", "C")
        .flow("B", "D")
        .flow("C", "D")
        .flow("D", "e");
}

}  // namespace

TEST_CASE("minimal document") {
    auto p = grade::read(kMinimal);
    CHECK(testgen::node_count(p) == 3);
    CHECK(p.tasks.size() == 1);
    CHECK(p.starts.size() == 1);
    CHECK(p.ends.size() == 1);
    CHECK(grade::validate(p).empty());
    CHECK(grade::read(grade::write(p)) == p);
}

TEST_CASE("closed enumerations and dangling references") {
    std::string maybe = kMinimal;
    maybe.replace(maybe.find(R"("triggering":"NONE")"), 19, R"("triggering":"MAYBE")");
    CHECK(message_of(maybe) == "illegal triggering value at tasks[0]");

    std::string dangling = kMinimal;
    dangling.replace(dangling.find(R"("target":"e")"), 12, R"("target":"t9")");
    CHECK(message_of(dangling) == "dangling target t9");

    CHECK(message_of("[1,2]") != "");
}

TEST_CASE("writer refuses duplicate ids") {
    grade::Process p = GradeDraft().start().task("A").task("A").end().flow("s", "A").flow("A", "e");
    CHECK_THROWS_AS(grade::write(p), ParseError);
}

TEST_CASE("round trip of generated models") {
    testgen::Rng rng(21);
    testgen::GradeOptions options;
    options.max_tasks = 8;
    int and_or = 0;
    for (int i = 0; i < 100; ++i) {
        auto p = testgen::random_grade(rng, options);
        CHECK(grade::validate(p).empty());
        CHECK(grade::read(grade::write(p)) == p);
        bool has_and = false, has_or = false;
        for (const auto& t : p.tasks) {
            has_and |= t.triggering == Condition::And || t.branching == Condition::And;
            has_or |= t.triggering == Condition::Or || t.branching == Condition::Or;
        }
        and_or += has_and && has_or;
    }
    CHECK(and_or > 0);
}

TEST_CASE("triggering needs fan-in") {
    CHECK(grade::validate(and_model()).empty());

    auto single = and_model();
    single.flows.erase(single.flows.begin() + 4);  // C -> D
    single.flows.push_back({"fx", "C", "e"});
    auto report = grade::validate(single);
    CHECK(report.has("trigger-fan-in"));
    CHECK(report.size() == 1);
}

TEST_CASE("or triggering over three inflows") {
    grade::Process p = GradeDraft()
                           .start()
                           .task("A", Condition::None, Condition::Or)
                           .task("B")
                           .task("C")
                           .task("D")
                           .task("E", Condition::Or)
                           .end()
                           .flow("s", "A")
                           .flow("A", "B")
                           .flow("A", "C")
                           .flow("A", "D")
                           .flow("B", "E")
                           .flow("C", "E")
                           .flow("D", "E")
                           .flow("E", "e");
    CHECK(grade::validate(p).empty());
}

TEST_CASE("unreachable task") {
    // U and V feed each other, so neither lacks an inflow, yet neither is reachable.
    grade::Process p = GradeDraft()
                           .start()
                           .task("A")
                           .task("U")
                           .task("V", Condition::None, Condition::Or)
                           .end()
                           .flow("s", "A")
                           .flow("A", "e")
                           .flow("U", "V")
                           .flow("V", "U")
                           .flow("V", "e");
    auto report = grade::validate(p);
    REQUIRE(report.size() == 2);
    for (const auto& v : report.violations) {
        CHECK(v.rule == "unreachable");
        CHECK(v.message == "unreachable from start");
    }
}

TEST_CASE("guards only on or branching") {
    auto p = and_model();
    p.tasks[0].guards["f2"] = "x";
    CHECK(grade::validate(p).has("guard-placement"));
    p.tasks[0].branching = Condition::Or;
    CHECK(grade::validate(p).empty());
    p.tasks[0].guards["f3"] = "else";
    CHECK(grade::validate(p).empty());
    p.tasks[0].guards["f2"] = "else";
    CHECK(grade::validate(p).has("guard-else"));
}

TEST_CASE("each fault breaks exactly its rule") {
    testgen::Rng rng(22);
    std::vector<grade::Process> bases;
    for (int i = 0; i < 6; ++i) bases.push_back(testgen::random_grade(rng));
    for (const auto& fault : testgen::grade_faults()) {
        CAPTURE(fault.rule);
        for (const auto& base : bases) {
            auto broken = base;
            fault.apply(broken);
            CHECK(grade::validate(broken).rules() == std::set<std::string>{fault.rule});
        }
    }
}

// SPDX-License-Identifier: Apache-2.0
#pragma once

// GRADE-BM-style notation. Triggering and branching are attributes of the
// task itself; there are no separate control symbols.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bmx/performer.hpp"
#include "bmx/report.hpp"

namespace bmx::grade {

inline constexpr std::string_view kNotation = "grade-bm";

/// OR on triggering is an exclusive merge, AND a synchronizing join.
/// OR on branching is an exclusive choice, AND a parallel split.
enum class Condition { None, Or, And };

std::string_view to_string(Condition c);
std::optional<Condition> parse_condition(std::string_view text);

struct PerformerRef {
    std::string id;
    PerformerKind kind = PerformerKind::Resource;
    std::string name;

    friend bool operator==(const PerformerRef&, const PerformerRef&) = default;
};

struct Task {
    std::string id;
    std::string name;
    Condition triggering = Condition::None;
    Condition branching = Condition::None;
    std::optional<std::string> performer;
    std::map<std::string, std::string> guards;  // outgoing flow id -> guard text

    friend bool operator==(const Task&, const Task&) = default;
};

struct Start {
    std::string id;
    friend bool operator==(const Start&, const Start&) = default;
};

struct End {
    std::string id;
    friend bool operator==(const End&, const End&) = default;
};

struct Flow {
    std::string id;
    std::string source;
    std::string target;

    friend bool operator==(const Flow&, const Flow&) = default;
};

struct Process {
    std::string name;
    std::vector<Task> tasks;
    std::vector<Start> starts;
    std::vector<End> ends;
    std::vector<Flow> flows;
    std::vector<PerformerRef> performers;

    const Task* find_task(std::string_view id) const;

    friend bool operator==(const Process&, const Process&) = default;
};

/// Throws ParseError on duplicate ids, dangling flow endpoints, performer
/// references or guard keys.
void check_structure(const Process& process);

ValidationReport validate(const Process& process);

Process read(std::string_view document, bool require_tag = true);
/// Refuses (ParseError) models that fail check_structure.
std::string write(const Process& process);

}  // namespace bmx::grade

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fragment of UML 2.0 activity diagrams: actions, explicit control nodes,
// control flows and flat partitions.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bmx/performer.hpp"
#include "bmx/report.hpp"

namespace bmx::umlad {

inline constexpr std::string_view kNotation = "uml-ad";

enum class NodeKind {
    Action,
    DecisionNode,
    MergeNode,
    ForkNode,
    JoinNode,
    InitialNode,
    ActivityFinalNode,
};

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Action;
    std::string name;
    std::optional<std::string> partition;

    friend bool operator==(const Node&, const Node&) = default;
};

struct ControlFlow {
    std::string id;
    std::string source;
    std::string target;
    std::optional<std::string> guard;

    friend bool operator==(const ControlFlow&, const ControlFlow&) = default;
};

struct Partition {
    std::string id;
    std::string name;
    PerformerKind kind = PerformerKind::Resource;

    friend bool operator==(const Partition&, const Partition&) = default;
};

struct Activity {
    std::string name;
    std::vector<Node> nodes;
    std::vector<ControlFlow> edges;
    std::vector<Partition> partitions;

    const Node* find_node(std::string_view id) const;

    friend bool operator==(const Activity&, const Activity&) = default;
};

/// Throws ParseError on duplicate ids, dangling edge endpoints or partition
/// references.
void check_structure(const Activity& activity);

ValidationReport validate(const Activity& activity);

/// Also rejects guards on edges that do not leave a DecisionNode.
Activity read(std::string_view document, bool require_tag = true);
std::string write(const Activity& activity);

}  // namespace bmx::umlad

// SPDX-License-Identifier: Apache-2.0
#include "bmx/umlad.hpp"

#include <array>
#include <map>
#include <set>

#include "bmx/errors.hpp"
#include "graph_util.hpp"

namespace bmx::umlad {

namespace {

constexpr std::array kKinds = {NodeKind::Action,   NodeKind::DecisionNode, NodeKind::MergeNode,
                               NodeKind::ForkNode, NodeKind::JoinNode,     NodeKind::InitialNode,
                               NodeKind::ActivityFinalNode};

}  // namespace

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Action: return "Action";
        case NodeKind::DecisionNode: return "DecisionNode";
        case NodeKind::MergeNode: return "MergeNode";
        case NodeKind::ForkNode: return "ForkNode";
        case NodeKind::JoinNode: return "JoinNode";
        case NodeKind::InitialNode: return "InitialNode";
        case NodeKind::ActivityFinalNode: return "ActivityFinalNode";
    }
    return "Action";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
    for (auto k : kKinds)
        if (to_string(k) == text) return k;
    return std::nullopt;
}

const Node* Activity::find_node(std::string_view id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

void check_structure(const Activity& activity) {
    std::set<std::string> ids, node_ids, partition_ids;
    auto add = [&](const std::string& id) {
        if (id.empty()) throw ParseError("element with empty id");
        if (!ids.insert(id).second) throw ParseError("duplicate id " + id);
    };
    for (const auto& p : activity.partitions) {
        add(p.id);
        partition_ids.insert(p.id);
    }
    for (const auto& n : activity.nodes) {
        add(n.id);
        node_ids.insert(n.id);
        if (n.partition && !partition_ids.count(*n.partition))
            throw ParseError("dangling partition " + *n.partition + " on node " + n.id);
    }
    for (const auto& e : activity.edges) {
        add(e.id);
        if (!node_ids.count(e.source)) throw ParseError("dangling source " + e.source);
        if (!node_ids.count(e.target)) throw ParseError("dangling target " + e.target);
    }
}

ValidationReport validate(const Activity& activity) {
    check_structure(activity);
    ValidationReport report;
    const auto& nodes = activity.nodes;
    const auto n = nodes.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[nodes[i].id] = i;

    std::vector<std::size_t> in(n, 0), out(n, 0), elses(n, 0);
    detail::EdgeList edges;
    for (const auto& e : activity.edges) {
        auto s = index.at(e.source), t = index.at(e.target);
        ++out[s];
        ++in[t];
        edges.emplace_back(s, t);
        if (e.guard && nodes[s].kind != NodeKind::DecisionNode)
            report.add(e.id, "guard-placement", "guard only on decision edges");
        if (e.guard == "else") ++elses[s];
    }

    std::size_t initials = 0, finals = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& node = nodes[i];
        const std::string kind(to_string(node.kind));
        if (node.kind != NodeKind::Action && node.partition)
            report.add(node.id, "partition-placement", "partition on a control node");
        switch (node.kind) {
            case NodeKind::Action:
                if (node.name.empty()) report.add(node.id, "action-name", "action without name");
                if (in[i] > 1) report.add(node.id, "action-fan-in", "action fan-in");
                if (in[i] == 0) report.add(node.id, "action-no-inflow", "action has no in-edge");
                if (out[i] > 1) report.add(node.id, "action-fan-out", "action fan-out");
                if (out[i] == 0) report.add(node.id, "action-no-outflow", "action has no out-edge");
                break;
            case NodeKind::DecisionNode:
            case NodeKind::ForkNode:
                if (in[i] != 1) report.add(node.id, "split-inflow", kind + " requires exactly 1 in-edge");
                if (out[i] < 2) report.add(node.id, "split-outflow", kind + " requires ≥2 out-edges");
                break;
            case NodeKind::MergeNode:
            case NodeKind::JoinNode:
                if (in[i] < 2) report.add(node.id, "unification-inflow", kind + " requires ≥2 in-edges");
                if (out[i] != 1)
                    report.add(node.id, "unification-outflow", kind + " requires exactly 1 out-edge");
                break;
            case NodeKind::InitialNode:
                ++initials;
                if (in[i] != 0) report.add(node.id, "initial-inflow", "initial node has in-edges");
                if (out[i] != 1) report.add(node.id, "initial-outflow", "initial node requires exactly 1 out-edge");
                break;
            case NodeKind::ActivityFinalNode:
                ++finals;
                if (in[i] == 0) report.add(node.id, "final-inflow", "final node requires ≥1 in-edge");
                if (out[i] != 0) report.add(node.id, "final-outflow", "final node has out-edges");
                break;
        }
        if (elses[i] > 1) report.add(node.id, "decision-else", "more than one else edge");
    }
    if (initials != 1) report.add(activity.name, "initial-count", "activity requires exactly one initial node");
    if (finals == 0) report.add(activity.name, "final-count", "activity requires at least one final node");

    std::vector<bool> is_initial(n), is_final(n);
    for (std::size_t i = 0; i < n; ++i) {
        is_initial[i] = nodes[i].kind == NodeKind::InitialNode;
        is_final[i] = nodes[i].kind == NodeKind::ActivityFinalNode;
    }
    auto faults = detail::reachability_faults(n, edges, is_initial, is_final, finals > 0);
    for (auto i : faults.unreachable) report.add(nodes[i].id, "unreachable", "unreachable from initial node");
    for (auto i : faults.stranded) report.add(nodes[i].id, "no-path-to-final", "no path to a final node");

    for (const auto& p : activity.partitions)
        if (p.name.empty()) report.add(p.id, "partition-name", "partition without name");
    return report;
}

}  // namespace bmx::umlad

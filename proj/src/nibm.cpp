// SPDX-License-Identifier: Apache-2.0
#include "bmx/nibm.hpp"

#include <array>
#include <cctype>
#include <set>

#include "bmx/errors.hpp"
#include "graph_util.hpp"

namespace bmx::nibm {

namespace {

constexpr std::array kNodeKinds = {NodeKind::Task,  NodeKind::Decision, NodeKind::Fork,
                                   NodeKind::Merge, NodeKind::Join,     NodeKind::Start,
                                   NodeKind::Stop};
constexpr std::array kTransitionKinds = {TransitionKind::Pass, TransitionKind::Incoming,
                                         TransitionKind::Outgoing};

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Task: return "Task";
        case NodeKind::Decision: return "Decision";
        case NodeKind::Fork: return "Fork";
        case NodeKind::Merge: return "Merge";
        case NodeKind::Join: return "Join";
        case NodeKind::Start: return "Start";
        case NodeKind::Stop: return "Stop";
    }
    return "Task";
}

std::string_view to_string(TransitionKind kind) {
    switch (kind) {
        case TransitionKind::Pass: return "Pass";
        case TransitionKind::Incoming: return "Incoming";
        case TransitionKind::Outgoing: return "Outgoing";
    }
    return "Pass";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
    for (auto k : kNodeKinds)
        if (to_string(k) == text) return k;
    return std::nullopt;
}

std::optional<TransitionKind> parse_transition_kind(std::string_view text) {
    for (auto k : kTransitionKinds)
        if (to_string(k) == text) return k;
    return std::nullopt;
}

const Node* Process::find_node(std::string_view node_id) const {
    for (const auto& n : nodes)
        if (n.id == node_id) return &n;
    return nullptr;
}

const Transition* Process::find_transition(std::string_view transition_id) const {
    for (const auto& t : transitions)
        if (t.id == transition_id) return &t;
    return nullptr;
}

const Performer* Process::find_performer(std::string_view performer_id) const {
    for (const auto& p : performers)
        if (p.id == performer_id) return &p;
    return nullptr;
}

Adjacency::Adjacency(const Process& process)
    : inflows(process.nodes.size()), outflows(process.nodes.size()) {
    for (std::size_t i = 0; i < process.nodes.size(); ++i) node_index[process.nodes[i].id] = i;
    source.reserve(process.transitions.size());
    target.reserve(process.transitions.size());
    for (std::size_t t = 0; t < process.transitions.size(); ++t) {
        const auto& tr = process.transitions[t];
        auto s = node_index.at(tr.source);
        auto d = node_index.at(tr.target);
        source.push_back(s);
        target.push_back(d);
        outflows[s].push_back(t);
        inflows[d].push_back(t);
    }
}

void check_structure(const Process& process) {
    std::set<std::string> node_ids, transition_ids, performer_ids;
    for (const auto& p : process.performers) {
        if (p.id.empty()) throw ParseError("performer with empty id");
        if (!performer_ids.insert(p.id).second) throw ParseError("duplicate performer id " + p.id);
    }
    for (const auto& n : process.nodes) {
        if (n.id.empty()) throw ParseError("node with empty id");
        if (!node_ids.insert(n.id).second) throw ParseError("duplicate node id " + n.id);
        if (n.performer && !performer_ids.count(*n.performer))
            throw ParseError("dangling performer " + *n.performer + " on node " + n.id);
    }
    for (const auto& t : process.transitions) {
        if (t.id.empty()) throw ParseError("transition with empty id");
        if (!transition_ids.insert(t.id).second) throw ParseError("duplicate transition id " + t.id);
        if (!node_ids.count(t.source)) throw ParseError("dangling source " + t.source);
        if (!node_ids.count(t.target)) throw ParseError("dangling target " + t.target);
    }
}

ValidationReport validate(const Process& process) {
    check_structure(process);
    ValidationReport report;
    const Adjacency adj(process);
    const auto& nodes = process.nodes;

    std::size_t starts = 0, stops = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        const auto in = adj.inflows[i].size();
        const auto out = adj.outflows[i].size();
        const auto kind = lower(to_string(n.kind));

        if (n.kind != NodeKind::Task && n.performer)
            report.add(n.id, "performer-placement", "performer on non-task node");

        switch (n.kind) {
            case NodeKind::Task:
                if (n.label.empty()) report.add(n.id, "task-label", "task without label");
                if (in > 1)
                    report.add(n.id, "task-fan-in", "task fan-in without unification node");
                if (in == 0) report.add(n.id, "task-no-inflow", "task has no inflow");
                if (out > 1)
                    report.add(n.id, "task-fan-out", "task fan-out without branching node");
                if (out == 0) report.add(n.id, "task-no-outflow", "task has no outflow");
                break;
            case NodeKind::Merge:
            case NodeKind::Join:
                if (in < 2) report.add(n.id, "unification-inflow", kind + " requires ≥2 inflows");
                if (out != 1)
                    report.add(n.id, "unification-outflow", kind + " requires exactly 1 outflow");
                break;
            case NodeKind::Decision:
            case NodeKind::Fork:
                if (in != 1) report.add(n.id, "split-inflow", kind + " requires exactly 1 inflow");
                if (out < 2) report.add(n.id, "split-outflow", kind + " requires ≥2 outflows");
                break;
            case NodeKind::Start:
                ++starts;
                if (in != 0) report.add(n.id, "start-inflow", "start has inflows");
                if (out != 1) report.add(n.id, "start-outflow", "start requires exactly 1 outflow");
                break;
            case NodeKind::Stop:
                ++stops;
                if (in == 0) report.add(n.id, "stop-inflow", "stop requires ≥1 inflow");
                if (out != 0) report.add(n.id, "stop-outflow", "stop has outflows");
                break;
        }

        if (n.kind == NodeKind::Decision) {
            std::size_t elses = 0;
            for (auto t : adj.outflows[i])
                if (process.transitions[t].guard == kElseGuard) ++elses;
            if (elses > 1) report.add(n.id, "decision-else", "more than one else outflow");
        }
    }

    for (std::size_t t = 0; t < process.transitions.size(); ++t) {
        const auto& tr = process.transitions[t];
        const auto sk = nodes[adj.source[t]].kind;
        const auto tk = nodes[adj.target[t]].kind;
        if (tr.kind == TransitionKind::Incoming && !(is_unification(sk) && tk == NodeKind::Task))
            report.add(tr.id, "incoming-endpoints", "incoming must run from merge/join to task");
        if (tr.kind == TransitionKind::Outgoing && !(sk == NodeKind::Task && is_split(tk)))
            report.add(tr.id, "outgoing-endpoints", "outgoing must run from task to decision/fork");
        if (tr.guard && sk != NodeKind::Decision)
            report.add(tr.id, "guard-placement", "guard on a transition not leaving a decision");
    }

    if (starts != 1) report.add(process.id, "start-count", "process requires exactly one start");
    if (stops == 0) report.add(process.id, "stop-count", "process requires at least one stop");

    detail::EdgeList edges;
    for (std::size_t t = 0; t < process.transitions.size(); ++t)
        edges.emplace_back(adj.source[t], adj.target[t]);
    std::vector<bool> is_start(nodes.size()), is_stop(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        is_start[i] = nodes[i].kind == NodeKind::Start;
        is_stop[i] = nodes[i].kind == NodeKind::Stop;
    }
    auto faults = detail::reachability_faults(nodes.size(), edges, is_start, is_stop, stops > 0);
    for (auto i : faults.unreachable)
        report.add(nodes[i].id, "unreachable", "unreachable from start");
    for (auto i : faults.stranded)
        report.add(nodes[i].id, "no-path-to-stop", "no path to a stop");

    for (const auto& p : process.performers)
        if (p.name.empty()) report.add(p.id, "performer-name", "performer without name");
    if (process.context) {
        const auto& c = *process.context;
        if (c.enterprise && c.enterprise->empty())
            report.add(process.id, "context-name", "empty enterprise name");
        for (const auto& i : c.inputs)
            if (i.empty()) report.add(process.id, "context-name", "empty input name");
        for (const auto& o : c.outputs)
            if (o.empty()) report.add(process.id, "context-name", "empty output name");
    }
    return report;
}

}  // namespace bmx::nibm

// SPDX-License-Identifier: Apache-2.0
#include "bmx/grade.hpp"

#include <map>
#include <set>

#include "bmx/errors.hpp"
#include "graph_util.hpp"

namespace bmx::grade {

std::string_view to_string(Condition c) {
    switch (c) {
        case Condition::None: return "NONE";
        case Condition::Or: return "OR";
        case Condition::And: return "AND";
    }
    return "NONE";
}

std::optional<Condition> parse_condition(std::string_view text) {
    for (auto c : {Condition::None, Condition::Or, Condition::And})
        if (to_string(c) == text) return c;
    return std::nullopt;
}

const Task* Process::find_task(std::string_view id) const {
    for (const auto& t : tasks)
        if (t.id == id) return &t;
    return nullptr;
}

namespace {

enum class ElementClass { Task, Start, End, Flow, Performer };

std::map<std::string, ElementClass> index_elements(const Process& p) {
    std::map<std::string, ElementClass> ids;
    auto add = [&](const std::string& id, ElementClass cls) {
        if (id.empty()) throw ParseError("element with empty id");
        if (!ids.emplace(id, cls).second) throw ParseError("duplicate id " + id);
    };
    for (const auto& t : p.tasks) add(t.id, ElementClass::Task);
    for (const auto& s : p.starts) add(s.id, ElementClass::Start);
    for (const auto& e : p.ends) add(e.id, ElementClass::End);
    for (const auto& f : p.flows) add(f.id, ElementClass::Flow);
    for (const auto& r : p.performers) add(r.id, ElementClass::Performer);
    return ids;
}

}  // namespace

void check_structure(const Process& process) {
    const auto ids = index_elements(process);
    auto is_flow_node = [&](const std::string& id) {
        auto it = ids.find(id);
        return it != ids.end() && it->second != ElementClass::Flow &&
               it->second != ElementClass::Performer;
    };
    for (const auto& f : process.flows) {
        if (!ids.count(f.source)) throw ParseError("dangling source " + f.source);
        if (!ids.count(f.target)) throw ParseError("dangling target " + f.target);
        if (!is_flow_node(f.source) || !is_flow_node(f.target))
            throw ParseError("flow " + f.id + " must connect tasks, starts or ends");
    }
    for (const auto& t : process.tasks) {
        if (t.performer) {
            auto it = ids.find(*t.performer);
            if (it == ids.end() || it->second != ElementClass::Performer)
                throw ParseError("dangling performer " + *t.performer + " on task " + t.id);
        }
        for (const auto& [flow, _] : t.guards) {
            auto it = ids.find(flow);
            if (it == ids.end() || it->second != ElementClass::Flow)
                throw ParseError("dangling guard key " + flow + " on task " + t.id);
        }
    }
}

ValidationReport validate(const Process& process) {
    check_structure(process);
    ValidationReport report;

    // Node numbering: tasks, then starts, then ends.
    std::map<std::string, std::size_t> index;
    std::vector<std::string> node_ids;
    for (const auto& t : process.tasks) node_ids.push_back(t.id);
    for (const auto& s : process.starts) node_ids.push_back(s.id);
    for (const auto& e : process.ends) node_ids.push_back(e.id);
    for (std::size_t i = 0; i < node_ids.size(); ++i) index[node_ids[i]] = i;
    const auto n = node_ids.size();

    std::vector<std::size_t> in(n, 0), out(n, 0);
    std::map<std::string, std::set<std::string>> outflows;
    detail::EdgeList edges;
    for (const auto& f : process.flows) {
        auto s = index.at(f.source), t = index.at(f.target);
        ++out[s];
        ++in[t];
        outflows[f.source].insert(f.id);
        edges.emplace_back(s, t);
    }

    for (std::size_t i = 0; i < process.tasks.size(); ++i) {
        const auto& task = process.tasks[i];
        if (task.name.empty()) report.add(task.id, "task-name", "task without name");
        if (in[i] == 0) report.add(task.id, "task-no-inflow", "task has no inflow");
        if (out[i] == 0) report.add(task.id, "task-no-outflow", "task has no outflow");
        if (task.triggering == Condition::None && in[i] > 1)
            report.add(task.id, "trigger-none-fan-in", "several inflows without triggering condition");
        if (task.triggering != Condition::None && in[i] < 2)
            report.add(task.id, "trigger-fan-in",
                       "triggering " + std::string(to_string(task.triggering)) + " requires ≥2 inflows");
        if (task.branching == Condition::None && out[i] > 1)
            report.add(task.id, "branch-none-fan-out", "several outflows without branching condition");
        if (task.branching != Condition::None && out[i] < 2)
            report.add(task.id, "branch-fan-out",
                       "branching " + std::string(to_string(task.branching)) + " requires ≥2 outflows");
        if (!task.guards.empty() && task.branching != Condition::Or)
            report.add(task.id, "guard-placement", "guards require branching OR");
        std::size_t elses = 0;
        for (const auto& [flow, text] : task.guards) {
            if (!outflows[task.id].count(flow))
                report.add(task.id, "guard-foreign-flow", "guard on flow " + flow + " not leaving the task");
            if (text == "else") ++elses;
        }
        if (elses > 1) report.add(task.id, "guard-else", "more than one else flow");
    }

    const auto first_start = process.tasks.size();
    const auto first_end = first_start + process.starts.size();
    if (process.starts.size() != 1)
        report.add(process.name, "start-count", "process requires exactly one start");
    for (std::size_t i = first_start; i < first_end; ++i) {
        if (in[i] != 0) report.add(node_ids[i], "start-inflow", "flow into a start");
        if (out[i] != 1) report.add(node_ids[i], "start-outflow", "start requires exactly 1 outflow");
    }
    for (std::size_t i = first_end; i < n; ++i) {
        if (in[i] == 0) report.add(node_ids[i], "end-inflow", "end has no inflow");
        if (out[i] != 0) report.add(node_ids[i], "end-outflow", "flow out of an end");
    }
    if (process.ends.empty()) report.add(process.name, "end-count", "process requires at least one end");

    std::vector<bool> is_start(n, false), is_end(n, false);
    for (std::size_t i = first_start; i < first_end; ++i) is_start[i] = true;
    for (std::size_t i = first_end; i < n; ++i) is_end[i] = true;
    auto faults = detail::reachability_faults(n, edges, is_start, is_end, !process.ends.empty());
    for (auto i : faults.unreachable) report.add(node_ids[i], "unreachable", "unreachable from start");
    for (auto i : faults.stranded) report.add(node_ids[i], "no-path-to-end", "no path to an end");

    for (const auto& r : process.performers)
        if (r.name.empty()) report.add(r.id, "performer-name", "performer without name");
    return report;
}

}  // namespace bmx::grade

// SPDX-License-Identifier: Apache-2.0
#include "bmx/tokens.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <utility>

#include "json_util.hpp"

namespace bmx::tokens {

bool Marking::empty() const {
    return std::all_of(counts.begin(), counts.end(), [](std::uint16_t c) { return c == 0; });
}

Bounds default_bounds() {
    Bounds b;
    if (const char* env = std::getenv("BMX_MAX_STATES")) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(env, &used);
            if (used == std::string(env).size() && v > 0) b.max_states = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            // an unparsable override leaves the default in place
        }
    }
    return b;
}

std::string TraceSet::to_json() const {
    detail::OrderedJson doc;
    doc["complete"] = complete;
    doc["traces"] = detail::OrderedJson::array();
    for (const auto& t : traces) doc["traces"].push_back(t);
    doc["deadlocks"] = deadlocks.size();
    return doc.dump(2) + "\n";
}

TokenGame::TokenGame(const nibm::Process& process) : process_(process), adjacency_(process_) {
    auto report = nibm::validate(process_);
    if (!report.empty())
        throw std::invalid_argument("token game needs a well-formed model: " + report.violations.front().rule +
                                    " @ " + report.violations.front().element);
}

void TokenGame::put(Marking& marking, std::size_t transition) const {
    const auto& target = process_.nodes[adjacency_.target[transition]];
    if (target.kind == nibm::NodeKind::Stop) return;
    ++marking.counts[transition];
}

Marking TokenGame::initial() const {
    Marking m{std::vector<std::uint16_t>(process_.transitions.size(), 0)};
    for (std::size_t i = 0; i < process_.nodes.size(); ++i)
        if (process_.nodes[i].kind == nibm::NodeKind::Start)
            for (auto t : adjacency_.outflows[i]) put(m, t);
    return m;
}

std::vector<Step> TokenGame::steps(const Marking& marking) const {
    using nibm::NodeKind;
    std::vector<Step> out;
    for (std::size_t i = 0; i < process_.nodes.size(); ++i) {
        const auto& node = process_.nodes[i];
        const auto& in = adjacency_.inflows[i];
        const auto& outs = adjacency_.outflows[i];
        auto consume = [&](std::size_t t) {
            Marking m = marking;
            --m.counts[t];
            return m;
        };
        switch (node.kind) {
            case NodeKind::Start:
            case NodeKind::Stop:
                break;
            case NodeKind::Task:
            case NodeKind::Merge:
                // Merge fires once per waiting token; a Task has one inflow.
                for (auto t : in) {
                    if (!marking.counts[t]) continue;
                    Marking m = consume(t);
                    for (auto o : outs) put(m, o);
                    out.push_back({node.id, std::move(m)});
                }
                break;
            case NodeKind::Decision:
                for (auto t : in) {
                    if (!marking.counts[t]) continue;
                    for (auto o : outs) {
                        Marking m = consume(t);
                        put(m, o);
                        out.push_back({node.id, std::move(m)});
                    }
                }
                break;
            case NodeKind::Fork:
                for (auto t : in) {
                    if (!marking.counts[t]) continue;
                    Marking m = consume(t);
                    for (auto o : outs) put(m, o);
                    out.push_back({node.id, std::move(m)});
                }
                break;
            case NodeKind::Join: {
                if (in.empty() || !std::all_of(in.begin(), in.end(), [&](std::size_t t) { return marking.counts[t] > 0; }))
                    break;
                Marking m = marking;
                for (auto t : in) --m.counts[t];
                for (auto o : outs) put(m, o);
                out.push_back({node.id, std::move(m)});
                break;
            }
        }
    }
    return out;
}

std::optional<std::string> TokenGame::label_of(const std::string& node_id) const {
    auto it = adjacency_.node_index.find(node_id);
    if (it == adjacency_.node_index.end()) return std::nullopt;
    const auto& n = process_.nodes[it->second];
    if (n.kind != nibm::NodeKind::Task || n.label.starts_with(mapping::kSyntheticPrefix)) return std::nullopt;
    return n.label;
}

std::vector<Step> step_rules(const nibm::Process& process, const Marking& marking) {
    return TokenGame(process).steps(marking);
}

TraceSet enumerate_traces(const nibm::Process& process, Bounds bounds) {
    const TokenGame game(process);

    // Labels are interned so visited states stay small on long traces.
    std::vector<std::string> labels;
    std::map<std::string, std::uint16_t> label_index;
    std::map<std::string, int> node_label;  // node id -> label index, -1 for control nodes
    for (const auto& n : process.nodes) {
        int index = -1;
        if (auto l = game.label_of(n.id)) {
            auto [it, fresh] = label_index.emplace(*l, static_cast<std::uint16_t>(labels.size()));
            if (fresh) labels.push_back(*l);
            index = it->second;
        }
        node_label[n.id] = index;
    }

    using Labels = std::vector<std::uint16_t>;
    TraceSet result;
    std::set<std::pair<Marking, Labels>> visited;
    std::vector<std::pair<Marking, Labels>> stack{{game.initial(), {}}};
    visited.insert(stack.back());

    while (!stack.empty()) {
        auto [marking, trace] = std::move(stack.back());
        stack.pop_back();
        if (marking.empty()) {
            Trace named;
            for (auto i : trace) named.push_back(labels[i]);
            result.traces.insert(std::move(named));
            continue;
        }
        auto steps = game.steps(marking);
        if (steps.empty()) {
            result.deadlocks.insert(marking);
            continue;
        }
        // Reverse so the first enabled step is explored first.
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            Labels next = trace;
            if (auto l = node_label.at(it->fired); l >= 0) next.push_back(static_cast<std::uint16_t>(l));
            if (next.size() > bounds.max_trace_len) {
                result.complete = false;
                continue;
            }
            std::pair<Marking, Labels> state{std::move(it->successor), std::move(next)};
            if (visited.count(state)) continue;
            if (visited.size() >= bounds.max_states) {
                result.complete = false;
                return result;
            }
            visited.insert(state);
            stack.push_back(std::move(state));
        }
    }
    return result;
}

nibm::Process to_nibm(const AnyModel& model) {
    if (const auto* p = std::get_if<nibm::Process>(&model)) return *p;
    if (const auto* g = std::get_if<grade::Process>(&model))
        return mapping::project_to_nibm(mapping::NotationModel{*g}, mapping::builtin_grade_mapping()).process;
    return mapping::project_to_nibm(mapping::NotationModel{std::get<umlad::Activity>(model)},
                                    mapping::builtin_umlad_mapping())
        .process;
}

Equivalence equivalent(const AnyModel& a, const AnyModel& b, Bounds bounds) {
    const auto left = enumerate_traces(to_nibm(a), bounds);
    const auto right = enumerate_traces(to_nibm(b), bounds);
    Equivalence result;
    if (!left.complete || !right.complete) return result;
    std::vector<Trace> diff;
    std::set_symmetric_difference(left.traces.begin(), left.traces.end(), right.traces.begin(), right.traces.end(),
                                  std::back_inserter(diff));
    if (diff.empty()) {
        result.verdict = Verdict::Equal;
    } else {
        result.verdict = Verdict::Different;
        result.counterexample = diff.front();
    }
    return result;
}

}  // namespace bmx::tokens

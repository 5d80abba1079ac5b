// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "bmx/errors.hpp"
#include "bmx/mapping.hpp"
#include "json_util.hpp"

namespace bmx::mapping {

namespace {

using guard::Predicate;

ElementTemplate node(std::string kind, std::string role = std::string(kSelfRole), Port port = Port::None,
                     std::map<std::string, std::string> copies = {}) {
    ElementTemplate t;
    t.category = ElementCategory::Node;
    t.kind = std::move(kind);
    t.role = std::move(role);
    t.port = port;
    t.copies = std::move(copies);
    return t;
}

ElementTemplate transition(std::string kind, std::string role, std::string from, std::string to,
                           std::map<std::string, std::string> copies = {}) {
    ElementTemplate t;
    t.category = ElementCategory::Transition;
    t.kind = std::move(kind);
    t.role = std::move(role);
    t.from = std::move(from);
    t.to = std::move(to);
    t.copies = std::move(copies);
    return t;
}

ElementTemplate performer() {
    ElementTemplate t;
    t.category = ElementCategory::Performer;
    t.copies = {{"kind", "kind"}, {"name", "name"}};
    return t;
}

ElementTemplate edge(std::string kind) {
    return transition(std::move(kind), std::string(kSelfRole), std::string(kSourcePort),
                      std::string(kTargetPort), {{"guard", "guard"}});
}

MappingRule rule(std::string id, std::string cls, std::string_view guard_text,
                 std::vector<ElementTemplate> produces, std::vector<std::string> consumes = {}) {
    return {std::move(id), std::move(cls), Predicate::parse(guard_text), std::move(produces),
            std::move(consumes)};
}

std::string_view to_string(ElementCategory c) {
    switch (c) {
        case ElementCategory::Node: return "node";
        case ElementCategory::Transition: return "transition";
        case ElementCategory::Performer: return "performer";
    }
    return "node";
}

std::string_view to_string(Port p) {
    switch (p) {
        case Port::None: return "none";
        case Port::Entry: return "entry";
        case Port::Exit: return "exit";
    }
    return "none";
}

const std::map<ElementCategory, std::set<std::string>>& independent_attributes() {
    static const std::map<ElementCategory, std::set<std::string>> attrs{
        {ElementCategory::Node, {"label", "performer"}},
        {ElementCategory::Transition, {"guard"}},
        {ElementCategory::Performer, {"kind", "name"}},
    };
    return attrs;
}

}  // namespace

const MappingRule* MappingDefinition::find_rule(std::string_view id) const {
    for (const auto& r : rules)
        if (r.id == id) return &r;
    return nullptr;
}

MappingDefinition builtin_grade_mapping() {
    const std::map<std::string, std::string> task_copies{{"label", "name"}, {"performer", "performer"}};
    MappingDefinition d;
    d.source_notation = std::string(grade::kNotation);
    d.rules = {
        rule("start", "Start", "", {node("Start")}),
        rule("trig-or", "Task", "triggering=OR",
             {node("Merge", "trigger", Port::Entry), transition("Incoming", "trigger-in", "trigger", "self"),
              node("Task", "self", Port::None, task_copies)},
             {"triggering", "inflows"}),
        rule("trig-and", "Task", "triggering=AND",
             {node("Join", "trigger", Port::Entry), transition("Incoming", "trigger-in", "trigger", "self"),
              node("Task", "self", Port::None, task_copies)},
             {"triggering", "inflows"}),
        rule("trig-none", "Task", "triggering=NONE", {node("Task", "self", Port::None, task_copies)},
             {"triggering", "inflows"}),
        rule("branch-or", "Task", "branching=OR",
             {node("Task", "self", Port::None, task_copies),
              transition("Outgoing", "branch-out", "self", "branch"), node("Decision", "branch", Port::Exit)},
             {"branching", "outflows", "guards"}),
        rule("branch-and", "Task", "branching=AND",
             {node("Task", "self", Port::None, task_copies),
              transition("Outgoing", "branch-out", "self", "branch"), node("Fork", "branch", Port::Exit)},
             {"branching", "outflows"}),
        rule("branch-none", "Task", "branching=NONE", {node("Task", "self", Port::None, task_copies)},
             {"branching", "outflows"}),
        rule("end", "End", "", {node("Stop")}),
        rule("flow", "Flow", "", {edge("Pass")}, {"source", "target", "guard"}),
        rule("performer", "PerformerRef", "", {performer()}, {"kind", "name"}),
    };
    d.xor_groups = {{"trig-or", "trig-and", "trig-none"}, {"branch-or", "branch-and", "branch-none"}};
    return d;
}

MappingDefinition builtin_umlad_mapping() {
    MappingDefinition d;
    d.source_notation = std::string(umlad::kNotation);
    d.rules = {
        rule("action", "Action", "", {node("Task", "self", Port::None, {{"label", "name"}, {"performer", "partition"}})},
             {"name", "partition"}),
        rule("decision", "DecisionNode", "", {node("Decision")}),
        rule("merge", "MergeNode", "", {node("Merge")}),
        rule("fork", "ForkNode", "", {node("Fork")}),
        rule("join", "JoinNode", "", {node("Join")}),
        rule("initial", "InitialNode", "", {node("Start")}),
        rule("final", "ActivityFinalNode", "", {node("Stop")}),
        // Incoming/Outgoing have no UML counterpart; endpoint classes recover them.
        rule("flow-incoming-merge", "ControlFlow", "sourceClass=MergeNode & targetClass=Action",
             {edge("Incoming")}, {"source", "target", "guard"}),
        rule("flow-incoming-join", "ControlFlow", "sourceClass=JoinNode & targetClass=Action",
             {edge("Incoming")}, {"source", "target", "guard"}),
        rule("flow-outgoing-decision", "ControlFlow", "sourceClass=Action & targetClass=DecisionNode",
             {edge("Outgoing")}, {"source", "target", "guard"}),
        rule("flow-outgoing-fork", "ControlFlow", "sourceClass=Action & targetClass=ForkNode",
             {edge("Outgoing")}, {"source", "target", "guard"}),
        rule("flow-pass", "ControlFlow",
             "!(sourceClass=MergeNode & targetClass=Action) & !(sourceClass=JoinNode & targetClass=Action) & "
             "!(sourceClass=Action & targetClass=DecisionNode) & !(sourceClass=Action & targetClass=ForkNode)",
             {edge("Pass")}, {"source", "target", "guard"}),
        rule("partition", "Partition", "", {performer()}, {"kind", "name"}),
    };
    d.xor_groups = {{"flow-incoming-merge", "flow-incoming-join", "flow-outgoing-decision",
                     "flow-outgoing-fork", "flow-pass"}};
    return d;
}

MappingDefinition builtin_mapping(std::string_view notation) {
    if (notation == grade::kNotation) return builtin_grade_mapping();
    if (notation == umlad::kNotation) return builtin_umlad_mapping();
    throw std::invalid_argument("no builtin mapping for notation " + std::string(notation));
}

ValidationReport validate_definition(const MappingDefinition& definition) {
    ValidationReport report;
    const instance::MetamodelSchema* schema = nullptr;
    try {
        schema = &instance::schema_for(definition.source_notation);
    } catch (const std::invalid_argument&) {
        report.add(definition.source_notation, "unknown-notation", "no metamodel for this notation");
        return report;
    }

    std::set<std::string> rule_ids, covered;
    for (const auto& r : definition.rules) {
        if (r.id.empty() || !rule_ids.insert(r.id).second)
            report.add(r.id, "rule-id", "rule id empty or duplicated");
        auto cls = schema->find(r.source_class);
        if (cls == schema->end()) {
            report.add(r.id, "unknown-class", "no class " + r.source_class);
            continue;
        }
        covered.insert(r.source_class);
        const auto& cs = cls->second;
        auto known = [&](const std::string& name) {
            return std::count(cs.attributes.begin(), cs.attributes.end(), name) > 0 ||
                   std::count(cs.references.begin(), cs.references.end(), name) > 0;
        };
        for (const auto& a : r.guard.attributes())
            if (!known(a)) report.add(r.id, "unknown-attribute", "guard reads " + a + " absent on " + r.source_class);
        if (r.produces.empty()) report.add(r.id, "empty-rule", "rule produces nothing");

        std::map<std::string, const ElementTemplate*> roles;
        for (const auto& t : r.produces) {
            if (t.role.empty()) report.add(r.id, "template-role", "template without role");
            if (!roles.emplace(t.role, &t).second) report.add(r.id, "template-role", "role " + t.role + " repeated");
        }
        for (const auto& t : r.produces) {
            if (t.category == ElementCategory::Node && !nibm::parse_node_kind(t.kind))
                report.add(r.id, "template-kind", "no node kind " + t.kind);
            if (t.category == ElementCategory::Transition && !nibm::parse_transition_kind(t.kind))
                report.add(r.id, "template-kind", "no transition kind " + t.kind);
            if (t.category != ElementCategory::Node && t.port != Port::None)
                report.add(r.id, "template-port", "port on a non-node template");
            for (const auto& [target, source] : t.copies) {
                if (!independent_attributes().at(t.category).count(target))
                    report.add(r.id, "unknown-attribute", "no independent attribute " + target);
                if (!known(source))
                    report.add(r.id, "unknown-attribute", "copy reads " + source + " absent on " + r.source_class);
            }
            if (t.category == ElementCategory::Transition) {
                for (const auto& end : {t.from, t.to}) {
                    if (end == kSourcePort || end == kTargetPort) {
                        if (!cs.edge) report.add(r.id, "template-endpoint", end + " used on a non-edge class");
                        continue;
                    }
                    auto it = roles.find(end);
                    if (it == roles.end() || it->second->category != ElementCategory::Node)
                        report.add(r.id, "template-endpoint", "endpoint " + end + " is not a node role of the rule");
                }
            }
        }
    }
    for (const auto& [cls, _] : *schema)
        if (!covered.count(cls)) report.add(cls, "class-uncovered", "no rule for class " + cls);

    std::set<std::string> grouped;
    for (const auto& group : definition.xor_groups) {
        std::set<std::string> classes;
        for (const auto& id : group) {
            const auto* r = definition.find_rule(id);
            if (!r) {
                report.add(id, "xor-unknown-rule", "xor group names unknown rule");
                continue;
            }
            if (!grouped.insert(id).second) report.add(id, "xor-overlap", "rule in several xor groups");
            classes.insert(r->source_class);
        }
        if (classes.size() > 1) report.add(group.empty() ? "" : group.front(), "xor-mixed-classes",
                                           "xor group spans several classes");
    }
    return report;
}

std::string to_json(const MappingDefinition& definition) {
    detail::OrderedJson doc;
    doc["source"] = definition.source_notation;
    doc["rules"] = detail::OrderedJson::array();
    for (const auto& r : definition.rules) {
        detail::OrderedJson jr;
        jr["id"] = r.id;
        jr["class"] = r.source_class;
        jr["guard"] = r.guard.to_string();
        jr["produces"] = detail::OrderedJson::array();
        for (const auto& t : r.produces) {
            detail::OrderedJson jt;
            jt["element"] = to_string(t.category);
            if (!t.kind.empty()) jt["kind"] = t.kind;
            jt["role"] = t.role;
            if (t.port != Port::None) jt["port"] = to_string(t.port);
            if (!t.from.empty()) jt["from"] = t.from;
            if (!t.to.empty()) jt["to"] = t.to;
            if (!t.copies.empty()) {
                detail::OrderedJson copies = detail::OrderedJson::object();
                for (const auto& [k, v] : t.copies) copies[k] = v;
                jt["copy"] = std::move(copies);
            }
            jr["produces"].push_back(std::move(jt));
        }
        jr["consumes"] = r.consumes;
        doc["rules"].push_back(std::move(jr));
    }
    doc["xor"] = definition.xor_groups;
    return doc.dump(2) + "\n";
}

MappingDefinition definition_from_json(std::string_view document) {
    const auto doc = detail::parse_document(document);
    if (!doc.is_object()) throw ParseError("mapping definition is not an object");
    MappingDefinition d;
    d.source_notation = detail::string_field(doc, "source", "definition");
    const auto& rules = detail::array_field(doc, "rules", "definition");
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto path = detail::at("rules", i);
        const auto& jr = detail::object_at(rules, i, path);
        MappingRule r;
        r.id = detail::string_field(jr, "id", path);
        r.source_class = detail::string_field(jr, "class", path);
        r.guard = Predicate::parse(detail::optional_string(jr, "guard", path).value_or(""));
        const auto& produces = detail::array_field(jr, "produces", path);
        for (std::size_t k = 0; k < produces.size(); ++k) {
            const auto tpath = path + "." + detail::at("produces", k);
            const auto& jt = detail::object_at(produces, k, tpath);
            ElementTemplate t;
            const auto element = detail::string_field(jt, "element", tpath);
            if (element == "node") t.category = ElementCategory::Node;
            else if (element == "transition") t.category = ElementCategory::Transition;
            else if (element == "performer") t.category = ElementCategory::Performer;
            else throw ParseError("illegal element category at " + tpath);
            t.kind = detail::optional_string(jt, "kind", tpath).value_or("");
            t.role = detail::optional_string(jt, "role", tpath).value_or(std::string(kSelfRole));
            const auto port = detail::optional_string(jt, "port", tpath).value_or("none");
            if (port == "entry") t.port = Port::Entry;
            else if (port == "exit") t.port = Port::Exit;
            else if (port != "none") throw ParseError("illegal port at " + tpath);
            t.from = detail::optional_string(jt, "from", tpath).value_or("");
            t.to = detail::optional_string(jt, "to", tpath).value_or("");
            if (auto c = jt.find("copy"); c != jt.end() && !c->is_null()) {
                if (!c->is_object()) throw ParseError("copy is not an object at " + tpath);
                for (const auto& [k, v] : c->items()) {
                    if (!v.is_string()) throw ParseError("copy source is not a string at " + tpath);
                    t.copies[k] = v.get<std::string>();
                }
            }
            r.produces.push_back(std::move(t));
        }
        const auto& consumes = detail::array_field(jr, "consumes", path);
        for (const auto& c : consumes) {
            if (!c.is_string()) throw ParseError("consumes entry is not a string at " + path);
            r.consumes.push_back(c.get<std::string>());
        }
        d.rules.push_back(std::move(r));
    }
    const auto& groups = detail::array_field(doc, "xor", "definition");
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (!groups[i].is_array()) throw ParseError("xor group is not an array at " + detail::at("xor", i));
        std::vector<std::string> group;
        for (const auto& id : groups[i]) {
            if (!id.is_string()) throw ParseError("xor member is not a string at " + detail::at("xor", i));
            group.push_back(id.get<std::string>());
        }
        d.xor_groups.push_back(std::move(group));
    }
    return d;
}

std::string_view to_string(Direction direction) {
    switch (direction) {
        case Direction::ToNibm: return "toNibm";
        case Direction::FromNibm: return "fromNibm";
        case Direction::Derived: return "derived";
    }
    return "toNibm";
}

}  // namespace bmx::mapping

// SPDX-License-Identifier: Apache-2.0
#include "bmx/instance.hpp"

#include <stdexcept>

#include "bmx/errors.hpp"

namespace bmx::instance {

namespace {

const ClassSchema kPlainNode{};
const ClassSchema kEdge{{"guard", std::string(kSourceClass), std::string(kTargetClass)},
                        {std::string(kSourceRef), std::string(kTargetRef)},
                        true};
const ClassSchema kPerformer{{"kind", "name"}, {}, false};

std::string attribute(const Instance& inst, std::string_view name) {
    auto it = inst.attributes.find(name);
    if (it == inst.attributes.end())
        throw ParseError("instance " + inst.id + " lacks attribute " + std::string(name));
    return it->second;
}

std::optional<std::string> optional_attribute(const Instance& inst, std::string_view name) {
    auto it = inst.attributes.find(name);
    if (it == inst.attributes.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> reference(const Instance& inst, std::string_view name) {
    auto it = inst.references.find(name);
    if (it == inst.references.end()) return std::nullopt;
    return it->second;
}

std::string required_reference(const Instance& inst, std::string_view name) {
    auto r = reference(inst, name);
    if (!r) throw ParseError("instance " + inst.id + " lacks reference " + std::string(name));
    return *r;
}

PerformerKind performer_kind(const Instance& inst) {
    auto k = parse_performer_kind(attribute(inst, "kind"));
    if (!k) throw ParseError("illegal performer kind on " + inst.id);
    return *k;
}

/// Fills sourceClass/targetClass on edge instances once all classes are known.
void derive_endpoint_classes(InstanceModel& model) {
    std::map<std::string, std::string> cls;
    for (const auto& i : model.instances) cls[i.id] = i.cls;
    for (auto& i : model.instances) {
        auto s = i.references.find(kSourceRef);
        auto t = i.references.find(kTargetRef);
        if (s == i.references.end() || t == i.references.end()) continue;
        i.attributes[std::string(kSourceClass)] = cls.at(s->second);
        i.attributes[std::string(kTargetClass)] = cls.at(t->second);
    }
}

}  // namespace

const Instance* InstanceModel::find(std::string_view id) const {
    for (const auto& i : instances)
        if (i.id == id) return &i;
    return nullptr;
}

const MetamodelSchema& schema_for(std::string_view notation) {
    static const MetamodelSchema grade_schema{
        {"Task", {{"name", "triggering", "branching"}, {"performer"}, false}},
        {"Start", kPlainNode},
        {"End", kPlainNode},
        {"Flow", kEdge},
        {"PerformerRef", kPerformer},
    };
    static const MetamodelSchema uml_schema{
        {"Action", {{"name"}, {"partition"}, false}},
        {"DecisionNode", kPlainNode},
        {"MergeNode", kPlainNode},
        {"ForkNode", kPlainNode},
        {"JoinNode", kPlainNode},
        {"InitialNode", kPlainNode},
        {"ActivityFinalNode", kPlainNode},
        {"ControlFlow", kEdge},
        {"Partition", kPerformer},
    };
    if (notation == grade::kNotation) return grade_schema;
    if (notation == umlad::kNotation) return uml_schema;
    throw std::invalid_argument("unknown notation " + std::string(notation));
}

InstanceModel reflect(const grade::Process& process) {
    grade::check_structure(process);
    InstanceModel model{std::string(grade::kNotation), process.name, {}};
    for (const auto& s : process.starts) model.instances.push_back({s.id, "Start", {}, {}});
    for (const auto& t : process.tasks) {
        Instance inst{t.id, "Task", {}, {}};
        inst.attributes["name"] = t.name;
        inst.attributes["triggering"] = std::string(grade::to_string(t.triggering));
        inst.attributes["branching"] = std::string(grade::to_string(t.branching));
        if (t.performer) inst.references["performer"] = *t.performer;
        model.instances.push_back(std::move(inst));
    }
    for (const auto& e : process.ends) model.instances.push_back({e.id, "End", {}, {}});
    for (const auto& f : process.flows) {
        Instance inst{f.id, "Flow", {}, {}};
        inst.references[std::string(kSourceRef)] = f.source;
        inst.references[std::string(kTargetRef)] = f.target;
        // A guard belongs to the flow only when its own source task declares it.
        if (const auto* src = process.find_task(f.source)) {
            if (auto g = src->guards.find(f.id); g != src->guards.end())
                inst.attributes["guard"] = g->second;
        }
        model.instances.push_back(std::move(inst));
    }
    for (const auto& r : process.performers) {
        Instance inst{r.id, "PerformerRef", {}, {}};
        inst.attributes["kind"] = std::string(to_string(r.kind));
        inst.attributes["name"] = r.name;
        model.instances.push_back(std::move(inst));
    }
    derive_endpoint_classes(model);
    return model;
}

InstanceModel reflect(const umlad::Activity& activity) {
    umlad::check_structure(activity);
    InstanceModel model{std::string(umlad::kNotation), activity.name, {}};
    for (const auto& n : activity.nodes) {
        Instance inst{n.id, std::string(umlad::to_string(n.kind)), {}, {}};
        if (n.kind == umlad::NodeKind::Action) inst.attributes["name"] = n.name;
        if (n.partition) inst.references["partition"] = *n.partition;
        model.instances.push_back(std::move(inst));
    }
    for (const auto& e : activity.edges) {
        Instance inst{e.id, "ControlFlow", {}, {}};
        inst.references[std::string(kSourceRef)] = e.source;
        inst.references[std::string(kTargetRef)] = e.target;
        if (e.guard) inst.attributes["guard"] = *e.guard;
        model.instances.push_back(std::move(inst));
    }
    for (const auto& p : activity.partitions) {
        Instance inst{p.id, "Partition", {}, {}};
        inst.attributes["kind"] = std::string(to_string(p.kind));
        inst.attributes["name"] = p.name;
        model.instances.push_back(std::move(inst));
    }
    derive_endpoint_classes(model);
    return model;
}

grade::Process reify_grade(const InstanceModel& model) {
    if (model.notation != grade::kNotation)
        throw ParseError("instance model is not " + std::string(grade::kNotation));
    grade::Process p;
    p.name = model.name;
    std::map<std::string, std::size_t> task_index;
    for (const auto& inst : model.instances) {
        if (inst.cls == "Task") {
            grade::Task t;
            t.id = inst.id;
            t.name = attribute(inst, "name");
            auto trig = grade::parse_condition(optional_attribute(inst, "triggering").value_or("NONE"));
            auto branch = grade::parse_condition(optional_attribute(inst, "branching").value_or("NONE"));
            if (!trig || !branch) throw ParseError("illegal condition on task " + inst.id);
            t.triggering = *trig;
            t.branching = *branch;
            t.performer = reference(inst, "performer");
            task_index[t.id] = p.tasks.size();
            p.tasks.push_back(std::move(t));
        } else if (inst.cls == "Start") {
            p.starts.push_back({inst.id});
        } else if (inst.cls == "End") {
            p.ends.push_back({inst.id});
        } else if (inst.cls == "PerformerRef") {
            p.performers.push_back({inst.id, performer_kind(inst), attribute(inst, "name")});
        } else if (inst.cls != "Flow") {
            throw ParseError("unknown class " + inst.cls + " for " + std::string(grade::kNotation));
        }
    }
    for (const auto& inst : model.instances) {
        if (inst.cls != "Flow") continue;
        grade::Flow f{inst.id, required_reference(inst, kSourceRef), required_reference(inst, kTargetRef)};
        if (auto g = optional_attribute(inst, "guard")) {
            auto it = task_index.find(f.source);
            if (it == task_index.end()) throw ParseError("guarded flow " + f.id + " does not leave a task");
            p.tasks[it->second].guards[f.id] = *g;
        }
        p.flows.push_back(std::move(f));
    }
    grade::check_structure(p);
    return p;
}

umlad::Activity reify_umlad(const InstanceModel& model) {
    if (model.notation != umlad::kNotation)
        throw ParseError("instance model is not " + std::string(umlad::kNotation));
    umlad::Activity a;
    a.name = model.name;
    for (const auto& inst : model.instances) {
        if (inst.cls == "ControlFlow") {
            a.edges.push_back({inst.id, required_reference(inst, kSourceRef),
                               required_reference(inst, kTargetRef), optional_attribute(inst, "guard")});
        } else if (inst.cls == "Partition") {
            a.partitions.push_back({inst.id, attribute(inst, "name"), performer_kind(inst)});
        } else if (auto kind = umlad::parse_node_kind(inst.cls)) {
            umlad::Node n{inst.id, *kind, {}, reference(inst, "partition")};
            if (*kind == umlad::NodeKind::Action) n.name = attribute(inst, "name");
            a.nodes.push_back(std::move(n));
        } else {
            throw ParseError("unknown class " + inst.cls + " for " + std::string(umlad::kNotation));
        }
    }
    umlad::check_structure(a);
    return a;
}

}  // namespace bmx::instance

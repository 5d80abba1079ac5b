// SPDX-License-Identifier: Apache-2.0
// Interpreter for mapping definitions in both directions, plus composition
// into derived mappings.

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bmx/errors.hpp"
#include "bmx/mapping.hpp"
#include "json_util.hpp"

namespace bmx::mapping {

namespace {

using instance::Instance;
using instance::InstanceModel;

std::string element_id(const std::string& source, std::string_view role) {
    return role == kSelfRole ? source : source + "." + std::string(role);
}

const ElementTemplate* self_template(const MappingRule& rule) {
    for (const auto& t : rule.produces)
        if (t.role == kSelfRole) return &t;
    return nullptr;
}

const ElementTemplate* role_template(const MappingRule& rule, std::string_view role) {
    for (const auto& t : rule.produces)
        if (t.role == role) return &t;
    return nullptr;
}

void require_valid(const MappingDefinition& definition) {
    auto report = validate_definition(definition);
    if (!report.empty())
        throw MappingError(MappingError::Kind::BadDefinition,
                           "invalid mapping definition for " + definition.source_notation, report);
}

/// Rules of one class whose guards hold, with xor discipline enforced.
std::vector<const MappingRule*> fire(const Instance& inst, const MappingDefinition& definition) {
    std::vector<const MappingRule*> fired;
    for (const auto& r : definition.rules)
        if (r.source_class == inst.cls && r.guard.evaluate(inst.attributes)) fired.push_back(&r);
    if (fired.empty())
        throw MappingError(MappingError::Kind::NonTotal,
                           "no rule matches element " + inst.id + " (" + inst.cls + ")");
    for (const auto& group : definition.xor_groups) {
        std::vector<std::string> hits;
        for (const auto* r : fired)
            if (std::find(group.begin(), group.end(), r->id) != group.end()) hits.push_back(r->id);
        if (hits.size() > 1)
            throw MappingError(MappingError::Kind::XorViolation,
                               "element " + inst.id + " matches " + hits[0] + " and " + hits[1] +
                                   " of one xor group");
    }
    return fired;
}

/// A copy source is an attribute value or, failing that, a referenced id.
struct CopyValue {
    std::string value;
    bool reference = false;
};

std::optional<CopyValue> copy_value(const Instance& inst, const std::string& name) {
    if (auto it = inst.attributes.find(name); it != inst.attributes.end()) return CopyValue{it->second, false};
    if (auto it = inst.references.find(name); it != inst.references.end()) return CopyValue{it->second, true};
    return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// notation -> independent

NibmProjection project_to_nibm(const InstanceModel& model, const MappingDefinition& definition) {
    if (model.notation != definition.source_notation)
        throw MappingError(MappingError::Kind::Precondition,
                           "definition maps " + definition.source_notation + ", model is " + model.notation);
    require_valid(definition);

    NibmProjection result;
    auto& out = result.process;
    out.name = model.name;
    result.trace.direction = Direction::ToNibm;

    struct Ports {
        std::string entry, exit;
    };
    struct PendingTransition {
        std::string id;
        const Instance* inst;
        const ElementTemplate* tmpl;
    };
    std::map<std::string, Ports> ports;
    std::map<std::string, std::size_t> node_pos;
    std::map<std::string, std::string> performer_image;  // source instance -> performer id
    std::map<std::size_t, std::string> performer_refs;   // node index -> referenced instance
    std::vector<PendingTransition> pending;
    std::set<std::string> pending_ids, performer_ids;

    for (const auto& inst : model.instances) {
        Ports p;
        TraceLink link{inst.id, {}, {}, {}};
        for (const auto* rule : fire(inst, definition)) {
            link.rule += (link.rule.empty() ? "" : "+") + rule->id;
            for (const auto& t : rule->produces) {
                const auto id = element_id(inst.id, t.role);
                if (std::find(link.produced.begin(), link.produced.end(), id) == link.produced.end())
                    link.produced.push_back(id);
                switch (t.category) {
                    case ElementCategory::Node: {
                        const auto kind = *nibm::parse_node_kind(t.kind);
                        auto [it, fresh] = node_pos.emplace(id, out.nodes.size());
                        if (fresh) out.nodes.push_back({id, kind, {}, std::nullopt});
                        auto& node = out.nodes[it->second];
                        if (node.kind != kind)
                            throw MappingError(MappingError::Kind::BadDefinition,
                                               "rules disagree on the kind of " + id);
                        for (const auto& [target, source] : t.copies) {
                            auto v = copy_value(inst, source);
                            if (!v) continue;
                            if (target == "label") node.label = v->value;
                            if (target == "performer") performer_refs[it->second] = v->value;
                        }
                        auto set_port = [&](std::string& slot, const char* what) {
                            if (!slot.empty() && slot != id)
                                throw MappingError(MappingError::Kind::BadDefinition,
                                                   std::string("two ") + what + " ports for " + inst.id);
                            slot = id;
                        };
                        if (t.port == Port::Entry) set_port(p.entry, "entry");
                        if (t.port == Port::Exit) set_port(p.exit, "exit");
                        break;
                    }
                    case ElementCategory::Transition:
                        if (pending_ids.insert(id).second) pending.push_back({id, &inst, &t});
                        break;
                    case ElementCategory::Performer: {
                        if (!performer_ids.insert(id).second) break;
                        nibm::Performer perf{id, PerformerKind::Resource, {}};
                        for (const auto& [target, source] : t.copies) {
                            auto v = copy_value(inst, source);
                            if (!v) continue;
                            if (target == "name") perf.name = v->value;
                            if (target == "kind") {
                                auto k = parse_performer_kind(v->value);
                                if (!k) throw ParseError("illegal performer kind on " + inst.id);
                                perf.kind = *k;
                            }
                        }
                        performer_image[inst.id] = id;
                        out.performers.push_back(std::move(perf));
                        break;
                    }
                }
            }
        }
        result.trace.links.push_back(std::move(link));
        if (node_pos.count(inst.id)) {
            if (p.entry.empty()) p.entry = inst.id;
            if (p.exit.empty()) p.exit = inst.id;
        }
        ports[inst.id] = p;
    }

    for (const auto& [index, referenced] : performer_refs) {
        auto it = performer_image.find(referenced);
        if (it == performer_image.end())
            throw MappingError(MappingError::Kind::NonTotal,
                               "performer reference " + referenced + " has no image");
        out.nodes[index].performer = it->second;
    }

    for (const auto& pt : pending) {
        const auto& inst = *pt.inst;
        auto endpoint = [&](const std::string& spec, bool from) -> std::string {
            if (spec == kSourcePort || spec == kTargetPort) {
                const auto ref = copy_value(inst, std::string(spec == kSourcePort ? instance::kSourceRef
                                                                                  : instance::kTargetRef));
                if (!ref) throw MappingError(MappingError::Kind::NonTotal, inst.id + " lacks " + spec);
                auto it = ports.find(ref->value);
                const auto& port = it == ports.end() ? std::string() : (from ? it->second.exit : it->second.entry);
                if (port.empty())
                    throw MappingError(MappingError::Kind::NonTotal,
                                       "edge " + inst.id + " attaches to " + ref->value + ", which has no " +
                                           (from ? "exit" : "entry") + " port");
                return port;
            }
            return element_id(inst.id, spec);
        };
        nibm::Transition tr;
        tr.id = pt.id;
        tr.kind = *nibm::parse_transition_kind(pt.tmpl->kind);
        tr.source = endpoint(pt.tmpl->from, true);
        tr.target = endpoint(pt.tmpl->to, false);
        for (const auto& [target, source] : pt.tmpl->copies) {
            auto v = copy_value(inst, source);
            if (v && target == "guard") tr.guard = v->value;
        }
        out.transitions.push_back(std::move(tr));
    }

    ValidationReport report;
    try {
        report = nibm::validate(out);
    } catch (const ParseError& e) {
        throw MappingError(MappingError::Kind::InvalidResult, std::string("projection is unsound: ") + e.what());
    }
    if (!report.empty()) {
        std::string context;
        for (const auto& v : report.violations) {
            for (const auto& link : result.trace.links) {
                if (std::find(link.produced.begin(), link.produced.end(), v.element) != link.produced.end()) {
                    context = " (from " + link.source + " via " + link.rule + ")";
                    break;
                }
            }
            if (!context.empty()) break;
        }
        throw MappingError(MappingError::Kind::InvalidResult,
                           "projected model is not well-formed: " + report.violations.front().rule + " @ " +
                               report.violations.front().element + context,
                           report);
    }
    return result;
}

NibmProjection project_to_nibm(const NotationModel& model, const MappingDefinition& definition) {
    return std::visit(
        [&](const auto& m) {
            auto report = [&] {
                if constexpr (std::is_same_v<std::decay_t<decltype(m)>, grade::Process>)
                    return grade::validate(m);
                else
                    return umlad::validate(m);
            }();
            if (!report.empty())
                throw MappingError(MappingError::Kind::Precondition,
                                   "source model is not well-formed: " + report.violations.front().rule + " @ " +
                                       report.violations.front().element,
                                   report);
            return project_to_nibm(instance::reflect(m), definition);
        },
        model);
}

// ---------------------------------------------------------------------------
// independent -> notation

namespace {

struct ClassIndex {
    std::map<nibm::NodeKind, std::string> node_class;  // anchor kind -> class
    std::vector<std::string> edge_classes;
    std::string performer_class;
    /// class -> groups of rules, each group is exclusive; ungrouped rules are
    /// singleton groups.
    std::map<std::string, std::vector<std::vector<const MappingRule*>>> groups;
};

ClassIndex index_classes(const MappingDefinition& definition) {
    ClassIndex index;
    std::map<std::string, std::string> anchor;  // class -> category/kind signature
    for (const auto& r : definition.rules) {
        const auto* self = self_template(r);
        if (!self)
            throw MappingError(MappingError::Kind::BadDefinition, "rule " + r.id + " has no self template");
        // Edge classes may pick the transition kind per rule; nodes may not.
        std::string sig = std::to_string(static_cast<int>(self->category)) + ":" +
                          (self->category == ElementCategory::Node ? self->kind : std::string());
        auto [it, fresh] = anchor.emplace(r.source_class, sig);
        if (!fresh && it->second != sig)
            throw MappingError(MappingError::Kind::BadDefinition,
                               "rules of " + r.source_class + " disagree on their self element");
        if (!fresh) continue;
        switch (self->category) {
            case ElementCategory::Node: {
                auto kind = *nibm::parse_node_kind(self->kind);
                if (!index.node_class.emplace(kind, r.source_class).second)
                    throw MappingError(MappingError::Kind::BadDefinition,
                                       "several classes are anchored at " + self->kind);
                break;
            }
            case ElementCategory::Transition:
                if (self->from != kSourcePort || self->to != kTargetPort)
                    throw MappingError(MappingError::Kind::BadDefinition,
                                       "edge class " + r.source_class + " must attach to @source/@target");
                index.edge_classes.push_back(r.source_class);
                break;
            case ElementCategory::Performer:
                if (!index.performer_class.empty())
                    throw MappingError(MappingError::Kind::BadDefinition, "several performer classes");
                index.performer_class = r.source_class;
                break;
        }
    }
    std::set<std::string> grouped;
    for (const auto& group : definition.xor_groups) {
        std::vector<const MappingRule*> rules;
        for (const auto& id : group) {
            rules.push_back(definition.find_rule(id));
            grouped.insert(id);
        }
        if (!rules.empty()) index.groups[rules.front()->source_class].push_back(std::move(rules));
    }
    for (const auto& r : definition.rules)
        if (!grouped.count(r.id)) index.groups[r.source_class].push_back({&r});
    return index;
}

/// Element key: category prefix keeps node and transition ids apart.
std::string node_key(const std::string& id) { return "n:" + id; }

/// Links are kept one per source element; further rules extend the entry.
void add_link(MappingTrace& trace, const std::string& source, const std::string& rule,
              const std::vector<std::string>& produced) {
    auto it = std::find_if(trace.links.begin(), trace.links.end(),
                           [&](const TraceLink& l) { return l.source == source; });
    if (it == trace.links.end()) {
        trace.links.push_back({source, rule, produced, {}});
        return;
    }
    std::vector<std::string> rules;
    for (std::size_t b = 0, e; b <= it->rule.size(); b = e + 1) {
        e = std::min(it->rule.find('+', b), it->rule.size());
        rules.push_back(it->rule.substr(b, e - b));
    }
    if (std::find(rules.begin(), rules.end(), rule) == rules.end()) it->rule += "+" + rule;
    for (const auto& p : produced)
        if (std::find(it->produced.begin(), it->produced.end(), p) == it->produced.end()) it->produced.push_back(p);
}
std::string transition_key(const std::string& id) { return "t:" + id; }

struct Binding {
    std::map<std::string, std::string> nodes;        // role -> node id
    std::map<std::string, std::string> transitions;  // role -> transition id
    std::size_t size() const { return nodes.size() + transitions.size(); }
};

class Inverter {
public:
    Inverter(const nibm::Process& process, const MappingDefinition& definition, ProjectionOptions options)
        : process_(process), definition_(definition), options_(options), adj_(process),
          classes_(index_classes(definition)) {}

    NotationProjection run();

private:
    const nibm::Node& node(const std::string& id) const { return process_.nodes[adj_.node_index.at(id)]; }

    bool is_consumed(const std::string& key) const { return consumed_.count(key) > 0; }

    std::optional<Binding> match(const MappingRule& rule, const nibm::Node& anchor) const;
    void claim(const std::string& key, const std::string& owner);
    void apply(const MappingRule& rule, const Binding& binding, Instance& inst);
    void absorb_anchor(const nibm::Node& anchor, const std::string& cls);
    void synthesize(const nibm::Node& control);
    void attach_transition(const nibm::Transition& tr);

    const nibm::Process& process_;
    const MappingDefinition& definition_;
    ProjectionOptions options_;
    nibm::Adjacency adj_;
    ClassIndex classes_;

    std::map<std::string, std::string> consumed_;     // element key -> owner instance
    std::map<std::string, std::string> entry_owner_;  // node id -> instance id
    std::map<std::string, std::string> exit_owner_;   // node id -> instance id
    std::map<std::string, std::string> class_of_;     // instance id -> class
    std::vector<Instance> node_instances_;
    std::vector<Instance> edge_instances_;
    std::vector<Instance> performer_instances_;
    MappingTrace trace_{Direction::FromNibm, {}};
};

std::optional<Binding> Inverter::match(const MappingRule& rule, const nibm::Node& anchor) const {
    const auto* self = self_template(rule);
    if (!self || self->category != ElementCategory::Node || self->kind != nibm::to_string(anchor.kind))
        return std::nullopt;
    Binding b;
    b.nodes[std::string(kSelfRole)] = anchor.id;

    std::vector<const ElementTemplate*> open;
    for (const auto& t : rule.produces)
        if (t.category == ElementCategory::Transition) open.push_back(&t);

    bool progress = true;
    while (!open.empty() && progress) {
        progress = false;
        for (auto it = open.begin(); it != open.end();) {
            const auto& t = **it;
            const auto* from_t = role_template(rule, t.from);
            const auto* to_t = role_template(rule, t.to);
            if (!from_t || !to_t) return std::nullopt;
            auto from_bound = b.nodes.find(t.from);
            auto to_bound = b.nodes.find(t.to);
            if (from_bound == b.nodes.end() && to_bound == b.nodes.end()) {
                ++it;
                continue;
            }
            std::optional<std::pair<std::string, std::string>> found;  // transition id, other node id
            const bool forward = from_bound != b.nodes.end();
            const auto& pivot = forward ? from_bound->second : to_bound->second;
            const auto pivot_index = adj_.node_index.at(pivot);
            const auto& candidates = forward ? adj_.outflows[pivot_index] : adj_.inflows[pivot_index];
            for (auto ti : candidates) {
                const auto& tr = process_.transitions[ti];
                if (nibm::to_string(tr.kind) != t.kind || is_consumed(transition_key(tr.id))) continue;
                const auto& other = forward ? tr.target : tr.source;
                const auto& other_t = forward ? *to_t : *from_t;
                const auto other_bound = forward ? to_bound : from_bound;
                if (other_bound != b.nodes.end()) {
                    if (other_bound->second != other) continue;
                } else {
                    if (nibm::to_string(node(other).kind) != other_t.kind || is_consumed(node_key(other)))
                        continue;
                }
                found = {tr.id, other};
                break;
            }
            if (!found) return std::nullopt;
            b.transitions[t.role] = found->first;
            b.nodes[forward ? t.to : t.from] = found->second;
            it = open.erase(it);
            progress = true;
        }
    }
    if (!open.empty()) return std::nullopt;
    for (const auto& t : rule.produces)
        if (t.category == ElementCategory::Node && !b.nodes.count(t.role)) return std::nullopt;
    return b;
}

void Inverter::claim(const std::string& key, const std::string& owner) {
    auto [it, fresh] = consumed_.emplace(key, owner);
    if (!fresh && it->second != owner)
        throw MappingError(MappingError::Kind::Unabsorbable,
                           "element " + key.substr(2) + " is claimed by both " + it->second + " and " + owner);
}

void Inverter::apply(const MappingRule& rule, const Binding& binding, Instance& inst) {
    const auto& schema = instance::schema_for(definition_.source_notation).at(inst.cls);
    for (const auto& eq : rule.guard.implied_equalities())
        if (std::count(schema.attributes.begin(), schema.attributes.end(), eq.attribute))
            inst.attributes[eq.attribute] = eq.literal;

    for (const auto& t : rule.produces) {
        std::string elem;
        if (t.category == ElementCategory::Node) {
            auto it = binding.nodes.find(t.role);
            if (it == binding.nodes.end()) continue;  // virtual self of a synthetic instance
            elem = it->second;
            claim(node_key(elem), inst.id);
            if (t.port == Port::Entry) entry_owner_[elem] = inst.id;
            if (t.port == Port::Exit) exit_owner_[elem] = inst.id;
            const auto& n = node(elem);
            for (const auto& [target, source] : t.copies) {
                if (target == "label") inst.attributes[source] = n.label;
                if (target == "performer" && n.performer) inst.references[source] = *n.performer;
            }
        } else if (t.category == ElementCategory::Transition) {
            auto it = binding.transitions.find(t.role);
            if (it == binding.transitions.end()) continue;
            elem = it->second;
            claim(transition_key(elem), inst.id);
        }
        add_link(trace_, elem, rule.id, {inst.id});
    }
}

void Inverter::absorb_anchor(const nibm::Node& anchor, const std::string& cls) {
    Instance inst{anchor.id, cls, {}, {}};
    class_of_[inst.id] = cls;
    for (const auto& group : classes_.groups.at(cls)) {
        const MappingRule* best = nullptr;
        Binding best_binding;
        bool tie = false;
        for (const auto* rule : group) {
            auto b = match(*rule, anchor);
            if (!b) continue;
            if (!best || b->size() > best_binding.size()) {
                best = rule;
                best_binding = *b;
                tie = false;
            } else if (b->size() == best_binding.size()) {
                tie = true;
            }
        }
        if (!best)
            throw MappingError(MappingError::Kind::NonTotal,
                               "no inverse rule of " + cls + " matches " + anchor.id);
        if (tie)
            throw MappingError(MappingError::Kind::XorViolation,
                               "several inverse rules of one group match " + anchor.id);
        apply(*best, best_binding, inst);
    }
    entry_owner_.emplace(anchor.id, inst.id);
    exit_owner_.emplace(anchor.id, inst.id);
    node_instances_.push_back(std::move(inst));
}

void Inverter::synthesize(const nibm::Node& control) {
    if (!options_.allow_synthetic)
        throw MappingError(MappingError::Kind::Unabsorbable,
                           "unabsorbable control chain at " + control.id + " (" +
                               std::string(nibm::to_string(control.kind)) + ")");

    // A rule of some node class that owns a port node of this kind.
    auto find_port_rule = [&](nibm::NodeKind kind, Port wanted, const std::string& only_class,
                              const std::vector<const MappingRule*>* skip_group)
        -> std::tuple<const MappingRule*, const ElementTemplate*, std::string> {
        for (const auto& [cls, groups] : classes_.groups) {
            if (!only_class.empty() && cls != only_class) continue;
            for (const auto& group : groups) {
                if (skip_group && &group == skip_group) continue;
                for (const auto* rule : group) {
                    const auto* self = self_template(*rule);
                    if (!self || self->category != ElementCategory::Node) continue;
                    for (const auto& t : rule->produces)
                        if (t.category == ElementCategory::Node && t.role != kSelfRole &&
                            t.kind == nibm::to_string(kind) && (wanted == Port::None || t.port == wanted) &&
                            t.port != Port::None)
                            return {rule, &t, cls};
                }
            }
        }
        return {nullptr, nullptr, {}};
    };
    auto group_of = [&](const std::string& cls, const MappingRule* rule) -> const std::vector<const MappingRule*>* {
        for (const auto& g : classes_.groups.at(cls))
            if (std::find(g.begin(), g.end(), rule) != g.end()) return &g;
        return nullptr;
    };

    auto [rule, tmpl, cls] = find_port_rule(control.kind, Port::None, {}, nullptr);
    if (!rule)
        throw MappingError(MappingError::Kind::Unabsorbable,
                           "no element class can absorb " + control.id + " (" +
                               std::string(nibm::to_string(control.kind)) + ")");

    Instance inst{std::string(kSyntheticPrefix) + control.id, cls, {}, {}};
    class_of_[inst.id] = cls;
    std::map<const std::vector<const MappingRule*>*, std::pair<const MappingRule*, Binding>> chosen;
    Binding first;
    first.nodes[tmpl->role] = control.id;
    chosen[group_of(cls, rule)] = {rule, first};

    // Pull in a directly chained control node on the other side (e.g. a Merge
    // feeding a Decision becomes one task with both conditions).
    const auto ci = adj_.node_index.at(control.id);
    const bool is_entry = tmpl->port == Port::Entry;
    const auto& links = is_entry ? adj_.outflows[ci] : adj_.inflows[ci];
    std::string internal;
    if (links.size() == 1) {
        const auto& tr = process_.transitions[links.front()];
        const auto& other = node(is_entry ? tr.target : tr.source);
        if (!is_consumed(node_key(other.id)) && !is_consumed(transition_key(tr.id))) {
            auto [rule2, tmpl2, cls2] =
                find_port_rule(other.kind, is_entry ? Port::Exit : Port::Entry, cls, group_of(cls, rule));
            if (rule2) {
                Binding second;
                second.nodes[tmpl2->role] = other.id;
                chosen[group_of(cls, rule2)] = {rule2, second};
                internal = tr.id;
            }
        }
    }

    for (const auto& group : classes_.groups.at(cls)) {
        if (chosen.count(&group)) continue;
        // The rule whose pattern is the bare self element.
        const MappingRule* bare = nullptr;
        for (const auto* r : group)
            if (r->produces.size() == 1 && self_template(*r)) bare = r;
        if (!bare)
            throw MappingError(MappingError::Kind::Unabsorbable,
                               "cannot synthesize " + cls + " around " + control.id);
        chosen[&group] = {bare, Binding{}};
    }

    for (const auto& group : classes_.groups.at(cls)) {
        const auto& [r, b] = chosen.at(&group);
        apply(*r, b, inst);
    }
    if (!internal.empty()) {
        claim(transition_key(internal), inst.id);
        add_link(trace_, internal, "synthetic", {inst.id});
    }

    // Name the synthetic element after the node it stands in for.
    for (const auto& group : classes_.groups.at(cls)) {
        const auto* self = self_template(*chosen.at(&group).first);
        for (const auto& [target, source] : self->copies)
            if (target == "label") inst.attributes[source] = inst.id;
    }

    // With no real self node, the absorbed nodes carry both ports.
    std::vector<std::string> owned;
    for (const auto& [group, choice] : chosen)
        for (const auto& [role, id] : choice.second.nodes) owned.push_back(id);
    std::string entry, exit;
    for (const auto& id : owned) {
        if (entry_owner_.count(id) && entry_owner_[id] == inst.id) entry = id;
        if (exit_owner_.count(id) && exit_owner_[id] == inst.id) exit = id;
    }
    if (entry.empty()) entry_owner_[exit] = inst.id;
    if (exit.empty()) exit_owner_[entry] = inst.id;
    node_instances_.push_back(std::move(inst));
}

void Inverter::attach_transition(const nibm::Transition& tr) {
    auto src = exit_owner_.find(tr.source);
    auto dst = entry_owner_.find(tr.target);
    if (src == exit_owner_.end() || dst == entry_owner_.end())
        throw MappingError(MappingError::Kind::Unabsorbable,
                           "transition " + tr.id + " cannot attach: " +
                               (src == exit_owner_.end() ? tr.source + " is no element's exit"
                                                         : tr.target + " is no element's entry"));
    guard::Attributes derived{{std::string(instance::kSourceClass), class_of_.at(src->second)},
                              {std::string(instance::kTargetClass), class_of_.at(dst->second)}};
    for (const auto& cls : classes_.edge_classes) {
        for (const auto& r : definition_.rules) {
            if (r.source_class != cls || !r.guard.evaluate(derived)) continue;
            Instance inst{tr.id, cls, derived, {}};
            inst.references[std::string(instance::kSourceRef)] = src->second;
            inst.references[std::string(instance::kTargetRef)] = dst->second;
            for (const auto& [target, source] : self_template(r)->copies)
                if (target == "guard" && tr.guard) inst.attributes[source] = *tr.guard;
            claim(transition_key(tr.id), inst.id);
            add_link(trace_, tr.id, r.id, {inst.id});
            edge_instances_.push_back(std::move(inst));
            return;
        }
    }
    throw MappingError(MappingError::Kind::NonTotal,
                       "no edge rule accepts transition " + tr.id + " (" + derived.begin()->second + " -> " +
                           std::next(derived.begin())->second + ")");
}

NotationProjection Inverter::run() {
    for (const auto& n : process_.nodes) {
        auto it = classes_.node_class.find(n.kind);
        if (it != classes_.node_class.end()) absorb_anchor(n, it->second);
    }
    for (const auto& n : process_.nodes)
        if (!is_consumed(node_key(n.id))) synthesize(n);

    for (const auto& perf : process_.performers) {
        if (classes_.performer_class.empty())
            throw MappingError(MappingError::Kind::NonTotal, "no class maps performers");
        const auto& cls = classes_.performer_class;
        const MappingRule* rule = nullptr;
        for (const auto& r : definition_.rules)
            if (r.source_class == cls) rule = rule ? rule : &r;
        Instance inst{perf.id, cls, {}, {}};
        for (const auto& [target, source] : self_template(*rule)->copies) {
            if (target == "kind") inst.attributes[source] = std::string(to_string(perf.kind));
            if (target == "name") inst.attributes[source] = perf.name;
        }
        class_of_[inst.id] = cls;
        add_link(trace_, perf.id, rule->id, {inst.id});
        performer_instances_.push_back(std::move(inst));
    }

    for (const auto& tr : process_.transitions)
        if (!is_consumed(transition_key(tr.id))) attach_transition(tr);

    InstanceModel model{definition_.source_notation, process_.name, {}};
    for (auto* group : {&node_instances_, &performer_instances_, &edge_instances_})
        for (auto& inst : *group) model.instances.push_back(std::move(inst));

    NotationProjection result{grade::Process{}, std::move(trace_)};
    ValidationReport report;
    try {
        if (definition_.source_notation == grade::kNotation) {
            auto g = instance::reify_grade(model);
            report = grade::validate(g);
            result.model = std::move(g);
        } else {
            auto u = instance::reify_umlad(model);
            report = umlad::validate(u);
            result.model = std::move(u);
        }
    } catch (const ParseError& e) {
        throw MappingError(MappingError::Kind::InvalidResult, std::string("inverse projection is unsound: ") + e.what());
    }
    if (!report.empty())
        throw MappingError(MappingError::Kind::InvalidResult,
                           "projected model is not well-formed: " + report.violations.front().rule + " @ " +
                               report.violations.front().element,
                           report);
    return result;
}

}  // namespace

NotationProjection project_from_nibm(const nibm::Process& process, const MappingDefinition& definition,
                                     ProjectionOptions options) {
    require_valid(definition);
    auto report = nibm::validate(process);
    if (!report.empty())
        throw MappingError(MappingError::Kind::Precondition,
                           "independent model is not well-formed: " + report.violations.front().rule + " @ " +
                               report.violations.front().element,
                           report);
    return Inverter(process, definition, options).run();
}

// ---------------------------------------------------------------------------
// derived mapping

NotationProjection derive(const NotationModel& model, const MappingDefinition& from_definition,
                          const MappingDefinition& to_definition, ProjectionOptions options) {
    auto primary = project_to_nibm(model, from_definition);
    auto normalized = nibm::normalize_with_renaming(primary.process);
    auto secondary = project_from_nibm(normalized.process, to_definition, options);

    auto rename = [&](const std::string& id) -> std::optional<std::string> {
        for (const auto* m : {&normalized.nodes, &normalized.transitions, &normalized.performers})
            if (auto it = m->find(id); it != m->end()) return it->second;
        return std::nullopt;
    };
    std::map<std::string, std::vector<const TraceLink*>> by_independent;
    for (const auto& link : secondary.trace.links) by_independent[link.source].push_back(&link);

    MappingTrace derived{Direction::Derived, {}};
    for (const auto& a : primary.trace.links) {
        for (const auto& produced : a.produced) {
            auto independent = rename(produced);
            if (!independent) continue;
            for (const auto* b : by_independent[*independent]) {
                const auto rule = a.rule + "/" + b->rule;
                auto existing = std::find_if(derived.links.begin(), derived.links.end(), [&](const TraceLink& l) {
                    return l.source == a.source && l.rule == rule && l.produced == b->produced;
                });
                if (existing == derived.links.end())
                    derived.links.push_back({a.source, rule, b->produced, {*independent}});
                else if (std::find(existing->via.begin(), existing->via.end(), *independent) == existing->via.end())
                    existing->via.push_back(*independent);
            }
        }
    }
    secondary.trace = std::move(derived);
    return secondary;
}

// ---------------------------------------------------------------------------
// traces and totality

std::string_view notation_of(const NotationModel& model) {
    return std::holds_alternative<grade::Process>(model) ? grade::kNotation : umlad::kNotation;
}

std::vector<std::string> element_ids(const NotationModel& model) {
    std::vector<std::string> ids;
    if (const auto* g = std::get_if<grade::Process>(&model)) {
        for (const auto& t : g->tasks) ids.push_back(t.id);
        for (const auto& s : g->starts) ids.push_back(s.id);
        for (const auto& e : g->ends) ids.push_back(e.id);
        for (const auto& f : g->flows) ids.push_back(f.id);
        for (const auto& r : g->performers) ids.push_back(r.id);
    } else {
        const auto& u = std::get<umlad::Activity>(model);
        for (const auto& n : u.nodes) ids.push_back(n.id);
        for (const auto& e : u.edges) ids.push_back(e.id);
        for (const auto& p : u.partitions) ids.push_back(p.id);
    }
    return ids;
}

std::vector<std::string> element_ids(const nibm::Process& process) {
    std::vector<std::string> ids;
    for (const auto& n : process.nodes) ids.push_back(n.id);
    for (const auto& t : process.transitions) ids.push_back(t.id);
    for (const auto& p : process.performers) ids.push_back(p.id);
    return ids;
}

ValidationReport check_totality(const MappingTrace& trace, const std::vector<std::string>& source_ids) {
    std::set<std::string> traced;
    for (const auto& link : trace.links) traced.insert(link.source);
    ValidationReport report;
    for (const auto& id : source_ids)
        if (!traced.count(id)) report.add(id, "untraced", "element has no mapping link");
    return report;
}

ValidationReport check_totality(const MappingTrace& trace, const NotationModel& source) {
    return check_totality(trace, element_ids(source));
}

ValidationReport check_totality(const MappingTrace& trace, const nibm::Process& source) {
    return check_totality(trace, element_ids(source));
}

std::string MappingTrace::to_json() const {
    detail::OrderedJson doc;
    doc["direction"] = to_string(direction);
    doc["links"] = detail::OrderedJson::array();
    for (const auto& link : links) {
        detail::OrderedJson j;
        j["src"] = link.source;
        j["rule"] = link.rule;
        j["out"] = link.produced;
        if (!link.via.empty()) j["via"] = link.via;
        doc["links"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

namespace {

struct Row {
    std::string source;
    std::vector<std::string> rules;
    std::vector<std::string> produced;
};

std::vector<Row> rows_of(const MappingTrace& trace) {
    std::vector<Row> rows;
    std::map<std::string, std::size_t> at;
    for (const auto& link : trace.links) {
        auto [it, fresh] = at.emplace(link.source, rows.size());
        if (fresh) rows.push_back({link.source, {}, {}});
        auto& row = rows[it->second];
        if (std::find(row.rules.begin(), row.rules.end(), link.rule) == row.rules.end()) row.rules.push_back(link.rule);
        for (const auto& p : link.produced)
            if (std::find(row.produced.begin(), row.produced.end(), p) == row.produced.end()) row.produced.push_back(p);
    }
    return rows;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

}  // namespace

std::size_t MappingTrace::row_count() const { return rows_of(*this).size(); }

std::string MappingTrace::to_table() const {
    const auto rows = rows_of(*this);
    std::size_t w_src = std::string("source").size(), w_rule = std::string("rules").size();
    for (const auto& r : rows) {
        w_src = std::max(w_src, r.source.size());
        w_rule = std::max(w_rule, join(r.rules, ", ").size());
    }
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(w_src)) << "source" << " | " << std::setw(static_cast<int>(w_rule))
       << "rules" << " | produced\n";
    os << std::string(w_src, '-') << "-+-" << std::string(w_rule, '-') << "-+-" << std::string(8, '-') << '\n';
    for (const auto& r : rows)
        os << std::setw(static_cast<int>(w_src)) << r.source << " | " << std::setw(static_cast<int>(w_rule))
           << join(r.rules, ", ") << " | " << join(r.produced, ", ") << '\n';
    return os.str();
}

}  // namespace bmx::mapping

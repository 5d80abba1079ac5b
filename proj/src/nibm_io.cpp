// SPDX-License-Identifier: Apache-2.0
#include "bmx/errors.hpp"
#include "bmx/nibm.hpp"
#include "json_util.hpp"

namespace bmx::nibm {

using detail::at;
using detail::Json;
using detail::OrderedJson;

Process read(std::string_view document, bool require_tag) {
    const auto doc = detail::parse_document(document);
    const auto& body = detail::process_body(doc, "nibm", require_tag);

    Process p;
    p.id = detail::optional_string(body, "id", "process").value_or("");
    p.name = detail::optional_string(body, "name", "process").value_or("");

    const auto& performers = detail::array_field(body, "performers", "process");
    for (std::size_t i = 0; i < performers.size(); ++i) {
        const auto path = at("performers", i);
        const auto& j = detail::object_at(performers, i, path);
        Performer perf;
        perf.id = detail::string_field(j, "id", path);
        const auto kind = detail::string_field(j, "kind", path);
        auto k = parse_performer_kind(kind);
        if (!k) throw ParseError("illegal performer kind at " + path);
        perf.kind = *k;
        perf.name = detail::optional_string(j, "name", path).value_or("");
        p.performers.push_back(std::move(perf));
    }

    const auto& nodes = detail::array_field(body, "nodes", "process");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto path = at("nodes", i);
        const auto& j = detail::object_at(nodes, i, path);
        Node n;
        n.id = detail::string_field(j, "id", path);
        auto k = parse_node_kind(detail::string_field(j, "kind", path));
        if (!k) throw ParseError("illegal node kind at " + path);
        n.kind = *k;
        n.label = detail::optional_string(j, "label", path).value_or("");
        n.performer = detail::optional_string(j, "performer", path);
        p.nodes.push_back(std::move(n));
    }

    const auto& transitions = detail::array_field(body, "transitions", "process");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const auto path = at("transitions", i);
        const auto& j = detail::object_at(transitions, i, path);
        Transition t;
        t.id = detail::string_field(j, "id", path);
        auto k = parse_transition_kind(detail::optional_string(j, "kind", path).value_or("Pass"));
        if (!k) throw ParseError("illegal transition kind at " + path);
        t.kind = *k;
        t.source = detail::string_field(j, "source", path);
        t.target = detail::string_field(j, "target", path);
        t.guard = detail::optional_string(j, "guard", path);
        p.transitions.push_back(std::move(t));
    }

    if (auto it = body.find("context"); it != body.end() && !it->is_null()) {
        if (!it->is_object()) throw ParseError("context is not an object");
        EnterpriseContext c;
        c.enterprise = detail::optional_string(*it, "enterprise", "context");
        for (const auto* key : {"inputs", "outputs"}) {
            const auto& arr = detail::array_field(*it, key, "context");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                if (!arr[i].is_string()) throw ParseError("expected string at context." + at(key, i));
                (std::string_view(key) == "inputs" ? c.inputs : c.outputs)
                    .push_back(arr[i].get<std::string>());
            }
        }
        p.context = std::move(c);
    }

    check_structure(p);
    return p;
}

std::string write(const Process& process) {
    check_structure(process);
    OrderedJson body;
    if (!process.id.empty()) body["id"] = process.id;
    body["name"] = process.name;
    body["nodes"] = OrderedJson::array();
    for (const auto& n : process.nodes) {
        OrderedJson j;
        j["id"] = n.id;
        j["kind"] = to_string(n.kind);
        if (!n.label.empty()) j["label"] = n.label;
        if (n.performer) j["performer"] = *n.performer;
        body["nodes"].push_back(std::move(j));
    }
    body["transitions"] = OrderedJson::array();
    for (const auto& t : process.transitions) {
        OrderedJson j;
        j["id"] = t.id;
        j["kind"] = to_string(t.kind);
        j["source"] = t.source;
        j["target"] = t.target;
        if (t.guard) j["guard"] = *t.guard;
        body["transitions"].push_back(std::move(j));
    }
    body["performers"] = OrderedJson::array();
    for (const auto& perf : process.performers)
        body["performers"].push_back(
            {{"id", perf.id}, {"kind", to_string(perf.kind)}, {"name", perf.name}});
    if (process.context) {
        OrderedJson c;
        if (process.context->enterprise) c["enterprise"] = *process.context->enterprise;
        c["inputs"] = process.context->inputs;
        c["outputs"] = process.context->outputs;
        body["context"] = std::move(c);
    }
    OrderedJson doc;
    doc["notation"] = "nibm";
    doc["process"] = std::move(body);
    return doc.dump(2) + "\n";
}

}  // namespace bmx::nibm

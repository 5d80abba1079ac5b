// SPDX-License-Identifier: Apache-2.0
#include <map>

#include "bmx/errors.hpp"
#include "bmx/umlad.hpp"
#include "json_util.hpp"

namespace bmx::umlad {

using detail::at;
using detail::OrderedJson;

Activity read(std::string_view document, bool require_tag) {
    const auto doc = detail::parse_document(document);
    const auto& body = detail::process_body(doc, kNotation, require_tag);

    Activity a;
    a.name = detail::optional_string(body, "name", "process").value_or("");

    const auto& partitions = detail::array_field(body, "partitions", "process");
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        const auto path = at("partitions", i);
        const auto& j = detail::object_at(partitions, i, path);
        Partition p;
        p.id = detail::string_field(j, "id", path);
        p.name = detail::optional_string(j, "name", path).value_or("");
        auto k = parse_performer_kind(detail::optional_string(j, "kind", path).value_or("Resource"));
        if (!k) throw ParseError("illegal partition kind at " + path);
        p.kind = *k;
        a.partitions.push_back(std::move(p));
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
        n.name = detail::optional_string(j, "name", path).value_or("");
        n.partition = detail::optional_string(j, "partition", path);
        a.nodes.push_back(std::move(n));
    }

    const auto& edges = detail::array_field(body, "edges", "process");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto path = at("edges", i);
        const auto& j = detail::object_at(edges, i, path);
        ControlFlow e;
        e.id = detail::string_field(j, "id", path);
        e.source = detail::string_field(j, "source", path);
        e.target = detail::string_field(j, "target", path);
        e.guard = detail::optional_string(j, "guard", path);
        a.edges.push_back(std::move(e));
    }

    check_structure(a);
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        const auto& e = a.edges[i];
        if (e.guard && a.find_node(e.source)->kind != NodeKind::DecisionNode)
            throw ParseError("guard only on decision edges at " + at("edges", i));
    }
    return a;
}

std::string write(const Activity& activity) {
    check_structure(activity);
    OrderedJson body;
    body["name"] = activity.name;
    body["nodes"] = OrderedJson::array();
    for (const auto& n : activity.nodes) {
        OrderedJson j;
        j["id"] = n.id;
        j["kind"] = to_string(n.kind);
        if (!n.name.empty()) j["name"] = n.name;
        if (n.partition) j["partition"] = *n.partition;
        body["nodes"].push_back(std::move(j));
    }
    body["edges"] = OrderedJson::array();
    for (const auto& e : activity.edges) {
        OrderedJson j;
        j["id"] = e.id;
        j["source"] = e.source;
        j["target"] = e.target;
        if (e.guard) j["guard"] = *e.guard;
        body["edges"].push_back(std::move(j));
    }
    body["partitions"] = OrderedJson::array();
    for (const auto& p : activity.partitions)
        body["partitions"].push_back({{"id", p.id}, {"name", p.name}, {"kind", to_string(p.kind)}});

    OrderedJson doc;
    doc["notation"] = kNotation;
    doc["process"] = std::move(body);
    return doc.dump(2) + "\n";
}

}  // namespace bmx::umlad

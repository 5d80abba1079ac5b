// SPDX-License-Identifier: Apache-2.0
#include "bmx/errors.hpp"
#include "bmx/grade.hpp"
#include "json_util.hpp"

namespace bmx::grade {

using detail::at;
using detail::OrderedJson;

namespace {

Condition read_condition(const detail::Json& j, const char* key, const std::string& path) {
    const auto text = detail::optional_string(j, key, path).value_or("NONE");
    auto c = parse_condition(text);
    if (!c) throw ParseError(std::string("illegal ") + key + " value at " + path);
    return *c;
}

std::vector<std::string> read_ids(const detail::Json& body, const char* key) {
    std::vector<std::string> ids;
    const auto& arr = detail::array_field(body, key, "process");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto path = at(key, i);
        if (arr[i].is_string())
            ids.push_back(arr[i].get<std::string>());
        else
            ids.push_back(detail::string_field(detail::object_at(arr, i, path), "id", path));
    }
    return ids;
}

}  // namespace

Process read(std::string_view document, bool require_tag) {
    const auto doc = detail::parse_document(document);
    const auto& body = detail::process_body(doc, kNotation, require_tag);

    Process p;
    p.name = detail::optional_string(body, "name", "process").value_or("");

    const auto& tasks = detail::array_field(body, "tasks", "process");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto path = at("tasks", i);
        const auto& j = detail::object_at(tasks, i, path);
        Task t;
        t.id = detail::string_field(j, "id", path);
        t.name = detail::optional_string(j, "name", path).value_or("");
        t.triggering = read_condition(j, "triggering", path);
        t.branching = read_condition(j, "branching", path);
        t.performer = detail::optional_string(j, "performer", path);
        if (auto g = j.find("guards"); g != j.end() && !g->is_null()) {
            if (!g->is_object()) throw ParseError("guards is not an object at " + path);
            for (const auto& [flow, text] : g->items()) {
                if (!text.is_string()) throw ParseError("guard text is not a string at " + path);
                t.guards[flow] = text.get<std::string>();
            }
        }
        p.tasks.push_back(std::move(t));
    }
    for (auto& id : read_ids(body, "starts")) p.starts.push_back({std::move(id)});
    for (auto& id : read_ids(body, "ends")) p.ends.push_back({std::move(id)});

    const auto& flows = detail::array_field(body, "flows", "process");
    for (std::size_t i = 0; i < flows.size(); ++i) {
        const auto path = at("flows", i);
        const auto& j = detail::object_at(flows, i, path);
        p.flows.push_back({detail::string_field(j, "id", path), detail::string_field(j, "source", path),
                           detail::string_field(j, "target", path)});
    }

    const auto& performers = detail::array_field(body, "performers", "process");
    for (std::size_t i = 0; i < performers.size(); ++i) {
        const auto path = at("performers", i);
        const auto& j = detail::object_at(performers, i, path);
        PerformerRef r;
        r.id = detail::string_field(j, "id", path);
        auto k = parse_performer_kind(detail::string_field(j, "kind", path));
        if (!k) throw ParseError("illegal performer kind at " + path);
        r.kind = *k;
        r.name = detail::optional_string(j, "name", path).value_or("");
        p.performers.push_back(std::move(r));
    }

    check_structure(p);
    return p;
}

std::string write(const Process& process) {
    check_structure(process);
    OrderedJson body;
    body["name"] = process.name;
    body["tasks"] = OrderedJson::array();
    for (const auto& t : process.tasks) {
        OrderedJson j;
        j["id"] = t.id;
        j["name"] = t.name;
        j["triggering"] = to_string(t.triggering);
        j["branching"] = to_string(t.branching);
        if (t.performer) j["performer"] = *t.performer;
        if (!t.guards.empty()) {
            OrderedJson g = OrderedJson::object();
            for (const auto& [flow, text] : t.guards) g[flow] = text;
            j["guards"] = std::move(g);
        }
        body["tasks"].push_back(std::move(j));
    }
    body["starts"] = OrderedJson::array();
    for (const auto& s : process.starts) body["starts"].push_back({{"id", s.id}});
    body["ends"] = OrderedJson::array();
    for (const auto& e : process.ends) body["ends"].push_back({{"id", e.id}});
    body["flows"] = OrderedJson::array();
    for (const auto& f : process.flows)
        body["flows"].push_back({{"id", f.id}, {"source", f.source}, {"target", f.target}});
    body["performers"] = OrderedJson::array();
    for (const auto& r : process.performers)
        body["performers"].push_back({{"id", r.id}, {"kind", to_string(r.kind)}, {"name", r.name}});

    OrderedJson doc;
    doc["notation"] = kNotation;
    doc["process"] = std::move(body);
    return doc.dump(2) + "\n";
}

}  // namespace bmx::grade

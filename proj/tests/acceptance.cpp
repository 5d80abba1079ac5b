// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion. Exit status is zero
// only when every criterion passes.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bmx/errors.hpp"
#include "bmx/grade.hpp"
#include "bmx/instance.hpp"
#include "bmx/mapping.hpp"
#include "bmx/nibm.hpp"
#include "bmx/tokens.hpp"
#include "bmx/umlad.hpp"
#include "faults.hpp"
#include "generators.hpp"

namespace fs = std::filesystem;
using namespace bmx;

namespace {

// Pinned thresholds.
constexpr double kAc1Seconds = 1.0;
constexpr std::size_t kAc2Models = 600;
constexpr double kAc2Seconds = 30.0;
constexpr std::size_t kAc3Models = 600;
constexpr std::size_t kAc4Models = 600;
constexpr double kAc4Seconds = 60.0;
constexpr std::size_t kAc5Models = 250;
constexpr std::size_t kAc5MaxNodes = 10;
constexpr double kAc5Seconds = 300.0;
constexpr std::size_t kAc6MinLinkedIds = 3;
constexpr std::size_t kAc7BasesPerFault = 25;
constexpr int kAc8Repeats = 3;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void expect(bool condition, const std::string& what) {
    if (!condition) throw Failure(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << v;
    return os.str();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t count_nodes(const nibm::Process& p, nibm::NodeKind kind) {
    return std::count_if(p.nodes.begin(), p.nodes.end(), [&](const nibm::Node& n) { return n.kind == kind; });
}

std::size_t count_transitions(const nibm::Process& p, nibm::TransitionKind kind) {
    return std::count_if(p.transitions.begin(), p.transitions.end(),
                         [&](const nibm::Transition& t) { return t.kind == kind; });
}

std::size_t count_tasks(const grade::Process& g, grade::Condition grade::Task::*attr, grade::Condition c) {
    return std::count_if(g.tasks.begin(), g.tasks.end(), [&](const grade::Task& t) { return t.*attr == c; });
}

const mapping::TraceLink& link_of(const mapping::MappingTrace& trace, const std::string& source) {
    for (const auto& l : trace.links)
        if (l.source == source) return l;
    throw Failure("no trace link for " + source);
}

// ---------------------------------------------------------------------------
// 1. conditional mapping rules

grade::Process combination(grade::Condition trig, grade::Condition branch) {
    using grade::Condition;
    grade::Process g;
    g.name = "combination";
    g.starts = {{"s"}};
    g.ends = {{"e"}};
    g.tasks.push_back({"x", "X", trig, branch, std::nullopt, {}});
    if (trig == Condition::None) {
        g.flows.push_back({"f1", "s", "x"});
    } else {
        g.tasks.push_back({"p", "P", Condition::None, trig, std::nullopt, {}});
        g.flows.push_back({"f1", "s", "p"});
        g.flows.push_back({"f2", "p", "x"});
        g.flows.push_back({"f3", "p", "x"});
    }
    if (branch == Condition::None) {
        g.flows.push_back({"f4", "x", "e"});
    } else {
        g.tasks.push_back({"q", "Q", branch, Condition::None, std::nullopt, {}});
        g.flows.push_back({"f4", "x", "q"});
        g.flows.push_back({"f5", "x", "q"});
        g.flows.push_back({"f6", "q", "e"});
    }
    return g;
}

Outcome ac1() {
    using grade::Condition;
    using nibm::NodeKind;
    using nibm::TransitionKind;
    const auto t0 = std::chrono::steady_clock::now();
    const auto def = mapping::builtin_grade_mapping();
    const std::vector<Condition> values{Condition::None, Condition::Or, Condition::And};
    std::size_t cases = 0;
    for (auto trig : values) {
        for (auto branch : values) {
            const auto label = std::string(grade::to_string(trig)) + "/" + std::string(grade::to_string(branch));
            const auto g = combination(trig, branch);
            const auto r = mapping::project_to_nibm(mapping::NotationModel{g}, def);
            const auto& p = r.process;

            // Elements produced for the task under test, by kind.
            std::map<std::string, std::size_t> got;
            for (const auto& id : link_of(r.trace, "x").produced) {
                if (const auto* n = p.find_node(id)) ++got[std::string(nibm::to_string(n->kind))];
                if (const auto* t = p.find_transition(id)) ++got[std::string(nibm::to_string(t->kind))];
            }
            const std::map<std::string, std::size_t> want_all{
                {"Task", 1},
                {"Merge", trig == Condition::Or},
                {"Join", trig == Condition::And},
                {"Incoming", trig != Condition::None},
                {"Decision", branch == Condition::Or},
                {"Fork", branch == Condition::And},
                {"Outgoing", branch != Condition::None},
            };
            std::map<std::string, std::size_t> want;
            for (const auto& [k, v] : want_all)
                if (v) want[k] = v;
            expect(got == want, label + ": unexpected element set for the task");

            // Whole-model counts follow the attributes of every task.
            auto trig_of = &grade::Task::triggering;
            auto branch_of = &grade::Task::branching;
            expect(count_nodes(p, NodeKind::Merge) == count_tasks(g, trig_of, Condition::Or), label + ": Merge count");
            expect(count_nodes(p, NodeKind::Join) == count_tasks(g, trig_of, Condition::And), label + ": Join count");
            expect(count_nodes(p, NodeKind::Decision) == count_tasks(g, branch_of, Condition::Or),
                   label + ": Decision count");
            expect(count_nodes(p, NodeKind::Fork) == count_tasks(g, branch_of, Condition::And), label + ": Fork count");
            expect(count_transitions(p, TransitionKind::Incoming) ==
                       g.tasks.size() - count_tasks(g, trig_of, Condition::None),
                   label + ": Incoming count");
            expect(count_transitions(p, TransitionKind::Outgoing) ==
                       g.tasks.size() - count_tasks(g, branch_of, Condition::None),
                   label + ": Outgoing count");
            expect(count_transitions(p, TransitionKind::Pass) == g.flows.size(), label + ": Pass count");

            // Incoming enters the task from its unification node, Outgoing
            // leaves it for its split node.
            for (const auto& t : p.transitions) {
                if (t.kind == TransitionKind::Incoming)
                    expect(nibm::is_unification(p.find_node(t.source)->kind) &&
                               p.find_node(t.target)->kind == NodeKind::Task,
                           label + ": Incoming endpoints");
                if (t.kind == TransitionKind::Outgoing)
                    expect(p.find_node(t.source)->kind == NodeKind::Task && nibm::is_split(p.find_node(t.target)->kind),
                           label + ": Outgoing endpoints");
            }
            expect(nibm::validate(p).empty(), label + ": projection does not validate");
            ++cases;
        }
    }
    const auto elapsed = seconds_since(t0);
    expect(elapsed < kAc1Seconds, "took " + fixed(elapsed) + " s");
    return {true, std::to_string(cases) + "/9 combinations, " + fixed(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// 2. xor discipline and totality

Outcome ac2() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto def = mapping::builtin_grade_mapping();
    testgen::Rng rng(2002);
    std::size_t tasks = 0;
    for (std::size_t i = 0; i < kAc2Models; ++i) {
        testgen::GradeOptions options;
        options.max_tasks = 1 + i % 12;
        const auto g = testgen::random_grade(rng, options);
        expect(grade::validate(g).empty(), "generator produced an invalid model");

        // Which rules each task matches, per xor group, by direct guard evaluation.
        for (const auto& inst : instance::reflect(g).instances) {
            if (inst.cls != "Task") continue;
            ++tasks;
            for (const auto& group : def.xor_groups) {
                std::vector<std::string> hits;
                for (const auto& id : group) {
                    const auto* rule = def.find_rule(id);
                    if (rule->source_class == inst.cls && rule->guard.evaluate(inst.attributes)) hits.push_back(id);
                }
                expect(hits.size() <= 1, "task " + inst.id + " matches two rules of one xor group");
            }
            // Independently: the trig group fires the rule named after the attribute.
            const auto* task = g.find_task(inst.id);
            auto lower = [](std::string_view s) {
                std::string out(s);
                std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
                return out;
            };
            const auto r_trig = "trig-" + lower(grade::to_string(task->triggering));
            const auto r_branch = "branch-" + lower(grade::to_string(task->branching));
            expect(def.find_rule(r_trig)->guard.evaluate(inst.attributes), inst.id + " misses " + r_trig);
            expect(def.find_rule(r_branch)->guard.evaluate(inst.attributes), inst.id + " misses " + r_branch);
        }
        const auto r = mapping::project_to_nibm(mapping::NotationModel{g}, def);
        const auto totality = mapping::check_totality(r.trace, mapping::NotationModel{g});
        expect(totality.empty(), "trace not total: " + totality.to_text());
    }
    const auto elapsed = seconds_since(t0);
    expect(elapsed < kAc2Seconds, "took " + fixed(elapsed) + " s");
    return {true, std::to_string(kAc2Models) + " models, " + std::to_string(tasks) + " tasks, " + fixed(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// 3. one-one UML correspondence

template <class T, class Key>
std::vector<T> sorted(std::vector<T> v, Key key) {
    std::sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
    return v;
}

void expect_bijection(const mapping::MappingTrace& trace, const std::vector<std::string>& sources,
                      const std::vector<std::string>& targets, const std::string& what) {
    std::multiset<std::string> src, out;
    for (const auto& l : trace.links) {
        expect(l.produced.size() == 1, what + ": link from " + l.source + " is not one-one");
        src.insert(l.source);
        out.insert(l.produced.front());
    }
    expect(src == std::multiset<std::string>(sources.begin(), sources.end()), what + ": sources differ");
    expect(out == std::multiset<std::string>(targets.begin(), targets.end()), what + ": images differ");
}

Outcome ac3() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto def = mapping::builtin_umlad_mapping();
    testgen::Rng rng(3003);
    for (std::size_t i = 0; i < kAc3Models; ++i) {
        testgen::GraphOptions options;
        options.max_nodes = 2 + i % 15;
        const auto u = testgen::random_umlad(rng, options);
        expect(umlad::validate(u).empty(), "generator produced an invalid activity");
        const mapping::NotationModel source{u};

        const auto fwd = mapping::project_to_nibm(source, def);
        expect_bijection(fwd.trace, mapping::element_ids(source), mapping::element_ids(fwd.process), "forward");

        const auto back = mapping::project_from_nibm(fwd.process, def);
        const auto& v = std::get<umlad::Activity>(back.model);
        expect_bijection(back.trace, mapping::element_ids(fwd.process), mapping::element_ids(back.model), "inverse");
        auto by_id = [](const auto& x) { return x.id; };
        expect(sorted(v.nodes, by_id) == sorted(u.nodes, by_id), "nodes changed");
        expect(sorted(v.edges, by_id) == sorted(u.edges, by_id), "edges changed");
        expect(sorted(v.partitions, by_id) == sorted(u.partitions, by_id), "partitions changed");

        // Through the normalized model the result is isomorphic to the input.
        const auto normalized = nibm::normalize(fwd.process);
        const auto via = mapping::project_from_nibm(normalized, def);
        const auto again = nibm::normalize(mapping::project_to_nibm(via.model, def).process);
        const auto iso = nibm::isomorphic(normalized, again);
        expect(iso.isomorphic, "not isomorphic: " + iso.mismatch);
    }
    return {true, std::to_string(kAc3Models) + " activities, " + fixed(seconds_since(t0)) + " s"};
}

// ---------------------------------------------------------------------------
// 4. GRADE round trip

using TaskShape = std::tuple<std::string, grade::Condition, grade::Condition>;

std::multiset<TaskShape> shapes(const grade::Process& g) {
    std::multiset<TaskShape> out;
    for (const auto& t : g.tasks) out.insert({t.name, t.triggering, t.branching});
    return out;
}

Outcome ac4() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto def = mapping::builtin_grade_mapping();
    testgen::Rng rng(4004);
    for (std::size_t i = 0; i < kAc4Models; ++i) {
        testgen::GradeOptions options;
        options.max_tasks = 1 + i % 12;
        const auto g = testgen::random_grade(rng, options);
        const auto normalized = nibm::normalize(mapping::project_to_nibm(mapping::NotationModel{g}, def).process);
        const auto back = mapping::project_from_nibm(normalized, def);
        const auto& h = std::get<grade::Process>(back.model);
        expect(shapes(h) == shapes(g), "task attributes changed");
        expect(h.flows.size() == g.flows.size() && h.ends.size() == g.ends.size(), "element counts changed");
        const auto again = nibm::normalize(mapping::project_to_nibm(back.model, def).process);
        const auto iso = nibm::isomorphic(normalized, again);
        expect(iso.isomorphic, "not isomorphic: " + iso.mismatch);
    }
    const auto elapsed = seconds_since(t0);
    expect(elapsed < kAc4Seconds, "took " + fixed(elapsed) + " s");
    return {true, std::to_string(kAc4Models) + " round trips, " + fixed(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// 5. behavioural preservation

Outcome ac5() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto gdef = mapping::builtin_grade_mapping();
    const auto udef = mapping::builtin_umlad_mapping();
    testgen::Rng rng(5005);
    std::size_t checked = 0, branching = 0, largest = 0;
    while (checked < kAc5Models) {
        testgen::GradeOptions options;
        options.max_tasks = 1 + checked % 8;
        options.loops = false;
        const auto g = testgen::random_grade(rng, options);
        if (testgen::node_count(g) > kAc5MaxNodes) continue;
        const auto u = mapping::derive(mapping::NotationModel{g}, gdef, udef);
        const auto traces = tokens::enumerate_traces(tokens::to_nibm(g), tokens::Bounds{});
        const auto eq = tokens::equivalent(g, std::get<umlad::Activity>(u.model), tokens::Bounds{});
        expect(traces.complete, "enumeration incomplete under default bounds");
        std::string cex;
        if (eq.counterexample)
            for (const auto& l : *eq.counterexample) cex += l + " ";
        expect(eq.verdict == tokens::Verdict::Equal, "behaviour differs, counterexample [ " + cex + "]");
        if (traces.traces.size() > 1) ++branching;
        largest = std::max(largest, traces.traces.size());
        ++checked;
    }
    const auto elapsed = seconds_since(t0);
    expect(elapsed < kAc5Seconds, "took " + fixed(elapsed) + " s");
    return {true, std::to_string(checked) + " models (" + std::to_string(branching) +
                      " with several traces, up to " + std::to_string(largest) + "), " + fixed(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// 6. worked example

Outcome ac6() {
    const auto g = grade::read(read_file(fs::path(BMX_FIXTURES) / "order.grade.json"));
    const mapping::NotationModel source{g};
    const auto fwd = mapping::project_to_nibm(source, mapping::builtin_grade_mapping());
    std::cout << fwd.trace.to_table();

    std::size_t widest = 0;
    std::string widest_task;
    for (const auto& t : g.tasks) {
        const auto n = link_of(fwd.trace, t.id).produced.size();
        if (n > widest) widest = n, widest_task = t.id;
    }
    expect(widest >= kAc6MinLinkedIds, "no task links to " + std::to_string(kAc6MinLinkedIds) + " elements");

    const auto derived = mapping::derive(source, mapping::builtin_grade_mapping(), mapping::builtin_umlad_mapping());
    const auto& u = std::get<umlad::Activity>(derived.model);
    auto count = [&](umlad::NodeKind k) {
        return std::count_if(u.nodes.begin(), u.nodes.end(), [&](const umlad::Node& n) { return n.kind == k; });
    };
    const auto or_triggered = count_tasks(g, &grade::Task::triggering, grade::Condition::Or);
    const auto or_branching = count_tasks(g, &grade::Task::branching, grade::Condition::Or);
    expect(or_triggered > 0 && or_branching > 0, "fixture lacks OR triggering or branching");
    expect(static_cast<std::size_t>(count(umlad::NodeKind::MergeNode)) == or_triggered, "MergeNode count");
    expect(static_cast<std::size_t>(count(umlad::NodeKind::DecisionNode)) == or_branching, "DecisionNode count");

    // The OR-triggered task reaches both a MergeNode and an Action.
    for (const auto& t : g.tasks) {
        if (t.triggering != grade::Condition::Or) continue;
        std::set<umlad::NodeKind> kinds;
        for (const auto& l : derived.trace.links)
            if (l.source == t.id)
                for (const auto& id : l.produced)
                    if (const auto* n = u.find_node(id)) kinds.insert(n->kind);
        expect(kinds.count(umlad::NodeKind::MergeNode) && kinds.count(umlad::NodeKind::Action),
               "derived trace of " + t.id + " lacks MergeNode or Action");
    }
    expect(tokens::equivalent(g, u).verdict == tokens::Verdict::Equal, "worked example changes behaviour");
    return {true, "task " + widest_task + " links to " + std::to_string(widest) + " NIBM elements; " +
                      std::to_string(count(umlad::NodeKind::MergeNode)) + " MergeNode, " +
                      std::to_string(count(umlad::NodeKind::DecisionNode)) + " DecisionNode"};
}

// ---------------------------------------------------------------------------
// 7. validator soundness

template <class Model, class Generate, class Validate>
std::size_t run_faults(const std::string& name, const std::vector<testgen::Fault<Model>>& faults,
                       const std::vector<std::string>& catalog, Generate generate, Validate validate) {
    std::set<std::string> covered;
    std::size_t runs = 0;
    for (const auto& fault : faults) {
        for (std::size_t i = 0; i < kAc7BasesPerFault; ++i) {
            Model m = generate(i);
            expect(validate(m).empty(), name + ": base model invalid");
            fault.apply(m);
            const auto report = validate(m);
            const auto rules = report.rules();
            expect(rules == std::set<std::string>{fault.rule},
                   name + " fault " + fault.rule + " reported: " + report.to_text());
            ++runs;
        }
        covered.insert(fault.rule);
    }
    expect(covered == std::set<std::string>(catalog.begin(), catalog.end()), name + ": rule catalog not covered");
    return runs;
}

Outcome ac7() {
    testgen::Rng rng(7007);
    std::size_t runs = 0;
    runs += run_faults<nibm::Process>(
        "nibm", testgen::nibm_faults(), testgen::kNibmRules,
        [&](std::size_t i) {
            testgen::GraphOptions o;
            o.max_nodes = 1 + i % 10;
            return testgen::random_nibm(rng, o);
        },
        [](const nibm::Process& p) { return nibm::validate(p); });
    runs += run_faults<grade::Process>(
        "grade", testgen::grade_faults(), testgen::kGradeRules,
        [&](std::size_t i) {
            testgen::GradeOptions o;
            o.max_tasks = 1 + i % 8;
            return testgen::random_grade(rng, o);
        },
        [](const grade::Process& g) { return grade::validate(g); });
    runs += run_faults<umlad::Activity>(
        "uml-ad", testgen::umlad_faults(), testgen::kUmladRules,
        [&](std::size_t i) {
            testgen::GraphOptions o;
            o.max_nodes = 1 + i % 10;
            return testgen::random_umlad(rng, o);
        },
        [](const umlad::Activity& a) { return umlad::validate(a); });
    return {true, std::to_string(runs) + " injected models, " +
                      std::to_string(testgen::kNibmRules.size() + testgen::kGradeRules.size() +
                                     testgen::kUmladRules.size()) +
                      " rules covered"};
}

// ---------------------------------------------------------------------------
// 8. CLI determinism

int run_cli(const std::string& args, const fs::path& stdout_file) {
    const auto command = std::string("\"") + BMX_BINARY + "\" " + args + " > \"" + stdout_file.string() + "\" 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome ac8() {
    const auto work = fs::temp_directory_path() / ("bmx-determinism-" + std::to_string(::getpid()));
    fs::remove_all(work);
    fs::create_directories(work / "inputs");

    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(BMX_FIXTURES))
        if (entry.path().extension() == ".json") inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());
    testgen::Rng rng(8008);
    for (int i = 0; i < 5; ++i) {
        auto path = work / "inputs" / ("generated" + std::to_string(i) + ".grade.json");
        std::ofstream(path, std::ios::binary) << grade::write(testgen::random_grade(rng));
        inputs.push_back(path);
    }

    std::vector<std::string> targets{"nibm", "grade-bm", "uml-ad"};
    std::size_t compared = 0;
    std::map<std::string, std::string> first;  // relative output name -> bytes
    for (int run = 0; run < kAc8Repeats; ++run) {
        const auto dir = work / ("run" + std::to_string(run));
        fs::create_directories(dir);
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const auto in = "\"" + inputs[i].string() + "\"";
            const auto tag = std::to_string(i);
            run_cli("validate " + in, dir / (tag + ".validate.txt"));
            run_cli("trace -i " + in, dir / (tag + ".trace.txt"));
            for (const auto& to : targets) {
                const auto out = dir / (tag + "." + to + ".json");
                const auto trace = dir / (tag + "." + to + ".trace.json");
                run_cli("convert -i " + in + " --to " + to + " --allow-synthetic -o \"" + out.string() +
                            "\" --trace \"" + trace.string() + "\" --report \"" +
                            (dir / (tag + "." + to + ".report.json")).string() + "\"",
                        dir / (tag + "." + to + ".stdout.txt"));
            }
        }
        std::size_t seen = 0;
        for (const auto& entry : fs::directory_iterator(dir)) {
            ++seen;
            const auto name = entry.path().filename().string();
            auto bytes = read_file(entry.path());
            // Reports name their own output paths, which differ per run.
            if (name.find(".report.json") != std::string::npos) {
                const auto from = dir.string(), to = std::string("<run>");
                for (auto pos = bytes.find(from); pos != std::string::npos; pos = bytes.find(from, pos))
                    bytes.replace(pos, from.size(), to);
            }
            if (run == 0) {
                first[name] = std::move(bytes);
            } else {
                expect(first.count(name) && first[name] == bytes, "output " + name + " differs between runs");
                ++compared;
            }
        }
        expect(seen == first.size(), "run " + std::to_string(run) + " produced a different set of outputs");
    }
    fs::remove_all(work);
    return {true, std::to_string(inputs.size()) + " inputs, " + std::to_string(first.size()) + " outputs, " +
                      std::to_string(kAc8Repeats) + " runs byte-identical"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 conditional mapping rules", ac1},    {"AC2 xor discipline and totality", ac2},
        {"AC3 one-one UML correspondence", ac3},   {"AC4 GRADE round trip", ac4},
        {"AC5 behavioural preservation", ac5},     {"AC6 worked example", ac6},
        {"AC7 validator soundness", ac7},          {"AC8 CLI determinism", ac8},
    };
    int failed = 0;
    std::vector<std::string> lines;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, e.what()};
        }
        if (!o.pass) ++failed;
        lines.push_back(std::string(o.pass ? "PASS " : "FAIL ") + name + ": " + o.detail);
        std::cout << lines.back() << std::endl;
    }
    std::cout << "\n" << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}

// SPDX-License-Identifier: Apache-2.0
// Canonical ordering and isomorphism for independent process models.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

#include "bmx/errors.hpp"
#include "bmx/nibm.hpp"

namespace bmx::nibm {

namespace {

std::string node_key(const Process& p, const Node& n) {
    std::string key(to_string(n.kind));
    key += '\x1f';
    key += n.label;
    if (n.performer) {
        if (const auto* perf = p.find_performer(*n.performer)) {
            key += '\x1f';
            key += to_string(perf->kind);
            key += '\x1f';
            key += perf->name;
        }
    }
    return key;
}

std::string edge_key(const Transition& t) {
    std::string key(to_string(t.kind));
    if (t.guard) {
        key += '\x1f';
        key += *t.guard;
    }
    return key;
}

/// Graph with canonical integer labels, suitable for colour refinement. Several
/// processes can be packed into one so their colours are comparable.
struct LabeledGraph {
    std::vector<std::string> node_keys;
    struct Edge {
        std::size_t source, target;
        std::string key;
    };
    std::vector<Edge> edges;

    void append(const Process& p) {
        const auto offset = node_keys.size();
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < p.nodes.size(); ++i) {
            index[p.nodes[i].id] = offset + i;
            node_keys.push_back(node_key(p, p.nodes[i]));
        }
        for (const auto& t : p.transitions)
            edges.push_back({index.at(t.source), index.at(t.target), edge_key(t)});
    }
};

template <typename T>
std::vector<std::size_t> rank_values(const std::vector<T>& values) {
    std::vector<T> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        ranks[i] = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin());
    return ranks;
}

/// 1-dimensional Weisfeiler-Lehman refinement over in- and out-neighbourhoods.
/// Colours depend only on structure and labels, never on ids or element order.
std::vector<std::size_t> refine_colours(const LabeledGraph& g) {
    const auto n = g.node_keys.size();
    std::vector<std::string> edge_keys;
    for (const auto& e : g.edges) edge_keys.push_back(e.key);
    const auto edge_rank = rank_values(edge_keys);

    auto colours = rank_values(g.node_keys);
    std::size_t classes = colours.empty() ? 0 : *std::max_element(colours.begin(), colours.end()) + 1;
    for (std::size_t round = 0; round < n; ++round) {
        using Signature = std::vector<long>;
        std::vector<std::vector<std::pair<long, long>>> outs(n), ins(n);
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const auto& edge = g.edges[e];
            outs[edge.source].emplace_back(static_cast<long>(edge_rank[e]),
                                           static_cast<long>(colours[edge.target]));
            ins[edge.target].emplace_back(static_cast<long>(edge_rank[e]),
                                          static_cast<long>(colours[edge.source]));
        }
        std::vector<Signature> signatures(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::sort(outs[i].begin(), outs[i].end());
            std::sort(ins[i].begin(), ins[i].end());
            auto& sig = signatures[i];
            sig.push_back(static_cast<long>(colours[i]));
            for (auto [a, b] : outs[i]) sig.insert(sig.end(), {a, b});
            sig.push_back(-1);
            for (auto [a, b] : ins[i]) sig.insert(sig.end(), {a, b});
        }
        auto next = rank_values(signatures);
        std::size_t next_classes = n == 0 ? 0 : *std::max_element(next.begin(), next.end()) + 1;
        colours = std::move(next);
        if (next_classes == classes) break;
        classes = next_classes;
    }
    return colours;
}

}  // namespace

NormalizedProcess normalize_with_renaming(const Process& process) {
    check_structure(process);
    const Adjacency adj(process);
    LabeledGraph g;
    g.append(process);
    const auto colours = refine_colours(g);
    const auto n = process.nodes.size();

    auto node_order_key = [&](std::size_t i) {
        const auto& node = process.nodes[i];
        return std::tuple<NodeKind, const std::string&, std::size_t>(node.kind, node.label, colours[i]);
    };
    auto node_less = [&](std::size_t a, std::size_t b) { return node_order_key(a) < node_order_key(b); };

    std::vector<std::size_t> order;
    std::vector<bool> visited(n, false);
    std::vector<std::size_t> seeds(n);
    std::iota(seeds.begin(), seeds.end(), 0);
    std::stable_sort(seeds.begin(), seeds.end(), [&](std::size_t a, std::size_t b) {
        const bool sa = process.nodes[a].kind == NodeKind::Start;
        const bool sb = process.nodes[b].kind == NodeKind::Start;
        if (sa != sb) return sa;
        return node_less(a, b);
    });

    for (auto seed : seeds) {
        if (visited[seed]) continue;
        std::deque<std::size_t> queue{seed};
        visited[seed] = true;
        while (!queue.empty()) {
            const auto cur = queue.front();
            queue.pop_front();
            order.push_back(cur);
            std::vector<std::size_t> outs = adj.outflows[cur];
            std::stable_sort(outs.begin(), outs.end(), [&](std::size_t x, std::size_t y) {
                const auto tx = adj.target[x], ty = adj.target[y];
                if (node_order_key(tx) != node_order_key(ty)) return node_less(tx, ty);
                const auto& a = process.transitions[x];
                const auto& b = process.transitions[y];
                return std::tie(a.kind, a.guard) < std::tie(b.kind, b.guard);
            });
            for (auto t : outs) {
                const auto next = adj.target[t];
                if (!visited[next]) {
                    visited[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }

    NormalizedProcess result;
    auto& out = result.process;
    out.id = process.id;
    out.name = process.name;
    out.context = process.context;

    std::vector<std::size_t> new_index(n);
    for (std::size_t k = 0; k < order.size(); ++k) {
        new_index[order[k]] = k;
        result.nodes[process.nodes[order[k]].id] = "n" + std::to_string(k + 1);
    }

    // Performers: first use in canonical node order, then unused ones.
    std::vector<const Performer*> perf_order;
    for (auto i : order) {
        const auto& node = process.nodes[i];
        if (!node.performer) continue;
        const auto* p = process.find_performer(*node.performer);
        if (std::find(perf_order.begin(), perf_order.end(), p) == perf_order.end())
            perf_order.push_back(p);
    }
    std::vector<const Performer*> unused;
    for (const auto& p : process.performers)
        if (std::find(perf_order.begin(), perf_order.end(), &p) == perf_order.end())
            unused.push_back(&p);
    std::stable_sort(unused.begin(), unused.end(), [](const Performer* a, const Performer* b) {
        return std::tie(a->kind, a->name) < std::tie(b->kind, b->name);
    });
    perf_order.insert(perf_order.end(), unused.begin(), unused.end());
    for (std::size_t k = 0; k < perf_order.size(); ++k) {
        const auto new_id = "p" + std::to_string(k + 1);
        result.performers[perf_order[k]->id] = new_id;
        out.performers.push_back({new_id, perf_order[k]->kind, perf_order[k]->name});
    }

    for (auto i : order) {
        Node node = process.nodes[i];
        node.id = result.nodes.at(node.id);
        if (node.performer) node.performer = result.performers.at(*node.performer);
        out.nodes.push_back(std::move(node));
    }

    std::vector<std::size_t> torder(process.transitions.size());
    std::iota(torder.begin(), torder.end(), 0);
    std::stable_sort(torder.begin(), torder.end(), [&](std::size_t x, std::size_t y) {
        const auto& a = process.transitions[x];
        const auto& b = process.transitions[y];
        using Key = std::tuple<std::size_t, std::size_t, TransitionKind,
                               const std::optional<std::string>&>;
        return Key(new_index[adj.source[x]], new_index[adj.target[x]], a.kind, a.guard) <
               Key(new_index[adj.source[y]], new_index[adj.target[y]], b.kind, b.guard);
    });
    for (std::size_t k = 0; k < torder.size(); ++k) {
        Transition t = process.transitions[torder[k]];
        const auto new_id = "t" + std::to_string(k + 1);
        result.transitions[t.id] = new_id;
        t.id = new_id;
        t.source = result.nodes.at(t.source);
        t.target = result.nodes.at(t.target);
        out.transitions.push_back(std::move(t));
    }
    return result;
}

Process normalize(const Process& process) { return normalize_with_renaming(process).process; }

IsomorphismResult isomorphic(const Process& a, const Process& b) {
    check_structure(a);
    check_structure(b);
    IsomorphismResult result;
    if (a.nodes.size() != b.nodes.size()) {
        result.mismatch = "node count " + std::to_string(a.nodes.size()) + " vs " +
                          std::to_string(b.nodes.size());
        return result;
    }
    if (a.transitions.size() != b.transitions.size()) {
        result.mismatch = "transition count " + std::to_string(a.transitions.size()) + " vs " +
                          std::to_string(b.transitions.size());
        return result;
    }

    LabeledGraph g;
    g.append(a);
    g.append(b);
    const auto colours = refine_colours(g);
    const auto n = a.nodes.size();

    std::map<std::size_t, int> histogram;
    for (std::size_t i = 0; i < n; ++i) ++histogram[colours[i]];
    for (std::size_t i = 0; i < n; ++i) --histogram[colours[n + i]];
    for (const auto& [colour, count] : histogram) {
        if (count == 0) continue;
        for (std::size_t i = 0; i < 2 * n; ++i) {
            if (colours[i] != colour) continue;
            const auto& node = i < n ? a.nodes[i] : b.nodes[i - n];
            result.mismatch = std::string("no counterpart for ") + (i < n ? "a:" : "b:") + node.id +
                              " (" + std::string(to_string(node.kind)) +
                              (node.label.empty() ? "" : " " + node.label) + ")";
            return result;
        }
    }

    // edges[(s, t)] -> sorted edge keys, per side
    using PairEdges = std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>>;
    auto pair_edges = [&](std::size_t offset, std::size_t count) {
        PairEdges out;
        for (const auto& e : g.edges)
            if (e.source >= offset && e.source < offset + count)
                out[{e.source - offset, e.target - offset}].push_back(e.key);
        for (auto& [_, keys] : out) std::sort(keys.begin(), keys.end());
        return out;
    };
    const auto edges_a = pair_edges(0, n);
    const auto edges_b = pair_edges(n, n);
    auto lookup = [](const PairEdges& m, std::size_t s, std::size_t t) -> const std::vector<std::string>* {
        auto it = m.find({s, t});
        return it == m.end() ? nullptr : &it->second;
    };
    auto same_edges = [&](std::size_t s1, std::size_t t1, std::size_t s2, std::size_t t2) {
        const auto* x = lookup(edges_a, s1, t1);
        const auto* y = lookup(edges_b, s2, t2);
        if (!x || !y) return x == y;
        return *x == *y;
    };

    // Visit a's nodes in breadth-first order so each new node is adjacent to
    // an already mapped one whenever possible.
    const Adjacency adj_a(a);
    std::vector<std::size_t> visit;
    std::vector<bool> seen(n, false);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        std::deque<std::size_t> queue{root};
        seen[root] = true;
        while (!queue.empty()) {
            auto cur = queue.front();
            queue.pop_front();
            visit.push_back(cur);
            auto expand = [&](std::size_t next) {
                if (!seen[next]) {
                    seen[next] = true;
                    queue.push_back(next);
                }
            };
            for (auto t : adj_a.outflows[cur]) expand(adj_a.target[t]);
            for (auto t : adj_a.inflows[cur]) expand(adj_a.source[t]);
        }
    }

    std::vector<std::size_t> map_ab(n, n), map_ba(n, n);
    std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
        if (depth == n) return true;
        const auto x = visit[depth];
        for (std::size_t y = 0; y < n; ++y) {
            if (map_ba[y] != n || colours[n + y] != colours[x]) continue;
            if (!same_edges(x, x, y, y)) continue;
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                const auto u = visit[d];
                const auto v = map_ab[u];
                ok = same_edges(x, u, y, v) && same_edges(u, x, v, y);
            }
            if (!ok) continue;
            map_ab[x] = y;
            map_ba[y] = x;
            if (extend(depth + 1)) return true;
            map_ab[x] = n;
            map_ba[y] = n;
        }
        return false;
    };

    if (!extend(0)) {
        result.mismatch = "no structure-preserving bijection";
        return result;
    }
    result.isomorphic = true;
    for (std::size_t i = 0; i < n; ++i) result.witness[a.nodes[i].id] = b.nodes[map_ab[i]].id;
    return result;
}

}  // namespace bmx::nibm

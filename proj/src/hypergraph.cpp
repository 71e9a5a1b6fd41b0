/*
 * Copyright 2026 The spkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "spkit/hypergraph.hpp"

#include <algorithm>
#include <set>

#include "spkit/errors.hpp"

namespace spkit {

bool Hypergraph::has_vertex(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

Hypergraph make_hypergraph(std::vector<int> vertices, std::vector<std::vector<int>> edges) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    Hypergraph h;
    h.vertices = std::move(vertices);
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        if (e.empty()) throw ParameterOutOfRange("empty hyperedge");
        for (int v : e)
            if (!h.has_vertex(v))
                throw ParameterOutOfRange("edge vertex " + std::to_string(v) +
                                          " not in vertex set");
    }
    h.edges = std::move(edges);
    return h;
}

Hypergraph hypergraph_of(const Formula& f) {
    Hypergraph h;
    h.vertices.reserve(static_cast<std::size_t>(f.num_vars));
    for (int v = 1; v <= f.num_vars; ++v) h.vertices.push_back(v);
    for (const auto& c : f.clauses) {
        if (c.empty()) continue;
        std::vector<int> e;
        e.reserve(c.size());
        for (Lit l : c.lits()) e.push_back(var_of(l));
        h.edges.push_back(std::move(e));
    }
    return h;
}

int Graph::index_of(int v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return -1;
    return static_cast<int>(it - vertices.begin());
}

bool Graph::has_edge(int u, int v) const {
    int i = index_of(u);
    if (i < 0) return false;
    return std::binary_search(adj[static_cast<std::size_t>(i)].begin(),
                              adj[static_cast<std::size_t>(i)].end(), v);
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (int u : adj[i])
            if (vertices[i] < u) out.emplace_back(vertices[i], u);
    return out;
}

Graph primal_graph(const Hypergraph& h) {
    Graph g;
    g.vertices = h.vertices;
    g.adj.assign(g.vertices.size(), {});
    std::set<std::pair<int, int>> seen;
    for (const auto& e : h.edges)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                if (seen.emplace(e[i], e[j]).second) {
                    g.adj[static_cast<std::size_t>(g.index_of(e[i]))].push_back(e[j]);
                    g.adj[static_cast<std::size_t>(g.index_of(e[j]))].push_back(e[i]);
                }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

InducedWidthResult induced_width(const Hypergraph& h, const ElimOrder& pi) {
    if (pi.order.size() != h.vertices.size())
        throw ParameterOutOfRange("order length does not match vertex count");
    {
        auto sorted = pi.order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != h.vertices)
            throw ParameterOutOfRange("order is not a permutation of the vertex set");
    }

    InducedWidthResult res;
    res.trace.push_back(h);
    int width = 0;
    for (const auto& e : h.edges) width = std::max(width, static_cast<int>(e.size()));

    Hypergraph cur = h;
    // n hypergraphs in the trace means n-1 elimination steps.
    for (std::size_t step = 0; step + 1 < pi.order.size(); ++step) {
        int v = pi.order[step];
        std::vector<int> merged;
        std::vector<std::vector<int>> next;
        long first_pos = -1;
        for (auto& e : cur.edges) {
            if (std::binary_search(e.begin(), e.end(), v)) {
                if (first_pos < 0) first_pos = static_cast<long>(next.size());
                for (int u : e)
                    if (u != v) merged.push_back(u);
            } else {
                next.push_back(std::move(e));
            }
        }
        if (first_pos >= 0 && !merged.empty()) {
            std::sort(merged.begin(), merged.end());
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
            width = std::max(width, static_cast<int>(merged.size()));
            next.insert(next.begin() + first_pos, std::move(merged));
        }
        cur.edges = std::move(next);
        cur.vertices.erase(std::remove(cur.vertices.begin(), cur.vertices.end(), v),
                           cur.vertices.end());
        res.trace.push_back(cur);
    }
    res.width = width;
    return res;
}

} // namespace spkit

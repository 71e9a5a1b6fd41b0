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

#include "spkit/decomposition.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "spkit/errors.hpp"

namespace spkit {

namespace {

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Parent index per node (-1 for the root), from the child links.
template <typename D>
std::vector<int> parents_of(const D& d) {
    std::vector<int> parent(d.nodes.size(), -1);
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        if (d.nodes[i].left >= 0) parent[static_cast<std::size_t>(d.nodes[i].left)] = static_cast<int>(i);
        if (d.nodes[i].right >= 0) parent[static_cast<std::size_t>(d.nodes[i].right)] = static_cast<int>(i);
    }
    return parent;
}

template <typename D>
std::vector<int> depths_of(const D& d) {
    auto parent = parents_of(d);
    std::vector<int> depth(d.nodes.size(), 0);
    // Nodes are in construction order but not necessarily topological; walk up.
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        int dep = 0;
        for (int p = parent[i]; p >= 0; p = parent[static_cast<std::size_t>(p)]) ++dep;
        depth[i] = dep;
    }
    return depth;
}

// Edge indices found at the leaves below each node.
template <typename D>
std::vector<std::vector<int>> leaf_edges_below(const D& d) {
    std::vector<std::vector<int>> below(d.nodes.size());
    // Post-order via explicit stack.
    std::vector<std::pair<int, bool>> stack;
    if (d.root >= 0) stack.push_back({d.root, false});
    while (!stack.empty()) {
        auto [n, done] = stack.back();
        stack.pop_back();
        const auto& node = d.nodes[static_cast<std::size_t>(n)];
        if (node.is_leaf()) {
            below[static_cast<std::size_t>(n)] = {node.edge_index};
            continue;
        }
        if (!done) {
            stack.push_back({n, true});
            stack.push_back({node.left, false});
            stack.push_back({node.right, false});
            continue;
        }
        auto& mine = below[static_cast<std::size_t>(n)];
        mine = below[static_cast<std::size_t>(node.left)];
        mine.insert(mine.end(), below[static_cast<std::size_t>(node.right)].begin(),
                    below[static_cast<std::size_t>(node.right)].end());
        std::sort(mine.begin(), mine.end());
    }
    return below;
}

} // namespace

std::vector<int> PseudoTree::roots() const {
    std::vector<int> out;
    for (const auto& [v, p] : parent)
        if (p == 0) out.push_back(v);
    return out;
}

std::vector<int> PseudoTree::children_of(int v) const {
    std::vector<int> out;
    for (const auto& [c, p] : parent)
        if (p == v) out.push_back(c);
    return out;
}

bool PseudoTree::is_ancestor(int a, int b) const {
    auto it = parent.find(b);
    while (it != parent.end() && it->second != 0) {
        if (it->second == a) return true;
        it = parent.find(it->second);
    }
    return false;
}

void compute_branch_labels(BranchDecomp& b, const Hypergraph& h) {
    if (b.empty()) return;
    auto below = leaf_edges_below(b);
    std::size_t num_edges = h.edges.size();
    for (std::size_t i = 0; i < b.nodes.size(); ++i) {
        std::vector<char> is_below(num_edges, 0);
        for (int e : below[i]) is_below[static_cast<std::size_t>(e)] = 1;
        std::vector<int> under, rest;
        for (std::size_t e = 0; e < num_edges; ++e) {
            auto& target = is_below[e] ? under : rest;
            target = sorted_union(target, h.edges[e]);
        }
        b.nodes[i].label = sorted_intersection(under, rest);
    }
}

void compute_tree_labels(TreeDecomp& t) {
    if (t.empty()) return;
    auto parent = parents_of(t);

    // Vertices mentioned in any leaf label.
    std::set<int> verts;
    for (const auto& n : t.nodes)
        if (n.is_leaf()) verts.insert(n.label.begin(), n.label.end());

    for (auto& n : t.nodes)
        if (!n.is_leaf()) n.label.clear();

    for (int v : verts) {
        std::vector<int> holders;
        for (std::size_t i = 0; i < t.nodes.size(); ++i)
            if (t.nodes[i].is_leaf() &&
                std::binary_search(t.nodes[i].label.begin(), t.nodes[i].label.end(), v))
                holders.push_back(static_cast<int>(i));
        if (holders.size() < 2) continue;
        // Steiner subtree of the holders: walk each holder to the root,
        // counting visits; nodes visited at least once and lying at or
        // below the common ancestor are on some holder-to-holder path.
        std::vector<int> visits(t.nodes.size(), 0);
        for (int leaf : holders)
            for (int n = leaf; n >= 0; n = parent[static_cast<std::size_t>(n)]) ++visits[static_cast<std::size_t>(n)];
        int lca = t.root;
        // The deepest node seen by every holder walk.
        for (;;) {
            const auto& node = t.nodes[static_cast<std::size_t>(lca)];
            if (node.is_leaf()) break;
            int l = node.left, r = node.right;
            if (visits[static_cast<std::size_t>(l)] == static_cast<int>(holders.size()))
                lca = l;
            else if (visits[static_cast<std::size_t>(r)] == static_cast<int>(holders.size()))
                lca = r;
            else
                break;
        }
        // Mark visited nodes below the lca (the lca itself included).
        for (int leaf : holders)
            for (int n = leaf; n >= 0; n = parent[static_cast<std::size_t>(n)]) {
                auto& node = t.nodes[static_cast<std::size_t>(n)];
                if (!node.is_leaf() &&
                    !std::binary_search(node.label.begin(), node.label.end(), v)) {
                    node.label.insert(
                        std::upper_bound(node.label.begin(), node.label.end(), v), v);
                }
                if (n == lca) break;
            }
    }
}

int width_of(const BranchDecomp& b) {
    int w = 0;
    for (const auto& n : b.nodes) w = std::max(w, static_cast<int>(n.label.size()));
    return w;
}

int width_of(const TreeDecomp& t) {
    int w = 0;
    for (const auto& n : t.nodes) w = std::max(w, static_cast<int>(n.label.size()));
    return w > 0 ? w - 1 : 0;
}

namespace {

template <typename D>
void check_binary_shape(const D& d, std::vector<std::string>& out) {
    if (d.empty()) {
        out.push_back("decomposition has no nodes");
        return;
    }
    if (d.root < 0 || d.root >= static_cast<int>(d.nodes.size())) {
        out.push_back("root index out of range");
        return;
    }
    auto parent = parents_of(d);
    int roots = 0;
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const auto& n = d.nodes[i];
        bool has_left = n.left >= 0, has_right = n.right >= 0;
        if (has_left != has_right) out.push_back("node " + std::to_string(i) + " has one child");
        if (n.is_leaf() && n.edge_index < 0)
            out.push_back("leaf " + std::to_string(i) + " carries no hyperedge");
        if (!n.is_leaf() && n.edge_index >= 0)
            out.push_back("internal node " + std::to_string(i) + " carries a hyperedge");
        if (parent[i] < 0) ++roots;
    }
    if (roots != 1) out.push_back("tree has " + std::to_string(roots) + " roots");
}

template <typename D>
void check_leaf_bijection(const D& d, const Hypergraph& h, std::vector<std::string>& out) {
    std::vector<int> count(h.edges.size(), 0);
    for (const auto& n : d.nodes)
        if (n.is_leaf()) {
            if (n.edge_index < 0 || n.edge_index >= static_cast<int>(h.edges.size())) {
                out.push_back("leaf edge index out of range");
                continue;
            }
            ++count[static_cast<std::size_t>(n.edge_index)];
        }
    for (std::size_t e = 0; e < count.size(); ++e)
        if (count[e] != 1)
            out.push_back("hyperedge " + std::to_string(e) + " appears at " +
                          std::to_string(count[e]) + " leaves");
}

} // namespace

std::vector<std::string> validate(const BranchDecomp& b, const Hypergraph& h) {
    std::vector<std::string> out;
    check_binary_shape(b, out);
    if (!out.empty()) return out;
    check_leaf_bijection(b, h, out);
    BranchDecomp fresh = b;
    compute_branch_labels(fresh, h);
    for (std::size_t i = 0; i < b.nodes.size(); ++i)
        if (b.nodes[i].label != fresh.nodes[i].label)
            out.push_back("label of node " + std::to_string(i) +
                          " does not match its recomputation");
    return out;
}

std::vector<std::string> validate(const TreeDecomp& t, const Hypergraph& h) {
    std::vector<std::string> out;
    check_binary_shape(t, out);
    if (!out.empty()) return out;
    check_leaf_bijection(t, h, out);
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        bool covered = false;
        for (const auto& n : t.nodes)
            if (n.is_leaf() && n.edge_index == static_cast<int>(e) &&
                std::includes(n.label.begin(), n.label.end(), h.edges[e].begin(),
                              h.edges[e].end())) {
                covered = true;
                break;
            }
        if (!covered)
            out.push_back("hyperedge " + std::to_string(e) + " not inside its leaf label");
    }
    // Running intersection: for each vertex the labelled nodes form a
    // connected subtree.
    std::set<int> verts;
    for (const auto& n : t.nodes) verts.insert(n.label.begin(), n.label.end());
    auto parent = parents_of(t);
    for (int v : verts) {
        std::vector<int> holding;
        for (std::size_t i = 0; i < t.nodes.size(); ++i)
            if (std::binary_search(t.nodes[i].label.begin(), t.nodes[i].label.end(), v))
                holding.push_back(static_cast<int>(i));
        // Connected iff exactly one holder's parent is not a holder.
        int tops = 0;
        for (int n : holding) {
            int p = parent[static_cast<std::size_t>(n)];
            if (p < 0 || !std::binary_search(t.nodes[static_cast<std::size_t>(p)].label.begin(),
                                             t.nodes[static_cast<std::size_t>(p)].label.end(), v))
                ++tops;
        }
        if (tops != 1)
            out.push_back("vertex " + std::to_string(v) +
                          " violates running intersection (" + std::to_string(tops) +
                          " disconnected regions)");
    }
    TreeDecomp fresh = t;
    compute_tree_labels(fresh);
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        if (!t.nodes[i].is_leaf() && t.nodes[i].label != fresh.nodes[i].label)
            out.push_back("internal label of node " + std::to_string(i) +
                          " does not match the running-intersection closure");
    return out;
}

std::vector<std::string> validate(const PseudoTree& pt, const Graph& g) {
    std::vector<std::string> out;
    for (int v : g.vertices)
        if (!pt.parent.count(v)) out.push_back("vertex " + std::to_string(v) + " missing");
    for (const auto& [v, p] : pt.parent) {
        if (g.index_of(v) < 0) out.push_back("node " + std::to_string(v) + " not a graph vertex");
        if (p != 0 && !pt.parent.count(p))
            out.push_back("parent of " + std::to_string(v) + " unknown");
    }
    if (!out.empty()) return out;
    // Acyclicity.
    for (const auto& [v, p] : pt.parent) {
        int steps = 0;
        for (int cur = v; cur != 0; ++steps) {
            auto it = pt.parent.find(cur);
            if (it == pt.parent.end() || steps > static_cast<int>(pt.parent.size())) {
                out.push_back("parent chain of " + std::to_string(v) + " does not reach a root");
                break;
            }
            cur = it->second;
        }
    }
    if (!out.empty()) return out;
    for (auto [u, v] : g.edge_list())
        if (!pt.is_ancestor(u, v) && !pt.is_ancestor(v, u))
            out.push_back("graph edge (" + std::to_string(u) + "," + std::to_string(v) +
                          ") joins unrelated subtrees");
    return out;
}

ElimOrder order_from_treedec(const Hypergraph& h, const TreeDecomp& t) {
    if (auto errs = validate(t, h); !errs.empty())
        throw InvalidDecomposition("order_from_treedec: " + errs.front());
    auto parent = parents_of(t);
    auto depth = depths_of(t);

    std::vector<std::pair<int, int>> keyed;  // (depth of node(v), v)
    std::vector<int> isolated;
    for (int v : h.vertices) {
        std::vector<int> holders;
        for (std::size_t i = 0; i < t.nodes.size(); ++i)
            if (t.nodes[i].is_leaf() &&
                std::binary_search(t.nodes[i].label.begin(), t.nodes[i].label.end(), v))
                holders.push_back(static_cast<int>(i));
        if (holders.empty()) {
            isolated.push_back(v);
            continue;
        }
        // Deepest common ancestor of the holders.
        int node = holders.front();
        for (std::size_t k = 1; k < holders.size(); ++k) {
            int a = node, b = holders[k];
            while (a != b) {
                if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)])
                    a = parent[static_cast<std::size_t>(a)];
                else
                    b = parent[static_cast<std::size_t>(b)];
            }
            node = a;
        }
        keyed.emplace_back(depth[static_cast<std::size_t>(node)], v);
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;  // deeper first
        return x.second < y.second;
    });

    ElimOrder pi;
    pi.order = std::move(isolated);
    for (auto& [d, v] : keyed) pi.order.push_back(v);
    return pi;
}

namespace {

struct MergeForest {
    // Each tree is a root node index into `nodes` plus its vertex support.
    std::vector<DecompNode> nodes;
    std::vector<int> roots;
    std::vector<std::vector<int>> support;

    void add_leaf(int edge_index, const std::vector<int>& edge) {
        DecompNode leaf;
        leaf.edge_index = edge_index;
        leaf.label = edge;
        nodes.push_back(leaf);
        roots.push_back(static_cast<int>(nodes.size()) - 1);
        support.push_back(edge);
    }

    // Left-leaning merge of the trees at the given positions; the merged
    // tree replaces the first position.
    void merge(const std::vector<std::size_t>& positions) {
        if (positions.size() < 2) return;
        int acc = roots[positions[0]];
        std::vector<int> acc_support = support[positions[0]];
        for (std::size_t k = 1; k < positions.size(); ++k) {
            DecompNode inner;
            inner.left = acc;
            inner.right = roots[positions[k]];
            nodes.push_back(inner);
            acc = static_cast<int>(nodes.size()) - 1;
            acc_support = sorted_union(acc_support, support[positions[k]]);
        }
        roots[positions[0]] = acc;
        support[positions[0]] = std::move(acc_support);
        for (std::size_t k = positions.size(); k-- > 1;) {
            roots.erase(roots.begin() + static_cast<long>(positions[k]));
            support.erase(support.begin() + static_cast<long>(positions[k]));
        }
    }
};

MergeForest lemma_merge_shape(const Hypergraph& h, const ElimOrder& pi) {
    if (pi.order.size() != h.vertices.size())
        throw ParameterOutOfRange("order does not permute the vertex set");
    MergeForest forest;
    for (std::size_t e = 0; e < h.edges.size(); ++e)
        forest.add_leaf(static_cast<int>(e), h.edges[e]);
    for (std::size_t i = pi.order.size(); i-- > 0;) {
        int x = pi.order[i];
        std::vector<std::size_t> holding;
        for (std::size_t k = 0; k < forest.roots.size(); ++k)
            if (std::binary_search(forest.support[k].begin(), forest.support[k].end(), x))
                holding.push_back(k);
        forest.merge(holding);
    }
    // A disconnected hypergraph leaves several trees; chain them together.
    if (forest.roots.size() > 1) {
        std::vector<std::size_t> all(forest.roots.size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        forest.merge(all);
    }
    return forest;
}

} // namespace

TreeDecomp treedec_from_order(const Hypergraph& h, const ElimOrder& pi) {
    TreeDecomp t;
    if (h.edges.empty()) return t;
    auto forest = lemma_merge_shape(h, pi);
    t.nodes = std::move(forest.nodes);
    t.root = forest.roots.front();
    compute_tree_labels(t);
    return t;
}

BranchDecomp branchdec_from_order(const Hypergraph& h, const ElimOrder& pi) {
    if (h.edges.empty())
        throw HypergraphTooSmall("cannot build a branch decomposition without hyperedges");
    BranchDecomp b;
    if (h.edges.size() == 1) {
        DecompNode leaf;
        leaf.edge_index = 0;
        b.nodes.push_back(leaf);
        b.root = 0;
    } else {
        auto forest = lemma_merge_shape(h, pi);
        b.nodes = std::move(forest.nodes);
        b.root = forest.roots.front();
        for (auto& n : b.nodes) n.label.clear();
    }
    compute_branch_labels(b, h);
    return b;
}

ElimOrder heuristic_order(const Hypergraph& h, OrderHeuristic method, std::uint64_t seed) {
    Graph g = primal_graph(h);
    std::map<int, std::set<int>> adj;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        adj[g.vertices[i]] = std::set<int>(g.adj[i].begin(), g.adj[i].end());

    ElimOrder pi;
    // Isolated vertices first, by id.
    std::set<int> in_some_edge;
    for (const auto& e : h.edges) in_some_edge.insert(e.begin(), e.end());
    for (int v : h.vertices)
        if (!in_some_edge.count(v)) {
            pi.order.push_back(v);
            adj.erase(v);
        }

    std::mt19937_64 rng(seed);
    while (!adj.empty()) {
        long best_score = -1;
        std::vector<int> tied;
        for (const auto& [v, nbrs] : adj) {
            long score;
            if (method == OrderHeuristic::MinDegree) {
                score = static_cast<long>(nbrs.size());
            } else {
                score = 0;
                for (auto it = nbrs.begin(); it != nbrs.end(); ++it)
                    for (auto jt = std::next(it); jt != nbrs.end(); ++jt)
                        if (!adj.at(*it).count(*jt)) ++score;
            }
            if (best_score < 0 || score < best_score) {
                best_score = score;
                tied = {v};
            } else if (score == best_score) {
                tied.push_back(v);
            }
        }
        int pick = tied.front();
        if (seed != 0 && tied.size() > 1)
            pick = tied[std::uniform_int_distribution<std::size_t>(0, tied.size() - 1)(rng)];
        // Eliminate: connect the neighborhood into a clique.
        auto nbrs = adj.at(pick);
        for (int u : nbrs) {
            adj.at(u).erase(pick);
            for (int w : nbrs)
                if (u != w) adj.at(u).insert(w);
        }
        adj.erase(pick);
        pi.order.push_back(pick);
    }
    return pi;
}

PseudoTree pseudo_tree_from_order(const Graph& g, const ElimOrder& pi) {
    if (pi.order.size() != g.vertices.size())
        throw ParameterOutOfRange("order does not permute the graph vertices");
    std::map<int, std::size_t> position;
    for (std::size_t i = 0; i < pi.order.size(); ++i) position[pi.order[i]] = i;

    std::map<int, std::set<int>> adj;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        adj[g.vertices[i]] = std::set<int>(g.adj[i].begin(), g.adj[i].end());

    PseudoTree pt;
    for (int v : pi.order) {
        const auto& nbrs = adj.at(v);
        int parent = 0;
        std::size_t best = 0;
        for (int u : nbrs) {
            std::size_t pos = position.at(u);
            if (parent == 0 || pos < best) {
                parent = u;
                best = pos;
            }
        }
        pt.parent[v] = parent;
        // Fill: later neighbors become a clique.
        for (int u : nbrs) {
            adj.at(u).erase(v);
            for (int w : nbrs)
                if (u != w) adj.at(u).insert(w);
        }
        adj.erase(v);
    }
    return pt;
}

std::vector<int> static_order_from_branchdec(const BranchDecomp& b, const Hypergraph& h) {
    std::vector<int> order;
    std::set<int> seen;
    std::vector<int> stack;
    if (b.root >= 0) stack.push_back(b.root);
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        const auto& node = b.nodes[static_cast<std::size_t>(n)];
        for (int v : node.label)
            if (seen.insert(v).second) order.push_back(v);
        if (!node.is_leaf()) {
            stack.push_back(node.right);
            stack.push_back(node.left);
        }
    }
    // Vertices occurring in exactly one hyperedge appear in no label.
    std::set<int> occurring;
    for (const auto& e : h.edges) occurring.insert(e.begin(), e.end());
    for (int v : occurring)
        if (seen.insert(v).second) order.push_back(v);
    return order;
}

} // namespace spkit

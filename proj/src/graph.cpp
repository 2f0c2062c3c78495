#include "mcs/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace mcs {

EdgeCode mirror(EdgeCode c) {
    switch (c) {
        case EdgeCode::forward: return EdgeCode::backward;
        case EdgeCode::backward: return EdgeCode::forward;
        default: return c;
    }
}

int Graph::degree(int v) const {
    int d = 0;
    for (int u = 0; u < n_; ++u) {
        std::uint8_t c = code(v, u);
        if (kind_ == GraphKind::undirected) {
            d += c != 0;
        } else {
            d += (c & 1u) != 0;  // outgoing
            d += (c & 2u) != 0;  // incoming
        }
    }
    return d;
}

std::size_t Graph::edge_count() const {
    std::size_t cnt = 0;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (code(u, v) != 0) ++cnt;
    return cnt;
}

Graph from_edge_list(int n, const std::vector<Edge>& edges, GraphKind kind,
                     std::optional<std::vector<int>> labels) {
    if (n < 0) throw GraphError("negative vertex count");
    if (labels && static_cast<int>(labels->size()) != n)
        throw GraphError("label vector size does not match vertex count");

    Graph g;
    g.n_ = n;
    g.kind_ = kind;
    g.adj_.assign(static_cast<std::size_t>(n) * n, 0);
    g.labels_ = std::move(labels);

    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw GraphError("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                             std::to_string(e.v) + ")");
        if (e.u == e.v) throw GraphError("self-loop on vertex " + std::to_string(e.u));

        std::uint8_t fwd = 1, bwd = 1;
        if (kind == GraphKind::directed) {
            if (e.code == EdgeCode::none) throw GraphError("directed edge with code none");
            fwd = static_cast<std::uint8_t>(e.code);
            bwd = static_cast<std::uint8_t>(mirror(e.code));
        }
        std::uint8_t& cell = g.adj_[static_cast<std::size_t>(e.u) * n + e.v];
        if (cell != 0 && cell != fwd)
            throw GraphError("conflicting duplicate edge (" + std::to_string(e.u) + "," +
                             std::to_string(e.v) + ")");
        cell = fwd;
        g.adj_[static_cast<std::size_t>(e.v) * n + e.u] = bwd;
    }
    return g;
}

Permutation::Permutation(std::vector<int> forward) : fwd_(std::move(forward)) {
    std::vector<bool> seen(fwd_.size(), false);
    for (int x : fwd_) {
        if (x < 0 || x >= static_cast<int>(fwd_.size()) || seen[x])
            throw GraphError("permutation is not a bijection");
        seen[x] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> f(n);
    std::iota(f.begin(), f.end(), 0);
    return Permutation(std::move(f));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(fwd_.size());
    for (int v = 0; v < size(); ++v) inv[fwd_[v]] = v;
    return Permutation(std::move(inv));
}

Graph permute(const Graph& g, const Permutation& p) {
    if (p.size() != g.n()) throw GraphError("permutation size does not match graph");
    std::vector<Edge> edges;
    for (int u = 0; u < g.n(); ++u) {
        for (int v = u + 1; v < g.n(); ++v) {
            std::uint8_t c = g.code(u, v);
            if (c != 0) edges.push_back({p(u), p(v), static_cast<EdgeCode>(c)});
        }
    }
    std::optional<std::vector<int>> labels;
    if (g.labeled()) {
        labels.emplace(g.n());
        for (int v = 0; v < g.n(); ++v) (*labels)[p(v)] = g.label(v);
    }
    return from_edge_list(g.n(), edges, g.kind(), std::move(labels));
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<int> comp(g.n(), -1);
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (int u = 0; u < g.n(); ++u)
                if (comp[u] == -1 && g.code(v, u) != 0) {
                    comp[u] = id;
                    stack.push_back(u);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;  // ordered by smallest member since seeds increase
}

Graph random_graph(int n, double density, std::uint64_t seed, const RandomGraphOptions& opts) {
    if (density < 0.0 || density > 1.0) throw GraphError("density must be in [0,1]");
    std::mt19937 gen(static_cast<std::uint32_t>(seed));
    // Raw draws against a fixed-point threshold keep results identical across
    // platforms (uniform_real_distribution is not portable).
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(density * 4294967296.0);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (static_cast<std::uint64_t>(gen()) < threshold) {
                EdgeCode c = EdgeCode::forward;
                if (opts.kind == GraphKind::directed)
                    c = static_cast<EdgeCode>(1 + gen() % 3);
                edges.push_back({u, v, c});
            }
        }
    }
    std::optional<std::vector<int>> labels;
    if (opts.label_count > 0) {
        labels.emplace(n);
        for (int v = 0; v < n; ++v)
            (*labels)[v] = static_cast<int>(gen() % static_cast<unsigned>(opts.label_count));
    }
    return from_edge_list(n, edges, opts.kind, std::move(labels));
}

Permutation random_permutation(int n, std::uint64_t seed) {
    std::mt19937 gen(static_cast<std::uint32_t>(seed));
    std::vector<int> f(n);
    std::iota(f.begin(), f.end(), 0);
    // Fisher-Yates with raw draws, same portability concern as above.
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(gen() % static_cast<unsigned>(i + 1));
        std::swap(f[i], f[j]);
    }
    return Permutation(std::move(f));
}

}  // namespace mcs

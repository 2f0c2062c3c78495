#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcs {

enum class GraphKind { undirected, directed };

// Per-pair adjacency code for directed graphs. Stored mirror-consistently:
// code(u,v) == forward  <=>  code(v,u) == backward.
enum class EdgeCode : std::uint8_t { none = 0, forward = 1, backward = 2, both = 3 };

EdgeCode mirror(EdgeCode c);

struct Edge {
    int u = 0;
    int v = 0;
    EdgeCode code = EdgeCode::forward;  // ignored for undirected graphs
};

class GraphError : public std::runtime_error {
public:
    explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

// Immutable once built; safe to share read-only across threads.
class Graph {
public:
    Graph() = default;

    int n() const { return n_; }
    GraphKind kind() const { return kind_; }
    bool directed() const { return kind_ == GraphKind::directed; }

    // Raw code: 0 = none; undirected graphs use 0/1 only.
    std::uint8_t code(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v]; }
    bool adjacent(int u, int v) const { return code(u, v) != 0; }

    bool labeled() const { return labels_.has_value(); }
    int label(int v) const { return (*labels_)[v]; }
    const std::optional<std::vector<int>>& labels() const { return labels_; }

    // Neighbour count for undirected graphs; in-degree + out-degree for
    // directed ones (a 'both' pair counts twice).
    int degree(int v) const;
    std::size_t edge_count() const;

    bool operator==(const Graph& other) const = default;

    friend Graph from_edge_list(int n, const std::vector<Edge>& edges, GraphKind kind,
                                std::optional<std::vector<int>> labels);

private:
    int n_ = 0;
    GraphKind kind_ = GraphKind::undirected;
    std::vector<std::uint8_t> adj_;  // n*n codes, row-major
    std::optional<std::vector<int>> labels_;
};

// Duplicate edges collapse; a duplicate with a conflicting code is an error,
// as are self-loops and out-of-range endpoints.
Graph from_edge_list(int n, const std::vector<Edge>& edges,
                     GraphKind kind = GraphKind::undirected,
                     std::optional<std::vector<int>> labels = std::nullopt);

class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> forward);  // validates bijectivity
    static Permutation identity(int n);

    int size() const { return static_cast<int>(fwd_.size()); }
    int operator()(int v) const { return fwd_[v]; }
    const std::vector<int>& forward() const { return fwd_; }
    Permutation inverse() const;
    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> fwd_;  // old id -> new id
};

// adjacency(p(u), p(v)) of the result equals adjacency(u, v) of g; labels follow.
Graph permute(const Graph& g, const Permutation& p);

// Maximal connected vertex sets (direction ignored), each sorted ascending,
// components ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);

struct RandomGraphOptions {
    GraphKind kind = GraphKind::undirected;
    int label_count = 0;  // 0 = unlabeled
};

// Deterministic for a fixed (n, density, seed) on every platform.
Graph random_graph(int n, double density, std::uint64_t seed,
                   const RandomGraphOptions& opts = {});

Permutation random_permutation(int n, std::uint64_t seed);

}  // namespace mcs

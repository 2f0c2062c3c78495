#pragma once

#include <vector>

#include "mcs/graph.hpp"

namespace mcs {

// One refinement class ("bidomain"): a window into the shared left/right
// vertex buffers. Vertices inside one window share the same adjacency
// pattern toward every matched pair.
struct LabelClass {
    int left_start = 0;
    int right_start = 0;
    int left_len = 0;
    int right_len = 0;
    bool adjacent = false;  // came from the adjacent side of the latest split

    bool operator==(const LabelClass&) const = default;
};

// Classes plus the vertex buffers their windows index.
struct ClassState {
    std::vector<int> left;   // vertices of G, grouped by class window
    std::vector<int> right;  // vertices of H
    std::vector<LabelClass> classes;
};

// Unlabeled graphs get a single class holding all vertices of both graphs;
// vertex-labeled graphs get one class per label present on both sides.
// Classes with an empty side are dropped.
ClassState initial_classes(const Graph& g, const Graph& h);

// Eq.-style bound: m_size + sum over classes of min(|left|, |right|).
long long compute_bound(long long m_size, const std::vector<LabelClass>& classes);

// Index of the class minimizing max(|left|,|right|); ties broken by smaller
// min(|left|,|right|), then by lowest contained left-vertex id. -1 when empty.
int select_label_class(const std::vector<LabelClass>& classes, const std::vector<int>& left);

// Left vertex of maximum degree (total degree when directed), lowest id on ties.
int select_vertex(const LabelClass& cls, const std::vector<int>& left,
                  const std::vector<int>& degree);

// Splits every class by its adjacency code toward (v, u): two-way for
// undirected graphs, four-way (none, forward, backward, both) for directed
// ones. Windows are re-partitioned in place inside the buffers; sub-classes
// with an empty side are dropped and the adjacent flag is set on nonzero-code
// sub-classes. The matched v and u must not be inside any window.
std::vector<LabelClass> filter_classes(const std::vector<LabelClass>& classes,
                                       std::vector<int>& left, std::vector<int>& right,
                                       const Graph& g, const Graph& h, int v, int u);

// Spec-level refine: checks that v and u are co-resident in one class, removes
// them, then splits. Throws GraphError when they are not co-resident.
ClassState refine(const ClassState& state, int v, int u, const Graph& g, const Graph& h);

}  // namespace mcs

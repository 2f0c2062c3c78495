#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mcs/graph.hpp"
#include "mcs/solve.hpp"

namespace mcs {

// ---------------------------------------------------------------- orderings

// New ids in non-increasing degree order, ties by original id.
Permutation order_by_degree(const Graph& g);

// Components concatenated largest-first (ties by smallest member), each
// internally degree-ordered.
Permutation order_by_components(const Graph& g);

// Hellerman-Rarick-flavoured bordered block-triangular ordering: repeatedly
// pick the column intersecting the most shortest active rows (ties by lowest
// id), move it to the border, shrink the active submatrix.
Permutation order_block_triangular(const Graph& g);

Permutation make_ordering(const Graph& g, OrderingStrategy strategy);

// ----------------------------------------------------------------- dead-ends

struct DeadEndPolicy {
    enum class Kind { absolute, relative };
    Kind kind = Kind::absolute;
    std::uint64_t threshold = 1'000'000;  // absolute: recursions since improvement
    double multiplier = 2.0;              // relative: delta >= mult * max(1, at_improvement)

    static DeadEndPolicy absolute(std::uint64_t n) { return {Kind::absolute, n, 0.0}; }
    static DeadEndPolicy relative(double mult) { return {Kind::relative, 0, mult}; }
};

class DeadEndMonitor {
public:
    explicit DeadEndMonitor(DeadEndPolicy policy = {}) : policy_(policy) {}

    void note_recursion() { ++recursions_; }
    void note_improvement() { at_improvement_ = recursions_; }
    void rearm() { at_improvement_ = recursions_; }

    std::uint64_t recursions() const { return recursions_; }
    std::uint64_t recursions_at_improvement() const { return at_improvement_; }
    const DeadEndPolicy& policy() const { return policy_; }

private:
    DeadEndPolicy policy_;
    std::uint64_t recursions_ = 0;
    std::uint64_t at_improvement_ = 0;
};

enum class DeadEndVerdict { keep_going, suspect };

DeadEndVerdict deadend_check(const DeadEndMonitor& monitor);

// ---------------------------------------------------------------- bound jump

enum class JumpMode { plus_one, doubling };

// Goal-probing around a known achievable size: raise the target by the jump
// rule until a probe fails, then binary-search the bracket. Exact on
// completion; timeout returns the best witness found.
SolveResult bound_jump_search(const Graph& g, const Graph& h, int current_best, JumpMode mode,
                              const SolveConfig& config = {});

// ------------------------------------------------------------------ restarts

// Position of a search-tree node: the (depth, iteration) pairs along its
// path from the root, ordered lexicographically.
using PositionKey = std::vector<std::pair<int, int>>;

// Half-open lexicographic intervals of position keys marking explored
// recursion ranges.
struct VisitedRanges {
    std::vector<std::pair<PositionKey, PositionKey>> runs;

    void add(PositionKey lo, PositionKey hi);
    // Sorts and merges touching runs; returns false if any two overlap.
    bool normalize();
    bool covers(const PositionKey& key) const;  // call after normalize()
    std::size_t size() const { return runs.size(); }
};

struct RestartConfig {
    std::uint64_t seed = 1;
    // Restart when recursions-since-improvement >= multiplier *
    // max(1, recursions-at-improvement); <= 0 disables restarts.
    double multiplier = 2.0;
    double budget_seconds = 1e9;
    OrderingStrategy order = OrderingStrategy::none;
    const std::atomic<bool>* cancel = nullptr;
    bool disable_pruning = false;
    NodeVisitor* visitor = nullptr;
    SharedBound* shared_bound = nullptr;
    VisitedRanges* ranges_out = nullptr;  // instrumentation sink
};

// Complete randomized-restart search: on a restart the current path is frozen
// into resumable segments and the next segment is drawn uniformly (seeded);
// the search ends only when every segment has been executed.
SolveResult solve_with_restarts(const Graph& g, const Graph& h, const RestartConfig& config);

}  // namespace mcs

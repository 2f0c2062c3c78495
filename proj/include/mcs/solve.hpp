#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "mcs/graph.hpp"
#include "mcs/label_classes.hpp"

namespace mcs {

struct VtxPair {
    int v = 0;  // vertex of G
    int u = 0;  // vertex of H
    bool operator==(const VtxPair&) const = default;
};

using Mapping = std::vector<VtxPair>;

enum class SolveStatus { optimal, timeout, cancelled };

const char* to_string(SolveStatus s);

struct SearchStats {
    std::uint64_t recursions = 0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;

    // goal-directed / bound-jump
    std::uint64_t probes = 0;

    // parallel
    std::vector<std::uint64_t> per_worker_recursions;
    double idle_seconds = 0.0;
    std::uint64_t tasks_published = 0;
    std::uint64_t iterations_total = 0;
    std::uint64_t iterations_executed = 0;
    std::uint64_t iterations_pruned = 0;
    std::uint64_t iteration_double_executions = 0;

    // iterative
    std::uint64_t restore_checks = 0;
    std::uint64_t restore_violations = 0;
    std::size_t peak_frames = 0;
    std::size_t peak_frame_bytes = 0;

    // restarts
    std::uint64_t restarts = 0;
    std::size_t visited_ranges = 0;

    std::uint64_t deadend_suspects = 0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::optimal;
    Mapping best;
    int size = 0;
    SearchStats stats;

    // Deterministic serialization for reproducibility checks; excludes
    // wall-clock and other timing-derived fields.
    std::string canonical_bytes() const;
};

// Monotone size broadcast for opt-in cross-engine incumbent sharing. Sizes
// only: engines may solve permuted copies, so mappings do not transfer.
class SharedBound {
public:
    long long get() const { return size_.load(std::memory_order_acquire); }
    void bump(long long size) {
        long long cur = size_.load(std::memory_order_relaxed);
        while (size > cur && !size_.compare_exchange_weak(cur, size, std::memory_order_release)) {
        }
    }

private:
    std::atomic<long long> size_{0};
};

// Incumbent shared between workers of one parallel solve. The size is
// readable without the lock and never decreases; the mapping is only touched
// under the lock, together with the size.
class SharedIncumbent {
public:
    long long size() const { return size_.load(std::memory_order_acquire); }
    // Returns true if m was strictly larger and became the stored mapping.
    bool offer(const Mapping& m);
    Mapping mapping() const;

    struct Event {
        long long size;
        double at_seconds;  // since construction
    };
    std::vector<Event> events() const;

private:
    mutable std::mutex mu_;
    std::atomic<long long> size_{0};
    Mapping best_;
    std::vector<Event> events_;
    std::chrono::steady_clock::time_point born_ = std::chrono::steady_clock::now();
};

// Test/instrumentation hook. enter() fires once per search node, after the
// node's bound is computed; exit() fires when the node's subtree is done.
// The parallel engine emits enter() only and may do so from several threads.
struct NodeVisitor {
    virtual ~NodeVisitor() = default;
    virtual void enter(const Mapping& current, long long bound) = 0;
    virtual void exit() {}
};

enum class OrderingStrategy { none, degree_desc, components_then_degree, block_triangular };

struct SolveConfig {
    double budget_seconds = 1e9;  // <= 0 means an immediate timeout
    OrderingStrategy order = OrderingStrategy::none;
    const std::atomic<bool>* cancel = nullptr;
    bool disable_pruning = false;  // instrumentation: exhaustive enumeration
    NodeVisitor* visitor = nullptr;
    SharedBound* shared_bound = nullptr;  // portfolio opt-in
};

// Sequential branch-and-bound. status == optimal guarantees the exact MCS size.
SolveResult solve(const Graph& g, const Graph& h, const SolveConfig& config = {});

// Top-down variant: probes goal sizes |V_G|, |V_G|-1, ... pruning any branch
// whose bound falls below the goal; the first reachable goal is optimal.
SolveResult solve_goal_directed(const Graph& g, const Graph& h, const SolveConfig& config = {});

namespace detail {

enum class StopKind { none, timeout, cancelled };

struct ProbeResult {
    bool reached = false;
    Mapping witness;  // size >= goal when reached; best found otherwise
    std::uint64_t nodes = 0;
    StopKind stop = StopKind::none;
};

// One goal-directed probe: search with branches below `goal` pruned, stopping
// at the first mapping of size >= goal.
ProbeResult probe_goal(const Graph& g, const Graph& h, long long goal,
                       std::chrono::steady_clock::time_point deadline,
                       const std::atomic<bool>* cancel);

}  // namespace detail

}  // namespace mcs

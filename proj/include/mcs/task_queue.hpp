#pragma once

#include <atomic>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "mcs/heuristics.hpp"
#include "mcs/label_classes.hpp"
#include "mcs/solve.hpp"

namespace mcs {

inline PositionKey extend_key(const PositionKey& pos, int iter) {
    PositionKey out = pos;
    out.emplace_back(static_cast<int>(pos.size()), iter);
    return out;
}

// A frozen branch deliverable to any worker: the node's entry state plus the
// publisher-computed branch plan. Iterations 0..u_candidates-1 pair the
// selected vertex with each candidate; the final iteration leaves it
// unmatched. Execution fields are guarded by the owning queue's mutex.
struct SearchTask {
    std::vector<int> left, right;
    std::vector<LabelClass> domains;
    Mapping mapping;
    int part_depth = 0;  // |mapping| at this node; drives delegation
    PositionKey position;

    int class_idx = -1;
    int v = -1;
    std::vector<int> u_candidates;  // ascending vertex ids

    int n_iterations() const { return static_cast<int>(u_candidates.size()) + 1; }

    enum class State { pending, taken, done };
    State state = State::pending;
    int next_iteration = 0;
    int completed = 0;
    int claims = 0;
    std::vector<char> executed;  // once-only audit per iteration
    std::uint32_t publisher = 0;
    bool entry_done = false;
};

// Position-ordered shared queue. Workers block in acquire() until a task
// offers unclaimed iterations; done tasks are skipped and removed only by the
// worker that published them.
class TaskQueue {
public:
    struct Totals {
        std::uint64_t tasks_published = 0;
        std::uint64_t iterations_total = 0;
        std::uint64_t iterations_executed = 0;
        std::uint64_t iterations_pruned = 0;
        std::uint64_t double_executions = 0;  // audit: must stay zero
    };

    void publish(const std::shared_ptr<SearchTask>& task, std::uint32_t publisher);

    // Earliest task (by position key) still offering unclaimed iterations;
    // `first_entry` reports whether the caller must run the node's entry
    // bookkeeping. Returns nullptr on shutdown or when all published work is
    // complete. Wait time accumulates into *idle_seconds when given.
    std::shared_ptr<SearchTask> acquire(std::uint32_t worker, bool* first_entry,
                                        double* idle_seconds = nullptr);

    // Hands out each iteration index exactly once across all claimants.
    std::optional<int> claim(SearchTask& task);
    void complete(SearchTask& task, int iteration);
    // Claims and completes every unclaimed iteration without executing it.
    int prune_rest(SearchTask& task);

    void shutdown();
    bool shut_down() const;
    Totals totals() const;

    // Tasks still offering unclaimed iterations; lock-free approximation used
    // by publishers to keep the queue fed without flooding it.
    int claimable() const { return claimable_.load(std::memory_order_relaxed); }

private:
    void finish_if_done(SearchTask& task);  // callers hold mu_

    mutable std::mutex mu_;
    std::condition_variable cv_;
    std::map<PositionKey, std::shared_ptr<SearchTask>> queue_;
    int incomplete_ = 0;
    bool ever_published_ = false;
    bool shutdown_ = false;
    Totals totals_;
    std::atomic<int> claimable_{0};
};

}  // namespace mcs

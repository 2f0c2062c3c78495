#include "mcs/task_queue.hpp"

#include <chrono>

namespace mcs {

void TaskQueue::publish(const std::shared_ptr<SearchTask>& task, std::uint32_t publisher) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        task->publisher = publisher;
        task->executed.assign(static_cast<std::size_t>(task->n_iterations()), 0);
        queue_[task->position] = task;
        ever_published_ = true;
        ++incomplete_;
        claimable_.fetch_add(1, std::memory_order_relaxed);
        ++totals_.tasks_published;
        totals_.iterations_total += static_cast<std::uint64_t>(task->n_iterations());
    }
    cv_.notify_all();
}

std::shared_ptr<SearchTask> TaskQueue::acquire(std::uint32_t worker, bool* first_entry,
                                               double* idle_seconds) {
    auto wait_start = std::chrono::steady_clock::now();
    std::unique_lock<std::mutex> lock(mu_);
    for (;;) {
        // A fresh queue blocks for its first publish; afterwards a drained
        // queue means the whole search is complete.
        if (shutdown_ || (ever_published_ && incomplete_ == 0)) break;
        for (auto it = queue_.begin(); it != queue_.end();) {
            SearchTask& t = *it->second;
            if (t.state == SearchTask::State::done) {
                // Only the publisher removes its own finished tasks.
                if (t.publisher == worker) it = queue_.erase(it);
                else ++it;
                continue;
            }
            if (t.next_iteration < t.n_iterations()) {
                if (first_entry) {
                    *first_entry = !t.entry_done;
                    t.entry_done = true;
                }
                if (idle_seconds)
                    *idle_seconds += std::chrono::duration<double>(
                                         std::chrono::steady_clock::now() - wait_start)
                                         .count();
                return it->second;
            }
            ++it;  // fully claimed but still executing elsewhere
        }
        cv_.wait(lock);
    }
    if (idle_seconds)
        *idle_seconds +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wait_start).count();
    return nullptr;
}

std::optional<int> TaskQueue::claim(SearchTask& task) {
    std::lock_guard<std::mutex> lock(mu_);
    if (shutdown_) return std::nullopt;
    if (task.state == SearchTask::State::done || task.next_iteration >= task.n_iterations())
        return std::nullopt;
    int idx = task.next_iteration++;
    ++task.claims;
    if (task.next_iteration == task.n_iterations())
        claimable_.fetch_sub(1, std::memory_order_relaxed);
    if (task.state == SearchTask::State::pending) task.state = SearchTask::State::taken;
    return idx;
}

void TaskQueue::complete(SearchTask& task, int iteration) {
    bool all_done = false;
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (!task.executed[static_cast<std::size_t>(iteration)]) {
            task.executed[static_cast<std::size_t>(iteration)] = 1;
            ++totals_.iterations_executed;
        } else {
            ++totals_.double_executions;
        }
        ++task.completed;
        finish_if_done(task);
        all_done = incomplete_ == 0;
    }
    // Completion can unblock waiters either with fresh claims (a publisher ran
    // inside this iteration) or with the all-done signal.
    if (all_done) cv_.notify_all();
}

int TaskQueue::prune_rest(SearchTask& task) {
    bool all_done = false;
    int skipped = 0;
    {
        std::lock_guard<std::mutex> lock(mu_);
        skipped = task.n_iterations() - task.next_iteration;
        if (skipped > 0) {
            task.next_iteration = task.n_iterations();
            claimable_.fetch_sub(1, std::memory_order_relaxed);
            task.completed += skipped;
            totals_.iterations_pruned += static_cast<std::uint64_t>(skipped);
            finish_if_done(task);
            all_done = incomplete_ == 0;
        }
    }
    if (all_done) cv_.notify_all();
    return skipped;
}

void TaskQueue::finish_if_done(SearchTask& task) {
    if (task.state != SearchTask::State::done && task.completed == task.n_iterations()) {
        task.state = SearchTask::State::done;
        --incomplete_;
    }
}

void TaskQueue::shutdown() {
    {
        std::lock_guard<std::mutex> lock(mu_);
        shutdown_ = true;
    }
    cv_.notify_all();
}

bool TaskQueue::shut_down() const {
    std::lock_guard<std::mutex> lock(mu_);
    return shutdown_;
}

TaskQueue::Totals TaskQueue::totals() const {
    std::lock_guard<std::mutex> lock(mu_);
    return totals_;
}

}  // namespace mcs

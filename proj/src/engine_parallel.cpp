#include "mcs/engine_parallel.hpp"

#include <thread>

#include "mcs/task_queue.hpp"
#include "search_core.hpp"

namespace mcs {

namespace {

using detail::Clock;

class ParallelRun {
public:
    ParallelRun(const Graph& g, const Graph& h, const ParallelConfig& cfg)
        : g_(g), h_(h), cfg_(cfg), deg_g_(detail::degree_table(g)) {
        deadline_ = detail::budget_deadline(cfg.base.budget_seconds);
        prune_ = !cfg.base.disable_pruning;
        workers_ = cfg.workers > 0 ? cfg.workers
                                   : std::max(1u, std::thread::hardware_concurrency());
    }

    SolveResult run() {
        auto t0 = Clock::now();
        worker_nodes_.assign(static_cast<std::size_t>(workers_), 0);
        worker_idle_.assign(static_cast<std::size_t>(workers_), 0.0);

        // Bootstrap: the root node always starts as a shared task.
        ClassState st = initial_classes(g_, h_);
        if (!try_publish(st.classes, st.left, st.right, Mapping{}, PositionKey{}, 0))
            note_offer(Mapping{});  // leaf root: empty graphs

        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers_));
        for (int w = 0; w < workers_; ++w)
            pool.emplace_back([this, w] { worker_loop(static_cast<std::uint32_t>(w)); });
        for (auto& t : pool) t.join();

        SolveResult r;
        r.best = incumbent_.mapping();
        r.size = static_cast<int>(r.best.size());
        if (stop_.load() == 1) r.status = SolveStatus::timeout;
        else if (stop_.load() == 2) r.status = SolveStatus::cancelled;
        else r.status = SolveStatus::optimal;
        auto totals = queue_.totals();
        r.stats.tasks_published = totals.tasks_published;
        r.stats.iterations_total = totals.iterations_total;
        r.stats.iterations_executed = totals.iterations_executed;
        r.stats.iterations_pruned = totals.iterations_pruned;
        r.stats.iteration_double_executions = totals.double_executions;
        for (int w = 0; w < workers_; ++w) {
            r.stats.per_worker_recursions.push_back(worker_nodes_[w]);
            r.stats.recursions += worker_nodes_[w];
            r.stats.idle_seconds += worker_idle_[w];
        }
        r.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return r;
    }

private:
    // 0 = running, 1 = timeout, 2 = cancelled.
    void request_stop(int reason) {
        int expected = 0;
        if (stop_.compare_exchange_strong(expected, reason)) queue_.shutdown();
    }

    void poll_stop() {
        if (cfg_.base.cancel && cfg_.base.cancel->load(std::memory_order_relaxed))
            request_stop(2);
        else if (Clock::now() >= deadline_)
            request_stop(1);
    }

    long long incumbent_floor() const {
        long long s = incumbent_.size();
        return cfg_.base.shared_bound ? std::max(s, cfg_.base.shared_bound->get()) : s;
    }

    void note_offer(const Mapping& m) {
        if (incumbent_.offer(m) && cfg_.base.shared_bound)
            cfg_.base.shared_bound->bump(static_cast<long long>(m.size()));
    }

    // Freezes a node into a queue task. Declines leaves (no branchable class).
    bool try_publish(const std::vector<LabelClass>& domains, const std::vector<int>& left,
                     const std::vector<int>& right, const Mapping& mapping,
                     const PositionKey& position, std::uint32_t wid) {
        int class_idx = select_label_class(domains, left);
        if (class_idx == -1) return false;
        auto task = std::make_shared<SearchTask>();
        task->v = select_vertex(domains[class_idx], left, deg_g_);
        task->class_idx = class_idx;
        const LabelClass& bd = domains[class_idx];
        for (int j = 0; j < bd.right_len; ++j)
            task->u_candidates.push_back(right[bd.right_start + j]);
        std::sort(task->u_candidates.begin(), task->u_candidates.end());
        task->left = left;
        task->right = right;
        task->domains = domains;
        task->mapping = mapping;
        task->part_depth = static_cast<int>(mapping.size());
        task->position = position;
        queue_.publish(task, wid);
        return true;
    }

    struct WorkerDelegator : detail::Delegator {
        ParallelRun* run;
        std::uint32_t wid;
        bool starving() const override { return run->queue_.claimable() < run->workers_; }
        bool delegate(const std::vector<LabelClass>& domains, const std::vector<int>& left,
                      const std::vector<int>& right, const Mapping& mapping,
                      const PositionKey& position) override {
            return run->try_publish(domains, left, right, mapping, position, wid);
        }
    };

    void worker_loop(std::uint32_t wid) {
        WorkerDelegator delegator;
        delegator.run = this;
        delegator.wid = wid;
        detail::SearchCtx ctx(g_, h_);
        ctx.deadline = deadline_;
        ctx.cancel = cfg_.base.cancel;
        ctx.prune = prune_;
        ctx.visitor = cfg_.base.visitor;
        ctx.delegator = &delegator;
        ctx.part_level = cfg_.part_level;
        detail::SharedIncumbentRef inc{&incumbent_, cfg_.base.shared_bound};

        for (;;) {
            bool first_entry = false;
            auto task = queue_.acquire(wid, &first_entry, &worker_idle_[wid]);
            if (!task) break;
            poll_stop();
            if (stop_.load() != 0) break;

            if (first_entry) {
                ++ctx.nodes;
                note_offer(task->mapping);
                if (cfg_.base.visitor) {
                    long long bound = compute_bound(
                        static_cast<long long>(task->mapping.size()), task->domains);
                    cfg_.base.visitor->enter(task->mapping, bound);
                }
            }
            if (prune_) {
                long long bound =
                    compute_bound(static_cast<long long>(task->mapping.size()), task->domains);
                if (bound <= incumbent_floor()) {
                    queue_.prune_rest(*task);
                    continue;
                }
            }
            while (auto idx = queue_.claim(*task)) {
                execute_iteration(ctx, inc, *task, *idx);
                queue_.complete(*task, *idx);
                poll_stop();
                if (stop_.load() != 0) break;
            }
            if (stop_.load() != 0) break;
        }
        worker_nodes_[wid] += ctx.nodes;
        if (ctx.reason == detail::StopReason::timeout) request_stop(1);
        if (ctx.reason == detail::StopReason::cancelled) request_stop(2);
    }

    // One claimed iteration: rebuild the branch child from the frozen task
    // state and search it, delegating shallow descendants when helpers starve.
    void execute_iteration(detail::SearchCtx& ctx, detail::SharedIncumbentRef& inc,
                           const SearchTask& task, int iteration) {
        std::vector<int> left = task.left;
        std::vector<int> right = task.right;
        std::vector<LabelClass> domains = task.domains;
        Mapping mapping = task.mapping;

        LabelClass& bd = domains[task.class_idx];
        for (int j = 0; j < bd.left_len; ++j)
            if (left[bd.left_start + j] == task.v) {
                std::swap(left[bd.left_start + j], left[bd.left_start + bd.left_len - 1]);
                break;
            }
        bd.left_len--;

        if (iteration < static_cast<int>(task.u_candidates.size())) {
            int u = task.u_candidates[iteration];
            for (int j = 0; j < bd.right_len; ++j)
                if (right[bd.right_start + j] == u) {
                    std::swap(right[bd.right_start + j], right[bd.right_start + bd.right_len - 1]);
                    break;
                }
            bd.right_len--;
            domains = filter_classes(domains, left, right, g_, h_, task.v, u);
            mapping.push_back({task.v, u});
        } else if (bd.left_len == 0) {
            // The selected vertex stays unmatched and empties its class.
            domains[task.class_idx] = domains.back();
            domains.pop_back();
        }

        ctx.path = extend_key(task.position, iteration);
        if (ctx.reason == detail::StopReason::max_reached)
            ctx.reason = detail::StopReason::none;  // proven-max is not sticky
        detail::search_node(ctx, inc, mapping, std::move(domains), left, right);
    }

    const Graph& g_;
    const Graph& h_;
    ParallelConfig cfg_;
    std::vector<int> deg_g_;
    Clock::time_point deadline_;
    bool prune_ = true;
    int workers_ = 1;

    TaskQueue queue_;
    SharedIncumbent incumbent_;
    std::atomic<int> stop_{0};
    std::vector<std::uint64_t> worker_nodes_;
    std::vector<double> worker_idle_;
};

}  // namespace

SolveResult solve_parallel(const Graph& g, const Graph& h, const ParallelConfig& config) {
    if (g.kind() != h.kind()) throw GraphError("solve: graphs must share a kind");
    if (config.workers < 0 || config.part_level < 0)
        throw GraphError("solve_parallel: workers and part_level must be non-negative");
    if (config.base.budget_seconds <= 0) {
        SolveResult r;
        r.status = SolveStatus::timeout;
        return r;
    }
    return detail::with_ordering(g, h, config.base.order, [&](const Graph& g2, const Graph& h2) {
        return ParallelRun(g2, h2, config).run();
    });
}

}  // namespace mcs

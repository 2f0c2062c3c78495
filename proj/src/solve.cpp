#include "mcs/solve.hpp"

#include <sstream>

#include "mcs/heuristics.hpp"
#include "search_core.hpp"

namespace mcs {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::timeout: return "timeout";
        case SolveStatus::cancelled: return "cancelled";
    }
    return "?";
}

bool SharedIncumbent::offer(const Mapping& m) {
    long long sz = static_cast<long long>(m.size());
    if (sz <= size_.load(std::memory_order_acquire)) return false;
    std::lock_guard<std::mutex> lock(mu_);
    if (sz <= size_.load(std::memory_order_relaxed)) return false;
    best_ = m;
    events_.push_back({sz, std::chrono::duration<double>(std::chrono::steady_clock::now() - born_).count()});
    size_.store(sz, std::memory_order_release);
    return true;
}

Mapping SharedIncumbent::mapping() const {
    std::lock_guard<std::mutex> lock(mu_);
    return best_;
}

std::vector<SharedIncumbent::Event> SharedIncumbent::events() const {
    std::lock_guard<std::mutex> lock(mu_);
    return events_;
}

std::string SolveResult::canonical_bytes() const {
    std::ostringstream out;
    out << to_string(status) << '|' << size << '|';
    for (const VtxPair& p : best) out << p.v << "->" << p.u << ',';
    out << '|' << stats.recursions << '|' << stats.seed << '|' << stats.probes << '|'
        << stats.restarts << '|' << stats.visited_ranges << '|' << stats.restore_checks;
    return out.str();
}

namespace detail {

Clock::time_point budget_deadline(double budget_seconds) {
    if (budget_seconds >= 1e8) return Clock::time_point::max();
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(budget_seconds));
}

ProbeResult probe_goal(const Graph& g, const Graph& h, long long goal,
                       Clock::time_point deadline, const std::atomic<bool>* cancel) {
    SearchCtx ctx(g, h);
    ctx.deadline = deadline;
    ctx.cancel = cancel;
    ctx.goal = goal;
    LocalIncumbent inc;
    Mapping current;
    ClassState st = initial_classes(g, h);
    search_node(ctx, inc, current, std::move(st.classes), st.left, st.right);

    ProbeResult pr;
    pr.nodes = ctx.nodes;
    pr.witness = inc.best;
    pr.reached = ctx.reason == StopReason::goal_reached;
    if (ctx.reason == StopReason::timeout) pr.stop = StopKind::timeout;
    if (ctx.reason == StopReason::cancelled) pr.stop = StopKind::cancelled;
    return pr;
}

}  // namespace detail

static SolveResult timed_out_result() {
    SolveResult r;
    r.status = SolveStatus::timeout;
    return r;
}

SolveResult solve(const Graph& g, const Graph& h, const SolveConfig& config) {
    bool unused = false;
    return solve_monitored(g, h, config, nullptr, false, unused);
}

// Shared implementation for solve() and the dead-end-monitored variant used
// by the bound-jump composition.
SolveResult solve_monitored(const Graph& g, const Graph& h, const SolveConfig& config,
                            DeadEndMonitor* monitor, bool stop_on_suspect, bool& suspect_out) {
    if (g.kind() != h.kind()) throw GraphError("solve: graphs must share a kind");
    if (config.budget_seconds <= 0) return timed_out_result();
    return detail::with_ordering(g, h, config.order, [&](const Graph& g2, const Graph& h2) {
        auto t0 = detail::Clock::now();
        detail::SearchCtx ctx(g2, h2);
        ctx.deadline = detail::budget_deadline(config.budget_seconds);
        ctx.cancel = config.cancel;
        ctx.prune = !config.disable_pruning;
        ctx.visitor = config.visitor;
        ctx.monitor = monitor;
        ctx.stop_on_suspect = stop_on_suspect;

        detail::LocalIncumbent inc;
        inc.ext = config.shared_bound;
        Mapping current;
        ClassState st = initial_classes(g2, h2);
        detail::search_node(ctx, inc, current, std::move(st.classes), st.left, st.right);

        SolveResult r;
        r.best = inc.best;
        r.size = static_cast<int>(inc.best.size());
        r.stats.recursions = ctx.nodes;
        r.stats.deadend_suspects = ctx.suspects;
        r.stats.wall_seconds = std::chrono::duration<double>(detail::Clock::now() - t0).count();
        switch (ctx.reason) {
            case detail::StopReason::timeout: r.status = SolveStatus::timeout; break;
            case detail::StopReason::cancelled: r.status = SolveStatus::cancelled; break;
            case detail::StopReason::suspect:
                suspect_out = true;
                r.status = SolveStatus::timeout;  // caller resumes via bound jump
                break;
            default: r.status = SolveStatus::optimal; break;
        }
        return r;
    });
}

SolveResult solve_goal_directed(const Graph& g, const Graph& h, const SolveConfig& config) {
    if (g.kind() != h.kind()) throw GraphError("solve: graphs must share a kind");
    if (config.budget_seconds <= 0) return timed_out_result();
    // The goal schedule runs over the smaller graph.
    if (g.n() > h.n()) {
        SolveConfig cfg = config;
        SolveResult r = solve_goal_directed(h, g, cfg);
        for (VtxPair& p : r.best) std::swap(p.v, p.u);
        return r;
    }
    return detail::with_ordering(g, h, config.order, [&](const Graph& g2, const Graph& h2) {
        auto t0 = detail::Clock::now();
        auto deadline = detail::budget_deadline(config.budget_seconds);
        SolveResult r;
        Mapping best;
        for (long long goal = g2.n(); goal >= 1; --goal) {
            auto probe = detail::probe_goal(g2, h2, goal, deadline, config.cancel);
            ++r.stats.probes;
            r.stats.recursions += probe.nodes;
            if (probe.witness.size() > best.size()) best = probe.witness;
            if (probe.stop != detail::StopKind::none) {
                r.status = probe.stop == detail::StopKind::timeout ? SolveStatus::timeout
                                                                   : SolveStatus::cancelled;
                break;
            }
            if (probe.reached) {
                r.status = SolveStatus::optimal;
                break;
            }
            if (goal == 1) r.status = SolveStatus::optimal;  // MCS is empty
        }
        if (g2.n() == 0) r.status = SolveStatus::optimal;
        r.best = best;
        r.size = static_cast<int>(best.size());
        r.stats.wall_seconds = std::chrono::duration<double>(detail::Clock::now() - t0).count();
        return r;
    });
}

}  // namespace mcs

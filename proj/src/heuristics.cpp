#include "mcs/heuristics.hpp"

#include <algorithm>
#include <numeric>

#include "search_core.hpp"

namespace mcs {

namespace {

// Positions-in-sorted-order turned into a forward (old -> new) permutation.
Permutation permutation_from_order(const std::vector<int>& order) {
    std::vector<int> fwd(order.size());
    for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) fwd[order[pos]] = pos;
    return Permutation(std::move(fwd));
}

std::vector<int> degree_sorted(const Graph& g, const std::vector<int>& members) {
    std::vector<int> order = members;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        return da != db ? da > db : a < b;
    });
    return order;
}

}  // namespace

Permutation order_by_degree(const Graph& g) {
    std::vector<int> all(g.n());
    std::iota(all.begin(), all.end(), 0);
    return permutation_from_order(degree_sorted(g, all));
}

Permutation order_by_components(const Graph& g) {
    auto comps = connected_components(g);
    // Larger components first; components are already keyed by smallest member.
    std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() > b.size() : a[0] < b[0];
    });
    std::vector<int> order;
    order.reserve(g.n());
    for (const auto& comp : comps)
        for (int v : degree_sorted(g, comp)) order.push_back(v);
    return permutation_from_order(order);
}

Permutation order_block_triangular(const Graph& g) {
    const int n = g.n();
    std::vector<char> col_active(n, 0), row_active(n, 0);
    for (int v = 0; v < n; ++v)
        if (g.degree(v) > 0) col_active[v] = row_active[v] = 1;

    std::vector<int> order;
    order.reserve(n);
    while (true) {
        // Row lengths restricted to the active columns; zero rows retire.
        int min_len = -1;
        std::vector<int> row_len(n, 0);
        for (int r = 0; r < n; ++r) {
            if (!row_active[r]) continue;
            for (int ccol = 0; ccol < n; ++ccol)
                if (col_active[ccol] && g.code(r, ccol) != 0) ++row_len[r];
            if (row_len[r] == 0) {
                row_active[r] = 0;
                continue;
            }
            if (min_len == -1 || row_len[r] < min_len) min_len = row_len[r];
        }
        if (min_len == -1) break;  // active submatrix vanished

        int best_col = -1, best_hits = -1;
        for (int ccol = 0; ccol < n; ++ccol) {
            if (!col_active[ccol]) continue;
            int hits = 0;
            for (int r = 0; r < n; ++r)
                if (row_active[r] && row_len[r] == min_len && g.code(r, ccol) != 0) ++hits;
            if (hits > best_hits) {
                best_hits = hits;
                best_col = ccol;
            }
        }
        order.push_back(best_col);
        col_active[best_col] = 0;
    }
    // Never-selected columns (isolated vertices, leftovers) trail in id order.
    for (int v = 0; v < n; ++v)
        if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    return permutation_from_order(order);
}

Permutation make_ordering(const Graph& g, OrderingStrategy strategy) {
    switch (strategy) {
        case OrderingStrategy::none: return Permutation::identity(g.n());
        case OrderingStrategy::degree_desc: return order_by_degree(g);
        case OrderingStrategy::components_then_degree: return order_by_components(g);
        case OrderingStrategy::block_triangular: return order_block_triangular(g);
    }
    throw GraphError("unknown ordering strategy");
}

DeadEndVerdict deadend_check(const DeadEndMonitor& monitor) {
    std::uint64_t delta = monitor.recursions() - monitor.recursions_at_improvement();
    const DeadEndPolicy& p = monitor.policy();
    if (p.kind == DeadEndPolicy::Kind::absolute)
        return delta >= p.threshold ? DeadEndVerdict::suspect : DeadEndVerdict::keep_going;
    double floor_ = p.multiplier * static_cast<double>(std::max<std::uint64_t>(
                                       1, monitor.recursions_at_improvement()));
    return static_cast<double>(delta) >= floor_ ? DeadEndVerdict::suspect
                                                : DeadEndVerdict::keep_going;
}

SolveResult bound_jump_search(const Graph& g, const Graph& h, int current_best, JumpMode mode,
                              const SolveConfig& config) {
    if (g.kind() != h.kind()) throw GraphError("solve: graphs must share a kind");
    SolveResult timeout_r;
    timeout_r.status = SolveStatus::timeout;
    if (config.budget_seconds <= 0) return timeout_r;

    return detail::with_ordering(g, h, config.order, [&](const Graph& g2, const Graph& h2) {
        auto t0 = detail::Clock::now();
        auto deadline = detail::budget_deadline(config.budget_seconds);
        const long long max_possible = std::min(g2.n(), h2.n());

        SolveResult r;
        Mapping witness;
        long long lower = current_best;  // known achievable
        long long upper = max_possible;  // inclusive

        auto run_probe = [&](long long goal) -> std::optional<bool> {
            auto probe = detail::probe_goal(g2, h2, goal, deadline, config.cancel);
            ++r.stats.probes;
            r.stats.recursions += probe.nodes;
            if (probe.witness.size() > witness.size()) witness = probe.witness;
            if (probe.stop == detail::StopKind::timeout) {
                r.status = SolveStatus::timeout;
                return std::nullopt;
            }
            if (probe.stop == detail::StopKind::cancelled) {
                r.status = SolveStatus::cancelled;
                return std::nullopt;
            }
            return probe.reached;
        };

        r.status = SolveStatus::optimal;
        // Bracket invariant, enforced after every probe: the lower bound only
        // grows, the upper bound only shrinks, and they never cross.
        auto settle = [&](long long target, bool reached) {
            long long lo = lower, up = upper;
            if (reached) lower = target;
            else upper = target - 1;
            if (lower < lo || upper > up || lower > upper)
                throw GraphError("bound jump bracket violated");
        };
        // Jump phase: raise the target until a probe fails or the ceiling is hit.
        while (lower < upper) {
            long long target = mode == JumpMode::plus_one ? lower + 1
                                                          : std::max<long long>(1, lower * 2);
            target = std::min(target, upper);
            auto reached = run_probe(target);
            if (!reached.has_value()) break;
            settle(target, *reached);
        }
        // Bracket phase: binary search the remaining range.
        while (lower < upper && r.status == SolveStatus::optimal) {
            long long mid = lower + (upper - lower + 1) / 2;
            auto reached = run_probe(mid);
            if (!reached.has_value()) break;
            settle(mid, *reached);
        }
        // Recover a witness when every upward probe failed (lower == current_best
        // can be a caller-supplied size with no mapping in hand).
        if (r.status == SolveStatus::optimal &&
            static_cast<long long>(witness.size()) < lower && lower > 0) {
            auto reached = run_probe(lower);
            (void)reached;
        }
        r.best = witness;
        r.size = static_cast<int>(witness.size());
        r.stats.wall_seconds = std::chrono::duration<double>(detail::Clock::now() - t0).count();
        return r;
    });
}

void VisitedRanges::add(PositionKey lo, PositionKey hi) {
    runs.emplace_back(std::move(lo), std::move(hi));
}

bool VisitedRanges::normalize() {
    std::sort(runs.begin(), runs.end());
    bool disjoint = true;
    std::vector<std::pair<PositionKey, PositionKey>> merged;
    for (auto& run : runs) {
        if (!merged.empty() && run.first < merged.back().second) disjoint = false;
        if (!merged.empty() && run.first == merged.back().second)
            merged.back().second = std::move(run.second);
        else
            merged.push_back(std::move(run));
    }
    runs = std::move(merged);
    return disjoint;
}

bool VisitedRanges::covers(const PositionKey& key) const {
    for (const auto& run : runs)
        if (!(key < run.first) && key < run.second) return true;
    return false;
}

}  // namespace mcs

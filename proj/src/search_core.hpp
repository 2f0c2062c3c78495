#pragma once

#include <algorithm>
#include <chrono>

#include "mcs/heuristics.hpp"
#include "mcs/label_classes.hpp"
#include "mcs/solve.hpp"

namespace mcs::detail {

using Clock = std::chrono::steady_clock;

inline std::vector<int> degree_table(const Graph& g) {
    std::vector<int> deg(g.n());
    for (int v = 0; v < g.n(); ++v) deg[v] = g.degree(v);
    return deg;
}

// Incumbent kept by one search, with an optional external size floor.
struct LocalIncumbent {
    Mapping best;
    SharedBound* ext = nullptr;

    long long size() const {
        long long s = static_cast<long long>(best.size());
        return ext ? std::max(s, ext->get()) : s;
    }
    bool offer(const Mapping& m) {
        if (m.size() <= best.size()) return false;
        best = m;
        if (ext) ext->bump(static_cast<long long>(m.size()));
        return true;
    }
    Mapping mapping() const { return best; }
};

// View over the parallel engine's shared incumbent.
struct SharedIncumbentRef {
    SharedIncumbent* inc;
    SharedBound* ext = nullptr;

    long long size() const {
        long long s = inc->size();
        return ext ? std::max(s, ext->get()) : s;
    }
    bool offer(const Mapping& m) {
        bool improved = inc->offer(m);
        if (improved && ext) ext->bump(static_cast<long long>(m.size()));
        return improved;
    }
    Mapping mapping() const { return inc->mapping(); }
};

enum class StopReason { none, timeout, cancelled, goal_reached, max_reached, suspect };

// Work-sharing hook: a node at shallow depth may hand itself off (classes,
// buffers, mapping, position) instead of expanding locally.
struct Delegator {
    virtual ~Delegator() = default;
    virtual bool starving() const = 0;
    // Returns false to decline (e.g. leaf nodes), leaving the node local.
    virtual bool delegate(const std::vector<LabelClass>& domains, const std::vector<int>& left,
                          const std::vector<int>& right, const Mapping& mapping,
                          const PositionKey& position) = 0;
};

Clock::time_point budget_deadline(double budget_seconds);

// Permutes both inputs per the configured ordering, runs fn on the permuted
// pair, and translates the resulting mapping back to original ids.
template <typename Fn>
SolveResult with_ordering(const Graph& g, const Graph& h, OrderingStrategy order, Fn&& fn) {
    if (order == OrderingStrategy::none) return fn(g, h);
    Permutation pg = make_ordering(g, order);
    Permutation ph = make_ordering(h, order);
    SolveResult r = fn(permute(g, pg), permute(h, ph));
    Permutation ig = pg.inverse(), ih = ph.inverse();
    for (VtxPair& p : r.best) p = {ig(p.v), ih(p.u)};
    return r;
}

struct SearchCtx {
    const Graph& g;
    const Graph& h;
    std::vector<int> deg_g;
    Clock::time_point deadline{Clock::time_point::max()};
    const std::atomic<bool>* cancel = nullptr;
    bool prune = true;
    long long goal = 0;  // 0 = off: prune below goal, stop once reached
    long long max_possible = 0;
    NodeVisitor* visitor = nullptr;
    DeadEndMonitor* monitor = nullptr;
    bool stop_on_suspect = false;
    Delegator* delegator = nullptr;
    int part_level = -1;  // nodes with |mapping| <= part_level may delegate
    PositionKey path;

    std::uint64_t nodes = 0;
    std::uint64_t suspects = 0;
    StopReason reason = StopReason::none;

    SearchCtx(const Graph& g_, const Graph& h_)
        : g(g_), h(h_), deg_g(degree_table(g_)),
          max_possible(std::min(g_.n(), h_.n())) {}

    bool stopped() const { return reason != StopReason::none; }

    void poll() {
        if (cancel && cancel->load(std::memory_order_relaxed)) {
            reason = StopReason::cancelled;
            return;
        }
        if ((nodes & 0xffu) == 1 && Clock::now() >= deadline) reason = StopReason::timeout;
    }
};

// The McSplit recursion. `domains` is this node's own copy; `left`/`right`
// are shared buffers whose windows the recursion re-partitions in place.
template <class Inc>
void search_node(SearchCtx& c, Inc& inc, Mapping& current, std::vector<LabelClass> domains,
                 std::vector<int>& left, std::vector<int>& right) {
    if (c.stopped()) return;
    // A shallow node hands itself to starving helpers instead of expanding;
    // its entry bookkeeping then happens wherever it gets picked up.
    if (c.delegator && static_cast<int>(current.size()) <= c.part_level &&
        c.delegator->starving() &&
        c.delegator->delegate(domains, left, right, current, c.path))
        return;
    ++c.nodes;
    c.poll();
    if (c.stopped()) return;

    if (c.monitor) {
        c.monitor->note_recursion();
        if (deadend_check(*c.monitor) == DeadEndVerdict::suspect) {
            ++c.suspects;
            if (c.stop_on_suspect) {
                c.reason = StopReason::suspect;
                return;
            }
        }
    }

    if (inc.offer(current)) {
        if (c.monitor) c.monitor->note_improvement();
        if (c.goal > 0 && static_cast<long long>(current.size()) >= c.goal) {
            c.reason = StopReason::goal_reached;
            return;
        }
        if (c.prune && c.goal == 0 && static_cast<long long>(current.size()) >= c.max_possible) {
            c.reason = StopReason::max_reached;
            return;
        }
    }

    long long bound = compute_bound(static_cast<long long>(current.size()), domains);
    if (c.visitor) c.visitor->enter(current, bound);
    struct ExitGuard {
        NodeVisitor* v;
        ~ExitGuard() {
            if (v) v->exit();
        }
    } guard{c.visitor};

    if (c.prune && bound <= std::max(inc.size(), c.goal - 1)) return;

    int bd_idx = select_label_class(domains, left);
    if (bd_idx == -1) return;
    LabelClass& bd = domains[bd_idx];
    int v = select_vertex(bd, left, c.deg_g);

    for (int j = 0; j < bd.left_len; ++j)
        if (left[bd.left_start + j] == v) {
            std::swap(left[bd.left_start + j], left[bd.left_start + bd.left_len - 1]);
            break;
        }
    bd.left_len--;

    const int total_right = bd.right_len;
    bd.right_len--;
    int last_u = -1;
    for (int it = 0; it < total_right && !c.stopped(); ++it) {
        // Next candidate by ascending id; tried ones stay in the window but
        // are skipped by the value filter.
        int pos = -1;
        for (int j = 0; j < total_right; ++j) {
            int cand = right[bd.right_start + j];
            if (cand > last_u && (pos == -1 || cand < right[bd.right_start + pos])) pos = j;
        }
        int u = right[bd.right_start + pos];
        last_u = u;
        std::swap(right[bd.right_start + pos], right[bd.right_start + total_right - 1]);

        auto child = filter_classes(domains, left, right, c.g, c.h, v, u);
        current.push_back({v, u});
        c.path.emplace_back(static_cast<int>(c.path.size()), it);
        search_node(c, inc, current, std::move(child), left, right);
        c.path.pop_back();
        current.pop_back();
    }
    bd.right_len++;
    if (c.stopped()) return;

    if (bd.left_len == 0) {
        domains[bd_idx] = domains.back();
        domains.pop_back();
    }
    // v left unmatched.
    c.path.emplace_back(static_cast<int>(c.path.size()), total_right);
    search_node(c, inc, current, std::move(domains), left, right);
    c.path.pop_back();
}

}  // namespace mcs::detail

namespace mcs {
// solve() with an optional dead-end monitor wired into the node loop; used by
// the forecast-then-jump composition. suspect_out reports whether the search
// stopped on a suspect verdict.
SolveResult solve_monitored(const Graph& g, const Graph& h, const SolveConfig& config,
                            DeadEndMonitor* monitor, bool stop_on_suspect, bool& suspect_out);
}  // namespace mcs

#include <optional>
#include <random>

#include "mcs/heuristics.hpp"
#include "search_core.hpp"

namespace mcs {

namespace {

using detail::Clock;

PositionKey successor(const PositionKey& pos) {
    if (pos.empty()) return {{0, std::numeric_limits<int>::max()}};
    PositionKey s = pos;
    s.back().second += 1;
    return s;
}

PositionKey extend(const PositionKey& pos, int iter) {
    PositionKey s = pos;
    s.emplace_back(static_cast<int>(pos.size()), iter);
    return s;
}

// A frozen branch: a node's state plus the first iteration still to run.
struct Segment {
    std::vector<int> left, right;
    std::vector<LabelClass> domains;
    Mapping mapping;
    PositionKey pos;
    int from_iter = 0;
};

struct RestartDriver {
    const Graph& g;
    const Graph& h;
    std::vector<int> deg_g;
    Clock::time_point deadline;
    const std::atomic<bool>* cancel = nullptr;
    bool prune = true;
    NodeVisitor* visitor = nullptr;
    double multiplier = 2.0;  // <= 0: restarts off
    long long max_possible = 0;

    detail::LocalIncumbent inc;
    std::uint64_t nodes = 0;
    std::uint64_t restarts = 0;
    std::uint64_t at_improvement = 0;
    bool restart_flag = false;
    detail::StopReason reason = detail::StopReason::none;
    std::vector<Segment> pool;
    VisitedRanges ranges;

    RestartDriver(const Graph& g_, const Graph& h_)
        : g(g_), h(h_), deg_g(detail::degree_table(g_)),
          max_possible(std::min(g_.n(), h_.n())) {}

    bool stopped() const { return reason != detail::StopReason::none; }

    void poll() {
        if (cancel && cancel->load(std::memory_order_relaxed))
            reason = detail::StopReason::cancelled;
        else if ((nodes & 0xffu) == 1 && Clock::now() >= deadline)
            reason = detail::StopReason::timeout;
    }

    bool restart_due() const {
        std::uint64_t delta = nodes - at_improvement;
        return static_cast<double>(delta) >=
               multiplier * static_cast<double>(std::max<std::uint64_t>(1, at_improvement));
    }

    // Runs one node. `domains` is the node's entry state; buffers are shared.
    // On a restart the remaining iterations freeze into pool segments. Range
    // recording: a segment root records its completed span; when a restart
    // unwinds, every node on the path records its completed prefix and the
    // frozen remainders record theirs once resumed. Interior nodes that
    // complete normally are covered by their segment root's span.
    void node(std::vector<LabelClass> domains, std::vector<int>& left, std::vector<int>& right,
              Mapping& current, const PositionKey& pos, int from_iter, bool is_root) {
        if (stopped()) return;
        ++nodes;
        poll();
        if (stopped()) return;

        if (multiplier > 0 && !restart_flag && restart_due()) {
            restart_flag = true;
            ++restarts;
            at_improvement = nodes;  // rearm: spaces restarts geometrically
        }
        if (restart_flag) {  // freeze this whole node; entry bookkeeping reruns on resume
            pool.push_back({left, right, std::move(domains), current, pos, from_iter});
            return;
        }

        if (inc.offer(current)) at_improvement = nodes;
        long long bound = compute_bound(static_cast<long long>(current.size()), domains);
        if (visitor) visitor->enter(current, bound);
        struct ExitGuard {
            NodeVisitor* v;
            ~ExitGuard() {
                if (v) v->exit();
            }
        } guard{visitor};

        const PositionKey lo = from_iter == 0 ? pos : extend(pos, from_iter);
        if (prune && static_cast<long long>(current.size()) >= max_possible) {
            reason = detail::StopReason::max_reached;
            return;
        }
        if (prune && bound <= inc.size()) {
            if (is_root) ranges.add(lo, successor(pos));  // considered and ruled out
            return;
        }

        int bd_idx = select_label_class(domains, left);
        if (bd_idx == -1) {
            if (is_root) ranges.add(lo, successor(pos));
            return;
        }
        // Entry state must survive for freezing; iterations re-derive the
        // branch plan from it deterministically.
        std::vector<LabelClass> entry_domains;
        if (multiplier > 0) entry_domains = domains;

        LabelClass& bd = domains[bd_idx];
        int v = select_vertex(bd, left, deg_g);
        for (int j = 0; j < bd.left_len; ++j)
            if (left[bd.left_start + j] == v) {
                std::swap(left[bd.left_start + j], left[bd.left_start + bd.left_len - 1]);
                break;
            }
        bd.left_len--;
        const int total_right = bd.right_len;
        const int n_iters = total_right + 1;  // candidate pairs plus the unmatched-v branch
        bd.right_len--;

        int last_u = -1;
        for (int skip = 0; skip < std::min(from_iter, total_right); ++skip) {
            int next = -1;
            for (int j = 0; j < total_right; ++j) {
                int cand = right[bd.right_start + j];
                if (cand > last_u && (next == -1 || cand < next)) next = cand;
            }
            last_u = next;
        }

        for (int it = from_iter; it < n_iters; ++it) {
            if (it < total_right) {
                int pos_j = -1;
                for (int j = 0; j < total_right; ++j) {
                    int cand = right[bd.right_start + j];
                    if (cand > last_u && (pos_j == -1 || cand < right[bd.right_start + pos_j]))
                        pos_j = j;
                }
                int u = right[bd.right_start + pos_j];
                last_u = u;
                std::swap(right[bd.right_start + pos_j], right[bd.right_start + total_right - 1]);

                auto child = filter_classes(domains, left, right, g, h, v, u);
                current.push_back({v, u});
                node(std::move(child), left, right, current, extend(pos, it), 0, false);
                current.pop_back();
            } else {
                // v left unmatched: same depth, v excluded.
                bd.right_len++;
                auto rest = domains;
                if (rest[bd_idx].left_len == 0) {
                    rest[bd_idx] = rest.back();
                    rest.pop_back();
                }
                node(std::move(rest), left, right, current, extend(pos, it), 0, false);
                bd.right_len--;
            }
            if (restart_flag || stopped()) {
                if (restart_flag) {
                    // The remainder is pushed even when no iterations are left:
                    // its resume emits the node's span-closure record, which
                    // keeps the visited ranges tiling seamlessly.
                    pool.push_back({left, right, std::move(entry_domains), current, pos, it + 1});
                    ranges.add(lo, extend(pos, it));  // completed prefix only
                }
                bd.right_len++;
                return;
            }
        }
        bd.right_len++;
        if (is_root) ranges.add(lo, successor(pos));
    }
};

}  // namespace

SolveResult solve_with_restarts(const Graph& g, const Graph& h, const RestartConfig& config) {
    if (g.kind() != h.kind()) throw GraphError("solve: graphs must share a kind");
    if (config.budget_seconds <= 0) {
        SolveResult r;
        r.status = SolveStatus::timeout;
        r.stats.seed = config.seed;
        return r;
    }
    return detail::with_ordering(g, h, config.order, [&](const Graph& g2, const Graph& h2) {
        auto t0 = Clock::now();
        RestartDriver d(g2, h2);
        d.deadline = detail::budget_deadline(config.budget_seconds);
        d.cancel = config.cancel;
        d.prune = !config.disable_pruning;
        d.visitor = config.visitor;
        d.multiplier = config.multiplier;
        d.inc.ext = config.shared_bound;

        std::mt19937_64 rng(config.seed);
        ClassState st = initial_classes(g2, h2);
        d.pool.push_back({std::move(st.left), std::move(st.right), std::move(st.classes),
                          Mapping{}, PositionKey{}, 0});

        while (!d.pool.empty() && !d.stopped()) {
            std::size_t idx = d.pool.size() == 1
                                  ? 0
                                  : static_cast<std::size_t>(rng() % d.pool.size());
            Segment seg = std::move(d.pool[idx]);
            d.pool.erase(d.pool.begin() + static_cast<std::ptrdiff_t>(idx));
            d.restart_flag = false;
            Mapping current = std::move(seg.mapping);
            d.node(std::move(seg.domains), seg.left, seg.right, current, seg.pos, seg.from_iter,
                   true);
        }

        SolveResult r;
        r.best = d.inc.best;
        r.size = static_cast<int>(d.inc.best.size());
        r.stats.recursions = d.nodes;
        r.stats.restarts = d.restarts;
        r.stats.visited_ranges = d.ranges.size();
        r.stats.seed = config.seed;
        r.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        switch (d.reason) {
            case detail::StopReason::timeout: r.status = SolveStatus::timeout; break;
            case detail::StopReason::cancelled: r.status = SolveStatus::cancelled; break;
            default: r.status = SolveStatus::optimal; break;
        }
        if (config.ranges_out) *config.ranges_out = std::move(d.ranges);
        return r;
    });
}

}  // namespace mcs

#include "mcs/engine_iterative.hpp"

#include <algorithm>
#include <limits>

#include "search_core.hpp"

namespace mcs {

namespace {

using detail::Clock;

// Eight columns per row. The first five mirror the bidomain record (left,
// right, left length, right length, adjacent); the last three restore loop
// state across backtracks: the initial right length, the last right vertex
// tried, and the offset of the selected left vertex.
template <typename IndexT>
struct Frame {
    IndexT left_start;
    IndexT right_start;
    IndexT left_len;
    IndexT right_len;
    IndexT adjacent;
    IndexT right_len_original;
    IndexT right_cursor;
    IndexT left_selected;
};

static_assert(sizeof(Frame<std::uint8_t>) == 8, "byte frames must stay eight bytes wide");

template <typename IndexT>
class IterativeEngine {
    static constexpr IndexT kNone = std::numeric_limits<IndexT>::max();

public:
    IterativeEngine(const Graph& g, const Graph& h, const IterativeConfig& cfg)
        : g_(g), h_(h), cfg_(cfg), deg_g_(detail::degree_table(g)) {}

    SolveResult run() {
        auto t0 = Clock::now();
        deadline_ = detail::budget_deadline(cfg_.base.budget_seconds);
        prune_ = !cfg_.base.disable_pruning;
        const long long max_possible = std::min(g_.n(), h_.n());

        init_frames();
        levels_.push_back({0});
        enum class Step { enter, select, next_u, retreat };
        Step step = Step::enter;
        SolveStatus status = SolveStatus::optimal;

        while (true) {
            if ((++ticks_ & 0xffu) == 0 || step == Step::enter) {
                if (cfg_.base.cancel && cfg_.base.cancel->load(std::memory_order_relaxed)) {
                    status = SolveStatus::cancelled;
                    break;
                }
                if ((ticks_ & 0xffu) == 0 && Clock::now() >= deadline_) {
                    status = SolveStatus::timeout;
                    break;
                }
            }

            if (step == Step::enter) {
                ++nodes_;
                if (sol_len_ > best_len_) {
                    best_g_.assign(sol_g_.begin(), sol_g_.begin() + sol_len_);
                    best_h_.assign(sol_h_.begin(), sol_h_.begin() + sol_len_);
                    best_len_ = sol_len_;
                }
                step = Step::select;
            } else if (step == Step::select) {
                if (prune_ && best_len_ >= max_possible) break;  // nothing larger exists
                std::size_t base = levels_.back().base;
                if (prune_) {
                    long long bound = sol_len_;
                    for (std::size_t i = base; i < frames_.size(); ++i)
                        bound += std::min<long long>(frames_[i].left_len, frames_[i].right_len);
                    if (bound <= best_len_) {
                        step = Step::retreat;
                        continue;
                    }
                }
                std::ptrdiff_t idx = select_class(base);
                if (idx < 0) {
                    step = Step::retreat;
                    continue;
                }
                if (static_cast<std::size_t>(idx) + 1 != frames_.size())
                    std::swap(frames_[idx], frames_.back());
                Frame<IndexT>& f = frames_.back();
                pick_left_vertex(f);
                f.right_cursor = kNone;
                f.right_len = static_cast<IndexT>(f.right_len - 1);
                step = Step::next_u;
            } else if (step == Step::next_u) {
                Frame<IndexT>& f = frames_.back();
                // Scan the original window (length right_len + 1) for the
                // smallest id above the cursor.
                int found = -1, found_pos = -1;
                int window = int(f.right_len) + 1;
                for (int j = 0; j < window; ++j) {
                    int cand = int(right_buf_[f.right_start + j]);
                    if ((f.right_cursor == kNone || cand > int(f.right_cursor)) &&
                        (found == -1 || cand < found)) {
                        found = cand;
                        found_pos = j;
                    }
                }
                if (found >= 0) {
                    f.right_cursor = static_cast<IndexT>(found);
                    std::swap(right_buf_[f.right_start + found_pos],
                              right_buf_[f.right_start + f.right_len]);
                    push_child_level(int(left_buf_[f.left_start + f.left_selected]), found);
                    step = Step::enter;
                } else {
                    // All right candidates tried with this left vertex.
                    ++restore_checks_;
                    if (IndexT(f.right_len + 1) != f.right_len_original) ++restore_violations_;
                    f.right_len = f.right_len_original;
                    f.right_cursor = kNone;
                    f.left_selected = kNone;
                    if (f.left_len == 0) frames_.pop_back();
                    step = Step::select;
                }
            } else {  // retreat
                frames_.resize(levels_.back().base);
                levels_.pop_back();
                if (levels_.empty()) break;
                --sol_len_;
                step = Step::next_u;
            }
        }

        SolveResult r;
        r.status = status;
        for (int i = 0; i < best_len_; ++i)
            r.best.push_back({int(best_g_[i]), int(best_h_[i])});
        r.size = best_len_;
        r.stats.recursions = nodes_;
        r.stats.restore_checks = restore_checks_;
        r.stats.restore_violations = restore_violations_;
        r.stats.peak_frames = peak_frames_;
        r.stats.peak_frame_bytes = peak_frames_ * sizeof(Frame<IndexT>);
        r.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        return r;
    }

private:
    struct Level {
        std::size_t base;
    };

    void init_frames() {
        ClassState st = initial_classes(g_, h_);
        left_buf_.assign(st.left.begin(), st.left.end());
        right_buf_.assign(st.right.begin(), st.right.end());
        for (const LabelClass& c : st.classes)
            frames_.push_back({static_cast<IndexT>(c.left_start), static_cast<IndexT>(c.right_start),
                               static_cast<IndexT>(c.left_len), static_cast<IndexT>(c.right_len),
                               IndexT(0), static_cast<IndexT>(c.right_len), kNone, kNone});
        peak_frames_ = frames_.size();
    }

    // Same criterion as the recursive engine, scanned backward over the top
    // segment; the winner is exchanged with the top of the stack.
    std::ptrdiff_t select_class(std::size_t base) const {
        if (frames_.size() == base) return -1;
        if (cfg_.select_top_only) return static_cast<std::ptrdiff_t>(frames_.size()) - 1;
        std::ptrdiff_t best = -1;
        long long best_max = 0, best_min = 0;
        int best_low = 0;
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(frames_.size()) - 1;
             i >= static_cast<std::ptrdiff_t>(base); --i) {
            const Frame<IndexT>& f = frames_[i];
            long long fmax = std::max<long long>(f.left_len, f.right_len);
            long long fmin = std::min<long long>(f.left_len, f.right_len);
            int low = int(left_buf_[f.left_start]);
            for (int j = 1; j < int(f.left_len); ++j)
                low = std::min(low, int(left_buf_[f.left_start + j]));
            if (best == -1 || fmax < best_max || (fmax == best_max && fmin < best_min) ||
                (fmax == best_max && fmin == best_min && low < best_low)) {
                best = i;
                best_max = fmax;
                best_min = fmin;
                best_low = low;
            }
        }
        return best;
    }

    void pick_left_vertex(Frame<IndexT>& f) {
        int best_pos = 0;
        for (int j = 1; j < int(f.left_len); ++j) {
            int a = int(left_buf_[f.left_start + j]);
            int b = int(left_buf_[f.left_start + best_pos]);
            if (deg_g_[a] > deg_g_[b] || (deg_g_[a] == deg_g_[b] && a < b)) best_pos = j;
        }
        std::swap(left_buf_[f.left_start + best_pos], left_buf_[f.left_start + f.left_len - 1]);
        f.left_len = static_cast<IndexT>(f.left_len - 1);
        f.left_selected = f.left_len;  // v now sits just past the live window
    }

    // Split every frame of the current segment by adjacency toward (v, u) and
    // push the results as the child level's segment.
    void push_child_level(int v, int u) {
        std::size_t base = levels_.back().base;
        std::size_t old_top = frames_.size();
        for (std::size_t i = base; i < old_top; ++i) {
            // Sort both windows by code; equal nonzero runs pair up, code 0
            // forms the non-adjacent class.
            Frame<IndexT> f = frames_[i];
            auto lb = left_buf_.begin() + f.left_start;
            auto rb = right_buf_.begin() + f.right_start;
            std::sort(lb, lb + f.left_len,
                      [&](IndexT a, IndexT b) { return g_.code(v, a) < g_.code(v, b); });
            std::sort(rb, rb + f.right_len,
                      [&](IndexT a, IndexT b) { return h_.code(u, a) < h_.code(u, b); });
            int li = 0, ri = 0;
            while (li < int(f.left_len) && ri < int(f.right_len)) {
                std::uint8_t lc = g_.code(v, lb[li]);
                std::uint8_t rc = h_.code(u, rb[ri]);
                if (lc < rc) { ++li; continue; }
                if (rc < lc) { ++ri; continue; }
                int l0 = li, r0 = ri;
                while (li < int(f.left_len) && g_.code(v, lb[li]) == lc) ++li;
                while (ri < int(f.right_len) && h_.code(u, rb[ri]) == lc) ++ri;
                IndexT len_l = static_cast<IndexT>(li - l0);
                IndexT len_r = static_cast<IndexT>(ri - r0);
                frames_.push_back({static_cast<IndexT>(f.left_start + l0),
                                   static_cast<IndexT>(f.right_start + r0), len_l, len_r,
                                   IndexT(lc != 0), len_r, kNone, kNone});
            }
        }
        if (frames_.size() > cfg_.max_frames)
            throw FrameStackOverflow("frame stack exceeded " + std::to_string(cfg_.max_frames) +
                                     " rows");
        peak_frames_ = std::max(peak_frames_, frames_.size());
        sol_set(v, u);
        levels_.push_back({old_top});
    }

    void sol_set(int v, int u) {
        if (int(sol_g_.size()) <= sol_len_) {
            sol_g_.resize(sol_len_ + 1);
            sol_h_.resize(sol_len_ + 1);
        }
        sol_g_[sol_len_] = static_cast<IndexT>(v);
        sol_h_[sol_len_] = static_cast<IndexT>(u);
        ++sol_len_;
    }

    const Graph& g_;
    const Graph& h_;
    IterativeConfig cfg_;
    std::vector<int> deg_g_;
    Clock::time_point deadline_;
    bool prune_ = true;

    std::vector<IndexT> left_buf_, right_buf_;
    std::vector<Frame<IndexT>> frames_;
    std::vector<Level> levels_;
    std::vector<IndexT> sol_g_, sol_h_, best_g_, best_h_;
    int sol_len_ = 0;
    int best_len_ = 0;

    std::uint64_t nodes_ = 0, ticks_ = 0;
    std::uint64_t restore_checks_ = 0, restore_violations_ = 0;
    std::size_t peak_frames_ = 0;
};

}  // namespace

SolveResult solve_iterative(const Graph& g, const Graph& h, const IterativeConfig& config) {
    if (g.kind() != h.kind()) throw GraphError("solve: graphs must share a kind");
    if (!config.wide_encoding && (g.n() > 254 || h.n() > 254))
        throw GraphError("byte-wide frames support at most 254 vertices (got " +
                         std::to_string(std::max(g.n(), h.n())) + "); use the wide encoding");
    if (config.base.budget_seconds <= 0) {
        SolveResult r;
        r.status = SolveStatus::timeout;
        return r;
    }
    return detail::with_ordering(g, h, config.base.order, [&](const Graph& g2, const Graph& h2) {
        if (config.wide_encoding) return IterativeEngine<std::uint32_t>(g2, h2, config).run();
        return IterativeEngine<std::uint8_t>(g2, h2, config).run();
    });
}

}  // namespace mcs

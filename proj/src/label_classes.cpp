#include "mcs/label_classes.hpp"

#include <algorithm>
#include <set>

namespace mcs {

ClassState initial_classes(const Graph& g, const Graph& h) {
    ClassState st;
    if (!g.labeled() && !h.labeled()) {
        if (g.n() > 0 && h.n() > 0) {
            for (int v = 0; v < g.n(); ++v) st.left.push_back(v);
            for (int u = 0; u < h.n(); ++u) st.right.push_back(u);
            st.classes.push_back({0, 0, g.n(), h.n(), false});
        }
        return st;
    }
    if (!g.labeled() || !h.labeled())
        throw GraphError("cannot mix a labeled graph with an unlabeled one");

    std::set<int> shared;
    for (int v = 0; v < g.n(); ++v) shared.insert(g.label(v));
    std::set<int> right_labels;
    for (int u = 0; u < h.n(); ++u) right_labels.insert(h.label(u));
    for (auto it = shared.begin(); it != shared.end();)
        it = right_labels.count(*it) ? std::next(it) : shared.erase(it);

    for (int lab : shared) {
        int ls = static_cast<int>(st.left.size());
        int rs = static_cast<int>(st.right.size());
        for (int v = 0; v < g.n(); ++v)
            if (g.label(v) == lab) st.left.push_back(v);
        for (int u = 0; u < h.n(); ++u)
            if (h.label(u) == lab) st.right.push_back(u);
        st.classes.push_back({ls, rs, static_cast<int>(st.left.size()) - ls,
                              static_cast<int>(st.right.size()) - rs, false});
    }
    return st;
}

long long compute_bound(long long m_size, const std::vector<LabelClass>& classes) {
    long long bound = m_size;
    for (const LabelClass& c : classes) bound += std::min(c.left_len, c.right_len);
    return bound;
}

int select_label_class(const std::vector<LabelClass>& classes, const std::vector<int>& left) {
    int best = -1;
    long long best_max = 0, best_min = 0;
    int best_low = 0;
    for (int i = 0; i < static_cast<int>(classes.size()); ++i) {
        const LabelClass& c = classes[i];
        if (c.left_len == 0 || c.right_len == 0) continue;
        long long cmax = std::max(c.left_len, c.right_len);
        long long cmin = std::min(c.left_len, c.right_len);
        int low = *std::min_element(left.begin() + c.left_start,
                                    left.begin() + c.left_start + c.left_len);
        if (best == -1 || cmax < best_max || (cmax == best_max && cmin < best_min) ||
            (cmax == best_max && cmin == best_min && low < best_low)) {
            best = i;
            best_max = cmax;
            best_min = cmin;
            best_low = low;
        }
    }
    return best;
}

int select_vertex(const LabelClass& cls, const std::vector<int>& left,
                  const std::vector<int>& degree) {
    int best = -1;
    for (int i = 0; i < cls.left_len; ++i) {
        int v = left[cls.left_start + i];
        if (best == -1 || degree[v] > degree[best] || (degree[v] == degree[best] && v < best))
            best = v;
    }
    return best;
}

std::vector<LabelClass> filter_classes(const std::vector<LabelClass>& classes,
                                       std::vector<int>& left, std::vector<int>& right,
                                       const Graph& g, const Graph& h, int v, int u) {
    std::vector<LabelClass> out;
    out.reserve(classes.size() + 2);
    for (const LabelClass& c : classes) {
        auto lb = left.begin() + c.left_start;
        auto rb = right.begin() + c.right_start;
        // Sorting each window by code groups the split ascending: 0 (none)
        // first, then forward/backward/both. Undirected graphs only ever see
        // codes 0 and 1, which makes this the plain adjacent/non-adjacent split.
        std::sort(lb, lb + c.left_len,
                  [&](int a, int b) { return g.code(v, a) < g.code(v, b); });
        std::sort(rb, rb + c.right_len,
                  [&](int a, int b) { return h.code(u, a) < h.code(u, b); });
        int li = 0, ri = 0;
        while (li < c.left_len && ri < c.right_len) {
            std::uint8_t lcode = g.code(v, lb[li]);
            std::uint8_t rcode = h.code(u, rb[ri]);
            if (lcode < rcode) { ++li; continue; }
            if (rcode < lcode) { ++ri; continue; }
            int l0 = li, r0 = ri;
            while (li < c.left_len && g.code(v, lb[li]) == lcode) ++li;
            while (ri < c.right_len && h.code(u, rb[ri]) == lcode) ++ri;
            out.push_back({c.left_start + l0, c.right_start + r0, li - l0, ri - r0, lcode != 0});
        }
    }
    return out;
}

ClassState refine(const ClassState& state, int v, int u, const Graph& g, const Graph& h) {
    int home = -1;
    for (int i = 0; i < static_cast<int>(state.classes.size()); ++i) {
        const LabelClass& c = state.classes[i];
        bool has_v = false, has_u = false;
        for (int j = 0; j < c.left_len; ++j) has_v |= state.left[c.left_start + j] == v;
        for (int j = 0; j < c.right_len; ++j) has_u |= state.right[c.right_start + j] == u;
        if (has_v && has_u) { home = i; break; }
        if (has_v || has_u) break;  // co-residency violated
    }
    if (home == -1) throw GraphError("refine: vertices are not co-resident in one class");

    ClassState next;
    next.left = state.left;
    next.right = state.right;
    auto domains = state.classes;
    LabelClass& c = domains[home];
    // Swap v and u out of their windows before splitting.
    for (int j = 0; j < c.left_len; ++j)
        if (next.left[c.left_start + j] == v) {
            std::swap(next.left[c.left_start + j], next.left[c.left_start + c.left_len - 1]);
            break;
        }
    c.left_len--;
    for (int j = 0; j < c.right_len; ++j)
        if (next.right[c.right_start + j] == u) {
            std::swap(next.right[c.right_start + j], next.right[c.right_start + c.right_len - 1]);
            break;
        }
    c.right_len--;
    next.classes = filter_classes(domains, next.left, next.right, g, h, v, u);
    return next;
}

}  // namespace mcs

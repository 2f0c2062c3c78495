#include "mcs/oracle.hpp"

#include <algorithm>

namespace mcs {
namespace oracle {

bool verify(const Graph& g, const Graph& h, const Mapping& mapping) {
    std::vector<char> used_g(static_cast<std::size_t>(g.n()), 0);
    std::vector<char> used_h(static_cast<std::size_t>(h.n()), 0);
    for (const VtxPair& p : mapping) {
        if (p.v < 0 || p.v >= g.n() || p.u < 0 || p.u >= h.n())
            throw GraphError("verify: vertex out of range");
        if (used_g[p.v] || used_h[p.u]) return false;
        used_g[p.v] = used_h[p.u] = 1;
        if (g.labeled() != h.labeled()) return false;
        if (g.labeled() && g.label(p.v) != h.label(p.u)) return false;
    }
    for (std::size_t i = 0; i < mapping.size(); ++i)
        for (std::size_t j = i + 1; j < mapping.size(); ++j)
            if (g.code(mapping[i].v, mapping[j].v) != h.code(mapping[i].u, mapping[j].u))
                return false;
    return true;
}

namespace {

// Extends `partial` by mapping chosen[pos..] to unused vertices of H in every
// way, checking consistency incrementally. A violated pair can never recover,
// so aborting early keeps exhaustiveness.
bool extend(const Graph& g, const Graph& h, const std::vector<int>& chosen, std::size_t pos,
            Mapping& partial, std::vector<char>& used_h) {
    if (pos == chosen.size()) return true;
    int v = chosen[pos];
    for (int u = 0; u < h.n(); ++u) {
        if (used_h[u]) continue;
        if (g.labeled() && g.label(v) != h.label(u)) continue;
        bool ok = true;
        for (const VtxPair& p : partial)
            if (g.code(p.v, v) != h.code(p.u, u)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        partial.push_back({v, u});
        used_h[u] = 1;
        if (extend(g, h, chosen, pos + 1, partial, used_h)) return true;
        used_h[u] = 0;
        partial.pop_back();
    }
    return false;
}

bool try_subsets(const Graph& g, const Graph& h, std::vector<int>& chosen, int next, int k,
                 Mapping& out) {
    if (static_cast<int>(chosen.size()) == k) {
        Mapping partial;
        std::vector<char> used_h(static_cast<std::size_t>(h.n()), 0);
        if (extend(g, h, chosen, 0, partial, used_h)) {
            out = partial;
            return true;
        }
        return false;
    }
    for (int v = next; v < g.n(); ++v) {
        if (g.n() - v < k - static_cast<int>(chosen.size())) break;
        chosen.push_back(v);
        if (try_subsets(g, h, chosen, v + 1, k, out)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

OracleResult mcs_bruteforce(const Graph& g, const Graph& h, std::optional<int> size_limit) {
    int ceiling = std::min(g.n(), h.n());
    if (ceiling > 10) throw GraphError("mcs_bruteforce: instance above the practical ceiling");
    int start = size_limit ? std::min(*size_limit, ceiling) : ceiling;
    for (int k = start; k >= 1; --k) {
        std::vector<int> chosen;
        Mapping out;
        if (try_subsets(g, h, chosen, 0, k, out)) return {k, out};
    }
    return {0, {}};
}

}  // namespace oracle
}  // namespace mcs

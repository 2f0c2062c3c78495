#pragma once

#include <optional>

#include "mcs/solve.hpp"

namespace mcs {
namespace oracle {

// True iff the mapping is injective on both sides, induced-consistent
// (pairwise adjacency codes equal) and label-consistent. Out-of-range
// vertices throw.
bool verify(const Graph& g, const Graph& h, const Mapping& mapping);

struct OracleResult {
    int size = 0;
    Mapping witness;
};

// Exhaustive reference: for k from min(|V_G|,|V_H|) (or size_limit) down to 0,
// enumerates injections of k-subsets of V_G into V_H and returns the first
// verified mapping. Independent of the label-class machinery. Refuses
// instances with min side above the practical ceiling of 10.
OracleResult mcs_bruteforce(const Graph& g, const Graph& h,
                            std::optional<int> size_limit = std::nullopt);

}  // namespace oracle
}  // namespace mcs

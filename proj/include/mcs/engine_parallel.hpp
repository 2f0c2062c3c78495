#pragma once

#include "mcs/solve.hpp"

namespace mcs {

struct ParallelConfig {
    SolveConfig base;
    int workers = 0;     // 0: number of logical processors
    int part_level = 5;  // branches at mapping depth <= part_level become tasks
};

// Worker-pool divide-and-conquer: shallow branches are packaged as tasks on a
// position-ordered shared queue, idle workers cooperate on task iterations,
// and the incumbent is shared globally. Same optimum as the sequential engine.
SolveResult solve_parallel(const Graph& g, const Graph& h, const ParallelConfig& config = {});

}  // namespace mcs

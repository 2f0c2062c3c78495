#pragma once

#include <cstddef>

#include "mcs/solve.hpp"

namespace mcs {

class FrameStackOverflow : public GraphError {
public:
    explicit FrameStackOverflow(const std::string& what) : GraphError(what) {}
};

struct IterativeConfig {
    SolveConfig base;
    // Byte-wide frames cap inputs at 254 vertices (255 is the reserved
    // sentinel); the wide build lifts the cap at eight times the frame size.
    bool wide_encoding = false;
    std::size_t max_frames = 1u << 20;  // explicit overflow error beyond this
    bool select_top_only = false;       // pin class selection to top-of-stack
};

// Recursion-free engine: an explicit stack of eight-column bidomain frames
// with restoration fields, byte-wide vertex encoding, and a backward stack
// scan for class selection.
SolveResult solve_iterative(const Graph& g, const Graph& h, const IterativeConfig& config = {});

}  // namespace mcs

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcs/heuristics.hpp"
#include "mcs/solve.hpp"

namespace mcs {

enum class EngineBase { recursive, parallel, iterative };

// One portfolio member: a base engine plus heuristic flags. goal_directed,
// jump and restart_seed select the recursive engine's variants.
struct EngineSpec {
    EngineBase base = EngineBase::recursive;
    OrderingStrategy order = OrderingStrategy::none;
    bool goal_directed = false;
    std::optional<JumpMode> jump;
    std::optional<DeadEndPolicy> deadend;
    std::optional<std::uint64_t> restart_seed;
    int workers = 0;
    int part_level = 5;
    double budget_seconds = -1;  // < 0: inherit the portfolio budget
    int stage = 1;

    std::string name() const;
};

// Parse "recursive", "goal", "parallel:4", "iterative", "jump:plus1",
// "restarts:7", optionally suffixed with "+order=degree" etc.
EngineSpec parse_engine_spec(const std::string& text);

// Runs one engine configuration to completion under config.
SolveResult run_engine(const Graph& g, const Graph& h, const EngineSpec& spec,
                       const SolveConfig& config);

// A running engine with cooperative cancellation.
class EngineHandle {
public:
    EngineHandle(const Graph& g, const Graph& h, EngineSpec spec, SolveConfig config);
    ~EngineHandle();
    EngineHandle(const EngineHandle&) = delete;
    EngineHandle& operator=(const EngineHandle&) = delete;

    void request_cancel();  // no-op once finished
    bool finished() const;
    // Blocks until the engine returns; rethrows any engine exception.
    SolveResult join();
    double wall_seconds() const;
    // Seconds between request_cancel() and the engine returning; -1 before both.
    double cancel_ack_seconds() const;
    const EngineSpec& spec() const { return spec_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    EngineSpec spec_;
};

enum class EngineOutcome { finished, cancelled, error, timeout };

const char* to_string(EngineOutcome o);

struct EngineReport {
    std::string spec_name;
    EngineOutcome outcome = EngineOutcome::finished;
    int size = 0;
    double wall_seconds = 0.0;
    double cancel_ack_seconds = -1.0;
    std::string error;
};

enum class PortfolioMode { race_all, staged };

struct PortfolioConfig {
    PortfolioMode mode = PortfolioMode::race_all;
    double budget_seconds = 1e9;
    double stage1_budget_seconds = 5.0;
    double grace_seconds = 1.0;    // cancellation acknowledgment watchdog
    bool share_incumbent = false;  // monotone size broadcasts between engines
};

struct PortfolioResult {
    SolveStatus status = SolveStatus::optimal;
    std::string winner;  // spec name; empty when nothing finished
    int size = 0;
    Mapping mapping;
    std::vector<EngineReport> engines;
    double wall_seconds = 0.0;
    double overhead_seconds = 0.0;  // wall minus the winner's own wall
    int grace_violations = 0;
};

// Races the specs; the first engine to finish with an optimal result wins and
// the rest are cancelled. Staged mode runs stage-1 specs under the stage-1
// budget first, then unleashes stage-2 specs for the remaining budget.
PortfolioResult run_portfolio(const Graph& g, const Graph& h,
                              const std::vector<EngineSpec>& specs,
                              const PortfolioConfig& config);

}  // namespace mcs

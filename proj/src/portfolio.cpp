#include "mcs/portfolio.hpp"

#include <chrono>
#include <condition_variable>
#include <exception>
#include <sstream>
#include <thread>

#include "mcs/engine_iterative.hpp"
#include "mcs/engine_parallel.hpp"
#include "search_core.hpp"

namespace mcs {

namespace {
using Clock = std::chrono::steady_clock;

const char* order_name(OrderingStrategy o) {
    switch (o) {
        case OrderingStrategy::none: return "none";
        case OrderingStrategy::degree_desc: return "degree";
        case OrderingStrategy::components_then_degree: return "components";
        case OrderingStrategy::block_triangular: return "block";
    }
    return "?";
}
}  // namespace

std::string EngineSpec::name() const {
    std::ostringstream out;
    switch (base) {
        case EngineBase::recursive:
            if (goal_directed) out << "goal";
            else if (jump) out << (*jump == JumpMode::plus_one ? "jump:plus1" : "jump:double");
            else if (restart_seed) out << "restarts:" << *restart_seed;
            else out << "recursive";
            break;
        case EngineBase::parallel: out << "parallel:" << workers; break;
        case EngineBase::iterative: out << "iterative"; break;
    }
    if (order != OrderingStrategy::none) out << "+order=" << order_name(order);
    if (deadend) {
        if (deadend->kind == DeadEndPolicy::Kind::absolute)
            out << "+deadend=abs:" << deadend->threshold;
        else
            out << "+deadend=rel:" << deadend->multiplier;
    }
    return out.str();
}

EngineSpec parse_engine_spec(const std::string& text) {
    EngineSpec spec;
    std::string head = text;
    std::string rest;
    if (auto plus = text.find('+'); plus != std::string::npos) {
        head = text.substr(0, plus);
        rest = text.substr(plus + 1);
    }
    std::string arg;
    if (auto colon = head.find(':'); colon != std::string::npos) {
        arg = head.substr(colon + 1);
        head = head.substr(0, colon);
    }
    if (head == "recursive") spec.base = EngineBase::recursive;
    else if (head == "goal") spec.goal_directed = true;
    else if (head == "parallel") {
        spec.base = EngineBase::parallel;
        if (!arg.empty()) spec.workers = std::stoi(arg);
    } else if (head == "iterative") spec.base = EngineBase::iterative;
    else if (head == "jump")
        spec.jump = (arg == "double") ? JumpMode::doubling : JumpMode::plus_one;
    else if (head == "restarts")
        spec.restart_seed = arg.empty() ? 1 : std::stoull(arg);
    else
        throw GraphError("unknown engine '" + head + "'");

    std::istringstream flags(rest);
    std::string flag;
    while (std::getline(flags, flag, '+')) {
        auto eq = flag.find('=');
        std::string key = flag.substr(0, eq);
        std::string val = eq == std::string::npos ? "" : flag.substr(eq + 1);
        if (key == "order") {
            if (val == "degree") spec.order = OrderingStrategy::degree_desc;
            else if (val == "components") spec.order = OrderingStrategy::components_then_degree;
            else if (val == "block") spec.order = OrderingStrategy::block_triangular;
            else throw GraphError("unknown ordering '" + val + "'");
        } else if (key == "deadend") {
            if (val.rfind("abs:", 0) == 0)
                spec.deadend = DeadEndPolicy::absolute(std::stoull(val.substr(4)));
            else if (val.rfind("rel:", 0) == 0)
                spec.deadend = DeadEndPolicy::relative(std::stod(val.substr(4)));
            else throw GraphError("unknown deadend policy '" + val + "'");
        } else {
            throw GraphError("unknown engine flag '" + key + "'");
        }
    }
    return spec;
}

SolveResult run_engine(const Graph& g, const Graph& h, const EngineSpec& spec,
                       const SolveConfig& config) {
    SolveConfig cfg = config;
    cfg.order = spec.order;
    if (spec.base != EngineBase::recursive &&
        (spec.goal_directed || spec.jump || spec.restart_seed))
        throw GraphError("goal/jump/restart variants run on the recursive engine only");
    switch (spec.base) {
        case EngineBase::parallel: {
            ParallelConfig pc;
            pc.base = cfg;
            pc.workers = spec.workers;
            pc.part_level = spec.part_level;
            return solve_parallel(g, h, pc);
        }
        case EngineBase::iterative: {
            IterativeConfig ic;
            ic.base = cfg;
            return solve_iterative(g, h, ic);
        }
        case EngineBase::recursive: break;
    }
    if (spec.goal_directed) return solve_goal_directed(g, h, cfg);
    if (spec.restart_seed) {
        RestartConfig rc;
        rc.seed = *spec.restart_seed;
        rc.budget_seconds = cfg.budget_seconds;
        rc.order = cfg.order;
        rc.cancel = cfg.cancel;
        rc.disable_pruning = cfg.disable_pruning;
        rc.visitor = cfg.visitor;
        rc.shared_bound = cfg.shared_bound;
        return solve_with_restarts(g, h, rc);
    }
    if (spec.jump && !spec.deadend) return bound_jump_search(g, h, 0, *spec.jump, cfg);
    if (spec.deadend) {
        // Forecast-then-mitigate: monitored solve; a suspect verdict hands the
        // incumbent to the bound jump (when one is configured).
        auto t0 = Clock::now();
        DeadEndMonitor monitor(*spec.deadend);
        bool suspect = false;
        SolveResult first = solve_monitored(g, h, cfg, &monitor, spec.jump.has_value(), suspect);
        if (!suspect || !spec.jump) return first;
        SolveConfig rest = cfg;
        rest.budget_seconds =
            cfg.budget_seconds - std::chrono::duration<double>(Clock::now() - t0).count();
        SolveResult second = bound_jump_search(g, h, first.size, *spec.jump, rest);
        if (second.size < first.size) {
            second.best = first.best;
            second.size = first.size;
        }
        second.stats.recursions += first.stats.recursions;
        second.stats.deadend_suspects = first.stats.deadend_suspects;
        return second;
    }
    return solve(g, h, cfg);
}

struct EngineHandle::Impl {
    std::thread thread;
    std::atomic<bool> cancel{false};
    std::atomic<bool> done{false};
    std::exception_ptr error;
    SolveResult result;
    Clock::time_point started, finished_at;
    std::atomic<bool> cancel_requested{false};
    Clock::time_point cancel_at;
    std::mutex mu;
    std::condition_variable cv;
};

EngineHandle::EngineHandle(const Graph& g, const Graph& h, EngineSpec spec, SolveConfig config)
    : impl_(std::make_unique<Impl>()), spec_(std::move(spec)) {
    impl_->started = Clock::now();
    Impl* im = impl_.get();
    config.cancel = &im->cancel;
    im->thread = std::thread([im, &g, &h, spec = spec_, config] {
        try {
            im->result = run_engine(g, h, spec, config);
        } catch (...) {
            im->error = std::current_exception();
        }
        {
            std::lock_guard<std::mutex> lock(im->mu);
            im->finished_at = Clock::now();
            im->done.store(true);
        }
        im->cv.notify_all();
    });
}

EngineHandle::~EngineHandle() {
    if (impl_ && impl_->thread.joinable()) {
        request_cancel();
        impl_->thread.join();
    }
}

void EngineHandle::request_cancel() {
    if (impl_->done.load()) return;  // already finished: results stay intact
    if (!impl_->cancel_requested.exchange(true)) impl_->cancel_at = Clock::now();
    impl_->cancel.store(true);
}

bool EngineHandle::finished() const { return impl_->done.load(); }

SolveResult EngineHandle::join() {
    {
        std::unique_lock<std::mutex> lock(impl_->mu);
        impl_->cv.wait(lock, [&] { return impl_->done.load(); });
    }
    if (impl_->thread.joinable()) impl_->thread.join();
    if (impl_->error) std::rethrow_exception(impl_->error);
    return impl_->result;
}

double EngineHandle::wall_seconds() const {
    return std::chrono::duration<double>(impl_->finished_at - impl_->started).count();
}

double EngineHandle::cancel_ack_seconds() const {
    if (!impl_->cancel_requested.load() || !impl_->done.load()) return -1.0;
    return std::chrono::duration<double>(impl_->finished_at - impl_->cancel_at).count();
}

const char* to_string(EngineOutcome o) {
    switch (o) {
        case EngineOutcome::finished: return "finished";
        case EngineOutcome::cancelled: return "cancelled";
        case EngineOutcome::error: return "error";
        case EngineOutcome::timeout: return "timeout";
    }
    return "?";
}

namespace {

// Races one batch of handles to completion; fills reports and (maybe) a winner.
struct RaceOutcome {
    bool have_winner = false;
    std::string winner;
    int size = 0;
    Mapping mapping;
    Mapping best_incumbent;  // largest mapping over non-winning engines
    int grace_violations = 0;
    double winner_wall = 0.0;
};

RaceOutcome race(std::vector<std::unique_ptr<EngineHandle>>& handles,
                 std::vector<EngineReport>& reports, double grace_seconds) {
    RaceOutcome out;
    const std::chrono::milliseconds tick(1);
    std::size_t remaining = handles.size();
    std::vector<char> seen(handles.size(), 0);
    while (remaining > 0) {
        for (std::size_t i = 0; i < handles.size(); ++i) {
            if (seen[i] || !handles[i]->finished()) continue;
            seen[i] = 1;
            --remaining;
            EngineReport rep;
            rep.spec_name = handles[i]->spec().name();
            rep.wall_seconds = handles[i]->wall_seconds();
            try {
                SolveResult r = handles[i]->join();
                rep.size = r.size;
                switch (r.status) {
                    case SolveStatus::optimal: rep.outcome = EngineOutcome::finished; break;
                    case SolveStatus::timeout: rep.outcome = EngineOutcome::timeout; break;
                    case SolveStatus::cancelled: rep.outcome = EngineOutcome::cancelled; break;
                }
                if (rep.outcome == EngineOutcome::finished && !out.have_winner) {
                    out.have_winner = true;
                    out.winner = rep.spec_name;
                    out.size = r.size;
                    out.mapping = r.best;
                    out.winner_wall = rep.wall_seconds;
                    for (auto& other : handles)
                        if (other.get() != handles[i].get()) other->request_cancel();
                }
                if (r.best.size() > out.best_incumbent.size()) out.best_incumbent = r.best;
            } catch (const std::exception& e) {
                rep.outcome = EngineOutcome::error;
                rep.error = e.what();
            }
            rep.cancel_ack_seconds = handles[i]->cancel_ack_seconds();
            if (rep.cancel_ack_seconds > grace_seconds) ++out.grace_violations;
            reports.push_back(std::move(rep));
        }
        if (remaining > 0) std::this_thread::sleep_for(tick);
    }
    return out;
}

std::vector<std::unique_ptr<EngineHandle>> launch(const Graph& g, const Graph& h,
                                                  const std::vector<EngineSpec>& specs,
                                                  double budget, SharedBound* bound) {
    std::vector<std::unique_ptr<EngineHandle>> handles;
    for (const EngineSpec& spec : specs) {
        SolveConfig cfg;
        cfg.budget_seconds =
            spec.budget_seconds >= 0 ? std::min(spec.budget_seconds, budget) : budget;
        cfg.shared_bound = bound;
        handles.push_back(std::make_unique<EngineHandle>(g, h, spec, cfg));
    }
    return handles;
}

}  // namespace

PortfolioResult run_portfolio(const Graph& g, const Graph& h,
                              const std::vector<EngineSpec>& specs,
                              const PortfolioConfig& config) {
    if (specs.empty()) throw GraphError("portfolio needs at least one engine spec");
    auto t0 = Clock::now();
    PortfolioResult result;
    SharedBound bound;
    SharedBound* bound_ptr = config.share_incumbent ? &bound : nullptr;

    auto remaining = [&] {
        return config.budget_seconds - std::chrono::duration<double>(Clock::now() - t0).count();
    };

    RaceOutcome outcome;
    if (config.mode == PortfolioMode::staged) {
        std::vector<EngineSpec> stage1, stage2;
        for (const EngineSpec& s : specs) (s.stage <= 1 ? stage1 : stage2).push_back(s);
        if (!stage1.empty() && config.stage1_budget_seconds > 0) {
            double s1 = std::min(config.stage1_budget_seconds, config.budget_seconds);
            auto handles = launch(g, h, stage1, s1, bound_ptr);
            outcome = race(handles, result.engines, config.grace_seconds);
        }
        if (!outcome.have_winner) {
            Mapping carried = std::move(outcome.best_incumbent);
            int carried_violations = outcome.grace_violations;
            if (stage2.empty()) stage2 = stage1;  // nothing staged: retry everything
            auto handles = launch(g, h, stage2, std::max(0.0, remaining()), bound_ptr);
            outcome = race(handles, result.engines, config.grace_seconds);
            outcome.grace_violations += carried_violations;
            if (carried.size() > outcome.best_incumbent.size())
                outcome.best_incumbent = std::move(carried);
        }
    } else {
        auto handles = launch(g, h, specs, config.budget_seconds, bound_ptr);
        outcome = race(handles, result.engines, config.grace_seconds);
    }

    result.grace_violations = outcome.grace_violations;
    result.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (outcome.have_winner) {
        result.status = SolveStatus::optimal;
        result.winner = outcome.winner;
        result.size = outcome.size;
        result.mapping = std::move(outcome.mapping);
        result.overhead_seconds = result.wall_seconds - outcome.winner_wall;
    } else {
        bool all_errors = !result.engines.empty();
        for (const EngineReport& r : result.engines)
            all_errors = all_errors && r.outcome == EngineOutcome::error;
        if (all_errors) throw GraphError("portfolio: every engine failed");
        result.status = SolveStatus::timeout;
        result.mapping = std::move(outcome.best_incumbent);
        result.size = static_cast<int>(result.mapping.size());
    }
    return result;
}

}  // namespace mcs

#include <chrono>
#include <thread>

#include "doctest.h"
#include "mcs/oracle.hpp"
#include "mcs/portfolio.hpp"
#include "test_util.hpp"

using namespace mcs;

namespace {

std::vector<EngineSpec> three_specs() {
    EngineSpec rec;
    EngineSpec par = parse_engine_spec("parallel:2");
    EngineSpec it = parse_engine_spec("iterative");
    return {rec, par, it};
}

}  // namespace

TEST_CASE("engine spec parsing and naming round-trip") {
    EngineSpec a = parse_engine_spec("parallel:4+order=degree");
    CHECK(a.base == EngineBase::parallel);
    CHECK(a.workers == 4);
    CHECK(a.order == OrderingStrategy::degree_desc);
    CHECK(parse_engine_spec(a.name()).name() == a.name());

    EngineSpec b = parse_engine_spec("jump:double+deadend=abs:5000");
    CHECK(b.jump == JumpMode::doubling);
    REQUIRE(b.deadend.has_value());
    CHECK(b.deadend->threshold == 5000);
    CHECK(parse_engine_spec(b.name()).name() == b.name());

    CHECK(parse_engine_spec("restarts:9").restart_seed == 9);
    CHECK(parse_engine_spec("goal").goal_directed);
    CHECK_THROWS_AS(parse_engine_spec("quantum"), GraphError);
}

TEST_CASE("run_engine covers every composed variant") {
    Graph g = testutil::diamond_graph();
    Graph h = testutil::k4_graph();
    for (const char* name :
         {"recursive", "goal", "parallel:2", "iterative", "jump:plus1", "jump:double",
          "restarts:3", "recursive+order=components", "recursive+deadend=abs:10",
          "jump:plus1+deadend=abs:10"}) {
        SolveResult r = run_engine(g, h, parse_engine_spec(name), {});
        CHECK(r.status == SolveStatus::optimal);
        CHECK(r.size == 3);
        CHECK(oracle::verify(g, h, r.best));
    }
}

TEST_CASE("single spec portfolio wraps its own result") {
    PortfolioConfig cfg;
    cfg.budget_seconds = 30;
    PortfolioResult r = run_portfolio(testutil::diamond_graph(), testutil::k4_graph(), {EngineSpec{}}, cfg);
    CHECK(r.status == SolveStatus::optimal);
    CHECK(r.winner == "recursive");
    CHECK(r.size == 3);
    REQUIRE(r.engines.size() == 1);
    CHECK(r.engines[0].outcome == EngineOutcome::finished);
}

TEST_CASE("a zero-budget spec loses to a live one") {
    EngineSpec dead;
    dead.budget_seconds = 0;  // immediate timeout
    EngineSpec live = parse_engine_spec("iterative");
    PortfolioConfig cfg;
    cfg.budget_seconds = 30;
    Graph g = random_graph(8, 0.5, 11);
    Graph h = random_graph(8, 0.5, 12);
    PortfolioResult r = run_portfolio(g, h, {dead, live}, cfg);
    CHECK(r.status == SolveStatus::optimal);
    CHECK(r.winner == "iterative");
    CHECK(r.size == oracle::mcs_bruteforce(g, h).size);
}

TEST_CASE("three-spec race matches the oracle and agreeing engines") {
    for (const auto& pair : testutil::random_pairs(15, 4, 9, 369)) {
        PortfolioConfig cfg;
        cfg.budget_seconds = 30;
        PortfolioResult r = run_portfolio(pair.g, pair.h, three_specs(), cfg);
        CHECK(r.status == SolveStatus::optimal);
        CHECK(r.size == oracle::mcs_bruteforce(pair.g, pair.h).size);
        CHECK(oracle::verify(pair.g, pair.h, r.mapping));
        CHECK(r.grace_violations == 0);
        // Agreement: every engine that finished reports the same size.
        for (const EngineReport& er : r.engines)
            if (er.outcome == EngineOutcome::finished) CHECK(er.size == r.size);
    }
}

TEST_CASE("cancel before start, after finish, and mid-search") {
    Graph big1 = random_graph(45, 0.5, 1);
    Graph big2 = random_graph(45, 0.5, 2);

    // Mid-search: cancellation is acknowledged and the incumbent survives.
    {
        EngineHandle handle(big1, big2, EngineSpec{}, SolveConfig{});
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
        handle.request_cancel();
        SolveResult r = handle.join();
        CHECK(r.status == SolveStatus::cancelled);
        CHECK(oracle::verify(big1, big2, r.best));
        CHECK(handle.cancel_ack_seconds() >= 0);
        CHECK(handle.cancel_ack_seconds() < 1.0);
    }

    // Cancel "before start": requested at launch, the engine gives up at its
    // first boundary without meaningful exploration.
    {
        EngineHandle handle(big1, big2, EngineSpec{}, SolveConfig{});
        handle.request_cancel();
        SolveResult r = handle.join();
        CHECK(r.status == SolveStatus::cancelled);
        CHECK(r.stats.recursions <= 1);
    }

    // After finish: a no-op, the result stays optimal.
    {
        Graph small = testutil::diamond_graph();
        EngineHandle handle(small, small, EngineSpec{}, SolveConfig{});
        SolveResult r = handle.join();
        handle.request_cancel();
        CHECK(r.status == SolveStatus::optimal);
        CHECK(r.size == 4);
        CHECK(handle.cancel_ack_seconds() == -1.0);
    }
}

TEST_CASE("staged with zero stage-1 budget equals race_all over stage 2") {
    Graph g = random_graph(9, 0.5, 21);
    Graph h = random_graph(9, 0.5, 22);
    auto specs = three_specs();
    specs[0].stage = 1;
    specs[1].stage = 2;
    specs[2].stage = 2;

    PortfolioConfig staged;
    staged.mode = PortfolioMode::staged;
    staged.stage1_budget_seconds = 0;
    staged.budget_seconds = 30;
    PortfolioResult a = run_portfolio(g, h, specs, staged);

    PortfolioConfig race;
    race.budget_seconds = 30;
    PortfolioResult b = run_portfolio(g, h, {specs[1], specs[2]}, race);

    CHECK(a.status == b.status);
    CHECK(a.size == b.size);
    // Stage-1 engines never launched.
    CHECK(a.engines.size() == 2);
}

TEST_CASE("staged mode falls through to stage 2 when stage 1 misses") {
    Graph g = random_graph(40, 0.5, 31);
    Graph h = random_graph(40, 0.5, 32);
    EngineSpec hopeless;  // sequential on a hard instance
    hopeless.stage = 1;
    EngineSpec second = parse_engine_spec("iterative");
    second.stage = 2;
    second.budget_seconds = 0;  // stage 2 also times out immediately

    PortfolioConfig cfg;
    cfg.mode = PortfolioMode::staged;
    cfg.stage1_budget_seconds = 0.05;
    cfg.budget_seconds = 0.5;
    PortfolioResult r = run_portfolio(g, h, {hopeless, second}, cfg);
    CHECK(r.status == SolveStatus::timeout);
    CHECK(r.engines.size() == 2);
    CHECK(oracle::verify(g, h, r.mapping));  // best incumbent across engines
}

TEST_CASE("all engines timing out yields a timeout with the best incumbent") {
    Graph g = random_graph(45, 0.5, 41);
    Graph h = random_graph(45, 0.5, 42);
    EngineSpec a;  // both sequential, both far too slow for the budget
    EngineSpec b = parse_engine_spec("iterative");
    PortfolioConfig cfg;
    cfg.budget_seconds = 0.1;
    PortfolioResult r = run_portfolio(g, h, {a, b}, cfg);
    CHECK(r.status == SolveStatus::timeout);
    CHECK(r.winner.empty());
    CHECK(r.size == static_cast<int>(r.mapping.size()));
    CHECK(oracle::verify(g, h, r.mapping));
}

TEST_CASE("portfolio overhead stays within a loose bound") {
    PortfolioConfig cfg;
    cfg.budget_seconds = 30;
    PortfolioResult r =
        run_portfolio(testutil::diamond_graph(), testutil::k4_graph(), three_specs(), cfg);
    CHECK(r.status == SolveStatus::optimal);
    CHECK(r.overhead_seconds < 5.0);
}

TEST_CASE("shared incumbent broadcasts sizes only and stays correct") {
    PortfolioConfig cfg;
    cfg.budget_seconds = 30;
    cfg.share_incumbent = true;
    for (const auto& pair : testutil::random_pairs(8, 5, 9, 123)) {
        PortfolioResult r = run_portfolio(pair.g, pair.h, three_specs(), cfg);
        CHECK(r.status == SolveStatus::optimal);
        CHECK(r.size == oracle::mcs_bruteforce(pair.g, pair.h).size);
        CHECK(oracle::verify(pair.g, pair.h, r.mapping));
    }
}

TEST_CASE("empty spec list is rejected") {
    CHECK_THROWS_AS(run_portfolio(testutil::diamond_graph(), testutil::k4_graph(), {}, {}), GraphError);
}

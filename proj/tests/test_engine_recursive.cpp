#include <atomic>

#include "doctest.h"
#include "mcs/oracle.hpp"
#include "mcs/solve.hpp"
#include "test_util.hpp"

using namespace mcs;

TEST_CASE("solve finds the identity on equal graphs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Graph g = random_graph(9, 0.4, seed);
        SolveResult r = solve(g, g);
        CHECK(r.status == SolveStatus::optimal);
        CHECK(r.size == 9);
        CHECK(oracle::verify(g, g, r.best));
    }
}

TEST_CASE("solve on the worked diamond-K4 pair returns 3") {
    SolveResult r = solve(testutil::diamond_graph(), testutil::k4_graph());
    CHECK(r.status == SolveStatus::optimal);
    CHECK(r.size == 3);
    CHECK(oracle::verify(testutil::diamond_graph(), testutil::k4_graph(), r.best));
}

TEST_CASE("solve K3 vs C4") {
    Graph k3 = from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}});
    Graph c4 = from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(solve(k3, c4).size == 2);
}

TEST_CASE("solve agrees with the oracle on random pairs") {
    for (const auto& pair : testutil::random_pairs(60, 4, 9, 1234)) {
        SolveResult r = solve(pair.g, pair.h);
        auto expect = oracle::mcs_bruteforce(pair.g, pair.h);
        CHECK(r.status == SolveStatus::optimal);
        CHECK(r.size == expect.size);
        CHECK(oracle::verify(pair.g, pair.h, r.best));
    }
}

TEST_CASE("solve handles directed and labeled inputs") {
    RandomGraphOptions dir{GraphKind::directed, 0};
    RandomGraphOptions lab{GraphKind::undirected, 2};
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Graph g = random_graph(7, 0.5, seed, dir);
        Graph h = random_graph(7, 0.5, seed + 500, dir);
        CHECK(solve(g, h).size == oracle::mcs_bruteforce(g, h).size);

        Graph gl = random_graph(7, 0.5, seed, lab);
        Graph hl = random_graph(7, 0.5, seed + 900, lab);
        SolveResult rl = solve(gl, hl);
        CHECK(rl.size == oracle::mcs_bruteforce(gl, hl).size);
        CHECK(oracle::verify(gl, hl, rl.best));
    }
    CHECK_THROWS_AS(solve(random_graph(3, 0.5, 1),
                          random_graph(3, 0.5, 1, RandomGraphOptions{GraphKind::directed, 0})),
                    GraphError);
}

TEST_CASE("solve size is symmetric and relabeling-invariant") {
    for (const auto& pair : testutil::random_pairs(20, 5, 8, 777)) {
        int ab = solve(pair.g, pair.h).size;
        CHECK(ab == solve(pair.h, pair.g).size);
        Graph gp = permute(pair.g, random_permutation(pair.g.n(), pair.seed + 5));
        Graph hp = permute(pair.h, random_permutation(pair.h.n(), pair.seed + 6));
        CHECK(ab == solve(gp, hp).size);
    }
}

TEST_CASE("bound is admissible at every node") {
    for (const auto& pair : testutil::random_pairs(25, 4, 8, 4321)) {
        testutil::BoundAudit audit;
        SolveConfig cfg;
        cfg.disable_pruning = true;  // enumerate whole subtrees
        cfg.visitor = &audit;
        solve(pair.g, pair.h, cfg);
        CHECK(audit.checked > 0);
        CHECK(audit.violations == 0);
        CHECK(audit.stack.empty());  // enter/exit pairing
    }
}

TEST_CASE("bound is monotone from parent to child") {
    struct MonotoneAudit : NodeVisitor {
        std::vector<long long> stack;
        long long violations = 0;
        void enter(const Mapping&, long long bound) override {
            if (!stack.empty() && bound > stack.back()) ++violations;
            stack.push_back(bound);
        }
        void exit() override { stack.pop_back(); }
    } audit;
    for (const auto& pair : testutil::random_pairs(15, 4, 8, 999)) {
        SolveConfig cfg;
        cfg.disable_pruning = true;
        cfg.visitor = &audit;
        solve(pair.g, pair.h, cfg);
    }
    CHECK(audit.violations == 0);
}

TEST_CASE("solve is deterministic run to run") {
    for (const auto& pair : testutil::random_pairs(10, 5, 9, 31)) {
        SolveResult a = solve(pair.g, pair.h);
        SolveResult b = solve(pair.g, pair.h);
        CHECK(a.canonical_bytes() == b.canonical_bytes());
    }
}

TEST_CASE("budget and cancellation return the incumbent") {
    Graph g = random_graph(40, 0.5, 7);
    Graph h = random_graph(40, 0.5, 8);
    SolveConfig cfg;
    cfg.budget_seconds = 0;  // immediate timeout
    CHECK(solve(g, h, cfg).status == SolveStatus::timeout);

    cfg.budget_seconds = 0.05;
    SolveResult r = solve(g, h, cfg);
    CHECK(r.status == SolveStatus::timeout);
    CHECK(oracle::verify(g, h, r.best));  // incumbent is still a valid mapping

    std::atomic<bool> cancel{true};
    SolveConfig ccfg;
    ccfg.cancel = &cancel;
    CHECK(solve(g, h, ccfg).status == SolveStatus::cancelled);
}

TEST_CASE("orderings do not change the optimum") {
    for (const auto& pair : testutil::random_pairs(12, 5, 8, 2024)) {
        int base = solve(pair.g, pair.h).size;
        for (OrderingStrategy s :
             {OrderingStrategy::degree_desc, OrderingStrategy::components_then_degree,
              OrderingStrategy::block_triangular}) {
            SolveConfig cfg;
            cfg.order = s;
            SolveResult r = solve(pair.g, pair.h, cfg);
            CHECK(r.size == base);
            CHECK(oracle::verify(pair.g, pair.h, r.best));  // ids translated back
        }
    }
}

// ------------------------------------------------------------ goal-directed

TEST_CASE("goal-directed succeeds at the first goal on equal graphs") {
    Graph g = random_graph(8, 0.4, 17);
    SolveResult r = solve_goal_directed(g, g);
    CHECK(r.status == SolveStatus::optimal);
    CHECK(r.size == 8);
    CHECK(r.stats.probes == 1);
}

TEST_CASE("goal-directed matches solve and the oracle") {
    for (const auto& pair : testutil::random_pairs(30, 4, 9, 555)) {
        SolveResult r = solve_goal_directed(pair.g, pair.h);
        CHECK(r.status == SolveStatus::optimal);
        CHECK(r.size == solve(pair.g, pair.h).size);
        CHECK(oracle::verify(pair.g, pair.h, r.best));
    }
}

TEST_CASE("goal-directed runs exactly two probes when MCS = |V_G| - 1") {
    // P3 vs K3: the path embeds all but one vertex into the triangle.
    Graph p3 = from_edge_list(3, {{0, 1}, {1, 2}});
    Graph k3 = from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}});
    REQUIRE(oracle::mcs_bruteforce(p3, k3).size == 2);
    SolveResult r = solve_goal_directed(p3, k3);
    CHECK(r.size == 2);
    CHECK(r.stats.probes == 2);
}

TEST_CASE("goal-directed swaps so goals run over the smaller graph") {
    Graph small = random_graph(5, 0.5, 3);
    Graph big = random_graph(9, 0.5, 4);
    SolveResult r = solve_goal_directed(big, small);
    CHECK(r.size == solve(big, small).size);
    CHECK(oracle::verify(big, small, r.best));
}

#include "doctest.h"
#include "mcs/engine_iterative.hpp"
#include "mcs/oracle.hpp"
#include "mcs/solve.hpp"
#include "test_util.hpp"

using namespace mcs;

TEST_CASE("iterative engine equals the oracle and the recursive engine") {
    for (const auto& pair : testutil::random_pairs(60, 4, 9, 9090)) {
        SolveResult it = solve_iterative(pair.g, pair.h);
        CHECK(it.status == SolveStatus::optimal);
        CHECK(it.size == oracle::mcs_bruteforce(pair.g, pair.h).size);
        CHECK(it.size == solve(pair.g, pair.h).size);
        CHECK(oracle::verify(pair.g, pair.h, it.best));
        CHECK(it.stats.restore_violations == 0);
        CHECK(it.stats.restore_checks > 0);
    }
}

TEST_CASE("iterative engine on the worked pair and self-pairs") {
    CHECK(solve_iterative(testutil::diamond_graph(), testutil::k4_graph()).size == 3);
    Graph g = random_graph(9, 0.5, 77);
    CHECK(solve_iterative(g, g).size == 9);
}

TEST_CASE("iterative engine covers directed and labeled variants") {
    RandomGraphOptions dir{GraphKind::directed, 0};
    RandomGraphOptions lab{GraphKind::undirected, 3};
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Graph g = random_graph(7, 0.5, seed, dir);
        Graph h = random_graph(7, 0.5, seed + 40, dir);
        CHECK(solve_iterative(g, h).size == oracle::mcs_bruteforce(g, h).size);
        Graph gl = random_graph(8, 0.5, seed, lab);
        Graph hl = random_graph(8, 0.5, seed + 80, lab);
        CHECK(solve_iterative(gl, hl).size == oracle::mcs_bruteforce(gl, hl).size);
    }
}

TEST_CASE("byte frames reject graphs beyond 254 vertices") {
    Graph big = random_graph(255, 1.0, 1);  // K255
    Graph small = random_graph(5, 0.5, 2);
    CHECK_THROWS_AS(solve_iterative(big, small), GraphError);
    CHECK_THROWS_AS(solve_iterative(small, big), GraphError);

    // The wide build lifts the cap.
    IterativeConfig wide;
    wide.wide_encoding = true;
    SolveResult r = solve_iterative(big, big, wide);
    CHECK(r.size == 255);
}

TEST_CASE("254-vertex inputs stay inside the byte encoding") {
    Graph g = random_graph(254, 1.0, 3);  // K254: offsets and lengths hit the cap
    SolveResult r = solve_iterative(g, g);
    CHECK(r.status == SolveStatus::optimal);
    CHECK(r.size == 254);
    CHECK(r.stats.restore_violations == 0);
}

TEST_CASE("top-of-stack selection still yields optimal sizes") {
    IterativeConfig cfg;
    cfg.select_top_only = true;
    for (const auto& pair : testutil::random_pairs(25, 4, 8, 333)) {
        SolveResult r = solve_iterative(pair.g, pair.h, cfg);
        CHECK(r.size == oracle::mcs_bruteforce(pair.g, pair.h).size);
    }
}

TEST_CASE("frame stack capacity overflow raises the dedicated error") {
    IterativeConfig cfg;
    cfg.max_frames = 2;
    Graph g = random_graph(9, 0.5, 5);
    Graph h = random_graph(9, 0.5, 6);
    CHECK_THROWS_AS(solve_iterative(g, h, cfg), FrameStackOverflow);
}

TEST_CASE("memory usage is measured and bounded") {
    Graph g = random_graph(9, 0.5, 15);
    Graph h = random_graph(9, 0.5, 16);
    SolveResult r = solve_iterative(g, h);
    CHECK(r.stats.peak_frames > 0);
    CHECK(r.stats.peak_frame_bytes == r.stats.peak_frames * 8);
    // Linear-ish bound: depth (<= min n) times classes per level (<= n).
    CHECK(r.stats.peak_frames <= 9u * 9u + 9u);
}

TEST_CASE("iterative results are deterministic and budget-aware") {
    Graph g = random_graph(9, 0.5, 41);
    Graph h = random_graph(9, 0.5, 42);
    CHECK(solve_iterative(g, h).canonical_bytes() == solve_iterative(g, h).canonical_bytes());

    IterativeConfig cfg;
    cfg.base.budget_seconds = 0;
    CHECK(solve_iterative(g, h, cfg).status == SolveStatus::timeout);

    Graph big1 = random_graph(60, 0.5, 1);
    Graph big2 = random_graph(60, 0.5, 2);
    IterativeConfig tiny;
    tiny.base.budget_seconds = 0.05;
    SolveResult r = solve_iterative(big1, big2, tiny);
    CHECK(r.status == SolveStatus::timeout);
    CHECK(oracle::verify(big1, big2, r.best));
}

TEST_CASE("iterative engine honors orderings") {
    IterativeConfig cfg;
    cfg.base.order = OrderingStrategy::degree_desc;
    for (const auto& pair : testutil::random_pairs(10, 5, 8, 60)) {
        SolveResult r = solve_iterative(pair.g, pair.h, cfg);
        CHECK(r.size == oracle::mcs_bruteforce(pair.g, pair.h).size);
        CHECK(oracle::verify(pair.g, pair.h, r.best));
    }
}

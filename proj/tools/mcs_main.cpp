#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcs/bench.hpp"
#include "mcs/graph_io.hpp"
#include "mcs/oracle.hpp"
#include "mcs/portfolio.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitTimeout = 2;
constexpr int kExitError = 3;

mcs::FileFormat parse_format(const std::string& name) {
    if (name == "mivia") return mcs::FileFormat::mivia;
    if (name == "text") return mcs::FileFormat::text;
    return mcs::FileFormat::auto_detect;
}

mcs::EngineSpec spec_from_flags(const std::string& engine, const std::string& order,
                                const std::string& deadend, const std::string& jump,
                                const std::string& restarts, int workers, int part_level) {
    std::string text = engine;
    if (order != "off" && !order.empty()) text += "+order=" + order;
    if (deadend != "off" && !deadend.empty()) text += "+deadend=" + deadend;
    mcs::EngineSpec spec = mcs::parse_engine_spec(text);
    if (jump != "off" && !jump.empty())
        spec.jump = jump == "double" ? mcs::JumpMode::doubling : mcs::JumpMode::plus_one;
    if (restarts != "off" && !restarts.empty()) {
        if (restarts.rfind("seed:", 0) == 0) spec.restart_seed = std::stoull(restarts.substr(5));
        else spec.restart_seed = std::stoull(restarts);
    }
    if (workers > 0) spec.workers = workers;
    spec.part_level = part_level;
    return spec;
}

std::vector<mcs::EngineSpec> load_portfolio_file(const std::string& path,
                                                 mcs::PortfolioConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw mcs::GraphError("cannot open portfolio config '" + path + "'");
    json doc = json::parse(in);
    if (doc.contains("mode"))
        cfg.mode = doc["mode"] == "staged" ? mcs::PortfolioMode::staged
                                           : mcs::PortfolioMode::race_all;
    if (doc.contains("stage1_budget")) cfg.stage1_budget_seconds = doc["stage1_budget"];
    if (doc.contains("grace")) cfg.grace_seconds = doc["grace"];
    if (doc.contains("share_incumbent")) cfg.share_incumbent = doc["share_incumbent"];

    std::vector<mcs::EngineSpec> specs;
    for (const json& e : doc.at("engines")) {
        mcs::EngineSpec spec = mcs::parse_engine_spec(e.at("engine").get<std::string>());
        if (e.contains("budget")) spec.budget_seconds = e["budget"];
        if (e.contains("stage")) spec.stage = e["stage"];
        if (e.contains("workers")) spec.workers = e["workers"];
        if (e.contains("part_level")) spec.part_level = e["part_level"];
        specs.push_back(std::move(spec));
    }
    if (specs.empty()) throw mcs::GraphError("portfolio config lists no engines");
    return specs;
}

void print_result(const std::string& engine, const mcs::SolveResult& r) {
    std::cout << "engine=" << engine << " status=" << mcs::to_string(r.status)
              << " size=" << r.size << " recursions=" << r.stats.recursions
              << " wall_s=" << r.stats.wall_seconds << "\n";
    std::cout << "mapping:";
    for (const mcs::VtxPair& p : r.best) std::cout << " " << p.v << "->" << p.u;
    std::cout << "\n";
}

int status_exit_code(mcs::SolveStatus s) {
    return s == mcs::SolveStatus::optimal ? kExitOptimal : kExitTimeout;
}

void write_csv_file(const std::string& path, const std::vector<mcs::InstanceRecord>& records) {
    std::ofstream out(path);
    if (!out) throw mcs::GraphError("cannot write '" + path + "'");
    out << mcs::emit_csv(records);
}

// Subprocess isolation: one child per engine spec, first exit(0) wins, the
// rest receive SIGTERM. Children rerun this binary's solve subcommand.
int run_isolated(const std::string& self, const std::string& gfile, const std::string& hfile,
                 const std::vector<mcs::EngineSpec>& specs, double budget,
                 const std::string& format) {
    std::vector<pid_t> pids;
    for (const mcs::EngineSpec& spec : specs) {
        pid_t pid = fork();
        if (pid < 0) throw mcs::GraphError("fork failed");
        if (pid == 0) {
            std::string budget_s = std::to_string(
                spec.budget_seconds >= 0 ? std::min(spec.budget_seconds, budget) : budget);
            std::string part_s = std::to_string(spec.part_level);
            std::string name = spec.name();
            execl(self.c_str(), self.c_str(), "solve", gfile.c_str(), hfile.c_str(), "--engine",
                  name.c_str(), "--budget", budget_s.c_str(), "--part-level", part_s.c_str(),
                  "--format", format.c_str(), static_cast<char*>(nullptr));
            _exit(kExitError);
        }
        pids.push_back(pid);
    }
    int exit_code = kExitTimeout;
    std::size_t done = 0;
    bool have_winner = false;
    while (done < pids.size()) {
        int status = 0;
        pid_t pid = waitpid(-1, &status, 0);
        if (pid <= 0) break;
        ++done;
        if (!have_winner && WIFEXITED(status) && WEXITSTATUS(status) == kExitOptimal) {
            have_winner = true;
            exit_code = kExitOptimal;
            for (pid_t other : pids)
                if (other != pid) kill(other, SIGTERM);
        }
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum common induced subgraph solver suite"};
    app.require_subcommand(1);

    // ------------------------------------------------------------- solve
    std::string gfile, hfile, engine = "recursive", order = "off", deadend = "off";
    std::string jump = "off", restarts = "off", portfolio_file, format = "auto", csv_out;
    std::string mode;
    int workers = 0, part_level = 5;
    double budget = 1e9, stage1_budget = -1;
    bool isolate = false;

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance pair");
    solve_cmd->add_option("gfile", gfile, "first graph file")->required();
    solve_cmd->add_option("hfile", hfile, "second graph file")->required();
    solve_cmd->add_option(
        "--engine", engine,
        "recursive|goal|parallel[:N]|iterative|jump[:plus1|:double]|restarts[:seed]");
    solve_cmd->add_option("--order", order, "off|degree|components|block");
    solve_cmd->add_option("--deadend", deadend, "off|abs:N|rel:X");
    solve_cmd->add_option("--jump", jump, "off|plus1|double");
    solve_cmd->add_option("--restarts", restarts, "off|seed:N");
    solve_cmd->add_option("--workers", workers, "worker threads (parallel engine)");
    solve_cmd->add_option("--part-level", part_level, "task delegation depth");
    solve_cmd->add_option("--budget", budget, "wall-clock budget in seconds");
    solve_cmd->add_option("--portfolio", portfolio_file, "portfolio config (JSON)");
    solve_cmd->add_option("--mode", mode, "race_all|staged (overrides the config)");
    solve_cmd->add_option("--stage1-budget", stage1_budget, "staged mode stage-1 seconds");
    solve_cmd->add_flag("--isolate", isolate, "run portfolio engines as subprocesses");
    solve_cmd->add_option("--format", format, "mivia|text|auto");
    solve_cmd->add_option("--csv", csv_out, "write the run as a CSV record");

    // ------------------------------------------------------------- bench
    std::string manifest, cactus_out, bench_csv;
    std::vector<std::string> bench_engines;
    double bench_budget = 10.0;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run a benchmark suite from a manifest");
    bench_cmd->add_option("--manifest", manifest, "instance manifest file")->required();
    bench_cmd->add_option("--engine", bench_engines, "engine spec (repeatable)");
    bench_cmd->add_option("--budget", bench_budget, "per-instance budget in seconds");
    bench_cmd->add_option("--csv", bench_csv, "write per-instance records here");
    bench_cmd->add_option("--cactus", cactus_out, "write cumulative-solved curves here");

    // --------------------------------------------------------------- gen
    std::string gen_out, gen_format = "mivia";
    int gen_n = 10, gen_labels = 0;
    double gen_density = 0.5;
    std::uint64_t gen_seed = 1;
    bool gen_directed = false;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random instance file");
    gen_cmd->add_option("--out", gen_out, "output path")->required();
    gen_cmd->add_option("--n", gen_n, "vertex count");
    gen_cmd->add_option("--density", gen_density, "edge probability");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--format", gen_format, "mivia|text");
    gen_cmd->add_flag("--directed", gen_directed, "directed edges (text format only)");
    gen_cmd->add_option("--labels", gen_labels, "vertex label count (0 = unlabeled)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            mcs::RandomGraphOptions opts;
            opts.kind = gen_directed ? mcs::GraphKind::directed : mcs::GraphKind::undirected;
            opts.label_count = gen_labels;
            mcs::Graph g = mcs::random_graph(gen_n, gen_density, gen_seed, opts);
            mcs::save_graph_file(g, gen_out, parse_format(gen_format));
            std::cout << "wrote " << gen_out << " n=" << g.n() << " edges=" << g.edge_count()
                      << "\n";
            return kExitOptimal;
        }

        if (*bench_cmd) {
            mcs::SuiteConfig cfg;
            cfg.budget_seconds = bench_budget;
            if (bench_engines.empty()) bench_engines = {"recursive"};
            for (const std::string& e : bench_engines)
                cfg.engines.push_back(mcs::parse_engine_spec(e));
            auto records = mcs::run_suite(mcs::load_manifest(manifest), cfg);
            if (!bench_csv.empty()) write_csv_file(bench_csv, records);
            else std::cout << mcs::emit_csv(records);
            if (!cactus_out.empty()) {
                std::ofstream out(cactus_out);
                out << mcs::cactus_csv(mcs::emit_cactus(records));
            }
            bool any_error = false;
            for (const auto& r : records) any_error |= r.status == "error";
            return any_error ? kExitError : kExitOptimal;
        }

        // solve
        mcs::FileFormat ff = parse_format(format);
        if (!portfolio_file.empty()) {
            mcs::PortfolioConfig pcfg;
            pcfg.budget_seconds = budget;
            auto specs = load_portfolio_file(portfolio_file, pcfg);
            if (mode == "staged") pcfg.mode = mcs::PortfolioMode::staged;
            else if (mode == "race_all") pcfg.mode = mcs::PortfolioMode::race_all;
            if (stage1_budget >= 0) pcfg.stage1_budget_seconds = stage1_budget;
            if (isolate)
                return run_isolated("/proc/self/exe", gfile, hfile, specs, budget, format);

            mcs::Graph g = mcs::load_graph_file(gfile, ff);
            mcs::Graph h = mcs::load_graph_file(hfile, ff);
            mcs::PortfolioResult r = mcs::run_portfolio(g, h, specs, pcfg);
            std::cout << "portfolio status=" << mcs::to_string(r.status)
                      << " winner=" << (r.winner.empty() ? "-" : r.winner) << " size=" << r.size
                      << " wall_s=" << r.wall_seconds << "\n";
            for (const mcs::EngineReport& er : r.engines)
                std::cout << "  " << er.spec_name << ": " << mcs::to_string(er.outcome)
                          << " size=" << er.size << " wall_s=" << er.wall_seconds << "\n";
            return status_exit_code(r.status);
        }

        mcs::Graph g = mcs::load_graph_file(gfile, ff);
        mcs::Graph h = mcs::load_graph_file(hfile, ff);
        mcs::EngineSpec spec =
            spec_from_flags(engine, order, deadend, jump, restarts, workers, part_level);
        mcs::SolveConfig cfg;
        cfg.budget_seconds = budget;
        mcs::SolveResult r = mcs::run_engine(g, h, spec, cfg);
        if (!mcs::oracle::verify(g, h, r.best)) {
            std::cerr << "internal error: mapping failed verification\n";
            return kExitError;
        }
        print_result(spec.name(), r);
        if (!csv_out.empty()) {
            mcs::InstanceRecord rec;
            rec.pair_id = gfile + "__" + hfile;
            rec.category = "adhoc";
            rec.n_g = g.n();
            rec.n_h = h.n();
            rec.engine = spec.name();
            rec.status = mcs::to_string(r.status);
            rec.size = r.size;
            rec.wall_seconds = r.stats.wall_seconds;
            rec.recursions = r.stats.recursions;
            rec.seed = r.stats.seed;
            write_csv_file(csv_out, {rec});
        }
        return status_exit_code(r.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

#include "mcs/bench.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "mcs/graph_io.hpp"
#include "mcs/oracle.hpp"

namespace mcs {

namespace {

std::string stem_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

std::string join_path(const std::string& root, const std::string& rel) {
    if (root.empty() || rel.empty() || rel.front() == '/') return rel;
    return root.back() == '/' ? root + rel : root + "/" + rel;
}

// Round-trip-safe double formatting.
std::string fmt_double(double x) {
    std::ostringstream out;
    out << std::setprecision(17) << x;
    return out.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::vector<InstanceSpec> load_manifest(const std::string& path, const std::string& dataset_root) {
    std::string root = dataset_root;
    if (root.empty())
        if (const char* env = std::getenv("MCS_DATASET_ROOT")) root = env;

    std::ifstream in(path);
    if (!in) throw GraphError("cannot open manifest '" + path + "'");
    std::vector<InstanceSpec> specs;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string gf, hf, cat;
        if (!(fields >> gf)) continue;
        if (gf[0] == '#') continue;
        if (!(fields >> hf)) throw GraphError("manifest line needs two files: '" + line + "'");
        if (!(fields >> cat)) cat = "uncategorized";
        InstanceSpec spec;
        spec.g_path = join_path(root, gf);
        spec.h_path = join_path(root, hf);
        spec.category = cat;
        spec.id = stem_of(gf) + "__" + stem_of(hf);
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::vector<InstanceRecord> run_suite(const std::vector<InstanceSpec>& instances,
                                      const SuiteConfig& config) {
    std::vector<InstanceRecord> records;
    for (const InstanceSpec& inst : instances) {
        Graph g, h;
        bool loaded = true;
        std::string load_error;
        try {
            g = load_graph_file(inst.g_path);
            h = load_graph_file(inst.h_path);
        } catch (const std::exception& e) {
            loaded = false;
            load_error = e.what();
        }
        for (const EngineSpec& spec : config.engines) {
            InstanceRecord rec;
            rec.pair_id = inst.id;
            rec.category = inst.category;
            rec.engine = spec.name();
            if (!loaded) {
                rec.status = "error";
                records.push_back(std::move(rec));
                continue;
            }
            rec.n_g = g.n();
            rec.n_h = h.n();
            if (spec.restart_seed) rec.seed = *spec.restart_seed;
            std::clock_t c0 = std::clock();
            try {
                SolveConfig cfg;
                cfg.budget_seconds = config.budget_seconds;
                SolveResult r = run_engine(g, h, spec, cfg);
                if (config.verify_results && !oracle::verify(g, h, r.best)) {
                    rec.status = "error";
                } else {
                    rec.status = to_string(r.status);
                    rec.size = r.size;
                    rec.wall_seconds = r.stats.wall_seconds;
                    rec.recursions = r.stats.recursions;
                }
            } catch (const std::exception&) {
                rec.status = "error";
            }
            rec.cpu_seconds = double(std::clock() - c0) / CLOCKS_PER_SEC;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::string emit_csv(const std::vector<InstanceRecord>& records) {
    std::ostringstream out;
    out << "pair_id,category,n_g,n_h,engine,status,size,wall_s,cpu_s,recursions,seed\n";
    for (const InstanceRecord& r : records) {
        out << r.pair_id << ',' << r.category << ',' << r.n_g << ',' << r.n_h << ',' << r.engine
            << ',' << r.status << ',';
        if (r.status != "error") out << r.size;
        out << ',' << fmt_double(r.wall_seconds) << ',' << fmt_double(r.cpu_seconds) << ','
            << r.recursions << ',' << r.seed << '\n';
    }
    return out.str();
}

std::vector<InstanceRecord> parse_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw GraphError("empty CSV");
    std::vector<InstanceRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 11) throw GraphError("malformed CSV row: '" + line + "'");
        InstanceRecord r;
        r.pair_id = f[0];
        r.category = f[1];
        r.n_g = std::stoi(f[2]);
        r.n_h = std::stoi(f[3]);
        r.engine = f[4];
        r.status = f[5];
        r.size = f[6].empty() ? -1 : std::stoi(f[6]);
        r.wall_seconds = std::stod(f[7]);
        r.cpu_seconds = std::stod(f[8]);
        r.recursions = std::stoull(f[9]);
        r.seed = std::stoull(f[10]);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<CactusPoint> emit_cactus(const std::vector<InstanceRecord>& records) {
    std::map<std::string, std::vector<double>> times;
    for (const InstanceRecord& r : records)
        if (r.status == "optimal") times[r.engine].push_back(r.wall_seconds);
    std::vector<CactusPoint> points;
    for (auto& [engine, ts] : times) {
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 0; i < ts.size(); ++i)
            points.push_back({engine, ts[i], static_cast<int>(i) + 1});
    }
    return points;
}

std::string cactus_csv(const std::vector<CactusPoint>& points) {
    std::ostringstream out;
    out << "engine,threshold_s,solved\n";
    for (const CactusPoint& p : points)
        out << p.engine << ',' << fmt_double(p.threshold_seconds) << ',' << p.solved << '\n';
    return out.str();
}

}  // namespace mcs

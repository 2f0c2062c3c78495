#pragma once

#include <string>
#include <vector>

#include "mcs/portfolio.hpp"

namespace mcs {

struct InstanceSpec {
    std::string id;
    std::string category;
    std::string g_path;
    std::string h_path;
};

// Manifest lines: `g_file h_file category`, '#' comments allowed. Relative
// paths resolve against dataset_root (or $MCS_DATASET_ROOT when empty).
std::vector<InstanceSpec> load_manifest(const std::string& path,
                                        const std::string& dataset_root = "");

struct InstanceRecord {
    std::string pair_id;
    std::string category;
    int n_g = 0;
    int n_h = 0;
    std::string engine;
    std::string status;  // optimal | timeout | cancelled | error
    int size = -1;       // present iff status != error
    double wall_seconds = 0.0;
    double cpu_seconds = 0.0;
    std::uint64_t recursions = 0;
    std::uint64_t seed = 0;

    bool operator==(const InstanceRecord&) const = default;
};

struct SuiteConfig {
    std::vector<EngineSpec> engines;
    double budget_seconds = 10.0;
    bool verify_results = true;  // mappings are checked against the verifier
};

// One record per (instance, engine); unloadable instances yield an error
// record and the suite continues.
std::vector<InstanceRecord> run_suite(const std::vector<InstanceSpec>& instances,
                                      const SuiteConfig& config);

std::string emit_csv(const std::vector<InstanceRecord>& records);
std::vector<InstanceRecord> parse_csv(const std::string& csv);

struct CactusPoint {
    std::string engine;
    double threshold_seconds = 0.0;
    int solved = 0;
};

// Per engine: sorted solve times with cumulative counts; timeouts excluded.
std::vector<CactusPoint> emit_cactus(const std::vector<InstanceRecord>& records);
std::string cactus_csv(const std::vector<CactusPoint>& points);

}  // namespace mcs

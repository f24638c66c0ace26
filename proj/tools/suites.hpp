#ifndef PINLAB_TOOLS_SUITES_HPP
#define PINLAB_TOOLS_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"

namespace pinlab::cli {

struct SuiteResult {
    std::string suite;
    std::string csv_header;
    std::string csv_body;  // rows only; the determinism contract covers this
    bool all_pass = true;
    std::vector<std::string> messages;

    std::string csv() const { return csv_header + csv_body; }
};

// Runs one of asymptotics, homogeneous, quenched_grid, bounds_grid,
// replica_checks, acceptance. Throws std::runtime_error on failures that are
// not check failures (unknown suite, library errors).
SuiteResult run_suite(const ExperimentConfig& config);

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double bound = 0.0;
    std::string detail;  // semicolon-separated key=value pairs
};

// The 13 pass/fail checks behind `run_suite` with suite = acceptance; the
// last one reruns the first twelve with the same seed and compares CSV rows
// byte for byte.
std::vector<CriterionResult> run_acceptance(std::uint64_t master_seed, int workers);

// Writes <suite>.csv and appends a metadata record to runs.jsonl under
// out_dir. Creates the directory if needed. Throws on I/O failure.
void write_outputs(const std::string& out_dir, const ExperimentConfig& config,
                   const SuiteResult& result, double wall_seconds);

std::string format_g17(double v);

}  // namespace pinlab::cli

#endif

#ifndef PINLAB_TOOLS_CONFIG_HPP
#define PINLAB_TOOLS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pinlab::cli {

struct LawSpec {
    std::string kind = "power";  // power | srw1 | srw3 | explicit
    double alpha = 0.5;
    std::string l_kind = "constant";  // constant | log_power
    double l_c = 1.0;
    double l_exponent = 1.0;
    double l_offset = 2.0;
    long n_max = 100000;
    std::string tail = "keep";  // keep | renormalize
    std::vector<double> masses;  // explicit kind only
};

struct ExperimentConfig {
    LawSpec law;
    std::vector<double> beta{0.0};
    std::vector<double> delta{0.1};
    std::vector<double> h;  // overrides delta-derived pinning when nonempty
    std::vector<long> N{4096};
    std::uint64_t master_seed = 1;
    long num_samples = 100;
    long pair_samples = 500;
    double dh = 0.0;  // 0 disables contact-fraction columns
    std::string suite;
    std::string out_dir = "out";
    int workers = 1;
    double a1 = 1.0;
    double a2 = 1.0;
    double epsilon = 0.1;
    double slack_c = 0.5;
};

struct ConfigIssue {
    int line = 0;  // 0 when the issue is semantic rather than syntactic
    std::string key;
    std::string message;
};

struct ParsedConfig {
    ExperimentConfig config;
    std::vector<ConfigIssue> errors;
    std::vector<std::string> notes;  // accepted-with-caveat messages
    bool ok() const { return errors.empty(); }
};

// INI-style text: [section] headers, key = value lines, '#' comments.
// All errors are collected, not first-only. Unknown sections or keys are
// errors. Values echoed back by resolved_echo include every default.
ParsedConfig parse_config(const std::string& text);
ParsedConfig load_config(const std::string& path);

// Canonical key=value listing of the fully resolved config; the config hash
// in run metadata is the FNV-1a 64 of this string.
std::string resolved_echo(const ExperimentConfig& c);
std::string config_hash(const ExperimentConfig& c);

}  // namespace pinlab::cli

#endif

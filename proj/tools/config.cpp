#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace pinlab::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct RawEntry {
    std::string value;
    int line = 0;
};

struct Parser {
    std::map<std::string, RawEntry> entries;  // "section.key"
    std::vector<ConfigIssue> errors;

    void fail(int line, const std::string& key, const std::string& msg) {
        errors.push_back({line, key, msg});
    }

    bool take(const std::string& full, RawEntry* out) {
        auto it = entries.find(full);
        if (it == entries.end()) return false;
        *out = it->second;
        entries.erase(it);
        return true;
    }

    void take_double(const std::string& full, double* out) {
        RawEntry e;
        if (!take(full, &e)) return;
        try {
            std::size_t used = 0;
            const double v = std::stod(e.value, &used);
            if (used != e.value.size()) throw std::invalid_argument("trailing junk");
            *out = v;
        } catch (...) {
            fail(e.line, full, "expected a real number, got '" + e.value + "'");
        }
    }

    void take_long(const std::string& full, long* out) {
        RawEntry e;
        if (!take(full, &e)) return;
        try {
            std::size_t used = 0;
            const long v = std::stol(e.value, &used);
            if (used != e.value.size()) throw std::invalid_argument("trailing junk");
            *out = v;
        } catch (...) {
            fail(e.line, full, "expected an integer, got '" + e.value + "'");
        }
    }

    void take_u64(const std::string& full, std::uint64_t* out) {
        RawEntry e;
        if (!take(full, &e)) return;
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(e.value, &used);
            if (used != e.value.size()) throw std::invalid_argument("trailing junk");
            *out = v;
        } catch (...) {
            fail(e.line, full, "expected a nonnegative integer, got '" + e.value + "'");
        }
    }

    void take_string(const std::string& full, std::string* out) {
        RawEntry e;
        if (take(full, &e)) *out = e.value;
    }

    void take_double_list(const std::string& full, std::vector<double>* out) {
        RawEntry e;
        if (!take(full, &e)) return;
        std::vector<double> vals;
        std::stringstream ss(e.value);
        std::string tok;
        bool bad = false;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            try {
                std::size_t used = 0;
                vals.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument("trailing junk");
            } catch (...) {
                bad = true;
            }
        }
        if (bad || vals.empty())
            fail(e.line, full, "expected a comma-separated list of reals, got '" +
                                   e.value + "'");
        else
            *out = vals;
    }

    void take_long_list(const std::string& full, std::vector<long>* out) {
        RawEntry e;
        if (!take(full, &e)) return;
        std::vector<long> vals;
        std::stringstream ss(e.value);
        std::string tok;
        bool bad = false;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            try {
                std::size_t used = 0;
                vals.push_back(std::stol(tok, &used));
                if (used != tok.size()) throw std::invalid_argument("trailing junk");
            } catch (...) {
                bad = true;
            }
        }
        if (bad || vals.empty())
            fail(e.line, full, "expected a comma-separated list of integers, got '" +
                                   e.value + "'");
        else
            *out = vals;
    }
};

const char* kSections[] = {"law", "grid", "mc", "run"};

}  // namespace

ParsedConfig parse_config(const std::string& text) {
    ParsedConfig result;
    Parser p;

    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                p.fail(lineno, "", "unterminated section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (std::find(std::begin(kSections), std::end(kSections), section) ==
                std::end(kSections))
                p.fail(lineno, section, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            p.fail(lineno, "", "expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            p.fail(lineno, "", "empty key");
            continue;
        }
        if (section.empty()) {
            p.fail(lineno, key, "key outside any [section]");
            continue;
        }
        const std::string full = section + "." + key;
        if (p.entries.count(full)) {
            p.fail(lineno, full, "duplicate key");
            continue;
        }
        p.entries[full] = {value, lineno};
    }

    ExperimentConfig& c = result.config;
    bool alpha_given = p.entries.count("law.alpha") > 0;
    bool h_given = p.entries.count("grid.h") > 0;

    p.take_string("law.kind", &c.law.kind);
    p.take_double("law.alpha", &c.law.alpha);
    p.take_string("law.l", &c.law.l_kind);
    p.take_double("law.l_c", &c.law.l_c);
    p.take_double("law.l_exponent", &c.law.l_exponent);
    p.take_double("law.l_offset", &c.law.l_offset);
    p.take_long("law.n_max", &c.law.n_max);
    p.take_string("law.tail", &c.law.tail);
    p.take_double_list("law.masses", &c.law.masses);

    p.take_double_list("grid.beta", &c.beta);
    p.take_double_list("grid.delta", &c.delta);
    if (h_given) p.take_double_list("grid.h", &c.h);
    p.take_long_list("grid.N", &c.N);

    p.take_u64("mc.master_seed", &c.master_seed);
    p.take_long("mc.num_samples", &c.num_samples);
    p.take_long("mc.pair_samples", &c.pair_samples);
    p.take_double("mc.dh", &c.dh);

    p.take_string("run.suite", &c.suite);
    p.take_string("run.out", &c.out_dir);
    {
        long w = c.workers;
        p.take_long("run.workers", &w);
        c.workers = static_cast<int>(w);
    }
    p.take_double("run.a1", &c.a1);
    p.take_double("run.a2", &c.a2);
    p.take_double("run.epsilon", &c.epsilon);
    p.take_double("run.slack_c", &c.slack_c);

    for (const auto& [full, entry] : p.entries)
        p.fail(entry.line, full, "unknown key");

    auto semantic = [&](const std::string& key, const std::string& msg) {
        p.fail(0, key, msg);
    };

    if (c.law.kind != "power" && c.law.kind != "srw1" && c.law.kind != "srw3" &&
        c.law.kind != "explicit")
        semantic("law.kind", "must be one of power, srw1, srw3, explicit");
    if (c.law.kind == "power") {
        if (!alpha_given) semantic("law.alpha", "required for kind = power");
        if (!(c.law.alpha >= 0.0) || !std::isfinite(c.law.alpha))
            semantic("law.alpha", "must be finite and >= 0");
        else if (c.law.alpha >= 1.0)
            result.notes.push_back(
                "law.alpha >= 1: accepted, but the sandwich-region gates only cover "
                "0 < alpha < 1 and will report inapplicable");
    }
    if (c.law.kind == "explicit" && c.law.masses.empty())
        semantic("law.masses", "required for kind = explicit");
    if (c.law.l_kind != "constant" && c.law.l_kind != "log_power")
        semantic("law.l", "must be constant or log_power");
    if (c.law.tail != "keep" && c.law.tail != "renormalize")
        semantic("law.tail", "must be keep or renormalize");
    if (c.law.n_max < 1) semantic("law.n_max", "must be >= 1");
    if (c.law.n_max > 100000000) semantic("law.n_max", "must be <= 1e8");
    if (!(c.law.l_c > 0.0)) semantic("law.l_c", "must be > 0");

    auto check_finite = [&](const char* key, const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) {
                semantic(key, "all grid values must be finite");
                break;
            }
    };
    check_finite("grid.beta", c.beta);
    check_finite("grid.delta", c.delta);
    check_finite("grid.h", c.h);
    for (long n : c.N)
        if (n < 1) {
            semantic("grid.N", "all N must be >= 1");
            break;
        }

    if (c.num_samples < 1) semantic("mc.num_samples", "must be >= 1");
    if (c.pair_samples < 2) semantic("mc.pair_samples", "must be >= 2");
    if (c.dh < 0.0) semantic("mc.dh", "must be >= 0");
    if (c.workers < 1) semantic("run.workers", "must be >= 1");
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0))
        semantic("run.epsilon", "must be in (0, 1)");
    if (!(c.a1 > 0.0)) semantic("run.a1", "must be > 0");
    if (!(c.a2 > 0.0)) semantic("run.a2", "must be > 0");
    if (!(c.slack_c >= 0.0)) semantic("run.slack_c", "must be >= 0");

    result.errors = std::move(p.errors);
    return result;
}

ParsedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParsedConfig bad;
        bad.errors.push_back({0, path, "cannot open config file"});
        return bad;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt(v[i]);
    }
    return s;
}

std::string fmt_list(const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace

std::string resolved_echo(const ExperimentConfig& c) {
    std::ostringstream o;
    o << "law.kind=" << c.law.kind << "\n"
      << "law.alpha=" << fmt(c.law.alpha) << "\n"
      << "law.l=" << c.law.l_kind << "\n"
      << "law.l_c=" << fmt(c.law.l_c) << "\n"
      << "law.l_exponent=" << fmt(c.law.l_exponent) << "\n"
      << "law.l_offset=" << fmt(c.law.l_offset) << "\n"
      << "law.n_max=" << c.law.n_max << "\n"
      << "law.tail=" << c.law.tail << "\n"
      << "law.masses=" << fmt_list(c.law.masses) << "\n"
      << "grid.beta=" << fmt_list(c.beta) << "\n"
      << "grid.delta=" << fmt_list(c.delta) << "\n"
      << "grid.h=" << fmt_list(c.h) << "\n"
      << "grid.N=" << fmt_list(c.N) << "\n"
      << "mc.master_seed=" << c.master_seed << "\n"
      << "mc.num_samples=" << c.num_samples << "\n"
      << "mc.pair_samples=" << c.pair_samples << "\n"
      << "mc.dh=" << fmt(c.dh) << "\n"
      << "run.suite=" << c.suite << "\n"
      << "run.out=" << c.out_dir << "\n"
      << "run.workers=" << c.workers << "\n"
      << "run.a1=" << fmt(c.a1) << "\n"
      << "run.a2=" << fmt(c.a2) << "\n"
      << "run.epsilon=" << fmt(c.epsilon) << "\n"
      << "run.slack_c=" << fmt(c.slack_c) << "\n";
    return o.str();
}

std::string config_hash(const ExperimentConfig& c) {
    const std::string s = resolved_echo(c);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

}  // namespace pinlab::cli

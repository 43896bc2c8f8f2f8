#pragma once
// Run configuration with layered precedence: CLI > environment > config
// file > built-in defaults.  The config file is flat key=value text with
// [section] headers; keys are addressed as "section.key".  Environment
// variables use the KLF_ prefix with '.' mapped to '_' and upper-cased
// (KLF_TRUNC_C_MAX <-> trunc.c_max).  Any unknown key, wherever it comes
// from, is an error carrying the offending key path; callers exit 2.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kleinian {

struct ConfigError : std::runtime_error {
    std::string key;
    ConfigError(const std::string& k, const std::string& msg)
        : std::runtime_error("config error at '" + k + "': " + msg),
          key(k) {}
};

struct RunConfig {
    long long d = -1;          // field.d       imaginary quadratic field
    double c_max = 60.0;       // trunc.c_max   denominator norm cutoff X
    double omega_max = 40.0;   // trunc.omega_max  frequency decay depth
    double w_max = 400.0;      // trunc.w_max   brute lattice radius
    std::vector<double> eps =  // limit.eps     extrapolation schedule
        {5e-3, 2.5e-3, 1.25e-3};
    int grid = 24;             // quad.grid     quadrature density per unit
    double tol_scale = 1.0;    // tol.scale     global tolerance multiplier
    int threads = 1;           // run.threads   worker threads (0 = auto)
    std::string out_path;      // out.path      report destination ("" = none)
    std::string out_format = "jsonl";  // out.format
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key, "not a number: '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key, "trailing junk in '" + v + "'");
    return x;
}

inline long long parse_int(const std::string& key, const std::string& v) {
    size_t pos = 0;
    long long x;
    try {
        x = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key, "not an integer: '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key, "trailing junk in '" + v + "'");
    return x;
}

}  // namespace detail

// Apply one key=value setting.  Throws ConfigError (with the key path) for
// unknown keys or unparsable values.
inline void config_set(RunConfig& cfg, const std::string& key,
                       const std::string& raw) {
    using detail::parse_double;
    using detail::parse_int;
    std::string v = detail::trim(raw);
    if (key == "field.d") {
        cfg.d = parse_int(key, v);
    } else if (key == "trunc.c_max") {
        cfg.c_max = parse_double(key, v);
    } else if (key == "trunc.omega_max") {
        cfg.omega_max = parse_double(key, v);
    } else if (key == "trunc.w_max") {
        cfg.w_max = parse_double(key, v);
    } else if (key == "limit.eps") {
        std::vector<double> sched;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ','))
            sched.push_back(parse_double(key, detail::trim(item)));
        cfg.eps = sched;
    } else if (key == "quad.grid") {
        cfg.grid = (int)parse_int(key, v);
    } else if (key == "tol.scale") {
        cfg.tol_scale = parse_double(key, v);
    } else if (key == "run.threads") {
        cfg.threads = (int)parse_int(key, v);
    } else if (key == "out.path") {
        cfg.out_path = v;
    } else if (key == "out.format") {
        cfg.out_format = v;
    } else {
        throw ConfigError(key, "unknown key");
    }
}

// Invariants every loaded configuration must satisfy.
inline void config_validate(const RunConfig& cfg) {
    bool field_ok = false;
    for (long long d : {-1LL, -2LL, -3LL, -7LL, -11LL})
        field_ok = field_ok || cfg.d == d;
    if (!field_ok)
        throw ConfigError("field.d", "must be one of -1,-2,-3,-7,-11");
    if (cfg.c_max <= 0) throw ConfigError("trunc.c_max", "must be positive");
    if (cfg.omega_max <= 0)
        throw ConfigError("trunc.omega_max", "must be positive");
    if (cfg.w_max <= 0) throw ConfigError("trunc.w_max", "must be positive");
    if (cfg.eps.empty()) throw ConfigError("limit.eps", "schedule is empty");
    for (size_t i = 0; i < cfg.eps.size(); ++i) {
        if (cfg.eps[i] <= 0)
            throw ConfigError("limit.eps", "entries must be positive");
        if (i && cfg.eps[i] >= cfg.eps[i - 1])
            throw ConfigError("limit.eps",
                              "schedule must be strictly decreasing");
    }
    if (cfg.grid <= 0) throw ConfigError("quad.grid", "must be positive");
    if (cfg.tol_scale <= 0) throw ConfigError("tol.scale", "must be positive");
    if (cfg.threads < 0) throw ConfigError("run.threads", "must be >= 0");
    if (cfg.out_format != "jsonl")
        throw ConfigError("out.format", "only 'jsonl' is supported");
}

// Flat key=value file with [section] headers; '#' and ';' start comments.
// Dotted keys at top level are also accepted.
inline void config_load_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t cut = line.find_first_of("#;");
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno),
                                  "malformed section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno),
                              "expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string val = line.substr(eq + 1);
        if (!section.empty() && key.find('.') == std::string::npos)
            key = section + "." + key;
        try {
            config_set(cfg, key, val);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno),
                              e.what());
        }
    }
}

inline std::string env_name_for(const std::string& key) {
    std::string name = "KLF_";
    for (char c : key) name += c == '.' ? '_' : (char)std::toupper(c);
    return name;
}

// Scan the process environment for KLF_* variables.  KLF_CONFIG is handled
// by the caller (config file path); anything else must map back to a known
// key, otherwise it is rejected just like an unknown file key.
inline void config_load_env(RunConfig& cfg, char** envp) {
    static const char* known[] = {
        "field.d",   "trunc.c_max", "trunc.omega_max", "trunc.w_max",
        "limit.eps", "quad.grid",   "tol.scale",       "run.threads",
        "out.path",  "out.format"};
    for (char** e = envp; e && *e; ++e) {
        std::string entry = *e;
        if (entry.rfind("KLF_", 0) != 0) continue;
        size_t eq = entry.find('=');
        if (eq == std::string::npos) continue;
        std::string name = entry.substr(0, eq);
        if (name == "KLF_CONFIG") continue;
        std::string val = entry.substr(eq + 1);
        bool matched = false;
        for (const char* k : known) {
            if (env_name_for(k) == name) {
                config_set(cfg, k, val);
                matched = true;
                break;
            }
        }
        if (!matched) throw ConfigError(name, "unknown environment key");
    }
}

}  // namespace kleinian

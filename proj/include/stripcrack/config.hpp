#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stripcrack/material.hpp"
#include "stripcrack/quadrature.hpp"

namespace stripcrack {

class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SolverOpts {
    int N0 = 10;
    int N_max = 60;
    double sif_tol = 1e-9;
};

enum class OutFormat { Csv, Json };

struct OutputOpts {
    OutFormat format = OutFormat::Csv;
    std::string path;  // empty: command picks its default
    double t = 0.0;  // SIF evaluation time
};

/// Flat key-value run configuration with dotted section prefixes,
/// e.g. "material.G = 8.0e10". '#' starts a comment.
struct RunConfig {
    MaterialParams material;
    SolverOpts solver;
    QuadratureSpec quadrature;
    OutputOpts output;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw config_error("config: bad numeric value for " + key + ": '" + value + "'");
    }
    if (used != value.size())
        throw config_error("config: trailing junk in value for " + key + ": '" + value + "'");
    return v;
}

inline int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw config_error("config: expected integer for " + key + ": '" + value + "'");
    return i;
}

}  // namespace detail

inline RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    bool saw[5] = {false, false, false, false, false};  // G, G0, rho, k, tau0
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config: empty key or value at line " + std::to_string(lineno));

        if (key == "material.G") {
            cfg.material.G = detail::parse_number(key, value);
            saw[0] = true;
        } else if (key == "material.G0") {
            cfg.material.G0 = detail::parse_number(key, value);
            saw[1] = true;
        } else if (key == "material.rho") {
            cfg.material.rho = detail::parse_number(key, value);
            saw[2] = true;
        } else if (key == "material.k") {
            cfg.material.k = detail::parse_number(key, value);
            saw[3] = true;
        } else if (key == "material.tau0") {
            cfg.material.tau0 = detail::parse_number(key, value);
            saw[4] = true;
        } else if (key == "solver.N0") {
            cfg.solver.N0 = detail::parse_int(key, value);
        } else if (key == "solver.N_max") {
            cfg.solver.N_max = detail::parse_int(key, value);
        } else if (key == "solver.sif_tol") {
            cfg.solver.sif_tol = detail::parse_number(key, value);
        } else if (key == "quadrature.abs_tol") {
            cfg.quadrature.abs_tol = detail::parse_number(key, value);
        } else if (key == "quadrature.rel_tol") {
            cfg.quadrature.rel_tol = detail::parse_number(key, value);
        } else if (key == "quadrature.initial_cutoff") {
            cfg.quadrature.initial_cutoff = detail::parse_number(key, value);
        } else if (key == "quadrature.max_doublings") {
            cfg.quadrature.max_doublings = detail::parse_int(key, value);
        } else if (key == "quadrature.panel_order") {
            cfg.quadrature.panel_order = detail::parse_int(key, value);
        } else if (key == "quadrature.max_panels") {
            cfg.quadrature.max_panels = detail::parse_int(key, value);
        } else if (key == "output.format") {
            if (value == "csv")
                cfg.output.format = OutFormat::Csv;
            else if (value == "json")
                cfg.output.format = OutFormat::Json;
            else
                throw config_error("config: output.format must be csv or json");
        } else if (key == "output.path") {
            cfg.output.path = value;
        } else if (key == "output.t") {
            cfg.output.t = detail::parse_number(key, value);
        } else {
            throw config_error("config: unknown key '" + key + "'");
        }
    }
    for (bool s : saw)
        if (!s) throw config_error("config: material block must set G, G0, rho, k and tau0");
    try {
        cfg.material.validate();
        cfg.quadrature.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    if (cfg.solver.N0 < 4 || cfg.solver.N_max < cfg.solver.N0 || !(cfg.solver.sif_tol > 0.0))
        throw config_error("config: solver block invalid (need N0 >= 4, N_max >= N0, sif_tol > 0)");
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    return parse_config(in);
}

}  // namespace stripcrack

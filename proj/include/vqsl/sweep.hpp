// Parameter sweeps over the initial-state families: configuration parsing,
// the grid runner, CSV output, and a simple SVG line chart.
//
// Configuration grammar (flat key = value, one per line):
//
//   # comment                     '#' starts a comment anywhere on a line
//   state_family = werner-psi0    werner-psi0 | werner-psi1 |
//                                 werner-psi1-swapped | horodecki
//   state_params = 0.3 0.5 1.0    whitespace-separated reals, ascending
//   gamma_grid   = 0.01 0.1 1     whitespace-separated reals, ascending
//   lambda       = 0.1            positive real
//   theta        = 1              real, |theta| <= 1
//   tau          = 1              positive real            (default 1)
//   quadrature_steps = 256        even integer >= 32       (default 256)
//   blp_enabled  = false          true | false             (default false)
//   blp_t_max    = 0              0 = automatic horizon    (default 0)
//   blp_dt       = 5e-3           positive real <= 1e-2    (default 5e-3)
//   blp_seed     = 12345          unsigned integer         (default 12345)
//   output_path  = sweep.csv                               (default sweep.csv)
//   emit_svg     = false          true | false             (default false)
//
// The first five keys are required. Unknown or duplicate keys are parse
// errors with a line diagnostic; domain violations are validation errors
// naming the field. The SVG (when requested) lands next to the CSV with
// the extension swapped to .svg.
//
// One output row per (state_param, gamma) pair, ordered by state_param
// then gamma. The BLP measure depends only on the channel, so with
// blp_enabled each gamma is measured once and shared across state_params.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vqsl/errors.hpp"
#include "vqsl/metrics.hpp"
#include "vqsl/parallel.hpp"
#include "vqsl/states.hpp"
#include "vqsl/tolerances.hpp"
#include "vqsl/vchannel.hpp"

namespace vqsl {

struct SweepConfig {
    StateFamily state_family = StateFamily::WernerPsi0;
    std::vector<double> state_params;
    std::vector<double> gamma_grid;
    double lambda = 0.0;
    double theta = 0.0;
    double tau = 1.0;
    int quadrature_steps = 256;
    bool blp_enabled = false;
    double blp_t_max = 0.0;
    double blp_dt = 5e-3;
    std::uint64_t blp_seed = 12345;
    std::string output_path = "sweep.csv";
    bool emit_svg = false;
};

struct SweepRow {
    StateFamily state_family;
    double state_param;
    double gamma;
    double lambda;
    double theta;
    double tau;
    double fidelity;
    double x_of_tau;
    double tau_qsl;
    double negativity;
    RegionLabel region;
    bool has_n_measure;
    double n_measure;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_real(const std::string& key, const std::string& text, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                         "' expects a real number, got '" + text + "'");
    }
    if (pos != text.size())
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                         "' has trailing characters in '" + text + "'");
    return v;
}

inline std::vector<double> parse_real_list(const std::string& key, const std::string& text,
                                           int line) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(parse_real(key, tok, line));
    return out;
}

inline bool parse_bool(const std::string& key, const std::string& text, int line) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw ParseError("line " + std::to_string(line) + ": key '" + key +
                     "' expects true or false, got '" + text + "'");
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& text, int line) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                         "' expects an unsigned integer, got '" + text + "'");
    try {
        return std::stoull(text);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                         "' overflows an unsigned integer");
    }
}

inline void require_ascending(const std::string& field, const std::vector<double>& v) {
    if (v.empty()) throw ValidationError(field + " must be non-empty");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) throw ValidationError(field + " must be strictly ascending");
}

}  // namespace detail

inline SweepConfig parse_config(const std::string& text) {
    SweepConfig cfg;
    std::map<std::string, int> seen;  // key -> first line

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool has_family = false, has_params = false, has_gammas = false, has_lambda = false,
         has_theta = false;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = detail::trim(raw);
        if (stripped.empty()) continue;

        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ParseError("line " + std::to_string(line) + ": empty key");
        if (value.empty())
            throw ParseError("line " + std::to_string(line) + ": key '" + key + "' has no value");
        auto [it, inserted] = seen.emplace(key, line);
        if (!inserted)
            throw ParseError("line " + std::to_string(line) + ": duplicate key '" + key +
                             "' (first on line " + std::to_string(it->second) + ")");

        if (key == "state_family") {
            cfg.state_family = parse_family(value);
            has_family = true;
        } else if (key == "state_params") {
            cfg.state_params = detail::parse_real_list(key, value, line);
            has_params = true;
        } else if (key == "gamma_grid") {
            cfg.gamma_grid = detail::parse_real_list(key, value, line);
            has_gammas = true;
        } else if (key == "lambda") {
            cfg.lambda = detail::parse_real(key, value, line);
            has_lambda = true;
        } else if (key == "theta") {
            cfg.theta = detail::parse_real(key, value, line);
            has_theta = true;
        } else if (key == "tau") {
            cfg.tau = detail::parse_real(key, value, line);
        } else if (key == "quadrature_steps") {
            const double v = detail::parse_real(key, value, line);
            cfg.quadrature_steps = static_cast<int>(v);
            if (static_cast<double>(cfg.quadrature_steps) != v)
                throw ParseError("line " + std::to_string(line) +
                                 ": quadrature_steps expects an integer");
        } else if (key == "blp_enabled") {
            cfg.blp_enabled = detail::parse_bool(key, value, line);
        } else if (key == "blp_t_max") {
            cfg.blp_t_max = detail::parse_real(key, value, line);
        } else if (key == "blp_dt") {
            cfg.blp_dt = detail::parse_real(key, value, line);
        } else if (key == "blp_seed") {
            cfg.blp_seed = detail::parse_uint(key, value, line);
        } else if (key == "output_path") {
            cfg.output_path = value;
        } else if (key == "emit_svg") {
            cfg.emit_svg = detail::parse_bool(key, value, line);
        } else {
            throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }

    if (!has_family) throw ValidationError("missing required key 'state_family'");
    if (!has_params) throw ValidationError("missing required key 'state_params'");
    if (!has_gammas) throw ValidationError("missing required key 'gamma_grid'");
    if (!has_lambda) throw ValidationError("missing required key 'lambda'");
    if (!has_theta) throw ValidationError("missing required key 'theta'");

    detail::require_ascending("state_params", cfg.state_params);
    detail::require_ascending("gamma_grid", cfg.gamma_grid);
    const bool is_werner = cfg.state_family != StateFamily::Horodecki;
    for (double v : cfg.state_params) {
        if (is_werner && !(v >= 0.0 && v <= 1.0))
            throw ValidationError("state_params: p out of [0,1]");
        if (!is_werner && !(v >= 0.0 && v <= 5.0))
            throw ValidationError("state_params: alpha out of [0,5]");
    }
    for (double g : cfg.gamma_grid)
        if (!(g > 0.0)) throw ValidationError("gamma_grid values must be positive");
    if (!(cfg.lambda > 0.0)) throw ValidationError("lambda must be positive");
    if (!(std::abs(cfg.theta) <= 1.0)) throw ValidationError("theta must satisfy |theta| <= 1");
    if (!(cfg.tau > 0.0)) throw ValidationError("tau must be positive");
    if (cfg.quadrature_steps < 32 || cfg.quadrature_steps % 2 != 0 ||
        cfg.quadrature_steps > tol::quad_max_intervals)
        throw ValidationError("quadrature_steps must be even, >= 32, and <= " +
                              std::to_string(tol::quad_max_intervals));
    if (cfg.blp_enabled) {
        if (!(cfg.blp_dt > 0.0) || cfg.blp_dt > 1e-2)
            throw ValidationError("blp_dt must lie in (0, 1e-2]");
        if (cfg.blp_t_max < 0.0) throw ValidationError("blp_t_max must be >= 0");
    }
    if (cfg.output_path.empty()) throw ValidationError("output_path must be non-empty");
    return cfg;
}

inline SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// The figure-style default gamma axis: 100 points log-spaced on [0.01, 5].
inline std::vector<double> default_gamma_grid() {
    std::vector<double> g(100);
    for (int i = 0; i < 100; ++i) g[i] = 0.01 * std::pow(500.0, i / 99.0);
    return g;
}

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned workers = 0) {
    const std::size_t np = cfg.state_params.size();
    const std::size_t ng = cfg.gamma_grid.size();

    // N depends on the channel only; one evaluation per gamma.
    std::vector<double> n_by_gamma(ng, 0.0);
    if (cfg.blp_enabled) {
        BlpOptions opt;
        opt.t_max = cfg.blp_t_max;
        opt.dt = cfg.blp_dt;
        opt.seed = cfg.blp_seed;
        parallel_for(
            ng,
            [&](std::size_t ig) {
                const ChannelParams p =
                    ChannelParams::symmetric(cfg.gamma_grid[ig], cfg.lambda, cfg.theta);
                try {
                    n_by_gamma[ig] = blp_measure(p, opt).n_measure;
                } catch (const Error& e) {
                    throw Error("blp at gamma=" + std::to_string(cfg.gamma_grid[ig]) +
                                ", lambda=" + std::to_string(cfg.lambda) + ": " + e.what());
                }
            },
            workers);
    }

    std::vector<SweepRow> rows(np * ng);
    parallel_for(
        np * ng,
        [&](std::size_t idx) {
            const std::size_t ip = idx / ng;
            const std::size_t ig = idx % ng;
            const double param = cfg.state_params[ip];
            const double gamma = cfg.gamma_grid[ig];
            try {
                const DensityMatrix rho0 = make_state(cfg.state_family, param);
                const ChannelParams p = ChannelParams::symmetric(gamma, cfg.lambda, cfg.theta);
                const QslResult q = qsl_time(rho0, p, cfg.tau, cfg.quadrature_steps);
                SweepRow& r = rows[idx];
                r.state_family = cfg.state_family;
                r.state_param = param;
                r.gamma = gamma;
                r.lambda = cfg.lambda;
                r.theta = cfg.theta;
                r.tau = cfg.tau;
                r.fidelity = q.fidelity;
                r.x_of_tau = q.x_of_tau;
                r.tau_qsl = q.tau_qsl;
                r.negativity = negativity(rho0);
                r.region = classify_region(cfg.state_family, param).label;
                r.has_n_measure = cfg.blp_enabled;
                r.n_measure = cfg.blp_enabled ? n_by_gamma[ig] : 0.0;
            } catch (const Error& e) {
                throw Error("sweep point (family=" + std::string(family_label(cfg.state_family)) +
                            ", param=" + std::to_string(param) +
                            ", gamma=" + std::to_string(gamma) + "): " + e.what());
            }
        },
        workers);
    return rows;
}

namespace detail {

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

inline std::string csv_string(const std::vector<SweepRow>& rows) {
    std::string out =
        "state_family,state_param,gamma,lambda,theta,tau,fidelity,x_of_tau,tau_qsl,"
        "negativity,region,n_measure\n";
    for (const SweepRow& r : rows) {
        out += family_label(r.state_family);
        for (double v : {r.state_param, r.gamma, r.lambda, r.theta, r.tau, r.fidelity, r.x_of_tau,
                         r.tau_qsl, r.negativity}) {
            out += ',';
            out += detail::fmt12(v);
        }
        out += ',';
        out += region_name(r.region);
        out += ',';
        if (r.has_n_measure) out += detail::fmt12(r.n_measure);
        out += '\n';
    }
    return out;
}

inline void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << csv_string(rows);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

namespace detail {

inline std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

// 800x600 line chart of tau_qsl against gamma, one polyline per
// state_param value, linear axes, small legend top right.
inline std::string svg_string(const std::vector<SweepRow>& rows) {
    if (rows.empty()) throw EmptyInputError("svg_string: no rows");

    std::vector<double> params;
    for (const SweepRow& r : rows)
        if (params.empty() || params.back() != r.state_param) params.push_back(r.state_param);

    double gx0 = rows.front().gamma, gx1 = gx0, y1 = 0.0;
    for (const SweepRow& r : rows) {
        gx0 = std::min(gx0, r.gamma);
        gx1 = std::max(gx1, r.gamma);
        y1 = std::max(y1, r.tau_qsl);
    }
    if (gx1 <= gx0) {
        gx0 -= 0.5;
        gx1 += 0.5;
    }
    if (y1 <= 0.0) y1 = 1e-12;
    y1 *= 1.05;

    // Plot area inside the fixed frame.
    const double px0 = 70.0, px1 = 770.0, py0 = 560.0, py1 = 30.0;
    auto x_of = [&](double g) { return px0 + (g - gx0) / (gx1 - gx0) * (px1 - px0); };
    auto y_of = [&](double v) { return py0 + v / y1 * (py1 - py0); };

    static const char* kPalette[8] = {"#1b6ca8", "#c0392b", "#1e8449", "#8e44ad",
                                      "#d68910", "#148f77", "#7b241c", "#2c3e50"};

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 800 600\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    s += "<line x1=\"70\" y1=\"560\" x2=\"770\" y2=\"560\" stroke=\"black\"/>\n";
    s += "<line x1=\"70\" y1=\"560\" x2=\"70\" y2=\"30\" stroke=\"black\"/>\n";
    s += "<text x=\"420\" y=\"592\" text-anchor=\"middle\" font-size=\"16\">gamma</text>\n";
    s += "<text x=\"18\" y=\"295\" text-anchor=\"middle\" font-size=\"16\" "
         "transform=\"rotate(-90 18 295)\">tau_qsl</text>\n";

    for (int k = 0; k <= 4; ++k) {
        const double g = gx0 + (gx1 - gx0) * k / 4.0;
        const double v = y1 * k / 4.0;
        const std::string xg = detail::fmt_coord(x_of(g));
        const std::string yv = detail::fmt_coord(y_of(v));
        s += "<line x1=\"" + xg + "\" y1=\"560\" x2=\"" + xg + "\" y2=\"565\" stroke=\"black\"/>\n";
        char lbl[32];
        std::snprintf(lbl, sizeof lbl, "%.3g", g);
        s += "<text x=\"" + xg + "\" y=\"578\" text-anchor=\"middle\" font-size=\"12\">" + lbl +
             "</text>\n";
        s += "<line x1=\"65\" y1=\"" + yv + "\" x2=\"70\" y2=\"" + yv + "\" stroke=\"black\"/>\n";
        std::snprintf(lbl, sizeof lbl, "%.3g", v);
        s += "<text x=\"60\" y=\"" + yv + "\" text-anchor=\"end\" font-size=\"12\">" + lbl +
             "</text>\n";
    }

    for (std::size_t ip = 0; ip < params.size(); ++ip) {
        const char* color = kPalette[ip % 8];
        std::string pts;
        for (const SweepRow& r : rows) {
            if (r.state_param != params[ip]) continue;
            if (!pts.empty()) pts += ' ';
            pts += detail::fmt_coord(x_of(r.gamma));
            pts += ',';
            pts += detail::fmt_coord(y_of(r.tau_qsl));
        }
        s += "<polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";

        const double ly = 40.0 + 18.0 * ip;
        const std::string lys = detail::fmt_coord(ly);
        s += "<line x1=\"640\" y1=\"" + lys + "\" x2=\"668\" y2=\"" + lys + "\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"1.5\"/>\n";
        char lbl[48];
        std::snprintf(lbl, sizeof lbl, "param %.6g", params[ip]);
        s += "<text x=\"674\" y=\"" + detail::fmt_coord(ly + 4.0) + "\" font-size=\"12\">" + lbl +
             "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

inline void render_svg(const std::vector<SweepRow>& rows, const std::string& path) {
    const std::string body = svg_string(rows);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << body;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

// The CSV path with its extension swapped to .svg.
inline std::string svg_path_for(const std::string& csv_path) {
    const std::size_t dot = csv_path.rfind('.');
    const std::size_t slash = csv_path.find_last_of("/\\");
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return csv_path.substr(0, dot) + ".svg";
    return csv_path + ".svg";
}

}  // namespace vqsl

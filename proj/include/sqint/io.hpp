#ifndef SQINT_IO_HPP
#define SQINT_IO_HPP

// Run configuration (JSON) and deterministic CSV / JSON emission.
// Result numbers carry 12 significant digits and are formatted with
// std::to_chars, which never consults the locale.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "sqint/error.hpp"
#include "sqint/fock.hpp"
#include "sqint/interferometer.hpp"
#include "sqint/resolution.hpp"

namespace sqint {

using nlohmann::json;

inline std::string format_number(double v, int digits = 12) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

/// v rounded to 12 significant digits; non-finite values become JSON null.
inline json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    const std::string s = format_number(v);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

enum class OutputFormat { csv, json };

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    std::size_t points = 2;
    bool log = false;

    bool operator==(const GridSpec&) const = default;

    void validate(const std::string& what) const {
        detail::require(std::isfinite(min) && std::isfinite(max) && min < max,
                        what + ": grid must be strictly increasing (min < max)");
        detail::require(points >= 2, what + ": grid needs at least 2 points");
        detail::require(!log || min > 0.0, what + ": log grid needs min > 0");
    }

    /// Closed grid [min, max], linear or log spaced.
    std::vector<double> closed() const { return log ? log_grid(min, max, points) : linear_grid(min, max, points); }

    /// Half-open periodic grid [min, max) with `points` equal steps.
    std::vector<double> half_open() const {
        std::vector<double> g(points);
        for (std::size_t k = 0; k < points; ++k) {
            g[k] = min + (max - min) * static_cast<double>(k) / static_cast<double>(points);
        }
        return g;
    }
};

struct RunConfig {
    InterferometerConfig interferometer = InterferometerConfig::ideal(1.0);
    Criterion criterion = Criterion::modified;
    double working_point = default_working_point;
    bool relocate_working_point = false;
    GridSpec phi_grid{0.0, 2.0 * std::numbers::pi, 1000, false};
    SweepParameter sweep_parameter = SweepParameter::G;
    GridSpec sweep_grid{0.5, 8.0, 60, true};
    std::size_t profile_points = 41;
    std::vector<double> oracle_gains{0.2, 0.5, 0.8};
    std::optional<std::size_t> n_max;
    unsigned threads = 1;
    std::string output;  ///< empty: standard output
    OutputFormat format = OutputFormat::csv;

    bool operator==(const RunConfig&) const = default;

    void validate() const {
        interferometer.validate();
        phi_grid.validate("phi grid");
        sweep_grid.validate("sweep grid");
        detail::require(std::isfinite(working_point), "working point must be finite");
        detail::require(profile_points >= 3, "profile_points must be >= 3");
        detail::require(threads >= 1, "threads must be >= 1");
    }
};

// ---------------------------------------------------------------------------
// JSON mapping

inline json to_json(const InterferometerConfig& c) {
    return {{"G", c.gain},           {"xi", c.xi},         {"alpha1", c.alpha1}, {"beta1", c.beta1},
            {"alpha2", c.alpha2},    {"beta2", c.beta2},   {"delta1", c.delta1}, {"delta2", c.delta2}};
}

namespace detail {

inline void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    require(j.is_object(), where + ": expected a JSON object");
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* key : keys) known = known || k == key;
        require(known, where + ": unknown key '" + k + "'");
    }
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) {
        try {
            out = j.at(key).get<T>();
        } catch (const json::exception& e) {
            throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
        }
    }
}

}  // namespace detail

/// Keys missing from j keep their value in c.
inline InterferometerConfig interferometer_from_json(const json& j, InterferometerConfig c = InterferometerConfig::ideal(1.0)) {
    detail::reject_unknown(j, {"G", "xi", "alpha1", "beta1", "alpha2", "beta2", "delta1", "delta2"}, "interferometer");
    detail::read(j, "G", c.gain);
    detail::read(j, "xi", c.xi);
    detail::read(j, "alpha1", c.alpha1);
    detail::read(j, "beta1", c.beta1);
    detail::read(j, "alpha2", c.alpha2);
    detail::read(j, "beta2", c.beta2);
    detail::read(j, "delta1", c.delta1);
    detail::read(j, "delta2", c.delta2);
    return c;
}

inline json to_json(const GridSpec& g) { return {{"min", g.min}, {"max", g.max}, {"points", g.points}, {"log", g.log}}; }

inline GridSpec grid_from_json(const json& j, GridSpec g) {
    detail::reject_unknown(j, {"min", "max", "points", "log"}, "grid");
    detail::read(j, "min", g.min);
    detail::read(j, "max", g.max);
    detail::read(j, "points", g.points);
    detail::read(j, "log", g.log);
    return g;
}

inline json to_json(const RunConfig& rc) {
    json j = {
        {"interferometer", to_json(rc.interferometer)},
        {"criterion", std::string(to_string(rc.criterion))},
        {"working_point", rc.working_point},
        {"relocate_working_point", rc.relocate_working_point},
        {"phi_grid", to_json(rc.phi_grid)},
        {"sweep", {{"param", std::string(to_string(rc.sweep_parameter))}, {"grid", to_json(rc.sweep_grid)}}},
        {"profile_points", rc.profile_points},
        {"oracle_gains", rc.oracle_gains},
        {"threads", rc.threads},
        {"output", rc.output},
        {"format", rc.format == OutputFormat::csv ? "csv" : "json"},
    };
    j["n_max"] = rc.n_max ? json(*rc.n_max) : json(nullptr);
    return j;
}

inline RunConfig run_config_from_json(const json& j) {
    detail::reject_unknown(j,
                           {"interferometer", "criterion", "working_point", "relocate_working_point", "phi_grid", "sweep",
                            "profile_points", "oracle_gains", "threads", "output", "format", "n_max"},
                           "config");
    RunConfig rc;
    if (j.contains("interferometer")) rc.interferometer = interferometer_from_json(j.at("interferometer"), rc.interferometer);
    if (j.contains("criterion")) {
        const auto c = parse_criterion(j.at("criterion").get<std::string>());
        detail::require(c.has_value(), "config: criterion must be 'standard' or 'modified'");
        rc.criterion = *c;
    }
    detail::read(j, "working_point", rc.working_point);
    detail::read(j, "relocate_working_point", rc.relocate_working_point);
    if (j.contains("phi_grid")) rc.phi_grid = grid_from_json(j.at("phi_grid"), rc.phi_grid);
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        detail::reject_unknown(s, {"param", "grid"}, "sweep");
        if (s.contains("param")) {
            const auto p = parse_sweep_parameter(s.at("param").get<std::string>());
            detail::require(p.has_value(), "config: unknown sweep parameter");
            rc.sweep_parameter = *p;
        }
        if (s.contains("grid")) rc.sweep_grid = grid_from_json(s.at("grid"), rc.sweep_grid);
    }
    detail::read(j, "profile_points", rc.profile_points);
    detail::read(j, "oracle_gains", rc.oracle_gains);
    detail::read(j, "threads", rc.threads);
    detail::read(j, "output", rc.output);
    if (j.contains("format")) {
        const std::string f = j.at("format").get<std::string>();
        detail::require(f == "csv" || f == "json", "config: format must be 'csv' or 'json'");
        rc.format = f == "csv" ? OutputFormat::csv : OutputFormat::json;
    }
    if (j.contains("n_max") && !j.at("n_max").is_null()) rc.n_max = j.at("n_max").get<std::size_t>();
    return rc;
}

// ---------------------------------------------------------------------------
// Result emission

inline json to_json(const ResolutionResult& r) {
    return {{"delta_phi", json_number(r.delta_phi)},
            {"criterion", std::string(to_string(r.criterion))},
            {"working_point", json_number(r.working_point)},
            {"kappa", json_number(r.kappa)},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"mean_N", json_number(r.mean_N)},
            {"residual", json_number(r.residual)},
            {"solver", r.solver},
            {"diagnostic", r.diagnostic}};
}

inline json to_json(const Delta2Optimum& o) {
    json profile = json::array();
    for (const auto& [d2, kappa] : o.profile) profile.push_back({{"delta2", json_number(d2)}, {"kappa", json_number(kappa)}});
    return {{"delta2_opt", json_number(o.delta2_opt)},
            {"kappa_opt", json_number(o.kappa_opt)},
            {"bracketed", o.bracketed},
            {"diagnostic", o.diagnostic},
            {"profile", profile}};
}

inline void write_signal_csv(std::ostream& os, const std::vector<SignalStats>& rows) {
    os << "phi,mean_P,sqrt_second_moment,sigma,mean_N\n";
    for (const SignalStats& s : rows) {
        os << format_number(s.phi) << ',' << format_number(s.mean_P) << ','
           << format_number(std::sqrt(s.second_moment_P)) << ',' << format_number(s.sigma) << ','
           << format_number(s.mean_N) << '\n';
    }
}

inline json signal_json(const std::vector<SignalStats>& rows) {
    json arr = json::array();
    for (const SignalStats& s : rows) {
        arr.push_back({{"phi", json_number(s.phi)},
                       {"mean_P", json_number(s.mean_P)},
                       {"sqrt_second_moment", json_number(std::sqrt(s.second_moment_P))},
                       {"sigma", json_number(s.sigma)},
                       {"mean_N", json_number(s.mean_N)}});
    }
    return arr;
}

/// 4/<N>, the reference line of the resolution-vs-gain plots.
inline double reference_four_over_n(double mean_n) {
    return mean_n > 0.0 ? 4.0 / mean_n : std::numeric_limits<double>::infinity();
}

inline void write_sweep_csv(std::ostream& os, const SweepTable& t) {
    os << "param,G,mean_N,delta_phi,kappa,converged,reference_4_over_N\n";
    for (const SweepRow& r : t.rows) {
        os << format_number(r.param) << ',' << format_number(r.gain) << ',' << format_number(r.mean_N) << ','
           << format_number(r.delta_phi) << ',' << format_number(r.kappa) << ',' << (r.converged ? 1 : 0) << ','
           << format_number(reference_four_over_n(r.mean_N)) << '\n';
    }
}

inline json sweep_json(const SweepTable& t) {
    json rows = json::array();
    for (const SweepRow& r : t.rows) {
        rows.push_back({{"param", json_number(r.param)},
                        {"G", json_number(r.gain)},
                        {"mean_N", json_number(r.mean_N)},
                        {"delta_phi", json_number(r.delta_phi)},
                        {"kappa", json_number(r.kappa)},
                        {"converged", r.converged},
                        {"reference_4_over_N", json_number(reference_four_over_n(r.mean_N))},
                        {"diagnostic", r.diagnostic}});
    }
    return {{"parameter", t.parameter}, {"rows", rows}};
}

inline json to_json(const OracleOutcome& o) {
    json j = {{"G", o.input.config.gain},       {"phi", o.input.phi},          {"alpha1", o.input.config.alpha1},
              {"beta1", o.input.config.beta1},  {"alpha2", o.input.config.alpha2}, {"beta2", o.input.config.beta2},
              {"delta1", o.input.config.delta1}, {"delta2", o.input.config.delta2}, {"n_max", o.n_max}};
    if (o.error.empty()) {
        j["deviation"] = json_number(o.deviation);
    } else {
        j["error"] = o.error;
    }
    return j;
}

}  // namespace sqint

#endif  // SQINT_IO_HPP

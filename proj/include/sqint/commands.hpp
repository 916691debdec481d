#ifndef SQINT_COMMANDS_HPP
#define SQINT_COMMANDS_HPP

// Subcommand bodies of the command-line tool. Each writes its report to `out`
// and returns the process exit code: 0 success, 2 numerical non-convergence.
// Configuration errors surface as InvalidArgument and map to exit code 1.

#include <algorithm>
#include <ostream>
#include <vector>

#include "sqint/fock.hpp"
#include "sqint/io.hpp"
#include "sqint/resolution.hpp"

namespace sqint {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_numerical = 2;

inline constexpr double oracle_tolerance = 1e-8;

inline ResolutionOptions resolution_options(const RunConfig& rc) {
    ResolutionOptions opt;
    opt.relocate_working_point = rc.relocate_working_point;
    return opt;
}

inline int cmd_signal(const RunConfig& rc, std::ostream& out) {
    rc.validate();
    std::vector<SignalStats> rows;
    for (double phi : rc.phi_grid.half_open()) rows.push_back(evaluate(rc.interferometer, phi));
    if (rc.format == OutputFormat::csv) {
        write_signal_csv(out, rows);
    } else {
        out << signal_json(rows).dump(2) << '\n';
    }
    return exit_ok;
}

inline int cmd_resolve(const RunConfig& rc, std::ostream& out) {
    rc.validate();
    const ResolutionResult r = resolve(rc.interferometer, rc.criterion, rc.working_point, resolution_options(rc));
    out << to_json(r).dump(2) << '\n';
    return r.converged ? exit_ok : exit_numerical;
}

inline int cmd_sweep(const RunConfig& rc, std::ostream& out) {
    rc.validate();
    const SweepTable t = sweep(rc.interferometer, rc.sweep_parameter, rc.sweep_grid.closed(), rc.criterion,
                               rc.working_point, resolution_options(rc), rc.threads);
    if (rc.format == OutputFormat::csv) {
        write_sweep_csv(out, t);
    } else {
        out << sweep_json(t).dump(2) << '\n';
    }
    const bool all = std::all_of(t.rows.begin(), t.rows.end(), [](const SweepRow& r) { return r.converged; });
    return all ? exit_ok : exit_numerical;
}

inline int cmd_optimize_imbalance(const RunConfig& rc, std::ostream& out) {
    rc.validate();
    const Delta2Optimum o = optimize_delta2(rc.interferometer, rc.interferometer.gain, rc.profile_points);
    out << to_json(o).dump(2) << '\n';
    return o.bracketed ? exit_ok : exit_numerical;
}

inline int cmd_oracle_check(const RunConfig& rc, std::ostream& out) {
    rc.validate();
    double worst = 0.0;
    json worst_case = nullptr;
    json errors = json::array();
    std::size_t cases = 0;
    for (const OracleCase& c : default_oracle_grid(rc.oracle_gains)) {
        const OracleOutcome o = check_oracle_case(c, rc.n_max);
        ++cases;
        if (!o.error.empty()) {
            errors.push_back(to_json(o));
            continue;
        }
        if (o.deviation >= worst) {
            worst = o.deviation;
            worst_case = to_json(o);
        }
    }
    const bool ok = errors.empty() && worst <= oracle_tolerance;
    const json report = {{"cases", cases},
                         {"max_deviation", json_number(worst)},
                         {"tolerance", oracle_tolerance},
                         {"passed", ok},
                         {"worst_case", worst_case},
                         {"cutoff_errors", errors}};
    out << report.dump(2) << '\n';
    return ok ? exit_ok : exit_numerical;
}

}  // namespace sqint

#endif  // SQINT_COMMANDS_HPP

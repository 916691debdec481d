// Command-line driver: signal curves, resolution solves, parameter sweeps,
// imbalance optimization and the Fock-oracle cross-check.

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqint/commands.hpp"

namespace {

using sqint::RunConfig;

struct Overrides {
    std::string config_path;
    std::optional<std::string> out, format, criterion, param;
    std::optional<double> min, max, phi_min, phi_max, working_point;
    std::optional<std::size_t> points, profile_points, n_max;
    std::optional<double> gain, xi, alpha1, beta1, alpha2, beta2, delta1, delta2, sym_alpha1, sym_alpha2;
    std::optional<unsigned> threads;
    std::vector<double> gains;
    bool log = false;
    bool degrees = false;
    bool relocate = false;
    bool print_config = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON run configuration");
    cmd->add_option("--out", o.out, "output file (default: standard output)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--criterion", o.criterion, "standard or modified")->check(CLI::IsMember({"standard", "modified"}));
    cmd->add_option("--param", o.param, "sweep parameter");
    cmd->add_option("--min", o.min, "sweep grid minimum");
    cmd->add_option("--max", o.max, "sweep grid maximum");
    cmd->add_option("--points", o.points, "number of grid points");
    cmd->add_flag("--log", o.log, "log-spaced sweep grid");
    cmd->add_option("--phi-min", o.phi_min, "phase grid start");
    cmd->add_option("--phi-max", o.phi_max, "phase grid end (exclusive)");
    cmd->add_option("--working-point", o.working_point, "working point phi");
    cmd->add_flag("--relocate", o.relocate, "move the working point to the local noise minimum");
    cmd->add_option("--G", o.gain, "single-pass gain");
    cmd->add_option("--xi", o.xi, "amplifier phase");
    cmd->add_option("--alpha1", o.alpha1);
    cmd->add_option("--beta1", o.beta1);
    cmd->add_option("--alpha2", o.alpha2);
    cmd->add_option("--beta2", o.beta2);
    cmd->add_option("--delta1", o.delta1);
    cmd->add_option("--delta2", o.delta2);
    cmd->add_option("--symmetric-alpha1", o.sym_alpha1, "sets alpha1 = beta1");
    cmd->add_option("--symmetric-alpha2", o.sym_alpha2, "sets alpha2 = beta2");
    cmd->add_flag("--degrees", o.degrees, "angles given on the command line are in degrees");
    cmd->add_option("--profile-points", o.profile_points, "samples of the kappa(delta2) profile");
    cmd->add_option("--gains", o.gains, "oracle-check gains")->delimiter(',');
    cmd->add_option("--n-max", o.n_max, "oracle photon cutoff per mode");
    cmd->add_option("--threads", o.threads, "worker threads for sweeps");
    cmd->add_flag("--print-config", o.print_config, "print the effective configuration as JSON and exit");
}

bool is_angle(sqint::SweepParameter p) { return p != sqint::SweepParameter::G; }

RunConfig build_config(const std::string& command, const Overrides& o) {
    RunConfig rc;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw sqint::InvalidArgument("cannot read config file " + o.config_path);
        sqint::json j;
        try {
            in >> j;
            rc = sqint::run_config_from_json(j);
        } catch (const sqint::json::exception& e) {
            throw sqint::InvalidArgument("config file " + o.config_path + ": " + e.what());
        }
    }
    const double angle = o.degrees ? std::numbers::pi / 180.0 : 1.0;
    auto set = [&](const std::optional<double>& v, double& field, double scale) {
        if (v) field = *v * scale;
    };
    auto& c = rc.interferometer;
    set(o.gain, c.gain, 1.0);
    set(o.xi, c.xi, angle);
    set(o.alpha1, c.alpha1, angle);
    set(o.beta1, c.beta1, angle);
    set(o.alpha2, c.alpha2, angle);
    set(o.beta2, c.beta2, angle);
    set(o.delta1, c.delta1, angle);
    set(o.delta2, c.delta2, angle);
    if (o.sym_alpha1) c.alpha1 = c.beta1 = *o.sym_alpha1 * angle;
    if (o.sym_alpha2) c.alpha2 = c.beta2 = *o.sym_alpha2 * angle;
    if (o.out) rc.output = *o.out;
    if (o.format) rc.format = *o.format == "csv" ? sqint::OutputFormat::csv : sqint::OutputFormat::json;
    if (o.criterion) rc.criterion = *sqint::parse_criterion(*o.criterion);
    if (o.param) {
        const auto p = sqint::parse_sweep_parameter(*o.param);
        if (!p) throw sqint::InvalidArgument("unknown sweep parameter '" + *o.param + "'");
        rc.sweep_parameter = *p;
    }
    const double sweep_scale = is_angle(rc.sweep_parameter) ? angle : 1.0;
    set(o.min, rc.sweep_grid.min, sweep_scale);
    set(o.max, rc.sweep_grid.max, sweep_scale);
    if (o.log) rc.sweep_grid.log = true;
    set(o.phi_min, rc.phi_grid.min, angle);
    set(o.phi_max, rc.phi_grid.max, angle);
    if (o.points) (command == "signal" ? rc.phi_grid.points : rc.sweep_grid.points) = *o.points;
    set(o.working_point, rc.working_point, angle);
    if (o.relocate) rc.relocate_working_point = true;
    if (o.profile_points) rc.profile_points = *o.profile_points;
    if (!o.gains.empty()) rc.oracle_gains = o.gains;
    if (o.n_max) rc.n_max = *o.n_max;
    if (o.threads) rc.threads = *o.threads;
    return rc;
}

int run(const std::string& command, const RunConfig& rc, std::ostream& out) {
    if (command == "signal") return sqint::cmd_signal(rc, out);
    if (command == "resolve") return sqint::cmd_resolve(rc, out);
    if (command == "sweep") return sqint::cmd_sweep(rc, out);
    if (command == "optimize-imbalance") return sqint::cmd_optimize_imbalance(rc, out);
    return sqint::cmd_oracle_check(rc, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode squeezed vacuum interferometry with homodyne product detection"};
    app.require_subcommand(1);
    Overrides o;
    const char* names[][2] = {
        {"signal", "signal mean, second moment and spread over a phase grid (CSV)"},
        {"resolve", "minimum detectable phase shift at the working point (JSON)"},
        {"sweep", "resolution over a grid of one parameter"},
        {"optimize-imbalance", "minimize kappa over the second beam-splitter imbalance"},
        {"oracle-check", "compare the Gaussian engine against the Fock-space oracle"},
    };
    for (const auto& [name, help] : names) add_common(app.add_subcommand(name, help), o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return sqint::exit_usage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        const RunConfig rc = build_config(command, o);
        if (o.print_config) {
            std::cout << sqint::to_json(rc).dump(2) << '\n';
            return sqint::exit_ok;
        }
        rc.validate();
        if (rc.output.empty()) return run(command, rc, std::cout);
        std::ostringstream buffer;
        const int code = run(command, rc, buffer);
        std::ofstream file(rc.output, std::ios::binary);
        if (!file || !(file << buffer.str()) || !file.flush()) {
            std::cerr << "error: cannot write output file " << rc.output << '\n';
            return sqint::exit_usage;
        }
        return code;
    } catch (const sqint::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sqint::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sqint::exit_numerical;
    }
}

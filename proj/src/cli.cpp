#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spinclock/cli.hpp"

namespace spinclock {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Plain key=value lines mirroring the long flags ("t-max=2"). Values already
// given as flags win; everything else is fed through the option's own parser
// so type checks and delimiters behave exactly as on the command line.
// (CLI11's set_config only fires on the top-level app, not on subcommands,
// so the file is applied by hand inside each subcommand callback.)
void apply_config_file(CLI::App* sub, const std::string& path) {
    if (path.empty())
        return;
    std::ifstream in(path);
    if (!in)
        throw DomainError("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';')
            continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw DomainError("config: line " + std::to_string(lineno) +
                              " is not a key=value pair");
        const std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw DomainError("config: line " + std::to_string(lineno) + " has an empty key");
        if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                                  (value.front() == '\'' && value.back() == '\'')))
            value = value.substr(1, value.size() - 2);
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw DomainError("config: unknown key '" + key + "' (no --" + key + " flag on '" +
                              sub->get_name() + "')");
        if (opt->count() > 0)
            continue; // flags override the file
        opt->add_result(value);
        opt->run_callback();
    }
}

// Required-option checks must run after the config file is applied, so the
// built-in ->required() (checked before subcommand callbacks) cannot be used.
void require_option(const CLI::App* sub, const std::string& name) {
    if (sub->get_option(name)->count() == 0)
        throw DomainError(sub->get_name() + ": " + name +
                          " is required (as a flag or a config key)");
}

void add_param_options(CLI::App* sub, ModelParams& p, std::string& config_path) {
    sub->add_option("--theta", p.theta, "register rotation angle in radians")
        ->capture_default_str();
    sub->add_option("--epsilon", p.epsilon, "bath coupling strength (>= 0)")
        ->capture_default_str();
    sub->add_option("--mu", p.mu, "bath asymmetry in [-1, 1]")->capture_default_str();
    sub->add_option("--config", config_path,
                    "key=value file mirroring the flags (flags override the file)");
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"three-spin machine under Lindblad dynamics: numerical propagation, "
                 "closed-form solutions, and their cross-validation"};
    app.require_subcommand(1);
    int rc = 0;

    // simulate
    RunConfig cfg;
    std::string method_name_arg = "auto";
    std::vector<std::string> observables_arg;
    std::string sim_config;
    auto* sim = app.add_subcommand("simulate", "propagate and write observable channels as CSV");
    add_param_options(sim, cfg.params, sim_config);
    sim->add_option("--t-max", cfg.t_max, "end of the time window")->capture_default_str();
    sim->add_option("--dt", cfg.dt, "integrator step; with --sample-every fixes the output grid")
        ->capture_default_str();
    sim->add_option("--sample-every", cfg.sample_every, "emit every n-th step")
        ->capture_default_str();
    sim->add_option("--method", method_name_arg, "analytic|rk4|expm|unitary|auto")
        ->capture_default_str();
    auto* obs_opt = sim->add_option("--observables", observables_arg,
                                    "comma-separated channel list (default: all real channels)")
                        ->delimiter(',');
    sim->add_option("--out", cfg.output_path, "output CSV path (required)");
    sim->callback([&] {
        apply_config_file(sim, sim_config);
        require_option(sim, "--out");
        cfg.method = parse_method(method_name_arg);
        if (obs_opt->count() == 0) {
            cfg.observables = default_channels();
        } else {
            cfg.observables.clear();
            for (const auto& name : observables_arg)
                if (!name.empty())
                    cfg.observables.push_back(name);
        }
        rc = cmd_simulate(cfg);
    });

    // spectrum
    ModelParams spectrum_params;
    std::string spectrum_out;
    std::string spectrum_config;
    bool theta_sweep = false;
    auto* spec = app.add_subcommand(
        "spectrum", "block eigenvalues: numeric, closed-form, and relaxation scales");
    add_param_options(spec, spectrum_params, spectrum_config);
    spec->add_option("--out", spectrum_out, "output CSV path (required)");
    spec->add_flag("--theta-sweep", theta_sweep,
                   "sweep theta over [0, pi] and emit Re of the four slow eigenvalues");
    spec->callback([&] {
        apply_config_file(spec, spectrum_config);
        require_option(spec, "--out");
        rc = cmd_spectrum(spectrum_params, spectrum_out, theta_sweep);
    });

    // ness
    ModelParams ness_params;
    std::string ness_out;
    std::string ness_config;
    auto* ness_cmd =
        app.add_subcommand("ness", "stationary state, its entropy, and entropy asymptotics");
    add_param_options(ness_cmd, ness_params, ness_config);
    ness_cmd->add_option("--out", ness_out, "output CSV path (required)");
    ness_cmd->callback([&] {
        apply_config_file(ness_cmd, ness_config);
        require_option(ness_cmd, "--out");
        rc = cmd_ness(ness_params, ness_out);
    });

    // validate
    ModelParams validate_params;
    double validate_t_max = 30.0;
    double validate_tol = 1e-6;
    std::string validate_config;
    auto* val = app.add_subcommand(
        "validate", "closed forms vs numerical propagation; nonzero exit on disagreement");
    add_param_options(val, validate_params, validate_config);
    val->add_option("--t-max", validate_t_max, "end of the comparison window")
        ->capture_default_str();
    val->add_option("--tol", validate_tol, "pass/fail tolerance")->capture_default_str();
    val->callback([&] {
        apply_config_file(val, validate_config);
        rc = cmd_validate(validate_params, validate_t_max, validate_tol);
    });

    // figures
    int figure_id = 0;
    std::string figures_out = ".";
    std::string figures_config;
    auto* fig = app.add_subcommand("figures", "regenerate the data behind a published figure");
    fig->add_option("--fig", figure_id, "figure id, 2..6 (required)");
    fig->add_option("--out", figures_out, "output directory")->capture_default_str();
    fig->add_option("--config", figures_config,
                    "key=value file mirroring the flags (flags override the file)");
    fig->callback([&] {
        apply_config_file(fig, figures_config);
        require_option(fig, "--fig");
        rc = cmd_figures(figure_id, figures_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the parse error
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace spinclock

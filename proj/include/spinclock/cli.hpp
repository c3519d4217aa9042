#pragma once

#include <string>
#include <vector>

#include "spinclock/dynamics.hpp"
#include "spinclock/model.hpp"

namespace spinclock {

// One simulation run: propagate on the uniform grid {0, dt*sample_every, ...}
// covering [0, t_max] and write the requested channels as CSV.
struct RunConfig {
    ModelParams params;
    double t_max = 30.0;
    double dt = 1e-3;
    int sample_every = 10;
    Method method = Method::Auto;
    std::vector<std::string> observables; // channel names; empty list = header-only output
    std::string output_path;
};

// Method auto resolution: analytic when epsilon > 0 and the slow eigenvalues
// are non-degenerate, unitary when epsilon = 0, expm otherwise.
Method resolve_auto(const ModelParams& p);

// Data behind one panel of a published figure.
struct FigurePanel {
    enum class Kind { TimeSeries, OmegaSweep };
    Kind kind = Kind::TimeSeries;
    std::string suffix;                // output file: fig<id>_<suffix>.csv
    std::vector<std::string> channels; // TimeSeries: channel columns after t
    double t_max = 0.0;
    double step = 0.01;
};

// Parameters and panel layout of each figure, fixed by its published caption.
struct FigureSpec {
    int figure_id = 0;
    ModelParams params;
    std::vector<FigurePanel> panels;

    static FigureSpec for_figure(int id); // DomainError unless id in 2..6
};

// Channel registry. Real channels emit one column named after the channel;
// complex channels emit <name>_re,<name>_im.
const std::vector<std::string>& known_channels();
bool channel_is_complex(const std::string& name);
std::vector<std::string> default_channels(); // every real channel
std::vector<std::string> csv_columns(const std::vector<std::string>& channels);

// One CSV cell: %.17g, '.' decimal, no locale dependence.
std::string format_g17(double x);

// Writes rows (already formatted) under a header, atomically: the file
// appears under `path` only once complete (temp file + rename).
void write_csv_atomic(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// Propagates per the config's method (resolving auto); a defective generator
// demotes expm to rk4 with a note on `diag`. Throws on configuration errors.
Trajectory run_trajectory(const RunConfig& cfg, std::ostream& diag);

// Subcommands; each returns the process exit code
// (0 = success/pass, 1 = validation failure, 2 = configuration error).
int cmd_simulate(const RunConfig& cfg);
int cmd_spectrum(const ModelParams& p, const std::string& out, bool theta_sweep);
int cmd_ness(const ModelParams& p, const std::string& out);
int cmd_validate(const ModelParams& p, double t_max, double tol);
int cmd_figures(int figure_id, const std::string& out_dir);

// Full argv-to-exit-code surface.
int run_cli(int argc, const char* const* argv);

} // namespace spinclock

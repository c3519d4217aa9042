#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "spinclock/analytic.hpp"
#include "spinclock/cli.hpp"
#include "spinclock/liouvillian.hpp"
#include "spinclock/observables.hpp"

namespace spinclock {

namespace {
constexpr double kPi = std::numbers::pi;

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

double real_channel(const std::string& name, const ObservableRecord& r) {
    if (name == "n3L") return r.n3L;
    if (name == "n3L1") return r.n3L1;
    if (name == "joint_pp") return r.joint.pp;
    if (name == "joint_pm") return r.joint.pm;
    if (name == "joint_mp") return r.joint.mp;
    if (name == "joint_mm") return r.joint.mm;
    if (name == "m1") return r.m1;
    if (name == "m2") return r.m2;
    if (name == "m3") return r.m3;
    if (name == "current") return r.current;
    if (name == "chirality") return r.chirality;
    if (name == "s_reg") return r.s_reg;
    if (name == "s_cur") return r.s_cur;
    if (name == "s_tot") return r.s_tot;
    throw DomainError("unknown real channel '" + name + "'");
}

Complex complex_channel(const std::string& name, const ComplexMatrix& rho) {
    if (name == "m") { // register coherence m(t) = 2 sum_j rho(j, j+4)
        Complex m = 0.0;
        for (int j = 0; j < 4; ++j)
            m += rho(j, j + 4);
        return 2.0 * m;
    }
    if (name == "rho23") return rho(1, 2);
    if (name == "rho27") return rho(1, 6);
    throw DomainError("unknown complex channel '" + name + "'");
}

void require_known_channels(const std::vector<std::string>& names) {
    const auto& known = known_channels();
    for (const auto& n : names)
        if (std::find(known.begin(), known.end(), n) == known.end())
            throw DomainError("unknown observable channel '" + n + "'");
}

std::vector<std::vector<std::string>> channel_rows(const Trajectory& traj,
                                                   const std::vector<std::string>& channels) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const ComplexMatrix& rho = traj.states[i];
        const ObservableRecord rec = observe(traj.times[i], rho);
        std::vector<std::string> row;
        row.push_back(format_g17(rec.t));
        for (const auto& name : channels) {
            if (channel_is_complex(name)) {
                const Complex v = complex_channel(name, rho);
                row.push_back(format_g17(v.real()));
                row.push_back(format_g17(v.imag()));
            } else {
                row.push_back(format_g17(real_channel(name, rec)));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_time_series(const RunConfig& cfg) {
    require_known_channels(cfg.observables);
    if (cfg.output_path.empty())
        throw DomainError("an output path is required");
    if (cfg.observables.empty()) {
        write_csv_atomic(cfg.output_path, {"t"}, {});
        return;
    }
    const Trajectory traj = run_trajectory(cfg, std::cerr);
    write_csv_atomic(cfg.output_path, csv_columns(cfg.observables),
                     channel_rows(traj, cfg.observables));
}

void write_theta_sweep(const ModelParams& p, const std::string& out) {
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i <= 200; ++i) {
        ModelParams q = p;
        q.theta = kPi * i / 200.0;
        const OmegaSet ws = omega_eigenvalues(q); // sorted by ascending Re
        std::vector<std::string> row{format_g17(q.theta)};
        for (const Complex& w : ws.omegas)
            row.push_back(format_g17(w.real()));
        rows.push_back(std::move(row));
    }
    write_csv_atomic(out, {"theta", "re_omega_1", "re_omega_2", "re_omega_3", "re_omega_4"},
                     rows);
}
} // namespace

Method resolve_auto(const ModelParams& p) {
    p.validate();
    if (p.epsilon == 0.0)
        return Method::Unitary;
    return omega_eigenvalues(p).degenerate ? Method::Expm : Method::Analytic;
}

FigureSpec FigureSpec::for_figure(int id) {
    using Kind = FigurePanel::Kind;
    const double kStep = 0.01;
    FigureSpec spec;
    spec.figure_id = id;
    auto panel = [&](const std::string& suffix, std::vector<std::string> channels,
                     double t_max) {
        spec.panels.push_back({Kind::TimeSeries, suffix, std::move(channels), t_max, kStep});
    };
    switch (id) {
    case 2: // idealized (closed) operation
        spec.params = {kPi / 2, 0.0, 0.0};
        panel("a", {"m2", "m3"}, 2 * kPi);
        panel("b", {"m2", "m3"}, 2 * kPi);
        panel("c", {"s_reg"}, 2 * kPi);
        panel("d", {"n3L", "n3L1"}, 2 * kPi);
        break;
    case 3: // symmetric reservoirs
        spec.params = {kPi / 2, 0.1, 0.0};
        panel("a", {"m2", "m3"}, 90 * kPi);
        panel("b", {"m2", "m3"}, 4 * kPi);
        panel("c", {"s_tot", "s_cur", "s_reg"}, 4 * kPi);
        panel("d", {"n3L", "n3L1"}, 4 * kPi);
        break;
    case 4: // biased reservoirs, "battery" regime
        spec.params = {kPi / 2, 0.1, -1.0};
        panel("a", {"m2", "m3"}, 90 * kPi);
        panel("b", {"m2", "m3"}, 4 * kPi);
        panel("c", {"s_tot", "s_cur", "s_reg"}, 4 * kPi);
        panel("d", {"n3L", "n3L1"}, 4 * kPi);
        break;
    case 5: // strong coupling; panel (b) sweeps the slow eigenvalues over theta
        spec.params = {kPi / 10, 1.0, -1.0};
        panel("a", {"m2", "m3"}, 4 * kPi);
        spec.panels.push_back({Kind::OmegaSweep, "b", {}, 0.0, 0.0});
        panel("c", {"s_tot", "s_cur", "s_reg"}, 4 * kPi);
        panel("d", {"n3L", "n3L1"}, 4 * kPi);
        break;
    case 6: // mean chirality under dissipation
        spec.params = {kPi / 2, 0.1, -1.0};
        panel("", {"chirality"}, 10 * kPi);
        break;
    default:
        throw DomainError("unknown figure id " + std::to_string(id) + " (expected 2..6)");
    }
    return spec;
}

const std::vector<std::string>& known_channels() {
    static const std::vector<std::string> names = {
        "n3L", "n3L1", "joint_pp", "joint_pm", "joint_mp", "joint_mm", "m1", "m2",
        "m3",  "current", "chirality", "s_reg", "s_cur", "s_tot", "m", "rho23", "rho27"};
    return names;
}

bool channel_is_complex(const std::string& name) {
    return name == "m" || name == "rho23" || name == "rho27";
}

std::vector<std::string> default_channels() {
    std::vector<std::string> names;
    for (const auto& n : known_channels())
        if (!channel_is_complex(n))
            names.push_back(n);
    return names;
}

std::vector<std::string> csv_columns(const std::vector<std::string>& channels) {
    std::vector<std::string> cols{"t"};
    for (const auto& name : channels) {
        if (channel_is_complex(name)) {
            cols.push_back(name + "_re");
            cols.push_back(name + "_im");
        } else {
            cols.push_back(name);
        }
    }
    return cols;
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv_atomic(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path())
        fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";

    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw Error("cannot open '" + tmp.string() + "' for writing");
        auto emit = [&f](const std::vector<std::string>& fields) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (i)
                    f << ',';
                f << fields[i];
            }
            f << '\n';
        };
        emit(header);
        for (const auto& row : rows)
            emit(row);
        f.flush();
        if (!f)
            throw Error("failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

Trajectory run_trajectory(const RunConfig& cfg, std::ostream& diag) {
    cfg.params.validate();
    if (!(cfg.dt > 0.0) || cfg.dt > 0.1)
        throw StepSizeError("dt must lie in (0, 0.1]");
    if (cfg.sample_every < 1)
        throw DomainError("sample-every must be >= 1");
    if (!(cfg.t_max >= 0.0))
        throw DomainError("t-max must be >= 0");

    const Method method = cfg.method == Method::Auto ? resolve_auto(cfg.params) : cfg.method;
    const std::vector<double> grid = sample_times(cfg.t_max, cfg.dt * cfg.sample_every);

    switch (method) {
    case Method::Rk4:
        return propagate_rk4(assemble(cfg.params), initial_state(), cfg.t_max, cfg.dt,
                             cfg.sample_every);
    case Method::Expm:
        try {
            return propagate_expm(assemble(cfg.params), initial_state(), grid);
        } catch (const NonDiagonalizable& e) {
            diag << "note: " << e.what() << "; falling back to rk4\n";
            return propagate_rk4(assemble(cfg.params), initial_state(), cfg.t_max, cfg.dt,
                                 cfg.sample_every);
        }
    case Method::Unitary:
        if (cfg.params.epsilon != 0.0)
            throw DomainError("method unitary ignores the baths; it requires epsilon = 0");
        return propagate_unitary(build_hamiltonian(cfg.params), initial_state(), grid);
    case Method::Analytic: {
        if (!(cfg.params.epsilon > 0.0))
            throw DomainError("method analytic requires epsilon > 0 (use unitary at epsilon = 0)");
        const OmegaSet ws = omega_eigenvalues(cfg.params);
        if (ws.degenerate)
            throw DegenerateOmegas("method analytic unavailable: slow eigenvalues are degenerate "
                                   "(min gap " + std::to_string(ws.min_gap) + "); use expm or rk4");
        Trajectory traj;
        traj.method = Method::Analytic;
        traj.times = grid;
        traj.states.reserve(grid.size());
        for (double t : grid)
            traj.states.push_back(assemble_analytic_state(cfg.params, t, ws.omegas).dense());
        return traj;
    }
    case Method::Auto:
        break; // resolved above
    }
    throw DomainError("unresolved propagation method");
}

int cmd_simulate(const RunConfig& cfg) {
    write_time_series(cfg);
    std::cout << "wrote " << cfg.output_path << "\n";
    return 0;
}

int cmd_spectrum(const ModelParams& p, const std::string& out, bool theta_sweep) {
    p.validate();
    if (out.empty())
        throw DomainError("spectrum: an output path is required");
    if (theta_sweep) {
        write_theta_sweep(p, out);
        std::cout << "wrote " << out << "\n";
        return 0;
    }

    const BlockSystem blocks = split_blocks(assemble(p));
    std::vector<std::vector<std::string>> rows;
    auto add = [&rows](const std::string& source, const std::string& label, Complex v,
                       int multiplicity) {
        rows.push_back({source, label, format_g17(v.real()), format_g17(v.imag()),
                        std::to_string(multiplicity)});
    };

    const std::pair<const char*, const ComplexMatrix*> named_blocks[] = {
        {"mpp", &blocks.mpp}, {"mmm", &blocks.mmm}, {"mpm", &blocks.mpm}, {"mmp", &blocks.mmp}};
    for (const auto& [name, m] : named_blocks) {
        Eigen::ComplexEigenSolver<ComplexMatrix> es(*m, /*computeEigenvectors=*/false);
        std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + 16);
        std::sort(ev.begin(), ev.end(), complex_less);
        for (int i = 0; i < 16; ++i)
            add("numeric", std::string(name) + "_" + std::to_string(i), ev[i], 1);
    }

    auto roots = mpp_charpoly_roots(p);
    std::sort(roots.begin(), roots.end(), complex_less);
    for (int i = 0; i < 16; ++i)
        add("closed_form", "mpp_root_" + std::to_string(i), roots[i], 1);

    const OmegaSet ws = omega_eigenvalues(p);
    for (int i = 0; i < 4; ++i)
        add("closed_form", "omega_" + std::to_string(i + 1), ws.omegas[i], 1);
    for (int i = 0; i < 4; ++i)
        add("closed_form", "zeta_" + std::to_string(i + 1), ws.zetas[i], 2);
    add("diagnostic", "omega_min_gap", ws.min_gap, 1);
    add("diagnostic", "omega_degenerate", ws.degenerate ? 1.0 : 0.0, 1);
    add("diagnostic", "omega_match_residual", ws.match_residual, 1);
    if (p.epsilon > 0.0) {
        const RelaxationTimes rt = relaxation_times(p);
        add("diagnostic", "relaxation_register", rt.register_time, 1);
        add("diagnostic", "relaxation_cursor", rt.cursor_time, 1);
    }

    write_csv_atomic(out, {"source", "label", "re", "im", "multiplicity"}, rows);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_ness(const ModelParams& p, const std::string& out) {
    p.validate();
    if (out.empty())
        throw DomainError("ness: an output path is required");
    const NessState n = ness(p); // DomainError at epsilon = 0

    std::vector<std::vector<std::string>> rows;
    for (const auto& [jk, v] : n.entries)
        rows.push_back({"entry", std::to_string(jk.first), std::to_string(jk.second),
                        format_g17(v.real()), format_g17(v.imag())});
    auto scalar = [&rows](const std::string& name, double v) {
        rows.push_back({name, "0", "0", format_g17(v), format_g17(0.0)});
    };
    scalar("s_ness", n.entropy);
    const AsymptoticEntropies a = asymptotic_entropies(p);
    scalar("s_reg_inf", a.s_reg_inf);
    scalar("s_total_series", a.s_total_series);
    scalar("s_cursor_series", a.s_cursor_series);
    scalar("residual_norm",
           (assemble(p).matrix * vec(n.dense())).cwiseAbs().maxCoeff());

    write_csv_atomic(out, {"record", "j", "k", "value_re", "value_im"}, rows);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_validate(const ModelParams& p, double t_max, double tol) {
    p.validate();
    if (!(t_max > 0.0))
        throw DomainError("validate: t-max must be > 0");
    if (!(tol > 0.0))
        throw DomainError("validate: tol must be > 0");

    std::ostream& os = std::cout;
    os << "validate: theta=" << format_g17(p.theta) << " epsilon=" << format_g17(p.epsilon)
       << " mu=" << format_g17(p.mu) << " t_max=" << format_g17(t_max)
       << " tol=" << format_g17(tol) << "\n";

    const double dt = 1e-3;
    long k = std::lround(t_max / 200.0 / dt);
    if (k < 1)
        k = 1;
    const std::vector<double> grid = sample_times(t_max, dt * static_cast<double>(k));
    os << "grid: " << grid.size() << " samples, step " << format_g17(dt * static_cast<double>(k))
       << ", rk4 dt " << format_g17(dt) << "\n";

    const Superoperator s = assemble(p);
    const ComplexMatrix rho0 = initial_state();

    Trajectory ref;
    bool expm_ok = true;
    try {
        ref = propagate_expm(s, rho0, grid);
    } catch (const NonDiagonalizable& e) {
        expm_ok = false;
        os << "note: " << e.what() << "; using rk4 as the numerical reference\n";
        ref = propagate_rk4(s, rho0, t_max, dt, static_cast<int>(k));
    }

    double worst = 0.0; // the overall pass/fail scale
    if (expm_ok) {
        const Trajectory rk = propagate_rk4(s, rho0, t_max, dt, static_cast<int>(k));
        double dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            dev = std::max(dev, (rk.states[i] - ref.states[i]).cwiseAbs().maxCoeff());
        os << "rk4 vs expm: max elementwise deviation " << format_g17(dev) << "\n";
        worst = std::max(worst, dev);
    }

    if (p.epsilon == 0.0) {
        // closed system: the printed ballistic formulas against the propagator
        double dev_n3L = 0, dev_n3L1 = 0, dev_m1 = 0, dev_m2 = 0, dev_m3 = 0, dev_sreg = 0,
               dev_chi = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const ObservableRecord rec = observe(grid[i], ref.states[i]);
            const BallisticObservables b = ballistic_observables(p.theta, grid[i]);
            dev_n3L = std::max(dev_n3L, std::abs(rec.n3L - b.n3L));
            dev_n3L1 = std::max(dev_n3L1, std::abs(rec.n3L1 - b.n3L1));
            dev_m1 = std::max(dev_m1, std::abs(rec.m1 - b.m1));
            dev_m2 = std::max(dev_m2, std::abs(rec.m2 - b.m2));
            dev_m3 = std::max(dev_m3, std::abs(rec.m3 - b.m3));
            dev_sreg = std::max(dev_sreg, std::abs(rec.s_reg - b.s_reg));
            dev_chi = std::max(dev_chi, std::abs(rec.chirality - b.chirality));
        }
        os << "ballistic channel deviations vs numerical propagation:\n";
        const std::pair<const char*, double> devs[] = {
            {"n3L", dev_n3L}, {"n3L1", dev_n3L1}, {"m1", dev_m1},       {"m2", dev_m2},
            {"m3", dev_m3},   {"s_reg", dev_sreg}, {"chirality", dev_chi}};
        for (const auto& [name, dev] : devs) {
            os << "  " << name << " " << format_g17(dev) << "\n";
            worst = std::max(worst, dev);
        }
    } else {
        const OmegaSet ws = omega_eigenvalues(p);
        if (ws.degenerate) {
            os << "analytic path skipped: slow eigenvalues degenerate (min gap "
               << format_g17(ws.min_gap) << ")\n";
        } else {
            Eigen::Matrix<double, kDim, kDim> entry_dev;
            entry_dev.setZero();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const ComplexMatrix a = assemble_analytic_state(p, grid[i], ws.omegas).dense();
                entry_dev = entry_dev.cwiseMax((a - ref.states[i]).cwiseAbs());
            }
            double entry_worst = 0.0;
            int wj = 1, wk = 1;
            for (int j = 0; j < kDim; ++j)
                for (int kk = 0; kk < kDim; ++kk)
                    if (entry_dev(j, kk) > entry_worst) {
                        entry_worst = entry_dev(j, kk);
                        wj = j + 1;
                        wk = kk + 1;
                    }
            os << "analytic vs numeric: worst matrix entry (" << wj << "," << wk << ") deviation "
               << format_g17(entry_worst) << "\n";
            bool listed = false;
            for (int j = 0; j < kDim; ++j)
                for (int kk = 0; kk < kDim; ++kk)
                    if (entry_dev(j, kk) > tol) {
                        os << "  suspect entry (" << j + 1 << "," << kk + 1 << "): deviation "
                           << format_g17(entry_dev(j, kk))
                           << " exceeds tol (possible transcription error)\n";
                        listed = true;
                    }
            if (!listed)
                os << "  no matrix entry deviates beyond tol\n";
            worst = std::max(worst, entry_worst);
        }
    }

    const bool pass = worst <= tol;
    os << (pass ? "[PASS]" : "[FAIL]") << " max deviation " << format_g17(worst) << " vs tol "
       << format_g17(tol) << "\n";
    return pass ? 0 : 1;
}

int cmd_figures(int figure_id, const std::string& out_dir) {
    const FigureSpec spec = FigureSpec::for_figure(figure_id);
    for (const FigurePanel& panel : spec.panels) {
        std::string name = "fig" + std::to_string(spec.figure_id);
        if (!panel.suffix.empty())
            name += "_" + panel.suffix;
        const std::string path =
            (std::filesystem::path(out_dir) / (name + ".csv")).string();
        if (panel.kind == FigurePanel::Kind::OmegaSweep) {
            write_theta_sweep(spec.params, path);
        } else {
            RunConfig cfg;
            cfg.params = spec.params;
            cfg.t_max = panel.t_max;
            cfg.dt = panel.step;
            cfg.sample_every = 1;
            cfg.method = Method::Auto;
            cfg.observables = panel.channels;
            cfg.output_path = path;
            write_time_series(cfg);
        }
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

} // namespace spinclock

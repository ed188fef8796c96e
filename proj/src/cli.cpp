#include "crawlerlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "crawlerlab/bifurcation.hpp"
#include "crawlerlab/config.hpp"
#include "crawlerlab/describing.hpp"
#include "crawlerlab/errors.hpp"
#include "crawlerlab/gsp.hpp"
#include "crawlerlab/oracles.hpp"
#include "crawlerlab/relay_sim.hpp"
#include "crawlerlab/report.hpp"
#include "crawlerlab/simulate.hpp"

namespace crawler {

namespace {

namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Invocation {
    std::string command;
    std::string config_path;
    std::string out_dir;
    bool strict = false;
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
};

std::ofstream open_output(const std::string& dir, const std::string& name) {
    std::ofstream f(fs::path(dir) / name);
    if (!f) throw ConfigError("cannot write '" + (fs::path(dir) / name).string() + "'");
    return f;
}

void write_json(const std::string& dir, const std::string& name, const JsonValue& v) {
    auto f = open_output(dir, name);
    v.write(f);
    f << '\n';
}

JsonValue state_json(const State& x) {
    auto arr = JsonValue::array();
    for (int i = 0; i < 4; ++i) arr.push(x[i]);
    return arr;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

State initial_state(const RunConfig& cfg, const Groups& g) {
    if (!cfg.simulate.relative_to_fixed_point) return cfg.simulate.x0;
    const auto fps = fixed_points(g);
    if (!fps.exists_symmetric) throw ConfigError("x0_offset_from_fixed_point needs symmetric fixed points");
    return *fps.x_plus + cfg.simulate.x0;
}

IntegratorOptions integrator_options(const RunConfig& cfg) {
    IntegratorOptions o;
    o.tol = cfg.tol;
    o.method = cfg.simulate.method;
    o.sample_dt = cfg.simulate.sample_dt;
    return o;
}

double nearest_fixed_point_distance(const State& x, const Groups& g) {
    const auto fps = fixed_points(g);
    double best = x.norm();
    if (fps.exists_symmetric) {
        best = std::min({best, (x - *fps.x_plus).norm(), (x - *fps.x_minus).norm()});
    }
    return best;
}

State nearest_fixed_point(const State& x, const Groups& g) {
    const auto fps = fixed_points(g);
    State best = fps.x0;
    if (fps.exists_symmetric) {
        for (const State& c : {*fps.x_plus, *fps.x_minus}) {
            if ((x - c).norm() < (x - best).norm()) best = c;
        }
    }
    return best;
}

int cmd_simulate(const RunConfig& cfg, const Invocation& inv, std::ostream& out) {
    const Groups& g = cfg.groups;
    const auto traj = integrate(initial_state(cfg, g), g, cfg.simulate.t_end, integrator_options(cfg));
    {
        auto f = open_output(inv.out_dir, "trajectory.csv");
        write_trajectory_csv(f, traj);
    }
    auto m = JsonValue::object();
    const State terminal = traj.back().head<4>();
    try {
        const auto cm = cycle_metrics(traj, cfg.simulate.transient);
        m.set("period", cm.period).set("omega", cm.omega).set("S_amp", cm.S_amp).set("v_com_bar", cm.v_com_bar);
        m.set("regime", "crawling").set("converged", cm.converged).set("period_std", cm.period_std);
        m.set("V_min", cm.V_min).set("V_max", cm.V_max).set("cycles", static_cast<unsigned long>(cm.cycles));
    } catch (const NoCycle&) {
        m.set("period", JsonValue()).set("omega", JsonValue()).set("S_amp", JsonValue()).set("v_com_bar", JsonValue());
        m.set("regime", "resting");
        m.set("terminal_fixed_point", state_json(nearest_fixed_point(terminal, g)));
        m.set("terminal_distance", nearest_fixed_point_distance(terminal, g));
    }
    m.set("terminal_state", state_json(terminal));
    auto stats = JsonValue::object();
    stats.set("method", method_name(traj.stats.method_used))
        .set("steps", static_cast<unsigned long>(traj.stats.steps))
        .set("rejections", static_cast<unsigned long>(traj.stats.rejections))
        .set("tol_abs", traj.stats.tol.abs)
        .set("tol_rel", traj.stats.tol.rel);
    m.set("integrator", stats);
    write_json(inv.out_dir, "metrics.json", m);
    out << "simulate: wrote trajectory.csv and metrics.json\n";
    return kExitOk;
}

int cmd_bifurcate(const RunConfig& cfg, const Invocation& inv, std::ostream& out, std::ostream& err) {
    const Groups& g = cfg.groups;
    const auto ha = analyze_hopf(g, inv.strict);
    auto r = JsonValue::object();
    r.set("gamma", ha.gamma).set("pi_s_H", ha.pi_s_H).set("omega_H", ha.omega_H);
    r.set("transversality", ha.transversality).set("l1", ha.l1);

    double pi_s_P = kNaN;
    try {
        pi_s_P = pitchfork_gain(g);
    } catch (const AssumptionViolation& e) {
        err << "warning: " << e.what() << '\n';
    }
    r.set("pi_s_P", pi_s_P);

    auto flags = JsonValue::object();
    flags.set("positivity", ha.flags.positivity)
        .set("gamma_lower", ha.flags.gain_lower)
        .set("gamma_upper", ha.flags.gain_upper)
        .set("strong_gain", ha.flags.strong_gain)
        .set("anisotropy", ha.flags.anisotropy);
    auto violations = JsonValue::array();
    for (const auto& v : ha.flags.violations()) violations.push(v);
    flags.set("violations", violations);
    r.set("assumption_flags", flags);

    auto deltas = JsonValue::object();
    if (std::isfinite(ha.omega_H)) {
        const auto cubic = char_cubic_at_symmetric_fp(g, ha.pi_s_H);
        deltas.set("pi_s_H_vs_bisection", relative(ha.pi_s_H, oracle::hopf_gain_bisection(g)));
        deltas.set("compatibility", std::abs(cubic.c1 * cubic.c2 - cubic.c0) / std::abs(cubic.c0));
        const auto roots = oracle::cubic_roots_companion(cubic.c2, cubic.c1, cubic.c0);
        const auto top = *std::max_element(roots.begin(), roots.end(),
                                           [](auto a, auto b) { return a.imag() < b.imag(); });
        deltas.set("omega_H_vs_roots", relative(ha.omega_H, top.imag()));
        deltas.set("transversality_vs_fd", relative(ha.transversality, oracle::transversality_fd(g, ha.pi_s_H)));
    }
    r.set("oracle_deltas", deltas);

    if (std::isfinite(pi_s_P)) {
        const auto pf = pitchfork_normal_form(g);
        auto p = JsonValue::object();
        p.set("c_transversal", pf.c_transversal).set("c_cubic", pf.c_cubic).set("c_quadratic", pf.c_quadratic);
        p.set("subcritical", pf.subcritical);
        r.set("pitchfork", p);
    }
    write_json(inv.out_dir, "bifurcation.json", r);
    out << "bifurcate: wrote bifurcation.json\n";
    if (inv.strict && !ha.flags.violations().empty()) {
        err << "strict: assumption checks failed\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_gsp(const RunConfig& cfg, const Invocation& inv, std::ostream& out) {
    const Groups& g = cfg.groups;
    const auto fd = folds(g);
    auto r = JsonValue::object();
    r.set("V_F_plus", fd.V_F_plus).set("V_F_minus", fd.V_F_minus);
    r.set("s_F_plus", fd.s_F_plus).set("s_F_minus", fd.s_F_minus);
    auto eigs = JsonValue::array();
    for (const auto& e : fd.sing_eigs) {
        auto z = JsonValue::object();
        z.set("re", e.real()).set("im", e.imag());
        eigs.push(z);
    }
    r.set("sing_eigs", eigs);
    r.set("classification", folded_class_name(fd.classification));
    r.set("folded_saddle_gain_bound", g.pi_l / (3.0 * g.pi_V));
    write_json(inv.out_dir, "gsp.json", r);
    out << "gsp: wrote gsp.json\n";
    if (fd.classification == FoldedClass::Degenerate) return kExitNumerical;
    return kExitOk;
}

int cmd_hb(const RunConfig& cfg, const Invocation& inv, std::ostream& out) {
    if (!cfg.hb) throw ConfigError("hb command needs an 'hb' section with the relay magnitude M");
    const Groups& g = cfg.groups;
    const double M = cfg.hb->M;
    const auto opt = optimize(g, M);
    {
        auto f = open_output(inv.out_dir, "hb_sweep.csv");
        f << "Z,omega,S,v_com_bar,P_bar,phi_rel\n";
        for (double Z : cfg.hb->Z_grid) {
            HBSolution hb;
            try {
                hb = solve_balance_ratio(Z, M, g);
            } catch (const Infeasible&) {
                continue;
            }
            if (!hb.feasible) continue;
            write_csv_row(f, {Z, hb.omega, hb.S, hb.v_com_bar, hb.P_bar, hb.phi_rel});
        }
    }
    auto o = JsonValue::object();
    o.set("Z_star", opt.Z_star).set("S_star", opt.S_star).set("beta_star", opt.beta_star);
    o.set("omega_star", opt.omega_star).set("v_com_bar_star", opt.v_com_bar_star).set("P_bar_star", opt.P_bar_star);
    write_json(inv.out_dir, "optimum.json", o);

    if (cfg.hb->compare_simulation) {
        const RelaySpec relay = cfg.relay.value_or(RelaySpec{M, opt.beta_star});
        const auto cmp = hb_vs_simulation(g, relay);
        auto c = JsonValue::object();
        c.set("M", relay.M).set("beta", relay.beta);
        c.set("hb_omega", cmp.hb.omega).set("hb_S", cmp.hb.S).set("hb_v_com_bar", cmp.hb.v_com_bar);
        c.set("sim_omega", cmp.sim.omega).set("sim_S", cmp.sim.S_amp).set("sim_v_com_bar", cmp.sim.v_com_bar);
        c.set("dev_omega", cmp.dev_omega).set("dev_S", cmp.dev_S).set("dev_v_com_bar", cmp.dev_v_com_bar);
        c.set("switches", static_cast<unsigned long>(cmp.sim.switches));
        write_json(inv.out_dir, "comparison.json", c);
    }
    out << "hb: wrote hb_sweep.csv and optimum.json\n";
    return kExitOk;
}

struct SweepRow {
    std::vector<double> values;
    std::string regime = "error";
    double pi_s_H = kNaN;
    double max_real_part = kNaN;
    double period = kNaN;
    double omega = kNaN;
    double S_amp = kNaN;
    double v_com_bar = kNaN;
    std::string status = "ok";
};

SweepRow sweep_point(const RunConfig& cfg, const std::vector<double>& values) {
    SweepRow row;
    row.values = values;
    Groups g = cfg.groups;
    try {
        for (std::size_t a = 0; a < values.size(); ++a) group_field(g, cfg.sweep.axes[a].group) = values[a];
        validate(g);
        row.pi_s_H = hopf_gain_unchecked(g);
        const auto fps = fixed_points(g);
        if (!fps.exists_symmetric) {
            row.regime = "no_symmetric_fp";
        } else {
            row.max_real_part = std::max(-g.pi_f * friction_slope_at_rest(g),
                                         oracle::max_real_part_at_symmetric_fp(g, g.pi_s));
            row.regime = row.max_real_part < 0.0 ? "resting" : "crawling";
        }
        if (cfg.sweep.simulate) {
            const auto traj = integrate(initial_state(cfg, g), g, cfg.simulate.t_end, integrator_options(cfg));
            try {
                const auto cm = cycle_metrics(traj, cfg.simulate.transient);
                row.period = cm.period;
                row.omega = cm.omega;
                row.S_amp = cm.S_amp;
                row.v_com_bar = cm.v_com_bar;
            } catch (const NoCycle&) {
                row.status = "no_cycle";
            }
        }
    } catch (const std::exception& e) {
        row.status = std::string("failed: ") + e.what();
        std::replace(row.status.begin(), row.status.end(), ',', ';');
        std::replace(row.status.begin(), row.status.end(), '\n', ' ');
    }
    return row;
}

int cmd_sweep(const RunConfig& cfg, const Invocation& inv, std::ostream& out) {
    const auto& axes = cfg.sweep.axes;
    std::vector<std::vector<double>> points;
    if (!axes.empty()) {
        std::size_t total = 1;
        for (const auto& a : axes) total *= a.values.size();
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::vector<double> p(axes.size());
            std::size_t rem = idx;
            for (std::size_t a = axes.size(); a-- > 0;) {
                p[a] = axes[a].values[rem % axes[a].values.size()];
                rem /= axes[a].values.size();
            }
            points.push_back(std::move(p));
        }
    }

    std::vector<SweepRow> rows(points.size());
    const unsigned threads =
        std::max(1u, cfg.sweep.threads ? cfg.sweep.threads : std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < points.size(); start += threads) {
        std::vector<std::future<SweepRow>> batch;
        const std::size_t stop = std::min(points.size(), start + threads);
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async, sweep_point, std::cref(cfg), std::cref(points[i])));
        }
        for (std::size_t i = start; i < stop; ++i) rows[i] = batch[i - start].get();
    }

    auto f = open_output(inv.out_dir, "sweep.csv");
    for (const auto& a : axes) f << a.group << ',';
    f << "regime,pi_s_H,max_real_part,period,omega,S_amp,v_com_bar,status\n";
    for (const auto& r : rows) {
        for (double v : r.values) f << format_float(v) << ',';
        f << r.regime << ',' << format_float(r.pi_s_H) << ',' << format_float(r.max_real_part) << ','
          << format_float(r.period) << ',' << format_float(r.omega) << ',' << format_float(r.S_amp) << ','
          << format_float(r.v_com_bar) << ',' << r.status << '\n';
    }
    out << "sweep: wrote sweep.csv with " << rows.size() << " rows\n";
    return kExitOk;
}

int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err) {
    RunConfig cfg = load_config(inv.config_path);
    if (inv.tol_abs) cfg.tol.abs = *inv.tol_abs;
    if (inv.tol_rel) cfg.tol.rel = *inv.tol_rel;
    if (!(cfg.tol.abs > 0.0 && cfg.tol.rel > 0.0)) throw ConfigError("tolerances must be > 0");
    std::error_code ec;
    fs::create_directories(inv.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + inv.out_dir + "': " + ec.message());

    if (inv.command == "simulate") return cmd_simulate(cfg, inv, out);
    if (inv.command == "bifurcate") return cmd_bifurcate(cfg, inv, out, err);
    if (inv.command == "gsp") return cmd_gsp(cfg, inv, out);
    if (inv.command == "hb") return cmd_hb(cfg, inv, out);
    if (inv.command == "sweep") return cmd_sweep(cfg, inv, out);
    throw ConfigError("unknown command '" + inv.command + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulation and analysis of the excitable two-segment crawler", "crawlerlab"};
    app.require_subcommand(1);
    Invocation inv;
    double tol_abs = 0.0;
    double tol_rel = 0.0;
    const std::pair<const char*, const char*> commands[] = {
        {"simulate", "Integrate the full model and report cycle metrics"},
        {"bifurcate", "Hopf and pitchfork analysis of the rest states"},
        {"gsp", "Critical manifold, folds and folded singularity"},
        {"hb", "Relay harmonic balance over a threshold-ratio grid"},
        {"sweep", "Regime map over one or more group axes"},
    };
    for (const auto& [name, description] : commands) {
        auto* sub = app.add_subcommand(name, description);
        sub->add_option("--config", inv.config_path, "JSON configuration file")->required();
        sub->add_option("--out", inv.out_dir, "Output directory")->required();
        sub->add_flag("--strict", inv.strict, "Treat assumption warnings as errors");
        sub->add_option("--tol-abs", tol_abs, "Absolute integration tolerance");
        sub->add_option("--tol-rel", tol_rel, "Relative integration tolerance");
    }
    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    const auto* chosen = app.get_subcommands().front();
    inv.command = chosen->get_name();
    if (chosen->count("--tol-abs")) inv.tol_abs = tol_abs;
    if (chosen->count("--tol-rel")) inv.tol_rel = tol_rel;

    try {
        return dispatch(inv, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Infeasible& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace crawler

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "espsim/config.hpp"

using namespace espsim;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitDetection = 4;

struct CommonOpts {
    std::string config_path;
    std::string preset_name;
    std::string out_path;
    std::string format = "csv";
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "Path to a JSON config file");
    cmd->add_option("--preset", o.preset_name,
                    "Built-in preset (fig2a..fig2f, fig3, indanol-meta)");
    cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", o.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--jobs", o.jobs, "Worker threads for sweeps (0 = auto)");
}

RunConfig resolve_config(const CommonOpts& o) {
    if (!o.config_path.empty() && !o.preset_name.empty())
        throw ConfigError("give either --config or --preset, not both");
    if (!o.config_path.empty()) return load_config_file(o.config_path);
    if (!o.preset_name.empty()) return preset(o.preset_name);
    throw ConfigError("one of --config or --preset is required");
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + o.out_path);
    out << text;
}

std::vector<Handedness> selected(const RunConfig& c) {
    switch (c.handedness) {
        case WhichHandedness::Left: return {Handedness::Left};
        case WhichHandedness::Right: return {Handedness::Right};
        default: return {Handedness::Left, Handedness::Right};
    }
}

int run_dark(const CommonOpts& o) {
    const RunConfig c = resolve_config(o);
    const SystemParams p = c.to_params();
    const double d0 = delta0(p);
    auto [D, B] = dressed_states(p);
    const HilbertSpace hs(p.n);

    json rep;
    rep["delta0_MHz"] = angular_to_mhz(d0);
    rep["delta0_rad_per_us"] = d0;
    rep["delta_MHz"] = angular_to_mhz(p.delta);
    rep["dressed"]["D_a"] = D(hs.idx_a).real();
    rep["dressed"]["D_b"] = D(hs.idx_b).real();
    rep["dressed"]["B_a"] = B(hs.idx_a).real();
    rep["dressed"]["B_b"] = B(hs.idx_b).real();
    for (Handedness h : {Handedness::Left, Handedness::Right}) {
        json& side = rep[label(h)];
        side["dressed_coupling_rad_per_us"] = dressed_coupling(p, h);
        side["dark_state_residual_rad_per_us"] = dark_state_residual(p, h);
    }
    if (d0 == 0.0)
        rep["warning"] =
            "delta0 = 0 (Omega_ca = Omega_cb): no dark-state discrimination";
    if (!c.metadata.empty()) rep["metadata"] = c.metadata;

    if (o.format == "json") {
        emit(o, rep.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "delta0 = " << format_number(rep["delta0_MHz"].get<double>())
            << " MHz = " << format_number(d0) << " rad/us\n"
            << "dressed coefficients: D = (" << format_number(D(hs.idx_a).real())
            << ")|a> + (" << format_number(D(hs.idx_b).real()) << ")|b>, B = ("
            << format_number(B(hs.idx_a).real()) << ")|a> + ("
            << format_number(B(hs.idx_b).real()) << ")|b>\n";
        for (Handedness h : {Handedness::Left, Handedness::Right}) {
            out << label(h) << ": coupling <B|H|D> = "
                << format_number(rep[label(h)]["dressed_coupling_rad_per_us"]
                                     .get<double>())
                << " rad/us, dark-state residual = "
                << format_number(rep[label(h)]["dark_state_residual_rad_per_us"]
                                     .get<double>())
                << " rad/us\n";
        }
        if (rep.contains("warning"))
            out << "warning: " << rep["warning"].get<std::string>() << "\n";
        if (!c.metadata.empty()) {
            out << "metadata:\n";
            for (const auto& [k, v] : c.metadata)
                out << "  " << k << ": " << v << "\n";
        }
        emit(o, out.str());
    }
    return 0;
}

int run_evolve(const CommonOpts& o) {
    const RunConfig c = resolve_config(o);
    const SystemParams p = c.to_params();
    const ComplexMatrix rho0 = c.initial_density(p);

    std::vector<std::pair<Handedness, Trajectory>> trajs;
    for (Handedness h : selected(c)) {
        const Liouvillian L = make_liouvillian(p, h);
        trajs.emplace_back(h, propagate(L, rho0, c.t_end_us, c.dt_max_us,
                                        c.samples));
    }
    emit(o, trajectory_csv(trajs, p));
    return 0;
}

int run_steady(const CommonOpts& o) {
    const RunConfig c = resolve_config(o);
    const SystemParams p = c.to_params();
    const HilbertSpace hs(p.n);

    json rep;
    std::ostringstream csv;
    csv << "handedness,state,population\n";
    for (Handedness h : selected(c)) {
        const Liouvillian L = make_liouvillian(p, h);
        std::optional<ComplexMatrix> rho0;
        if (p.kappa == 0.0) rho0 = c.initial_density(p);
        const SteadyState ss = steady_state(L, rho0);
        const auto pops = populations(ss.rho, hs, p);
        json& side = rep[label(h)];
        side["method"] =
            ss.method == SteadyMethod::NullSpace ? "null-space" : "long-time";
        side["residual"] = ss.residual;
        for (const auto& [state, pop] : pops) {
            side["populations"][state] = pop;
            csv << label(h) << "," << state << "," << format_number(pop) << "\n";
        }
    }
    emit(o, o.format == "json" ? rep.dump(2) + "\n" : csv.str());
    return 0;
}

std::vector<double> mhz_values(const std::vector<double>& vals) {
    std::vector<double> out;
    out.reserve(vals.size());
    for (double v : vals) out.push_back(mhz_to_angular(v));
    return out;
}

SweepResult dispatch_sweep(const RunConfig& c, const SystemParams& p, int jobs) {
    if (!c.sweep) throw ConfigError("config has no sweep block");
    const SweepSpec& sw = *c.sweep;
    if (sw.axis == "kappa") return sweep_kappa(p, mhz_values(sw.values), jobs);
    if (sw.axis == "delta") return sweep_delta(p, mhz_values(sw.values), jobs);
    if (sw.axis == "delta_e")
        return sweep_delta_e(p, mhz_values(sw.values), jobs);
    std::vector<int> ns;
    ns.reserve(sw.values.size());
    for (double v : sw.values) ns.push_back(static_cast<int>(v));
    return sweep_n(p, ns, jobs);
}

int run_sweep(const CommonOpts& o) {
    const RunConfig c = resolve_config(o);
    const SystemParams p = c.to_params();
    const SweepResult sweep = dispatch_sweep(c, p, o.jobs);

    if (o.format == "json") {
        json rep;
        rep["axis"] = sweep.axis_name;
        rep["axis_values"] = sweep.axis_values;
        rep["P_a_L"] = sweep.P_a_L;
        rep["P_b_L"] = sweep.P_b_L;
        rep["P_a_R"] = sweep.P_a_R;
        rep["P_b_R"] = sweep.P_b_R;
        emit(o, rep.dump(2) + "\n");
    } else {
        emit(o, sweep_csv(sweep));
    }
    return 0;
}

int run_detect(const CommonOpts& o) {
    const RunConfig c = resolve_config(o);
    const SystemParams p = c.to_params();
    if (!c.sweep || c.sweep->axis != "delta")
        throw ConfigError("detect requires a sweep block with axis \"delta\"");
    const MixtureSpec mix = c.mixture.value_or(MixtureSpec{});

    const std::vector<double> grid = mhz_values(c.sweep->values);
    const SweepResult sweep = sweep_delta(p, grid, o.jobs);
    const MixtureCurve curve = mixture_curve(mix, sweep, sweep);
    const DetectionReport rep = estimate_fractions(curve, std::abs(delta0(p)));

    json out;
    out["f_L"] = rep.f_L;
    out["f_R"] = rep.f_R;
    out["peak_positive"]["delta_MHz"] = angular_to_mhz(rep.peak_position_pos);
    out["peak_positive"]["height"] = rep.peak_height_pos;
    out["peak_negative"]["delta_MHz"] = angular_to_mhz(rep.peak_position_neg);
    out["peak_negative"]["height"] = rep.peak_height_neg;
    out["true_mixture"]["f_L"] = mix.f_L;
    out["true_mixture"]["f_R"] = mix.f_R;

    if (o.format == "csv") {
        emit(o, mixture_csv(rep.curve));
        std::cerr << out.dump(2) << "\n";
    } else {
        out["curve"]["delta_rad_per_us"] = rep.curve.deltas;
        out["curve"]["P_a"] = rep.curve.P_a;
        out["curve"]["P_b"] = rep.curve.P_b;
        emit(o, out.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "espsim: enantiomer-specific pumping of cyclic three-level chiral "
        "molecules (Lindblad dynamics, dark states, enantiodetection)"};
    app.require_subcommand(1);

    CommonOpts dark_o, evolve_o, steady_o, sweep_o, detect_o;
    auto* dark = app.add_subcommand("dark", "Dark-state analysis report");
    add_common(dark, dark_o);
    auto* evolve = app.add_subcommand("evolve", "Time-evolve populations to CSV");
    add_common(evolve, evolve_o);
    auto* steady = app.add_subcommand("steady", "Steady-state populations");
    add_common(steady, steady_o);
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep of steady states");
    add_common(sweep, sweep_o);
    auto* detect =
        app.add_subcommand("detect", "Two-peak enantiodetection on a mixture");
    add_common(detect, detect_o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dark->parsed()) return run_dark(dark_o);
        if (evolve->parsed()) return run_evolve(evolve_o);
        if (steady->parsed()) return run_steady(steady_o);
        if (sweep->parsed()) return run_sweep(sweep_o);
        if (detect->parsed()) return run_detect(detect_o);
    } catch (const PeaksNotFound& e) {
        std::cerr << "detection error: " << e.what() << "\n";
        return kExitDetection;
    } catch (const AmbiguousPeaks& e) {
        std::cerr << "detection error: " << e.what() << "\n";
        return kExitDetection;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}

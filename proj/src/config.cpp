#include "espsim/config.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "espsim/model.hpp"

namespace espsim {

using nlohmann::json;

SystemParams RunConfig::to_params() const {
    SystemParams p;
    p.omega_ab = mhz_to_angular(omega_ab_mhz);
    p.omega_ca = mhz_to_angular(omega_ca_mhz);
    p.omega_cb = mhz_to_angular(omega_cb_mhz);
    p.omega_ce = mhz_to_angular(omega_ce_mhz);
    p.phi_L = phi_L;
    p.Delta = mhz_to_angular(Delta_mhz);
    p.Delta_e = mhz_to_angular(Delta_e_mhz);
    p.gamma = mhz_to_angular(gamma_mhz);
    p.kappa = mhz_to_angular(kappa_mhz);
    p.n = n;
    p.delta = delta_mhz ? mhz_to_angular(*delta_mhz) : delta0(p);
    p.validate();
    return p;
}

ComplexMatrix RunConfig::initial_density(const SystemParams& p) const {
    const HilbertSpace hs(p.n);
    const int d = hs.dim();
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    switch (initial_state) {
        case InitialStateKind::UniformAbc:
            rho(hs.idx_a, hs.idx_a) = rho(hs.idx_b, hs.idx_b) =
                rho(hs.idx_c, hs.idx_c) = 1.0 / 3.0;
            break;
        case InitialStateKind::UniformAb:
            rho(hs.idx_a, hs.idx_a) = rho(hs.idx_b, hs.idx_b) = 0.5;
            break;
        case InitialStateKind::PureA:
            rho(hs.idx_a, hs.idx_a) = 1.0;
            break;
        case InitialStateKind::PureB:
            rho(hs.idx_b, hs.idx_b) = 1.0;
            break;
        case InitialStateKind::PureD: {
            auto [D, B] = dressed_states(p);
            rho = D * D.adjoint();
            break;
        }
        case InitialStateKind::CustomDiagonal: {
            if (static_cast<int>(custom_diagonal.size()) != d)
                throw ConfigError("custom diagonal length must equal n + 4");
            double sum = 0.0;
            for (double v : custom_diagonal) {
                if (v < 0) throw ConfigError("custom diagonal entries must be >= 0");
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw ConfigError("custom diagonal must sum to 1");
            for (int i = 0; i < d; ++i) rho(i, i) = custom_diagonal[i];
            break;
        }
    }
    return rho;
}

namespace {

InitialStateKind parse_initial_state(const std::string& s) {
    if (s == "uniform-abc") return InitialStateKind::UniformAbc;
    if (s == "uniform-ab") return InitialStateKind::UniformAb;
    if (s == "pure:a") return InitialStateKind::PureA;
    if (s == "pure:b") return InitialStateKind::PureB;
    if (s == "pure:D") return InitialStateKind::PureD;
    if (s == "custom-diagonal") return InitialStateKind::CustomDiagonal;
    throw ConfigError("unknown initial_state '" + s + "'");
}

WhichHandedness parse_handedness(const std::string& s) {
    if (s == "L") return WhichHandedness::Left;
    if (s == "R") return WhichHandedness::Right;
    if (s == "both") return WhichHandedness::Both;
    throw ConfigError("unknown handedness '" + s + "' (want L, R, or both)");
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double require_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError("key '" + key + "' must be a number");
    return obj[key].get<double>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be an object");

    static const std::set<std::string> known = {
        "omega_ab", "omega_ca", "omega_cb", "omega_ce", "phi_L", "delta",
        "Delta", "Delta_e", "gamma", "kappa", "n", "initial_state",
        "custom_diagonal", "handedness", "t_end", "dt_max", "samples",
        "sweep", "mixture", "metadata"};
    reject_unknown_keys(doc, known, "config");

    RunConfig c;
    c.omega_ab_mhz = require_number(doc, "omega_ab", 0.0);
    c.omega_ca_mhz = require_number(doc, "omega_ca", 0.0);
    c.omega_cb_mhz = require_number(doc, "omega_cb", 0.0);
    c.omega_ce_mhz = require_number(doc, "omega_ce", 0.0);
    c.phi_L = require_number(doc, "phi_L", 0.0);
    c.Delta_mhz = require_number(doc, "Delta", 0.0);
    c.Delta_e_mhz = require_number(doc, "Delta_e", 0.0);
    c.gamma_mhz = require_number(doc, "gamma", 0.0);
    c.kappa_mhz = require_number(doc, "kappa", 0.0);

    if (doc.contains("delta")) {
        if (doc["delta"].is_string()) {
            if (doc["delta"] != "delta0")
                throw ConfigError("delta must be a number (MHz) or \"delta0\"");
        } else if (doc["delta"].is_number()) {
            c.delta_mhz = doc["delta"].get<double>();
        } else {
            throw ConfigError("delta must be a number (MHz) or \"delta0\"");
        }
    } else {
        c.delta_mhz = 0.0;
    }

    if (doc.contains("n")) {
        if (!doc["n"].is_number_integer())
            throw ConfigError("n must be an integer");
        c.n = doc["n"].get<int>();
    }
    if (doc.contains("initial_state"))
        c.initial_state = parse_initial_state(doc["initial_state"].get<std::string>());
    if (doc.contains("custom_diagonal"))
        c.custom_diagonal = doc["custom_diagonal"].get<std::vector<double>>();
    if (doc.contains("handedness"))
        c.handedness = parse_handedness(doc["handedness"].get<std::string>());
    c.t_end_us = require_number(doc, "t_end", c.t_end_us);
    c.dt_max_us = require_number(doc, "dt_max", c.dt_max_us);
    if (doc.contains("samples")) c.samples = doc["samples"].get<int>();

    if (doc.contains("sweep")) {
        const json& sw = doc["sweep"];
        reject_unknown_keys(sw, {"axis", "min", "max", "points", "values"}, "sweep");
        SweepSpec spec;
        spec.axis = sw.at("axis").get<std::string>();
        if (spec.axis != "kappa" && spec.axis != "n" && spec.axis != "delta" &&
            spec.axis != "delta_e")
            throw ConfigError("sweep axis must be kappa, n, delta, or delta_e");
        if (sw.contains("values")) {
            spec.values = sw["values"].get<std::vector<double>>();
        } else {
            const double lo = sw.at("min").get<double>();
            const double hi = sw.at("max").get<double>();
            const int pts = sw.at("points").get<int>();
            spec.values = linspace(lo, hi, pts);
        }
        c.sweep = spec;
    }

    if (doc.contains("mixture")) {
        const json& mx = doc["mixture"];
        reject_unknown_keys(mx, {"f_L", "f_R"}, "mixture");
        MixtureSpec spec;
        spec.f_L = mx.at("f_L").get<double>();
        spec.f_R = mx.contains("f_R") ? mx["f_R"].get<double>() : 1.0 - spec.f_L;
        spec.validate();
        c.mixture = spec;
    }

    if (doc.contains("metadata"))
        for (auto it = doc["metadata"].begin(); it != doc["metadata"].end(); ++it)
            c.metadata[it.key()] = it.value().is_string()
                                       ? it.value().get<std::string>()
                                       : it.value().dump();
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

RunConfig fig2_base() {
    RunConfig c;
    c.omega_ca_mhz = 10.0;
    c.omega_ab_mhz = 10.0;
    c.omega_cb_mhz = 6.0;
    c.omega_ce_mhz = 20.0;
    c.gamma_mhz = 10.0;
    c.phi_L = 0.0;
    c.delta_mhz.reset();  // delta = delta0
    c.Delta_mhz = 0.0;
    c.Delta_e_mhz = 0.0;
    c.n = 1;
    c.t_end_us = 2.0;
    c.samples = 200;
    return c;
}

}  // namespace

RunConfig preset(const std::string& name) {
    if (name == "fig2a") {
        RunConfig c = fig2_base();
        c.kappa_mhz = 0.0;
        c.initial_state = InitialStateKind::UniformAbc;
        return c;
    }
    if (name == "fig2b") {
        RunConfig c = fig2_base();
        c.kappa_mhz = 0.001;
        c.initial_state = InitialStateKind::UniformAbc;
        return c;
    }
    if (name == "fig2c") {
        RunConfig c = fig2_base();
        c.kappa_mhz = 0.0;
        c.initial_state = InitialStateKind::UniformAb;
        return c;
    }
    if (name == "fig2d") {
        RunConfig c = fig2_base();
        c.kappa_mhz = 0.001;
        c.initial_state = InitialStateKind::UniformAb;
        return c;
    }
    if (name == "fig2e") {
        RunConfig c = fig2_base();
        c.kappa_mhz = 0.001;
        SweepSpec sw;
        sw.axis = "kappa";
        sw.values = {0.001, 0.003, 0.01, 0.03, 0.1};
        c.sweep = sw;
        return c;
    }
    if (name == "fig2f") {
        RunConfig c = fig2_base();
        c.kappa_mhz = 0.001;
        SweepSpec sw;
        sw.axis = "n";
        sw.values = {1, 3, 5, 7, 9, 11, 13, 15};
        c.sweep = sw;
        return c;
    }
    if (name == "fig3") {
        RunConfig c = fig2_base();
        c.kappa_mhz = 0.001;
        SweepSpec sw;
        sw.axis = "delta";
        // 201 uniform points over [-3 delta0, +3 delta0]; delta0 = 16/3 MHz here.
        const double d0 = 16.0 / 3.0;
        sw.values = linspace(-3.0 * d0, 3.0 * d0, 201);
        c.sweep = sw;
        return c;
    }
    if (name == "indanol-meta") {
        RunConfig c = fig2_base();
        c.kappa_mhz = 0.001;
        c.metadata = {
            {"molecule", "1-indanol"},
            {"rotational_constant_A_MHz", "2410.071"},
            {"rotational_constant_B_MHz", "1231.257"},
            {"rotational_constant_C_MHz", "846.356"},
            {"E_c_minus_E_b_MHz", "3641.328"},
            {"E_a_minus_E_b_MHz", "2077.613"},
            {"E_c_minus_E_a_MHz", "1563.715"},
            {"state_b", "|0_{0,0,0}>"},
            {"state_a", "|1_{0,1,0}>"},
            {"state_c", "(|1_{1,0,1}> + |1_{1,0,-1}>)/sqrt(2)"},
            {"note",
             "Rotational-state assignment for a microwave-driven cyclic triad; "
             "constants are documentation only, the simulation uses detunings."},
        };
        return c;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig2c", "fig2d",
            "fig2e", "fig2f", "fig3",  "indanol-meta"};
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string trajectory_csv(
    const std::vector<std::pair<Handedness, Trajectory>>& trajs,
    const SystemParams& p) {
    if (trajs.empty()) throw ConfigError("no trajectories to write");
    const HilbertSpace hs(p.n);
    std::ostringstream out;

    out << "t_us";
    for (const auto& [h, traj] : trajs) {
        for (int i = 0; i < hs.dim(); ++i)
            out << ",p_" << hs.state_label(i) << "_" << label(h);
        out << ",p_D_" << label(h) << ",p_B_" << label(h);
    }
    out << "\n";

    const std::size_t rows = trajs.front().second.times.size();
    for (const auto& [h, traj] : trajs)
        if (traj.times.size() != rows)
            throw GridMismatch("trajectories have different sample counts");

    for (std::size_t r = 0; r < rows; ++r) {
        out << format_number(trajs.front().second.times[r]);
        for (const auto& [h, traj] : trajs) {
            const auto pops = populations(traj.states[r], hs, p);
            for (int i = 0; i < hs.dim(); ++i)
                out << "," << format_number(pops.at(hs.state_label(i)));
            out << "," << format_number(pops.at("D"));
            out << "," << format_number(pops.at("B"));
        }
        out << "\n";
    }
    return out.str();
}

std::string sweep_csv(const SweepResult& sweep) {
    std::ostringstream out;
    out << sweep.axis_name
        << ",P_a_L,P_b_L,P_c_L,P_e_L,P_a_R,P_b_R,P_c_R,P_e_R,ratio_a,ratio_b\n";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        out << format_number(sweep.axis_values[i]);
        for (const auto* col : {&sweep.P_a_L, &sweep.P_b_L, &sweep.P_c_L,
                                &sweep.P_e_L, &sweep.P_a_R, &sweep.P_b_R,
                                &sweep.P_c_R, &sweep.P_e_R})
            out << "," << format_number((*col)[i]);
        out << "," << format_number(sweep.P_a_L[i] / sweep.P_a_R[i]);
        out << "," << format_number(sweep.P_b_L[i] / sweep.P_b_R[i]);
        out << "\n";
    }
    return out.str();
}

std::string mixture_csv(const MixtureCurve& curve) {
    std::ostringstream out;
    out << "delta_rad_per_us,delta_MHz,P_a,P_b\n";
    for (std::size_t i = 0; i < curve.deltas.size(); ++i) {
        out << format_number(curve.deltas[i]) << ","
            << format_number(angular_to_mhz(curve.deltas[i])) << ","
            << format_number(curve.P_a[i]) << "," << format_number(curve.P_b[i])
            << "\n";
    }
    return out.str();
}

}  // namespace espsim

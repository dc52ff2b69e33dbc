#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "espsim/analysis.hpp"

namespace espsim {

enum class WhichHandedness { Left, Right, Both };

enum class InitialStateKind {
    UniformAbc,   // (|a><a| + |b><b| + |c><c|) / 3
    UniformAb,    // (|a><a| + |b><b|) / 2
    PureA,
    PureB,
    PureD,        // |D><D|
    CustomDiagonal
};

struct SweepSpec {
    std::string axis;               // kappa | n | delta | delta_e
    std::vector<double> values;     // axis values in user units (MHz; n: counts)
};

// User-facing run description. All frequencies are plain MHz; to_params()
// applies the 2*pi conversion into rad/us.
struct RunConfig {
    double omega_ab_mhz = 0.0;
    double omega_ca_mhz = 0.0;
    double omega_cb_mhz = 0.0;
    double omega_ce_mhz = 0.0;
    double phi_L = 0.0;                      // [rad]
    std::optional<double> delta_mhz;         // absent = use delta0
    double Delta_mhz = 0.0;
    double Delta_e_mhz = 0.0;
    double gamma_mhz = 0.0;
    double kappa_mhz = 0.0;
    int n = 1;

    InitialStateKind initial_state = InitialStateKind::UniformAbc;
    std::vector<double> custom_diagonal;     // used with CustomDiagonal
    WhichHandedness handedness = WhichHandedness::Both;

    double t_end_us = 2.0;
    double dt_max_us = 1e-3;
    int samples = 200;
    std::optional<SweepSpec> sweep;
    std::optional<MixtureSpec> mixture;

    // Documentation-only metadata carried by presets (e.g. molecular constants).
    std::map<std::string, std::string> metadata;

    SystemParams to_params() const;
    ComplexMatrix initial_density(const SystemParams& p) const;
};

// Strict parser: unknown keys are errors. Accepts the JSON config document.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Shipped presets: fig2a fig2b fig2c fig2d fig2e fig2f fig3 indanol-meta.
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// CSV cell formatting: 12 significant digits, '.' decimal separator.
std::string format_number(double v);

// Writers used by the CLI; kept here so tests can exercise them directly.
std::string trajectory_csv(
    const std::vector<std::pair<Handedness, Trajectory>>& trajs,
    const SystemParams& p);
std::string sweep_csv(const SweepResult& sweep);
std::string mixture_csv(const MixtureCurve& curve);

}  // namespace espsim

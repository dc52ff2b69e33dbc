#include "espsim/dynamics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace espsim {

namespace {

double rate_scale(const Liouvillian& L) {
    double s = L.hamiltonian.cwiseAbs().maxCoeff();
    for (const auto& j : L.jumps) s = std::max(s, j.rate);
    s = std::max(s, L.kappa);
    return s;
}

void hermitize(ComplexMatrix& rho) {
    rho = 0.5 * (rho + rho.adjoint()).eval();
}

// One RK4 step of drho/dt = apply_rhs(rho).
ComplexMatrix rk4_step(const Liouvillian& L, const ComplexMatrix& rho, double dt) {
    const ComplexMatrix k1 = apply_rhs(L, rho);
    const ComplexMatrix k2 = apply_rhs(L, rho + 0.5 * dt * k1);
    const ComplexMatrix k3 = apply_rhs(L, rho + 0.5 * dt * k2);
    const ComplexMatrix k4 = apply_rhs(L, rho + dt * k3);
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

ComplexMatrix advance(const Liouvillian& L, ComplexMatrix rho, double span,
                      double dt_max) {
    double dt = dt_max;
    const double s = rate_scale(L);
    if (s > 0) dt = std::min(dt, 0.05 / s);
    if (dt < 1e-9)
        throw StepSizeUnderflow("stability requires dt below 1e-9 us");
    const int steps = std::max(1, static_cast<int>(std::ceil(span / dt)));
    const double h = span / steps;
    for (int i = 0; i < steps; ++i) rho = rk4_step(L, rho, h);
    return rho;
}

}  // namespace

Trajectory propagate(const Liouvillian& L, const ComplexMatrix& rho0,
                     double t_end, double dt_max, int n_samples) {
    if (rho0.rows() != L.dim || rho0.cols() != L.dim)
        throw DimensionMismatch("initial state dimension does not match Liouvillian");
    if (t_end <= 0) throw ConfigError("t_end must be positive");
    if (n_samples < 1) throw ConfigError("n_samples must be at least 1");

    Trajectory traj;
    traj.times.reserve(n_samples + 1);
    traj.states.reserve(n_samples + 1);

    ComplexMatrix rho = rho0;
    traj.times.push_back(0.0);
    traj.states.push_back(rho);

    const double span = t_end / n_samples;
    for (int k = 1; k <= n_samples; ++k) {
        rho = advance(L, rho, span, dt_max);
        ComplexMatrix sample = rho;
        hermitize(sample);
        traj.times.push_back(k * span);
        traj.states.push_back(std::move(sample));
    }
    return traj;
}

SteadyState steady_state(const Liouvillian& L,
                         std::optional<ComplexMatrix> rho0,
                         const SteadyOptions& opts) {
    const int d = L.dim;

    const SteadyMethod method = opts.method.value_or(
        L.kappa > 0 ? SteadyMethod::NullSpace : SteadyMethod::LongTime);
    if (method == SteadyMethod::NullSpace && L.kappa <= 0)
        throw ConfigError("null-space extraction requires kappa > 0");

    if (method == SteadyMethod::NullSpace) {
        const ComplexMatrix sup = assemble_matrix(L);
        Eigen::JacobiSVD<ComplexMatrix> svd(sup, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double cutoff = opts.sv_threshold * sv(0);
        int null_dim = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) < cutoff) ++null_dim;
        if (null_dim > 1)
            throw NonUniqueSteadyState("null space of the superoperator is degenerate");

        ComplexVector v = svd.matrixV().col(sv.size() - 1);
        ComplexMatrix rho = Eigen::Map<ComplexMatrix>(v.data(), d, d);
        hermitize(rho);
        const double tr = rho.trace().real();
        if (std::abs(tr) < 1e-14)
            throw NonUniqueSteadyState("null vector has vanishing trace");
        rho /= tr;

        SteadyState ss;
        ss.rho = rho;
        ss.method = SteadyMethod::NullSpace;
        ss.residual = apply_rhs(L, rho).cwiseAbs().maxCoeff();
        return ss;
    }

    if (!rho0) {
        if (L.kappa <= 0)
            throw ConfigError(
                "steady_state with kappa = 0 requires an initial state; the "
                "limit depends on it");
        rho0 = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    }

    const double s = rate_scale(L);
    const double tol = opts.tolerance * (s > 0 ? s : 1.0);
    const double gamma = L.jumps.empty()
                             ? 0.0
                             : L.jumps.front().rate * (d - 1);
    double window = gamma > 0 ? 10.0 / gamma : 1.0;
    if (L.kappa > 0) window = std::max(window, 1.0 / L.kappa);
    ComplexMatrix rho = *rho0;
    double t = 0.0;
    while (t < opts.time_cap) {
        const ComplexMatrix prev = rho;
        rho = advance(L, rho, window, opts.dt_max);
        hermitize(rho);
        t += window;
        const double res = apply_rhs(L, rho).cwiseAbs().maxCoeff();
        const double drift = (rho - prev).cwiseAbs().maxCoeff();
        if (res < tol || drift < 1e-10) {
            SteadyState ss;
            ss.rho = rho;
            ss.method = SteadyMethod::LongTime;
            ss.residual = res;
            return ss;
        }
    }
    throw NoConvergence("long-time steady-state search exceeded the time cap");
}

std::map<std::string, double> populations(const ComplexMatrix& rho,
                                          const HilbertSpace& space,
                                          const SystemParams& p) {
    if (rho.rows() != space.dim())
        throw DimensionMismatch("density matrix does not match Hilbert space");
    std::map<std::string, double> out;
    for (int i = 0; i < space.dim(); ++i)
        out[space.state_label(i)] = rho(i, i).real();
    auto [D, B] = dressed_states(p);
    out["D"] = (D.adjoint() * rho * D)(0, 0).real();
    out["B"] = (B.adjoint() * rho * B)(0, 0).real();
    return out;
}

}  // namespace espsim

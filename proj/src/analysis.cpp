#include "espsim/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace espsim {

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<std::size_t>(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2) throw ConfigError("linspace needs at least 2 points");
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i)
        out[i] = lo + (hi - lo) * i / (points - 1);
    return out;
}

namespace {

// Steady populations of one parameter point, both handednesses, written into
// the sweep at slot i.
void solve_point(SweepResult& sweep, std::size_t i, const SystemParams& p) {
    const HilbertSpace hs(p.n);
    for (Handedness h : {Handedness::Left, Handedness::Right}) {
        const Liouvillian L = make_liouvillian(p, h);
        const SteadyState ss = steady_state(L);
        const ComplexMatrix& rho = ss.rho;
        const bool left = h == Handedness::Left;
        (left ? sweep.P_a_L : sweep.P_a_R)[i] = rho(hs.idx_a, hs.idx_a).real();
        (left ? sweep.P_b_L : sweep.P_b_R)[i] = rho(hs.idx_b, hs.idx_b).real();
        (left ? sweep.P_c_L : sweep.P_c_R)[i] = rho(hs.idx_c, hs.idx_c).real();
        (left ? sweep.P_e_L : sweep.P_e_R)[i] = rho(hs.idx_e, hs.idx_e).real();
    }
}

SweepResult make_sweep(const std::string& axis, std::size_t count) {
    SweepResult s;
    s.axis_name = axis;
    s.axis_values.resize(count);
    for (auto* v : {&s.P_a_L, &s.P_b_L, &s.P_c_L, &s.P_e_L, &s.P_a_R, &s.P_b_R,
                    &s.P_c_R, &s.P_e_R})
        v->resize(count);
    return s;
}

}  // namespace

SweepResult sweep_kappa(const SystemParams& base, const std::vector<double>& kappas,
                        int jobs) {
    for (double k : kappas)
        if (k <= 0)
            throw ConfigError("kappa sweep requires kappa > 0 at every point");
    SweepResult sweep = make_sweep("kappa", kappas.size());
    sweep.axis_values = kappas;
    parallel_for(kappas.size(), jobs, [&](std::size_t i) {
        SystemParams p = base;
        p.kappa = kappas[i];
        solve_point(sweep, i, p);
    });
    return sweep;
}

SweepResult sweep_n(const SystemParams& base, const std::vector<int>& ns, int jobs) {
    for (int n : ns)
        if (n < 1) throw ConfigError("n sweep requires n >= 1 at every point");
    SweepResult sweep = make_sweep("n", ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i)
        sweep.axis_values[i] = static_cast<double>(ns[i]);
    parallel_for(ns.size(), jobs, [&](std::size_t i) {
        SystemParams p = base;
        p.n = ns[i];
        solve_point(sweep, i, p);
    });
    return sweep;
}

SweepResult sweep_delta(const SystemParams& base, const std::vector<double>& deltas,
                        int jobs) {
    if (base.kappa <= 0) throw ConfigError("delta sweep requires kappa > 0");
    SweepResult sweep = make_sweep("delta", deltas.size());
    sweep.axis_values = deltas;
    parallel_for(deltas.size(), jobs, [&](std::size_t i) {
        SystemParams p = base;
        p.delta = deltas[i];
        solve_point(sweep, i, p);
    });
    return sweep;
}

SweepResult sweep_delta_e(const SystemParams& base,
                          const std::vector<double>& delta_es, int jobs) {
    if (base.kappa <= 0) throw ConfigError("Delta_e sweep requires kappa > 0");
    SweepResult sweep = make_sweep("delta_e", delta_es.size());
    sweep.axis_values = delta_es;
    parallel_for(delta_es.size(), jobs, [&](std::size_t i) {
        SystemParams p = base;
        p.Delta_e = delta_es[i];
        solve_point(sweep, i, p);
    });
    return sweep;
}

MixtureCurve mixture_curve(const MixtureSpec& spec, const SweepResult& left,
                           const SweepResult& right) {
    spec.validate();
    if (left.axis_values != right.axis_values)
        throw GridMismatch("left and right sweeps use different delta grids");
    MixtureCurve curve;
    curve.deltas = left.axis_values;
    curve.P_a.resize(curve.deltas.size());
    curve.P_b.resize(curve.deltas.size());
    for (std::size_t i = 0; i < curve.deltas.size(); ++i) {
        curve.P_a[i] = spec.f_L * left.P_a_L[i] + spec.f_R * right.P_a_R[i];
        curve.P_b[i] = spec.f_L * left.P_b_L[i] + spec.f_R * right.P_b_R[i];
    }
    return curve;
}

namespace {

struct Peak {
    std::size_t index;
    double height;
};

// Strict local maxima; a plateau counts once at its leftmost point.
std::vector<Peak> local_maxima(const std::vector<double>& y) {
    std::vector<Peak> peaks;
    const std::size_t m = y.size();
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (y[i] <= y[i - 1]) continue;
        std::size_t j = i;
        while (j + 1 < m && y[j + 1] == y[i]) ++j;  // walk the plateau
        if (j + 1 < m && y[j + 1] < y[i]) peaks.push_back({i, y[i]});
        i = j;
    }
    return peaks;
}

}  // namespace

DetectionReport estimate_fractions(const MixtureCurve& curve, double min_separation) {
    if (curve.deltas.size() < 21)
        throw ConfigError("detection needs at least 21 grid points");

    std::vector<Peak> peaks = local_maxima(curve.P_a);
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.height > b.height; });

    if (peaks.size() < 2)
        throw PeaksNotFound("fewer than two local maxima in P_a(delta)");

    // Second peak: highest maximum at least min_separation away from the first.
    const Peak& first = peaks[0];
    const Peak* second = nullptr;
    for (std::size_t k = 1; k < peaks.size(); ++k) {
        if (std::abs(curve.deltas[peaks[k].index] - curve.deltas[first.index]) >=
            min_separation) {
            second = &peaks[k];
            break;
        }
    }
    if (!second)
        throw PeaksNotFound("no second peak beyond the minimum separation");

    for (std::size_t k = 1; k < peaks.size(); ++k) {
        if (&peaks[k] == second) continue;
        if (peaks[k].height >= 0.95 * second->height)
            throw AmbiguousPeaks("third-highest maximum within 5% of the second");
        break;
    }

    const double d1 = curve.deltas[first.index];
    const double d2 = curve.deltas[second->index];
    const bool first_is_pos = d1 > d2;

    DetectionReport rep;
    rep.peak_position_pos = first_is_pos ? d1 : d2;
    rep.peak_height_pos = first_is_pos ? first.height : second->height;
    rep.peak_position_neg = first_is_pos ? d2 : d1;
    rep.peak_height_neg = first_is_pos ? second->height : first.height;
    rep.f_L = rep.peak_height_pos / (rep.peak_height_pos + rep.peak_height_neg);
    rep.f_R = 1.0 - rep.f_L;
    rep.curve = curve;
    return rep;
}

double purity(double left_P, double right_P) {
    if (left_P < 0 || right_P < 0)
        throw ConfigError("populations must be non-negative");
    if (left_P == 0 && right_P == 0)
        throw UndefinedPurity("purity undefined when both populations vanish");
    return left_P / (left_P + right_P);
}

}  // namespace espsim

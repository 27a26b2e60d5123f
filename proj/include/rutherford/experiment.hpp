#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "rutherford/classical.hpp"
#include "rutherford/cn_propagator.hpp"
#include "rutherford/error.hpp"
#include "rutherford/grid.hpp"
#include "rutherford/potential.hpp"
#include "rutherford/units.hpp"
#include "rutherford/wavepacket.hpp"

namespace rutherford {

/// Parameters of a paired quantum/classical head-on collision run.
///
/// Defaults reproduce the headline setup: an alpha particle launched from
/// -500 fm with 386.13 MeV/c at a gold nucleus, packet widths 20 and 50 fm.
struct RunConfig {
    double x0 = -500.0;
    double p0 = 386.13;
    std::vector<double> sigma_list{20.0, 50.0};
    int z1 = 2;
    int z2 = 79;
    double mass = 3727.379;
    double x_min = -1500.0;
    double x_max = 100.0;
    std::size_t n_points = 64001;
    double dt = 0.125;
    double t_max = 12000.0;
    std::size_t sample_every = 48;
    std::optional<double> softening_cut;  // dx/2 when absent
    std::optional<double> coupling_k;     // Z1 Z2 alpha hbar c when absent

    std::size_t step_count() const noexcept {
        return static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
    }
    std::size_t sample_count() const noexcept { return step_count() / sample_every + 1; }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct QuantumSeries {
    double sigma = 0.0;
    std::vector<double> mean_x;
    std::vector<double> mean_p;
    std::vector<double> mean_force;
    std::vector<double> spread;
    std::vector<double> norm;
    std::vector<double> mean_energy;
};

/// Classical and per-sigma quantum observables on one shared time axis.
struct ObservableSeries {
    std::vector<double> times;
    ClassicalSeries classical;
    std::vector<QuantumSeries> quantum;
};

/// Extremum of a position series located from the momentum sign change.
struct TurningPoint {
    bool reached = false;
    double time = 0.0;      // fm/c
    double distance = 0.0;  // |x| at the extremum, fm
};

struct SigmaMetrics {
    double sigma = 0.0;
    TurningPoint turning;
    std::optional<double> force_crossover_time;
    bool jensen_t0_satisfied = false;
    double force_t0_quantum = 0.0;
    double force_t0_classical = 0.0;
    double max_lag = 0.0;
    bool lag_holds = false;  // <x> <= x_cl throughout the approach phase
    bool exceeds_classical = false;
    double max_norm_drift = 0.0;
    double max_energy_drift = 0.0;  // relative
};

struct ComparisonMetrics {
    double coupling_k = 0.0;
    double initial_energy_classical = 0.0;  // p0^2/2m + V(x0)
    std::optional<double> closest_approach_oracle;
    TurningPoint classical_turning;
    double classical_energy_drift = 0.0;  // relative
    std::vector<SigmaMetrics> per_sigma;
};

struct ComparisonResult {
    ObservableSeries series;
    ComparisonMetrics metrics;
    Grid grid;
    double softening_cut = 0.0;
};

// ---------------------------------------------------------------------------
// Metrics on sampled series

/// Finds the first sign change of `momentum`, fits a parabola through the
/// three position samples around it and returns the vertex.
inline TurningPoint closest_approach(std::span<const double> times, std::span<const double> position,
                                     std::span<const double> momentum) {
    const std::size_t n = times.size();
    if (position.size() != n || momentum.size() != n)
        throw InvalidArgument("closest_approach: series lengths differ");

    std::size_t bracket = n;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if ((momentum[i] > 0.0 && momentum[i + 1] <= 0.0) || (momentum[i] < 0.0 && momentum[i + 1] >= 0.0)) {
            bracket = i;
            break;
        }
    }
    if (bracket == n) return {};

    // The extremal sample of the bracket becomes the middle node.
    const bool maximum = momentum[bracket] > 0.0;
    std::size_t c = bracket;
    if ((maximum && position[bracket + 1] > position[bracket]) ||
        (!maximum && position[bracket + 1] < position[bracket]))
        c = bracket + 1;
    if (c == 0) c = 1;
    if (c + 1 >= n) c = n - 2;

    TurningPoint tp;
    tp.reached = true;
    tp.time = times[c];
    tp.distance = std::abs(position[c]);
    if (n < 3) return tp;

    const double t0 = times[c - 1], t1 = times[c], t2 = times[c + 1];
    const double y0 = position[c - 1], y1 = position[c], y2 = position[c + 1];
    // Newton form: y = y0 + d1 (t - t0) + d2 (t - t0)(t - t1)
    const double d01 = (y1 - y0) / (t1 - t0);
    const double d12 = (y2 - y1) / (t2 - t1);
    const double d2 = (d12 - d01) / (t2 - t0);
    if (d2 == 0.0) return tp;
    const double ts = 0.5 * (t0 + t1) - d01 / (2.0 * d2);
    if (ts < t0 || ts > t2) return tp;
    tp.time = ts;
    tp.distance = std::abs(y0 + d01 * (ts - t0) + d2 * (ts - t0) * (ts - t1));
    return tp;
}

/// First time |F_q| drops below |F_cl| after an initial interval where it
/// is larger, linearly interpolated between samples.
inline std::optional<double> force_crossover(std::span<const double> times, std::span<const double> quantum,
                                             std::span<const double> classical) {
    const std::size_t n = times.size();
    bool above = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double gap = std::abs(quantum[i]) - std::abs(classical[i]);
        if (gap > 0.0) {
            above = true;
        } else if (above && gap < 0.0) {
            const double prev = std::abs(quantum[i - 1]) - std::abs(classical[i - 1]);
            const double w = prev / (prev - gap);
            return times[i - 1] + w * (times[i] - times[i - 1]);
        }
    }
    return std::nullopt;
}

struct JensenReport {
    double sigma = 0.0;
    bool t0_satisfied = false;  // |<F>(0)| >= |F_cl(0)|
    double force_t0_quantum = 0.0;
    double force_t0_classical = 0.0;
    std::optional<double> crossover_time;
};

/// Per-sigma comparison of the mean quantum force with the classical force:
/// the t = 0 inequality and the first later time the ordering flips.
inline std::vector<JensenReport> jensen_report(const ObservableSeries& s) {
    if (s.times.empty()) throw InvalidArgument("jensen_report: empty series");
    std::vector<JensenReport> out;
    for (const auto& q : s.quantum) {
        JensenReport r;
        r.sigma = q.sigma;
        r.force_t0_quantum = q.mean_force.front();
        r.force_t0_classical = s.classical.force.front();
        r.t0_satisfied = std::abs(r.force_t0_quantum) >= std::abs(r.force_t0_classical);
        r.crossover_time = force_crossover(s.times, q.mean_force, s.classical.force);
        out.push_back(r);
    }
    return out;
}

/// Largest x_cl - <x> over samples with t <= t_end.
inline double max_lag(std::span<const double> times, std::span<const double> classical_x,
                      std::span<const double> quantum_x, double t_end) {
    double lag = 0.0;
    for (std::size_t i = 0; i < times.size() && times[i] <= t_end; ++i)
        lag = std::max(lag, classical_x[i] - quantum_x[i]);
    return lag;
}

/// True when <x> <= x_cl at every sample with t <= t_end, allowing only
/// rounding at t = 0 where both start at x0.
inline bool lag_holds(std::span<const double> times, std::span<const double> classical_x,
                      std::span<const double> quantum_x, double t_end) {
    for (std::size_t i = 0; i < times.size() && times[i] <= t_end; ++i) {
        const double slack = i == 0 ? 1e-9 * std::abs(classical_x[0]) : 0.0;
        if (quantum_x[i] > classical_x[i] + slack) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Running

inline void validate(const RunConfig& c) {
    auto fail = [](const char* key, const std::string& what) { throw InvalidArgument(std::string(key) + ": " + what); };
    if (!std::isfinite(c.x0)) fail("x0", "must be finite");
    if (!std::isfinite(c.p0)) fail("p0", "must be finite");
    if (c.sigma_list.empty()) fail("sigma_list", "must not be empty");
    for (double s : c.sigma_list)
        if (!(std::isfinite(s) && s > 0.0)) fail("sigma_list", "entries must be positive");
    if (c.z1 < 1) fail("z1", "must be >= 1");
    if (c.z2 < 1) fail("z2", "must be >= 1");
    if (!(std::isfinite(c.mass) && c.mass > 0.0)) fail("mass", "must be positive");
    if (!std::isfinite(c.x_min)) fail("x_min", "must be finite");
    if (!std::isfinite(c.x_max)) fail("x_max", "must be finite");
    if (!(c.x_min < c.x_max)) fail("x_max", "must exceed x_min");
    if (c.n_points < 3) fail("n_points", "must be >= 3");
    if (!(std::isfinite(c.dt) && c.dt > 0.0)) fail("dt", "must be positive");
    if (!(std::isfinite(c.t_max) && c.t_max > 0.0)) fail("t_max", "must be positive");
    if (c.sample_every < 1) fail("sample_every", "must be >= 1");
    if (c.softening_cut && !(std::isfinite(*c.softening_cut) && *c.softening_cut >= 0.0))
        fail("softening_cut", "must be >= 0");
    if (c.coupling_k && !(std::isfinite(*c.coupling_k) && *c.coupling_k >= 0.0))
        fail("coupling_k", "must be >= 0");
}

inline double coupling_of(const RunConfig& c, const UnitSystem& units) {
    return c.coupling_k ? *c.coupling_k : coupling_constant(c.z1, c.z2, units);
}

/// Propagates one Gaussian packet and samples its observables every
/// `sample_every` steps.
inline QuantumSeries run_quantum(const RunConfig& c, double sigma, const CnPropagator& prop,
                                 const PotentialTable& pot, const UnitSystem& units) {
    WaveFunction wf = gaussian_packet(prop.grid(), c.x0, sigma, c.p0, units);
    QuantumSeries q;
    q.sigma = sigma;
    const std::size_t rows = c.sample_count();
    for (auto* v : {&q.mean_x, &q.mean_p, &q.mean_force, &q.spread, &q.norm, &q.mean_energy}) v->reserve(rows);

    const std::size_t steps = c.step_count();
    for (std::size_t n = 0;; ++n) {
        if (n % c.sample_every == 0) {
            if (edge_ratio(wf) >= kEdgeTolerance)
                throw BoundaryContamination("sigma " + std::to_string(sigma) + ": amplitude reached the box edge at t = " +
                                            std::to_string(static_cast<double>(n) * c.dt) + " fm/c");
            const QuantumObservables o = observe(wf, pot, units);
            q.mean_x.push_back(o.mean_x);
            q.mean_p.push_back(o.mean_p);
            q.mean_force.push_back(o.mean_force);
            q.spread.push_back(o.spread);
            q.norm.push_back(o.norm);
            q.mean_energy.push_back(o.mean_energy);
        }
        if (n == steps) break;
        prop.advance(wf);
    }
    return q;
}

inline ComparisonMetrics compute_metrics(const RunConfig& c, const ObservableSeries& s, double coupling_k) {
    ComparisonMetrics m;
    m.coupling_k = coupling_k;
    const double e0 = c.p0 * c.p0 / (2.0 * c.mass) + (coupling_k > 0.0 ? coupling_k / std::abs(c.x0) : 0.0);
    m.initial_energy_classical = e0;
    if (coupling_k > 0.0) m.closest_approach_oracle = analytic_closest_approach(e0, coupling_k);

    const auto& cl = s.classical;
    m.classical_turning = closest_approach(s.times, cl.x, cl.p);
    const CoulombForce f{coupling_k, 0.0};
    for (std::size_t i = 0; i < cl.size(); ++i) {
        const double e = cl.p[i] * cl.p[i] / (2.0 * c.mass) + f.potential(cl.x[i]);
        m.classical_energy_drift = std::max(m.classical_energy_drift, std::abs(e - e0) / e0);
    }

    const auto jensen = jensen_report(s);
    for (std::size_t qi = 0; qi < s.quantum.size(); ++qi) {
        const auto& q = s.quantum[qi];
        SigmaMetrics sm;
        sm.sigma = q.sigma;
        sm.turning = closest_approach(s.times, q.mean_x, q.mean_p);
        sm.force_crossover_time = jensen[qi].crossover_time;
        sm.force_t0_quantum = jensen[qi].force_t0_quantum;
        sm.force_t0_classical = jensen[qi].force_t0_classical;
        sm.jensen_t0_satisfied = jensen[qi].t0_satisfied;
        const double t_end = sm.turning.reached ? sm.turning.time : s.times.back();
        sm.max_lag = max_lag(s.times, cl.x, q.mean_x, t_end);
        sm.lag_holds = lag_holds(s.times, cl.x, q.mean_x, t_end);
        sm.exceeds_classical = sm.turning.reached && m.classical_turning.reached &&
                               sm.turning.distance > m.classical_turning.distance;
        const double h0 = q.mean_energy.front();
        for (std::size_t i = 0; i < q.norm.size(); ++i) {
            sm.max_norm_drift = std::max(sm.max_norm_drift, std::abs(q.norm[i] - 1.0));
            sm.max_energy_drift = std::max(sm.max_energy_drift, std::abs(q.mean_energy[i] - h0) / std::abs(h0));
        }
        m.per_sigma.push_back(sm);
    }
    return m;
}

/// Runs the classical trajectory and one quantum run per sigma on a shared
/// time axis, then derives the comparison metrics.
///
/// The quantum runs share one prefactored propagator and execute on
/// separate threads when more than one hardware thread is available.
inline ComparisonResult run_comparison(const RunConfig& c, UnitSystem units = {}) {
    validate(c);
    units.mass_alpha = c.mass;
    units.validate();

    ComparisonResult r;
    r.grid = make_grid(c.x_min, c.x_max, c.n_points);
    const double k = coupling_of(c, units);
    const PotentialTable pot = coulomb_table(r.grid, k, c.softening_cut);
    r.softening_cut = pot.softening_cut;
    const CnPropagator prop(r.grid, pot, c.dt, units);

    // Fail before any propagation if a packet does not fit.
    for (double sigma : c.sigma_list) (void)gaussian_packet(r.grid, c.x0, sigma, c.p0, units);

    auto& s = r.series;
    const std::size_t rows = c.sample_count();
    s.times.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) s.times[i] = static_cast<double>(i * c.sample_every) * c.dt;
    s.classical = classical_trajectory(c.x0, c.p0, c.mass, k, c.dt, c.t_max, c.sample_every);
    s.classical.times = s.times;

    if (std::thread::hardware_concurrency() > 1 && c.sigma_list.size() > 1) {
        std::vector<std::future<QuantumSeries>> runs;
        for (double sigma : c.sigma_list)
            runs.push_back(std::async(std::launch::async, [&, sigma] { return run_quantum(c, sigma, prop, pot, units); }));
        for (auto& f : runs) s.quantum.push_back(f.get());
    } else {
        for (double sigma : c.sigma_list) s.quantum.push_back(run_quantum(c, sigma, prop, pot, units));
    }

    r.metrics = compute_metrics(c, s, k);
    return r;
}

} // namespace rutherford

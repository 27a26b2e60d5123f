#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rutherford/error.hpp"

namespace rutherford {

struct ClassicalState {
    double x = 0.0;  // fm
    double p = 0.0;  // MeV/c
    double t = 0.0;  // fm/c
};

/// Exact repulsive Coulomb force k/x^2 directed away from the origin.
///
/// Evaluating it inside `exclusion_radius` is a configuration error: a
/// head-on point particle with positive energy turns around well outside it.
struct CoulombForce {
    double coupling_k = 0.0;
    double exclusion_radius = 0.0;

    double operator()(double x) const {
        const double r = std::abs(x);
        if (coupling_k != 0.0 && (r <= exclusion_radius || r == 0.0))
            throw InvalidArgument("classical trajectory entered |x| <= " +
                                  std::to_string(exclusion_radius) + " fm");
        return coupling_k == 0.0 ? 0.0 : (x < 0.0 ? -1.0 : 1.0) * coupling_k / (r * r);
    }

    double potential(double x) const { return coupling_k == 0.0 ? 0.0 : coupling_k / std::abs(x); }
};

/// One classical RK4 step of dx/dt = p/m, dp/dt = F(x). A negative dt steps
/// backwards in time.
template <class Force>
ClassicalState hamilton_step(const ClassicalState& s, const Force& force, double mass, double dt) {
    if (!std::isfinite(dt) || dt == 0.0)
        throw InvalidArgument("hamilton_step: dt must be finite and non-zero");
    if (!(mass > 0.0)) throw InvalidArgument("hamilton_step: mass must be positive");

    const double k1x = s.p / mass;
    const double k1p = force(s.x);
    const double k2x = (s.p + 0.5 * dt * k1p) / mass;
    const double k2p = force(s.x + 0.5 * dt * k1x);
    const double k3x = (s.p + 0.5 * dt * k2p) / mass;
    const double k3p = force(s.x + 0.5 * dt * k2x);
    const double k4x = (s.p + dt * k3p) / mass;
    const double k4p = force(s.x + dt * k3x);

    ClassicalState out;
    out.x = s.x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    out.p = s.p + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    out.t = s.t + dt;
    if (!std::isfinite(out.x) || !std::isfinite(out.p))
        throw InvalidArgument("hamilton_step: state became non-finite");
    return out;
}

struct ClassicalSeries {
    std::vector<double> times;
    std::vector<double> x;
    std::vector<double> p;
    std::vector<double> force;

    std::size_t size() const noexcept { return times.size(); }
};

/// Integrates the head-on Coulomb trajectory with step dt up to t_max and
/// records (t, x, p, F) every `sample_every` steps, starting at t = 0.
inline ClassicalSeries classical_trajectory(double x0, double p0, double mass, double coupling_k,
                                            double dt, double t_max, std::size_t sample_every = 1) {
    if (!(x0 < 0.0 && p0 > 0.0))
        throw InvalidArgument("classical_trajectory: requires x0 < 0 and p0 > 0");
    if (!(dt > 0.0 && std::isfinite(dt))) throw InvalidArgument("classical_trajectory: dt must be > 0");
    if (!(t_max > 0.0)) throw InvalidArgument("classical_trajectory: t_max must be > 0");
    if (sample_every == 0) throw InvalidArgument("classical_trajectory: sample_every must be >= 1");

    // The turning point at total energy E sits at k/E; anything inside a
    // tenth of it means the step size has broken the integration.
    const double energy = p0 * p0 / (2.0 * mass) + coupling_k / std::abs(x0);
    const CoulombForce force{coupling_k, coupling_k > 0.0 ? 0.1 * coupling_k / energy : 0.0};

    const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
    ClassicalSeries out;
    ClassicalState s{x0, p0, 0.0};
    auto record = [&](const ClassicalState& st) {
        out.times.push_back(st.t);
        out.x.push_back(st.x);
        out.p.push_back(st.p);
        out.force.push_back(force(st.x));
    };
    record(s);
    for (std::size_t n = 1; n <= steps; ++n) {
        s = hamilton_step(s, force, mass, dt);
        s.t = static_cast<double>(n) * dt;
        if (n % sample_every == 0) record(s);
    }
    return out;
}

/// Head-on turning distance where k/d equals the energy.
inline double analytic_closest_approach(double energy, double coupling_k) {
    if (!(energy > 0.0) || !(coupling_k > 0.0))
        throw InvalidArgument("analytic_closest_approach: energy and coupling must be > 0");
    return coupling_k / energy;
}

} // namespace rutherford

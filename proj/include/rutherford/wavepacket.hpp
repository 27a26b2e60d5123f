#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "rutherford/error.hpp"
#include "rutherford/grid.hpp"
#include "rutherford/potential.hpp"
#include "rutherford/units.hpp"

namespace rutherford {

using Complex = std::complex<double>;

/// Complex amplitudes on a grid at a given time (fm/c).
struct WaveFunction {
    Grid grid;
    std::vector<Complex> amplitudes;
    double time = 0.0;
};

struct QuantumObservables {
    double time = 0.0;
    double mean_x = 0.0;       // fm
    double mean_p = 0.0;       // MeV/c
    double mean_force = 0.0;   // MeV/fm
    double spread = 0.0;       // fm
    double norm = 0.0;
    double mean_energy = 0.0;  // MeV
};

/// Largest |psi| on the two outermost nodes at each end of the box, relative
/// to the peak |psi|. The edge nodes themselves are pinned to zero once a
/// Dirichlet step has run, so their inner neighbours are checked as well.
inline double edge_ratio(const WaveFunction& wf) {
    const auto& a = wf.amplitudes;
    double peak = 0.0;
    for (const auto& v : a) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    const std::size_t n = a.size();
    const double edge = std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[n - 2]), std::abs(a[n - 1])});
    return edge / peak;
}

inline constexpr double kEdgeTolerance = 1e-6;

inline double norm(const WaveFunction& wf) {
    double sum = 0.0;
    const auto& a = wf.amplitudes;
    const std::size_t n = a.size();
    for (std::size_t j = 1; j + 1 < n; ++j) sum += std::norm(a[j]);
    sum += 0.5 * (std::norm(a.front()) + std::norm(a.back()));
    return sum * wf.grid.dx;
}

namespace detail {

inline double checked_norm(const WaveFunction& wf) {
    const double n = norm(wf);
    if (!(n > 0.0)) throw InvalidArgument("observable of a wave function with zero norm");
    return n;
}

// Trapezoid-weighted sum of f(j) * |psi_j|^2.
template <class F>
double weighted_density_sum(const WaveFunction& wf, F&& f) {
    const auto& a = wf.amplitudes;
    const std::size_t n = a.size();
    double sum = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) sum += f(j) * std::norm(a[j]);
    sum += 0.5 * (f(0) * std::norm(a.front()) + f(n - 1) * std::norm(a.back()));
    return sum * wf.grid.dx;
}

} // namespace detail

/// Minimum-uncertainty Gaussian centred at x0 with position spread sigma and
/// mean momentum p0, renormalized to unit discrete norm.
inline WaveFunction gaussian_packet(const Grid& grid, double x0, double sigma, double p0,
                                    const UnitSystem& units = {}) {
    if (!(std::isfinite(sigma) && sigma > 0.0))
        throw InvalidArgument("gaussian_packet: sigma must be > 0");
    if (!std::isfinite(x0) || !std::isfinite(p0))
        throw InvalidArgument("gaussian_packet: x0 and p0 must be finite");
    if (!(x0 > grid.x_min + 5.0 * sigma && x0 < grid.x_max - 5.0 * sigma))
        throw InvalidArgument("gaussian_packet: x0 must lie at least 5 sigma inside the grid");

    WaveFunction wf;
    wf.grid = grid;
    wf.amplitudes.resize(grid.n_points);
    const double amp = 1.0 / std::sqrt(sigma * std::sqrt(2.0 * std::numbers::pi));
    const double k0 = p0 / units.hbar();
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double u = grid.node(j) - x0;
        wf.amplitudes[j] = amp * std::exp(-u * u / (4.0 * sigma * sigma)) * std::polar(1.0, k0 * u);
    }
    const double n = norm(wf);
    const double scale = 1.0 / std::sqrt(n);
    for (auto& a : wf.amplitudes) a *= scale;

    if (edge_ratio(wf) >= kEdgeTolerance)
        throw BoundaryContamination("gaussian_packet: packet tail reaches the box edge");
    return wf;
}

inline double mean_position(const WaveFunction& wf) {
    const double n = detail::checked_norm(wf);
    const Grid& g = wf.grid;
    return detail::weighted_density_sum(wf, [&](std::size_t j) { return g.node(j); }) / n;
}

inline double position_spread(const WaveFunction& wf) {
    const double n = detail::checked_norm(wf);
    const Grid& g = wf.grid;
    const double mean = detail::weighted_density_sum(wf, [&](std::size_t j) { return g.node(j); }) / n;
    // Central second moment avoids cancellation at large |<x>|.
    const double var = detail::weighted_density_sum(wf, [&](std::size_t j) {
                           const double u = g.node(j) - mean;
                           return u * u;
                       }) / n;
    return std::sqrt(std::max(var, 0.0));
}

/// <p> = hbar Int Im(psi* dpsi/dx) dx / norm, with central differences in
/// the interior and one-sided differences at the two edge nodes.
inline double mean_momentum(const WaveFunction& wf, const UnitSystem& units = {}) {
    const double n = detail::checked_norm(wf);
    const auto& a = wf.amplitudes;
    const std::size_t m = a.size();
    const double dx = wf.grid.dx;

    double sum = 0.0;
    for (std::size_t j = 1; j + 1 < m; ++j)
        sum += (std::conj(a[j]) * (a[j + 1] - a[j - 1])).imag();
    sum /= 2.0 * dx;
    const double left = (std::conj(a[0]) * (a[1] - a[0])).imag() / dx;
    const double right = (std::conj(a[m - 1]) * (a[m - 1] - a[m - 2])).imag() / dx;
    sum += 0.5 * (left + right);
    return units.hbar() * sum * dx / n;
}

/// <F> = -<V'>.
inline double mean_force(const WaveFunction& wf, const PotentialTable& pot) {
    require_same_grid(wf.grid, pot.grid, "mean_force");
    const double n = detail::checked_norm(wf);
    return -detail::weighted_density_sum(wf, [&](std::size_t j) { return pot.dv[j]; }) / n;
}

/// <H> with the three-point Laplacian and zero amplitude outside the box.
inline double mean_energy(const WaveFunction& wf, const PotentialTable& pot,
                          const UnitSystem& units = {}) {
    require_same_grid(wf.grid, pot.grid, "mean_energy");
    const double n = detail::checked_norm(wf);
    const auto& a = wf.amplitudes;
    const std::size_t m = a.size();
    const double dx = wf.grid.dx;
    const double kin = units.hbar() * units.hbar() / (2.0 * units.mass_alpha * dx * dx);

    auto h_psi = [&](std::size_t j) {
        const Complex left = j > 0 ? a[j - 1] : Complex{};
        const Complex right = j + 1 < m ? a[j + 1] : Complex{};
        return -kin * (right - 2.0 * a[j] + left) + pot.v[j] * a[j];
    };
    double sum = 0.0;
    for (std::size_t j = 1; j + 1 < m; ++j) sum += (std::conj(a[j]) * h_psi(j)).real();
    sum += 0.5 * ((std::conj(a[0]) * h_psi(0)).real() + (std::conj(a[m - 1]) * h_psi(m - 1)).real());
    return sum * dx / n;
}

inline QuantumObservables observe(const WaveFunction& wf, const PotentialTable& pot,
                                  const UnitSystem& units = {}) {
    QuantumObservables o;
    o.time = wf.time;
    o.norm = norm(wf);
    o.mean_x = mean_position(wf);
    o.spread = position_spread(wf);
    o.mean_p = mean_momentum(wf, units);
    o.mean_force = mean_force(wf, pot);
    o.mean_energy = mean_energy(wf, pot, units);
    return o;
}

} // namespace rutherford

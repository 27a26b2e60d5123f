#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "rutherford/error.hpp"
#include "rutherford/grid.hpp"
#include "rutherford/potential.hpp"
#include "rutherford/tridiagonal.hpp"
#include "rutherford/units.hpp"
#include "rutherford/wavepacket.hpp"

namespace rutherford {

/// One Cayley-form step  (1 + i H dt / 2 hbar) psi' = (1 - i H dt / 2 hbar) psi
/// with H discretized by the three-point Laplacian.
///
/// The unknowns are the interior nodes; both edge nodes are held at zero
/// (Dirichlet). The left-hand operator is factored once at construction.
/// A negative dt gives the exact inverse of the step built with |dt|.
class CnPropagator {
public:
    CnPropagator(const Grid& grid, const PotentialTable& pot, double dt, const UnitSystem& units = {})
        : grid_(grid), dt_(dt) {
        require_same_grid(grid, pot.grid, "build_propagator");
        units.validate();
        if (!std::isfinite(dt) || dt == 0.0)
            throw InvalidArgument("build_propagator: dt must be finite and non-zero");
        if (grid.n_points < 3)
            throw InvalidArgument("build_propagator: grid needs at least one interior node");

        const std::size_t n = grid.n_points - 2;
        const double hbar = units.hbar();
        const double kin = hbar * hbar / (2.0 * units.mass_alpha * grid.dx * grid.dx);
        const Complex half = Complex(0.0, dt / (2.0 * hbar));

        // H is tridiagonal with off-diagonal -kin and diagonal 2 kin + V_j.
        lhs_.diag.resize(n);
        rhs_.diag.resize(n);
        lhs_.lower.assign(n - 1, half * (-kin));
        lhs_.upper = lhs_.lower;
        rhs_.lower.assign(n - 1, -half * (-kin));
        rhs_.upper = rhs_.lower;
        for (std::size_t i = 0; i < n; ++i) {
            const double h_diag = 2.0 * kin + pot.v[i + 1];
            lhs_.diag[i] = 1.0 + half * h_diag;
            rhs_.diag[i] = 1.0 - half * h_diag;
        }
        lu_ = TridiagonalLu<Complex>(lhs_);
    }

    double dt() const noexcept { return dt_; }
    const Grid& grid() const noexcept { return grid_; }
    const TridiagonalSystem<Complex>& lhs() const noexcept { return lhs_; }
    const TridiagonalSystem<Complex>& rhs() const noexcept { return rhs_; }

    /// Advances wf in place by dt. The sweep reuses the amplitude storage, so
    /// a propagator may be shared by several runs.
    void advance(WaveFunction& wf) const {
        require_same_grid(wf.grid, grid_, "step");
        auto& a = wf.amplitudes;
        const std::size_t n = grid_.n_points - 2;

        const auto& inv = lu_.inv_pivot();
        const auto& low = lu_.lower();
        const auto& ur = lu_.upper_ratio();
        const auto& rd = rhs_.diag;
        const Complex off = n > 1 ? rhs_.lower[0] : Complex{};

        // Right-hand side with zero edges, fused with the forward sweep;
        // y_i is written to a[i+1] once the old a[i+1] has been consumed.
        Complex left{};
        Complex y_prev{};
        for (std::size_t i = 0; i < n; ++i) {
            const Complex centre = a[i + 1];
            Complex b = rd[i] * centre + off * left;
            if (i + 1 < n) b += off * a[i + 2];
            y_prev = i == 0 ? b * inv[0] : (b - low[i - 1] * y_prev) * inv[i];
            a[i + 1] = y_prev;
            left = centre;
        }
        for (std::size_t i = n - 1; i-- > 0;) a[i + 1] -= ur[i] * a[i + 2];

        a.front() = Complex{};
        a.back() = Complex{};
        wf.time += dt_;
    }

private:
    Grid grid_;
    double dt_;
    TridiagonalSystem<Complex> lhs_;
    TridiagonalSystem<Complex> rhs_;
    TridiagonalLu<Complex> lu_;
};

inline CnPropagator build_propagator(const Grid& grid, const PotentialTable& pot, double dt,
                                     const UnitSystem& units = {}) {
    return CnPropagator(grid, pot, dt, units);
}

inline WaveFunction step(const CnPropagator& prop, WaveFunction wf) {
    prop.advance(wf);
    return wf;
}

} // namespace rutherford

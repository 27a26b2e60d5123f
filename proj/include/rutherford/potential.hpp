#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "rutherford/error.hpp"
#include "rutherford/grid.hpp"
#include "rutherford/units.hpp"

namespace rutherford {

enum class PotentialKind { coulomb, harmonic, free };

inline std::string_view to_string(PotentialKind kind) {
    switch (kind) {
    case PotentialKind::coulomb: return "coulomb";
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::free: return "free";
    }
    return "unknown";
}

/// V and V' sampled on a grid.
///
/// For Coulomb tables `coupling_k` is Z1*Z2*alpha*hbar*c; for harmonic
/// tables it holds the spring constant. `softening_cut` is zero unless the
/// table is Coulomb.
struct PotentialTable {
    Grid grid;
    std::vector<double> v;   // MeV
    std::vector<double> dv;  // MeV/fm
    double coupling_k = 0.0;
    PotentialKind kind = PotentialKind::free;
    double softening_cut = 0.0;
};

/// Z1*Z2*alpha*hbar*c in MeV fm.
inline double coupling_constant(int z1, int z2, const UnitSystem& units = {}) {
    if (z1 < 1 || z2 < 1)
        throw InvalidArgument("charge numbers must be >= 1");
    units.validate();
    return static_cast<double>(z1) * static_cast<double>(z2) * units.alpha_fs * units.hbar_c;
}

/// Repulsive Coulomb potential k/|x| with the nucleus at the origin.
///
/// Inside |x| < softening_cut the distance is clamped to softening_cut.
/// The default cut is dx/2.
inline PotentialTable coulomb_table(const Grid& grid, double coupling_k,
                                    std::optional<double> softening_cut = std::nullopt) {
    const double cut = softening_cut.value_or(0.5 * grid.dx);
    if (!(std::isfinite(cut) && cut >= 0.0))
        throw InvalidArgument("softening_cut must be >= 0");
    if (!std::isfinite(coupling_k))
        throw InvalidArgument("coupling_k must be finite");

    PotentialTable t;
    t.grid = grid;
    t.kind = PotentialKind::coulomb;
    t.coupling_k = coupling_k;
    t.softening_cut = cut;
    t.v.resize(grid.n_points);
    t.dv.resize(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double x = grid.node(j);
        const double r = std::max(std::abs(x), cut);
        if (r == 0.0)
            throw InvalidArgument("coulomb_table: node at x = 0 with zero softening");
        const double sign = x < 0.0 ? -1.0 : 1.0;
        t.v[j] = coupling_k / r;
        t.dv[j] = -sign * coupling_k / (r * r);
    }
    return t;
}

/// V = k_h x^2 / 2.
inline PotentialTable harmonic_table(const Grid& grid, double k_h) {
    if (!(std::isfinite(k_h) && k_h >= 0.0))
        throw InvalidArgument("harmonic_table: k_h must be >= 0");
    PotentialTable t;
    t.grid = grid;
    t.kind = k_h == 0.0 ? PotentialKind::free : PotentialKind::harmonic;
    t.coupling_k = k_h;
    t.v.resize(grid.n_points);
    t.dv.resize(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double x = grid.node(j);
        t.v[j] = 0.5 * k_h * x * x;
        t.dv[j] = k_h * x;
    }
    return t;
}

inline PotentialTable free_table(const Grid& grid) {
    PotentialTable t;
    t.grid = grid;
    t.kind = PotentialKind::free;
    t.v.assign(grid.n_points, 0.0);
    t.dv.assign(grid.n_points, 0.0);
    return t;
}

} // namespace rutherford

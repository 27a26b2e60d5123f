#pragma once

#include <cmath>

#include "rutherford/error.hpp"

namespace rutherford {

// Natural units with c = 1: lengths in fm, energies in MeV, momenta in MeV/c,
// times in fm/c. Numerically hbar == hbar*c.
struct UnitSystem {
    double hbar_c = 197.3269631;          // MeV fm
    double alpha_fs = 1.0 / 137.035999679;
    double mass_alpha = 3727.379;         // MeV (m c^2)

    double hbar() const noexcept { return hbar_c; }

    void validate() const {
        if (!(std::isfinite(hbar_c) && hbar_c > 0.0))
            throw InvalidArgument("hbar_c must be positive and finite");
        if (!(std::isfinite(alpha_fs) && alpha_fs > 0.0))
            throw InvalidArgument("alpha_fs must be positive and finite");
        if (!(std::isfinite(mass_alpha) && mass_alpha > 0.0))
            throw InvalidArgument("mass_alpha must be positive and finite");
    }
};

inline UnitSystem with_mass(UnitSystem units, double mass) {
    units.mass_alpha = mass;
    units.validate();
    return units;
}

} // namespace rutherford

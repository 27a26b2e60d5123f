#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>

#include "rutherford/error.hpp"

namespace rutherford {

/// Uniform one-dimensional mesh.
///
/// Nodes are x_j = x_min + j*dx for j = 0..n_points-1. When the requested
/// node set would put a node within dx/4 of the origin, the whole mesh is
/// moved right by dx/2 and `shift` records that offset; x_min and x_max
/// always describe the nodes actually used.
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_points = 0;
    double dx = 0.0;
    double shift = 0.0;

    double node(std::size_t j) const noexcept {
        return x_min + static_cast<double>(j) * dx;
    }

    std::size_t size() const noexcept { return n_points; }

    /// Index of the node nearest to x, clamped to the mesh.
    std::size_t nearest_index(double x) const noexcept {
        const double r = std::round((x - x_min) / dx);
        if (r <= 0.0) return 0;
        if (r >= static_cast<double>(n_points - 1)) return n_points - 1;
        return static_cast<std::size_t>(r);
    }

    friend bool operator==(const Grid&, const Grid&) = default;
};

inline Grid make_grid(double x_min, double x_max, std::size_t n_points) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw InvalidArgument("grid bounds must be finite");
    if (!(x_min < x_max))
        throw InvalidArgument("grid requires x_min < x_max");
    if (n_points < 3)
        throw InvalidArgument("grid requires n_points >= 3, got " + std::to_string(n_points));

    Grid g;
    g.n_points = n_points;
    g.dx = (x_max - x_min) / static_cast<double>(n_points - 1);
    g.x_min = x_min;
    g.x_max = x_max;

    // Nearest node to the origin, if the origin lies within the mesh span.
    if (x_min <= 0.0 && x_max >= 0.0) {
        const double j0 = std::round(-x_min / g.dx);
        const double nearest = x_min + j0 * g.dx;
        if (std::abs(nearest) < 0.25 * g.dx) {
            g.shift = 0.5 * g.dx;
            g.x_min += g.shift;
            g.x_max += g.shift;
        }
    }
    return g;
}

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw GridMismatch(std::string(what) + ": grids differ");
}

/// Trapezoidal rule over [x_min, x_max].
template <class T>
auto quadrature(std::span<const T> samples, const Grid& grid) {
    using R = std::remove_cv_t<T>;
    if (samples.size() != grid.n_points)
        throw InvalidArgument("quadrature: " + std::to_string(samples.size()) +
                              " samples on a grid of " + std::to_string(grid.n_points));
    R sum{};
    for (std::size_t j = 1; j + 1 < samples.size(); ++j) sum += samples[j];
    sum += 0.5 * (samples.front() + samples.back());
    return sum * grid.dx;
}

template <class Container>
auto quadrature(const Container& samples, const Grid& grid) {
    using T = typename Container::value_type;
    return quadrature(std::span<const T>(samples.data(), samples.size()), grid);
}

} // namespace rutherford

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rutherford/error.hpp"

namespace rutherford {

/// Tridiagonal matrix stored by diagonals.
///
/// Row i reads lower[i-1] * x[i-1] + diag[i] * x[i] + upper[i] * x[i+1].
template <class T>
struct TridiagonalSystem {
    std::vector<T> lower;
    std::vector<T> diag;
    std::vector<T> upper;

    std::size_t size() const noexcept { return diag.size(); }

    void validate() const {
        if (diag.empty()) throw InvalidArgument("tridiagonal system is empty");
        if (lower.size() + 1 != diag.size() || upper.size() + 1 != diag.size())
            throw InvalidArgument("tridiagonal system: off-diagonals must have size-1 entries");
    }

    /// y = A x
    void multiply(std::span<const T> x, std::span<T> y) const {
        const std::size_t n = size();
        if (x.size() != n || y.size() != n)
            throw InvalidArgument("tridiagonal multiply: length mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            T s = diag[i] * x[i];
            if (i > 0) s += lower[i - 1] * x[i - 1];
            if (i + 1 < n) s += upper[i] * x[i + 1];
            y[i] = s;
        }
    }
};

namespace detail {
template <class T>
bool is_unusable_pivot(const T& p) {
    using std::abs;
    using std::isfinite;
    const auto m = abs(p);
    return m == 0 || !isfinite(m);
}
} // namespace detail

/// LU factorization of a tridiagonal matrix without pivoting (Thomas).
///
/// The factorization is computed once; `solve` performs one forward and one
/// backward substitution. A zero pivot raises SolverBreakdown: there is no
/// row exchange and no perturbation.
template <class T>
class TridiagonalLu {
public:
    TridiagonalLu() = default;

    explicit TridiagonalLu(const TridiagonalSystem<T>& sys) {
        sys.validate();
        const std::size_t n = sys.size();
        lower_ = sys.lower;
        upper_ratio_.resize(n > 0 ? n - 1 : 0);
        inv_pivot_.resize(n);

        T pivot = sys.diag[0];
        check_pivot(pivot, 0);
        inv_pivot_[0] = T(1) / pivot;
        for (std::size_t i = 1; i < n; ++i) {
            upper_ratio_[i - 1] = sys.upper[i - 1] * inv_pivot_[i - 1];
            pivot = sys.diag[i] - sys.lower[i - 1] * upper_ratio_[i - 1];
            check_pivot(pivot, i);
            inv_pivot_[i] = T(1) / pivot;
        }
    }

    std::size_t size() const noexcept { return inv_pivot_.size(); }

    /// Solves A x = b in place (b is overwritten by x).
    void solve_in_place(std::span<T> b) const {
        const std::size_t n = size();
        if (b.size() != n)
            throw InvalidArgument("tridiagonal solve: rhs has " + std::to_string(b.size()) +
                                  " entries, system has " + std::to_string(n));
        b[0] *= inv_pivot_[0];
        for (std::size_t i = 1; i < n; ++i)
            b[i] = (b[i] - lower_[i - 1] * b[i - 1]) * inv_pivot_[i];
        for (std::size_t i = n - 1; i-- > 0;)
            b[i] -= upper_ratio_[i] * b[i + 1];
    }

    std::vector<T> solve(std::span<const T> b) const {
        std::vector<T> x(b.begin(), b.end());
        solve_in_place(x);
        return x;
    }

    // Exposed for fused sweeps in the propagator.
    const std::vector<T>& lower() const noexcept { return lower_; }
    const std::vector<T>& upper_ratio() const noexcept { return upper_ratio_; }
    const std::vector<T>& inv_pivot() const noexcept { return inv_pivot_; }

private:
    static void check_pivot(const T& p, std::size_t row) {
        if (detail::is_unusable_pivot(p))
            throw SolverBreakdown("zero pivot in tridiagonal LU at row " + std::to_string(row));
    }

    std::vector<T> lower_;
    std::vector<T> upper_ratio_;
    std::vector<T> inv_pivot_;
};

template <class T>
std::vector<T> solve_tridiagonal(const TridiagonalSystem<T>& sys, std::span<const T> rhs) {
    return TridiagonalLu<T>(sys).solve(rhs);
}

template <class T>
std::vector<T> solve_tridiagonal(const TridiagonalSystem<T>& sys, const std::vector<T>& rhs) {
    return solve_tridiagonal(sys, std::span<const T>(rhs));
}

} // namespace rutherford

//==============================================================================
// norms.hpp
// Mixed L^{p1}_{x1} L^{p2}_{x2} norms on the truncated grid. Rectangle-rule
// quadrature with weights h1, h2; p = inf is the grid maximum. Reductions use
// a fixed pairwise order for reproducibility.
//==============================================================================
#pragma once

#include <limits>

#include "core.hpp"

namespace oseen2d {

inline constexpr double p_inf = std::numeric_limits<double>::infinity();

inline void require_exponent(double p, const char* who) {
    if (std::isnan(p) || p < 1.0)
        throw std::invalid_argument(std::string(who) + ": exponent must lie in [1, inf]");
}

namespace detail {

// Inner L^{p2} norm of one x1 row over the window columns [0, N2).
inline double row_norm(const ScalarField& f, int i1, double p2, std::vector<double>& scratch) {
    const int N2 = f.grid.N2;
    if (p2 == p_inf) {
        double m = 0.0;
        for (int i2 = 0; i2 < N2; ++i2) m = std::max(m, std::abs(f.at(i1, i2)));
        return m;
    }
    scratch.resize(static_cast<std::size_t>(N2));
    for (int i2 = 0; i2 < N2; ++i2) scratch[static_cast<std::size_t>(i2)] = std::pow(std::abs(f.at(i1, i2)), p2);
    double s = f.grid.h2() * pairwise_sum(scratch);
    return std::pow(s, 1.0 / p2);
}

}  // namespace detail

/// Mixed norm over the full grid, or over an x1 row window if given.
inline double mixed_norm(const ScalarField& f, double p1, double p2,
                         const Window* win = nullptr) {
    require_exponent(p1, "mixed_norm(p1)");
    require_exponent(p2, "mixed_norm(p2)");
    require_finite(f, "mixed_norm");
    const int lo = win ? win->i_lo : 0;
    const int hi = win ? win->i_hi : f.grid.N1;

    std::vector<double> scratch;
    if (p1 == p_inf) {
        double m = 0.0;
        for (int i1 = lo; i1 < hi; ++i1) m = std::max(m, detail::row_norm(f, i1, p2, scratch));
        return m;
    }
    std::vector<double> rows(static_cast<std::size_t>(hi - lo));
    for (int i1 = lo; i1 < hi; ++i1)
        rows[static_cast<std::size_t>(i1 - lo)] = std::pow(detail::row_norm(f, i1, p2, scratch), p1);
    double s = f.grid.h1() * pairwise_sum(rows);
    return std::pow(s, 1.0 / p1);
}

/// Discrete L2 norm of a physical field (mixed_norm with p1 = p2 = 2).
inline double l2_norm(const ScalarField& f, const Window* win = nullptr) {
    return mixed_norm(f, 2.0, 2.0, win);
}

/// l2 norm of a semi-spectral field with Parseval weights:
/// ||f||_2^2 = h1/(2 L2) * sum |f^|^2.
inline double l2_norm(const SemiSpectralField& fh, const Window* win = nullptr) {
    const int lo = win ? win->i_lo : 0;
    const int hi = win ? win->i_hi : fh.grid.N1;
    std::vector<double> rows(static_cast<std::size_t>(hi - lo));
    for (int i1 = lo; i1 < hi; ++i1) {
        double s = 0.0;
        for (int k = 0; k < fh.grid.N2; ++k) s += std::norm(fh.at(i1, k));
        rows[static_cast<std::size_t>(i1 - lo)] = s;
    }
    return std::sqrt(fh.grid.h1() / (2.0 * fh.grid.L2) * pairwise_sum(rows));
}

}  // namespace oseen2d

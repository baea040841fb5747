//==============================================================================
// core.hpp
// Grids and field containers for the semi-spectral solver: a periodic
// truncation [-L1,L1]x[-L2,L2] sampled on an N1xN2 grid, real fields in
// physical space, and complex fields indexed by (x1 sample, xi2 mode).
//==============================================================================
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oseen2d {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// 2^j as an exact double.
inline double pow2(int j) { return std::ldexp(1.0, j); }

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

//------------------------------------------------------------------------------
// Grid2: uniform periodic grid with spectral metadata. x1 is the streamwise
// coordinate (kernels integrate along it), x2 carries the Fourier modes
// xi2_k = pi*k/L2, k = -N2/2..N2/2-1 (stored in FFT order).
//------------------------------------------------------------------------------
struct Grid2 {
    double L1 = 0.0;  // half-length of the x1 domain
    int N1 = 0;
    double L2 = 0.0;
    int N2 = 0;

    Grid2() = default;
    Grid2(double L1_, int N1_, double L2_, int N2_) : L1(L1_), N1(N1_), L2(L2_), N2(N2_) {
        if (!(L1 > 0.0) || !(L2 > 0.0))
            throw std::invalid_argument("Grid2: domain half-lengths must be positive");
        if (N1 < 8 || N2 < 8 || !is_pow2(N1) || !is_pow2(N2))
            throw std::invalid_argument("Grid2: N1, N2 must be powers of two >= 8");
    }

    double h1() const { return 2.0 * L1 / N1; }
    double h2() const { return 2.0 * L2 / N2; }

    double x1(int i) const { return -L1 + i * h1(); }
    double x2(int i) const { return -L2 + i * h2(); }

    /// Signed mode index for FFT-order slot k (k in [0,N)): 0,1,..,N/2-1,-N/2,..,-1.
    static int signed_mode(int k, int N) { return k < N / 2 ? k : k - N; }

    double xi1(int m) const { return pi * signed_mode(m, N1) / L1; }
    double xi2(int k) const { return pi * signed_mode(k, N2) / L2; }

    /// Smallest and largest |xi2| over nonzero modes.
    double xi2_min() const { return pi / L2; }
    double xi2_nyquist() const { return pi * (N2 / 2) / L2; }

    std::size_t size() const { return static_cast<std::size_t>(N1) * N2; }

    bool operator==(const Grid2& o) const {
        return L1 == o.L1 && N1 == o.N1 && L2 == o.L2 && N2 == o.N2;
    }
};

/// Monotone (unshuffled) frequency list, lowest to highest signed mode.
inline std::vector<double> xi2_monotone(const Grid2& g) {
    std::vector<double> out(g.N2);
    for (int k = 0; k < g.N2; ++k) {
        int ks = Grid2::signed_mode(k, g.N2);
        out[static_cast<std::size_t>(ks + g.N2 / 2)] = pi * ks / g.L2;
    }
    return out;
}

//------------------------------------------------------------------------------
// Field containers. Row-major storage, x1 outer, x2 (or xi2 mode) inner.
//------------------------------------------------------------------------------
struct ScalarField {
    Grid2 grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid2& g) : grid(g), v(g.size(), 0.0) {}

    double& at(int i1, int i2) { return v[static_cast<std::size_t>(i1) * grid.N2 + i2]; }
    double at(int i1, int i2) const { return v[static_cast<std::size_t>(i1) * grid.N2 + i2]; }
};

struct SemiSpectralField {
    Grid2 grid;
    std::vector<complex> v;  // (x1 sample i, xi2 mode k in FFT order)

    SemiSpectralField() = default;
    explicit SemiSpectralField(const Grid2& g) : grid(g), v(g.size(), complex{}) {}

    complex& at(int i1, int k) { return v[static_cast<std::size_t>(i1) * grid.N2 + k]; }
    complex at(int i1, int k) const { return v[static_cast<std::size_t>(i1) * grid.N2 + k]; }

    std::span<complex> row(int i1) {
        return {v.data() + static_cast<std::size_t>(i1) * grid.N2, static_cast<std::size_t>(grid.N2)};
    }
    std::span<const complex> row(int i1) const {
        return {v.data() + static_cast<std::size_t>(i1) * grid.N2, static_cast<std::size_t>(grid.N2)};
    }
};

struct VectorField {
    ScalarField u1, u2;

    VectorField() = default;
    explicit VectorField(const Grid2& g) : u1(g), u2(g) {}

    const Grid2& grid() const { return u1.grid; }
    ScalarField& comp(int i) { return i == 0 ? u1 : u2; }
    const ScalarField& comp(int i) const { return i == 0 ? u1 : u2; }
    static constexpr int ncomp = 2;
};

/// The 2x2 forcing tensor F = {F_jk}; the datum of the divergence-form force.
struct TensorForcing {
    ScalarField f11, f12, f21, f22;

    TensorForcing() = default;
    explicit TensorForcing(const Grid2& g) : f11(g), f12(g), f21(g), f22(g) {}

    const Grid2& grid() const { return f11.grid; }
    ScalarField& comp(int i) {
        switch (i) {
            case 0: return f11;
            case 1: return f12;
            case 2: return f21;
            default: return f22;
        }
    }
    const ScalarField& comp(int i) const {
        switch (i) {
            case 0: return f11;
            case 1: return f12;
            case 2: return f21;
            default: return f22;
        }
    }
    static constexpr int ncomp = 4;
};

//------------------------------------------------------------------------------
// Validation helpers
//------------------------------------------------------------------------------
inline bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool all_finite(std::span<const complex> v) {
    for (const complex& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

inline void require_finite(const ScalarField& f, const char* who) {
    if (!all_finite(f.v)) throw std::domain_error(std::string(who) + ": non-finite samples in input field");
}

inline void require_same_grid(const Grid2& a, const Grid2& b, const char* who) {
    if (!(a == b)) throw std::invalid_argument(std::string(who) + ": fields live on different grids");
}

/// Max Hermitian-symmetry violation |v(k) - conj(v(-k))| relative to the field peak.
inline double hermitian_error(const SemiSpectralField& fh) {
    const int N2 = fh.grid.N2;
    double peak = 0.0, worst = 0.0;
    for (const complex& z : fh.v) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) return 0.0;
    for (int i = 0; i < fh.grid.N1; ++i) {
        for (int k = 0; k < N2; ++k) {
            int kc = (N2 - k) % N2;
            worst = std::max(worst, std::abs(fh.at(i, k) - std::conj(fh.at(i, kc))));
        }
    }
    return worst / peak;
}

/// Largest |f| on the first/last x1 rows relative to the global peak.
/// Admissible forcings keep this at or below 1e-10.
inline double x1_boundary_ratio(const ScalarField& f) {
    double peak = 0.0, edge = 0.0;
    for (double x : f.v) peak = std::max(peak, std::abs(x));
    if (peak == 0.0) return 0.0;
    for (int i2 = 0; i2 < f.grid.N2; ++i2) {
        edge = std::max(edge, std::abs(f.at(0, i2)));
        edge = std::max(edge, std::abs(f.at(f.grid.N1 - 1, i2)));
    }
    return edge / peak;
}

/// x2-mean mass of a field: max over rows of |row mean| relative to the peak.
inline double x2_mean_ratio(const ScalarField& f) {
    double peak = 0.0, worst = 0.0;
    for (double x : f.v) peak = std::max(peak, std::abs(x));
    if (peak == 0.0) return 0.0;
    for (int i1 = 0; i1 < f.grid.N1; ++i1) {
        double s = 0.0;
        for (int i2 = 0; i2 < f.grid.N2; ++i2) s += f.at(i1, i2);
        worst = std::max(worst, std::abs(s / f.grid.N2));
    }
    return worst / peak;
}

/// Projects out the x2 mean of every row; returns the removed mass ratio.
inline double project_out_x2_mean(ScalarField& f) {
    double removed = x2_mean_ratio(f);
    for (int i1 = 0; i1 < f.grid.N1; ++i1) {
        double s = 0.0;
        for (int i2 = 0; i2 < f.grid.N2; ++i2) s += f.at(i1, i2);
        double mean = s / f.grid.N2;
        for (int i2 = 0; i2 < f.grid.N2; ++i2) f.at(i1, i2) -= mean;
    }
    return removed;
}

//------------------------------------------------------------------------------
// The interior window |x1| <= L1/2: accuracy claims for the truncated-domain
// kernels are restricted to it.
//------------------------------------------------------------------------------
struct Window {
    int i_lo = 0, i_hi = 0;  // half-open row range
    bool contains(int i) const { return i >= i_lo && i < i_hi; }
};

inline Window interior_window(const Grid2& g, double fraction = 0.5) {
    Window w;
    w.i_lo = g.N1;
    w.i_hi = 0;
    for (int i = 0; i < g.N1; ++i) {
        if (std::abs(g.x1(i)) <= fraction * g.L1) {
            w.i_lo = std::min(w.i_lo, i);
            w.i_hi = std::max(w.i_hi, i + 1);
        }
    }
    if (w.i_lo >= w.i_hi) throw std::logic_error("interior_window: empty window");
    return w;
}

//------------------------------------------------------------------------------
// Deterministic pairwise reduction (fixed association order).
//------------------------------------------------------------------------------
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t m = v.size() / 2;
    return pairwise_sum(v.first(m)) + pairwise_sum(v.subspan(m));
}

// Field linear algebra used all over the solver loops.
inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "ScalarField+");
    ScalarField out(a.grid);
    for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] + b.v[i];
    return out;
}

inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "ScalarField-");
    ScalarField out(a.grid);
    for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] - b.v[i];
    return out;
}

inline ScalarField operator*(double c, const ScalarField& a) {
    ScalarField out(a.grid);
    for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = c * a.v[i];
    return out;
}

inline VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField out;
    out.u1 = a.u1 - b.u1;
    out.u2 = a.u2 - b.u2;
    return out;
}

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField out;
    out.u1 = a.u1 + b.u1;
    out.u2 = a.u2 + b.u2;
    return out;
}

inline VectorField operator*(double c, const VectorField& a) {
    VectorField out;
    out.u1 = c * a.u1;
    out.u2 = c * a.u2;
    return out;
}

inline TensorForcing operator-(const TensorForcing& a, const TensorForcing& b) {
    TensorForcing out;
    out.f11 = a.f11 - b.f11;
    out.f12 = a.f12 - b.f12;
    out.f21 = a.f21 - b.f21;
    out.f22 = a.f22 - b.f22;
    return out;
}

inline TensorForcing operator+(const TensorForcing& a, const TensorForcing& b) {
    TensorForcing out;
    out.f11 = a.f11 + b.f11;
    out.f12 = a.f12 + b.f12;
    out.f21 = a.f21 + b.f21;
    out.f22 = a.f22 + b.f22;
    return out;
}

inline TensorForcing operator*(double c, const TensorForcing& a) {
    TensorForcing out;
    out.f11 = c * a.f11;
    out.f12 = c * a.f12;
    out.f21 = c * a.f21;
    out.f22 = c * a.f22;
    return out;
}

}  // namespace oseen2d

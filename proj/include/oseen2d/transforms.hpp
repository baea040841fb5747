//==============================================================================
// transforms.hpp
// Physical <-> semi-spectral transforms (Fourier in x2 only, continuum
// normalization f^(xi2) ~ integral f e^{-i xi2 x2} dx2), full 2D spectra for
// the oracle path, Fourier multipliers, and dealiased pointwise products.
//==============================================================================
#pragma once

#include <algorithm>

#include "core.hpp"
#include "fft.hpp"

namespace oseen2d {

enum class SymmetryPolicy { reject, symmetrize };

namespace detail {

// Phase and quadrature weight mapping the DFT onto the continuum transform on
// [-L2, L2): f^(x1, xi2_k) = h2 * (-1)^k * DFT_k(row).  The (-1)^k comes from
// the grid starting at -L2.
inline void rows_to_continuum(SemiSpectralField& fh) {
    const double h2 = fh.grid.h2();
    for (int i = 0; i < fh.grid.N1; ++i) {
        auto r = fh.row(i);
        for (int k = 0; k < fh.grid.N2; ++k) r[k] *= (k % 2 == 0 ? h2 : -h2);
    }
}

inline void rows_from_continuum(SemiSpectralField& fh) {
    const double inv = 1.0 / (2.0 * fh.grid.L2);
    for (int i = 0; i < fh.grid.N1; ++i) {
        auto r = fh.row(i);
        for (int k = 0; k < fh.grid.N2; ++k) r[k] *= (k % 2 == 0 ? inv : -inv);
    }
}

}  // namespace detail

//------------------------------------------------------------------------------
// to_semispectral / to_physical
//------------------------------------------------------------------------------
inline SemiSpectralField to_semispectral(const ScalarField& f) {
    require_finite(f, "to_semispectral");
    SemiSpectralField fh(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) fh.v[i] = complex(f.v[i], 0.0);
    fft::rows_dft(fh.v.data(), f.grid.N1, f.grid.N2, -1);
    detail::rows_to_continuum(fh);
    return fh;
}

/// Inverse of to_semispectral. Hermitian-asymmetric inputs are rejected by
/// default (policy symmetrize averages the field with its conjugate mirror).
inline ScalarField to_physical(const SemiSpectralField& fh_in,
                               SymmetryPolicy policy = SymmetryPolicy::reject,
                               double tol = 1e-10) {
    if (!all_finite(fh_in.v)) throw std::domain_error("to_physical: non-finite input");
    SemiSpectralField fh = fh_in;
    const double herr = hermitian_error(fh);
    if (herr > tol) {
        if (policy == SymmetryPolicy::reject)
            throw std::domain_error("to_physical: input breaks Hermitian symmetry (rel err " +
                                    std::to_string(herr) + "); pass SymmetryPolicy::symmetrize to repair");
        const int N2 = fh.grid.N2;
        for (int i = 0; i < fh.grid.N1; ++i)
            for (int k = 0; k < N2; ++k) {
                int kc = (N2 - k) % N2;
                if (k <= kc) {
                    complex a = fh.at(i, k), b = std::conj(fh.at(i, kc));
                    complex avg = 0.5 * (a + b);
                    fh.at(i, k) = avg;
                    fh.at(i, kc) = std::conj(avg);
                }
            }
    }
    detail::rows_from_continuum(fh);
    fft::rows_dft(fh.v.data(), fh.grid.N1, fh.grid.N2, +1);
    ScalarField out(fh.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = fh.v[i].real();
    return out;
}

//------------------------------------------------------------------------------
// dx2_multiplier: (i xi2)^order. Orders 0..3. Odd orders zero the Nyquist mode
// (it has no conjugate partner, so keeping it would break Hermitian symmetry).
//------------------------------------------------------------------------------
inline SemiSpectralField dx2_multiplier(const SemiSpectralField& fh, int order) {
    if (order < 0 || order > 3) throw std::invalid_argument("dx2_multiplier: order must be in {0,1,2,3}");
    SemiSpectralField out = fh;
    if (order == 0) return out;
    const int N2 = fh.grid.N2;
    for (int k = 0; k < N2; ++k) {
        complex m = std::pow(complex(0.0, fh.grid.xi2(k)), order);
        if (order % 2 == 1 && k == N2 / 2) m = 0.0;
        for (int i = 0; i < fh.grid.N1; ++i) out.at(i, k) *= m;
    }
    return out;
}

//------------------------------------------------------------------------------
// Full 2D spectra (continuum normalization in both directions), used by the
// Helmholtz projection, the multiplier oracle and the residual checks.
//------------------------------------------------------------------------------
using Spectrum2D = std::vector<complex>;

inline Spectrum2D to_spectrum2d(const ScalarField& f) {
    require_finite(f, "to_spectrum2d");
    Spectrum2D s(f.grid.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = complex(f.v[i], 0.0);
    fft::dft_2d(s.data(), f.grid.N1, f.grid.N2, -1);
    const double w = f.grid.h1() * f.grid.h2();
    for (int m = 0; m < f.grid.N1; ++m)
        for (int k = 0; k < f.grid.N2; ++k)
            s[static_cast<std::size_t>(m) * f.grid.N2 + k] *= ((m + k) % 2 == 0 ? w : -w);
    return s;
}

inline ScalarField spectrum2d_to_physical(Spectrum2D s, const Grid2& g) {
    const double w = 1.0 / (4.0 * g.L1 * g.L2);
    for (int m = 0; m < g.N1; ++m)
        for (int k = 0; k < g.N2; ++k)
            s[static_cast<std::size_t>(m) * g.N2 + k] *= ((m + k) % 2 == 0 ? w : -w);
    fft::dft_2d(s.data(), g.N1, g.N2, +1);
    ScalarField out(g);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = s[i].real();
    return out;
}

/// Inverse transform in xi1 only: 2D spectrum -> semi-spectral (x1, xi2).
inline SemiSpectralField spectrum2d_to_semispectral(Spectrum2D s, const Grid2& g) {
    SemiSpectralField out(g);
    // transpose to put the xi1 direction contiguous, invert, transpose back
    std::vector<complex> col(static_cast<std::size_t>(g.N1));
    const double w = 1.0 / (2.0 * g.L1);
    for (int k = 0; k < g.N2; ++k) {
        for (int m = 0; m < g.N1; ++m)
            col[m] = s[static_cast<std::size_t>(m) * g.N2 + k] * ((m % 2 == 0) ? w : -w);
        fft::dft_1d(col.data(), g.N1, +1);
        for (int i = 0; i < g.N1; ++i) out.at(i, k) = col[i];
    }
    return out;
}

/// Forward transform in x1 only: semi-spectral (x1, xi2) -> 2D spectrum.
inline Spectrum2D semispectral_to_spectrum2d(const SemiSpectralField& fh) {
    const Grid2& g = fh.grid;
    Spectrum2D s(g.size());
    std::vector<complex> col(static_cast<std::size_t>(g.N1));
    const double h1 = g.h1();
    for (int k = 0; k < g.N2; ++k) {
        for (int m = 0; m < g.N1; ++m) col[static_cast<std::size_t>(m)] = fh.at(m, k);
        fft::dft_1d(col.data(), g.N1, -1);
        for (int m = 0; m < g.N1; ++m)
            s[static_cast<std::size_t>(m) * g.N2 + k] = col[static_cast<std::size_t>(m)] * (m % 2 == 0 ? h1 : -h1);
    }
    return s;
}

/// Spectral x1 derivative on the periodic truncation (Nyquist zeroed).
inline SemiSpectralField dx1_spectral(const SemiSpectralField& fh) {
    const Grid2& g = fh.grid;
    Spectrum2D s = semispectral_to_spectrum2d(fh);
    for (int m = 0; m < g.N1; ++m) {
        complex mult(0.0, m == g.N1 / 2 ? 0.0 : g.xi1(m));
        for (int k = 0; k < g.N2; ++k) s[static_cast<std::size_t>(m) * g.N2 + k] *= mult;
    }
    return spectrum2d_to_semispectral(std::move(s), g);
}

//------------------------------------------------------------------------------
// Dealiased pointwise products: 3/2-rule zero padding in xi2. Products are
// formed on the 3N2/2 fine grid and truncated back, so quadratic terms do not
// fold energy into resolved modes. The Nyquist row of a product is zeroed
// (its content on the coarse grid is aliased by construction).
//------------------------------------------------------------------------------

/// Physical samples on the refined x2 grid (N1 rows of 3N2/2 points).
struct FineGridField {
    Grid2 grid;  // the coarse grid it came from
    std::vector<double> v;

    int fine_n2() const { return 3 * grid.N2 / 2; }
    double& at(int i1, int i2) { return v[static_cast<std::size_t>(i1) * fine_n2() + i2]; }
    double at(int i1, int i2) const { return v[static_cast<std::size_t>(i1) * fine_n2() + i2]; }
};

inline FineGridField upsample_x2(const SemiSpectralField& fh) {
    const Grid2& g = fh.grid;
    const int N2 = g.N2;
    const int M = 3 * N2 / 2;

    std::vector<complex> s(static_cast<std::size_t>(g.N1) * M, complex{});
    for (int i = 0; i < g.N1; ++i)
        for (int k = 0; k < N2; ++k) {
            int ks = Grid2::signed_mode(k, N2);
            complex val = fh.at(i, k);
            if (ks == -N2 / 2) {
                // split the unpaired Nyquist coefficient across +-N2/2
                s[static_cast<std::size_t>(i) * M + N2 / 2] += 0.5 * val;
                s[static_cast<std::size_t>(i) * M + (M - N2 / 2)] += 0.5 * std::conj(val);
            } else {
                s[static_cast<std::size_t>(i) * M + ((ks + M) % M)] = val;
            }
        }

    // f(x) = 1/(2 L2) sum_k f^_k (-1)^k e^{2 pi i k m/M}
    const double w = 1.0 / (2.0 * g.L2);
    for (int i = 0; i < g.N1; ++i)
        for (int k = 0; k < M; ++k) s[static_cast<std::size_t>(i) * M + k] *= (k % 2 == 0 ? w : -w);
    fft::rows_dft(s.data(), g.N1, M, +1);

    FineGridField out{g, std::vector<double>(s.size())};
    for (std::size_t i = 0; i < s.size(); ++i) out.v[i] = s[i].real();
    return out;
}

inline FineGridField upsample_x2(const ScalarField& f) { return upsample_x2(to_semispectral(f)); }

/// Truncate a fine-grid field back to the coarse representation.
inline ScalarField downsample_x2(const FineGridField& f) {
    const Grid2& g = f.grid;
    const int N2 = g.N2;
    const int M = 3 * N2 / 2;

    std::vector<complex> s(static_cast<std::size_t>(g.N1) * M);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = complex(f.v[i], 0.0);
    fft::rows_dft(s.data(), g.N1, M, -1);

    const double h2f = 2.0 * g.L2 / M;
    SemiSpectralField ph(g);
    for (int i = 0; i < g.N1; ++i)
        for (int k = 0; k < N2; ++k) {
            int ks = Grid2::signed_mode(k, N2);
            if (ks == -N2 / 2) {
                ph.at(i, k) = 0.0;
                continue;
            }
            int kf = (ks + M) % M;
            ph.at(i, k) = s[static_cast<std::size_t>(i) * M + kf] * (kf % 2 == 0 ? h2f : -h2f);
        }
    return to_physical(ph, SymmetryPolicy::symmetrize);
}

inline FineGridField multiply_fine(const FineGridField& a, const FineGridField& b) {
    FineGridField out{a.grid, std::vector<double>(a.v.size())};
    for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
    return out;
}

inline ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "multiply_dealiased");
    return downsample_x2(multiply_fine(upsample_x2(a), upsample_x2(b)));
}

/// u (x) v with dealiased entries, ordered (11,12,21,22).
inline TensorForcing outer_product_dealiased(const VectorField& u, const VectorField& v) {
    TensorForcing T(u.grid());
    T.f11 = multiply_dealiased(u.u1, v.u1);
    T.f12 = multiply_dealiased(u.u1, v.u2);
    T.f21 = multiply_dealiased(u.u2, v.u1);
    T.f22 = multiply_dealiased(u.u2, v.u2);
    return T;
}

}  // namespace oseen2d

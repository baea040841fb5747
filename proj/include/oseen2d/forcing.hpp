//==============================================================================
// forcing.hpp
// Forcing generators and admissibility enforcement. Admissible test data
// decays to <= 1e-10 of its peak at the x1 boundary and has zero x2 mean
// (the zero mode is projected out and the removed mass reported).
//==============================================================================
#pragma once

#include <string>

#include "besov.hpp"
#include "core.hpp"
#include "dyadic.hpp"
#include "rng.hpp"
#include "transforms.hpp"

namespace oseen2d {

inline constexpr double admissible_boundary_ratio = 1e-10;

struct AdmissibilityReport {
    double removed_mean_ratio = 0.0;
    double boundary_ratio = 0.0;
    bool ok = true;
};

/// Projects out the x2 mean of every component and checks x1 boundary decay.
inline AdmissibilityReport enforce_admissible(TensorForcing& F) {
    AdmissibilityReport rep;
    for (int c = 0; c < TensorForcing::ncomp; ++c) {
        rep.removed_mean_ratio = std::max(rep.removed_mean_ratio, project_out_x2_mean(F.comp(c)));
        rep.boundary_ratio = std::max(rep.boundary_ratio, x1_boundary_ratio(F.comp(c)));
    }
    rep.ok = rep.boundary_ratio <= admissible_boundary_ratio;
    return rep;
}

//------------------------------------------------------------------------------
// ForcingSpec
//------------------------------------------------------------------------------
enum class ForcingKind { gaussian_tensor, random_band, from_file };

struct ForcingSpec {
    ForcingKind kind = ForcingKind::random_band;
    double amplitude = 1.0;
    // gaussian-tensor
    double center = 0.0;
    double width = 2.0;
    int mode = 4;  // x2 mode index of the carrier
    // random-band
    std::vector<int> bands = {2, 3, 4};
    double sigma1_min = 2.0;
    double sigma1_max = 2.6;
    double omega_max = 0.5;
    // shared
    std::uint64_t seed = 42;
    std::string path;  // from-file
};

namespace detail {

/// One random admissible scalar component: complex Gaussian amplitudes with a
/// per-band flat spectrum in xi2, Gaussian x1 envelope with a slow carrier.
inline ScalarField random_band_component(const Grid2& g, const ForcingSpec& spec, Rng& rng) {
    SemiSpectralField fh(g);
    const double sigma = rng.uniform(spec.sigma1_min, spec.sigma1_max);
    const int N2 = g.N2;
    for (int j : spec.bands) {
        for (int k = 1; k < N2; ++k) {
            if (k == N2 / 2) continue;  // keep the unpaired Nyquist mode empty
            const double xi2 = g.xi2(k);
            if (xi2 <= 0.0) continue;  // fill k>0, mirror below
            const double w = DyadicProfile::band_weight(j, xi2);
            if (w == 0.0) continue;
            const complex amp = w * rng.complex_normal();
            const double omega = rng.uniform(-spec.omega_max, spec.omega_max);
            const double phase0 = rng.uniform(0.0, 2.0 * pi);
            for (int i = 0; i < g.N1; ++i) {
                const double x = g.x1(i);
                const double env = std::exp(-x * x / (2.0 * sigma * sigma));
                const complex val = amp * env * std::polar(1.0, omega * x + phase0);
                fh.at(i, k) += val;
                fh.at(i, (N2 - k) % N2) += std::conj(val);
            }
        }
    }
    ScalarField f = to_physical(fh, SymmetryPolicy::symmetrize);
    // unit peak before the caller applies its amplitude
    double peak = 0.0;
    for (double x : f.v) peak = std::max(peak, std::abs(x));
    if (peak > 0.0)
        for (double& x : f.v) x /= peak;
    return f;
}

}  // namespace detail

struct GeneratedForcing {
    TensorForcing F;
    AdmissibilityReport admissibility;
};

/// Deterministic given (spec, grid). Throws std::domain_error when the
/// generated tensor violates the boundary-decay bound.
inline GeneratedForcing generate_forcing(const ForcingSpec& spec, const Grid2& g) {
    TensorForcing F(g);
    switch (spec.kind) {
        case ForcingKind::gaussian_tensor: {
            Rng rng(spec.seed);
            for (int c = 0; c < TensorForcing::ncomp; ++c) {
                ScalarField& f = F.comp(c);
                const double phase = rng.uniform(0.0, 2.0 * pi);
                const double a = spec.amplitude * (0.5 + rng.uniform());
                const int m = spec.mode + static_cast<int>(rng.raw() % 3);
                if (m <= 0 || m >= g.N2 / 2)
                    throw std::invalid_argument("generate_forcing: gaussian carrier mode out of range");
                for (int i1 = 0; i1 < g.N1; ++i1) {
                    const double x1 = g.x1(i1) - spec.center;
                    const double env = std::exp(-x1 * x1 / (2.0 * spec.width * spec.width));
                    for (int i2 = 0; i2 < g.N2; ++i2) {
                        const double xi = pi * m / g.L2;
                        f.at(i1, i2) = a * env * std::cos(xi * g.x2(i2) + phase);
                    }
                }
            }
            break;
        }
        case ForcingKind::random_band: {
            for (int c = 0; c < TensorForcing::ncomp; ++c) {
                Rng rng(subseed(spec.seed, static_cast<std::uint64_t>(c)));
                F.comp(c) = spec.amplitude * detail::random_band_component(g, spec, rng);
            }
            break;
        }
        case ForcingKind::from_file:
            throw std::logic_error("generate_forcing: from_file handled by the io layer");
    }

    GeneratedForcing out{std::move(F), {}};
    out.admissibility = enforce_admissible(out.F);
    if (!out.admissibility.ok)
        throw std::domain_error("generate_forcing: x1 boundary mass " +
                                std::to_string(out.admissibility.boundary_ratio) +
                                " exceeds the admissible bound 1e-10 (widen the domain or narrow the envelope)");
    return out;
}

//------------------------------------------------------------------------------
// Random band-limited velocity fields (initial guesses, bilinear ensembles).
//------------------------------------------------------------------------------
inline VectorField random_band_vector(const Grid2& g, const ForcingSpec& spec, std::uint64_t seed) {
    VectorField u(g);
    for (int c = 0; c < 2; ++c) {
        Rng rng(subseed(seed, 100 + static_cast<std::uint64_t>(c)));
        u.comp(c) = detail::random_band_component(g, spec, rng);
        project_out_x2_mean(u.comp(c));
    }
    return u;
}

}  // namespace oseen2d

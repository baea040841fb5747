//==============================================================================
// besov.hpp
// Anisotropic Besov norms built from the dyadic bands:
//   ||f||_{B^s_{p1,p2;q}} = || { 2^{sj} ||Delta_j f||_{L^{p1}_{x1} L^{p2}_{x2}} }_j ||_{l^q},
// their high/low hybrid restrictions at cutoff alpha, and the composite data
// (D) and solution (S) norms:
//   ||F||_D = alpha^{-1/p1} ||F||^{h;alpha}_{B^{2/p1+1/p2-2}} + ||F||^{l;alpha}_{B^{1/p1+1/p2-2}}
//   ||u||_S = alpha^{-1/p1} ||u||^{h;alpha}_{B^{2/p1+1/p2-1}} + ||u||^{l;alpha}_{B^{1/p1+1/p2-1}}
// Multi-component fields aggregate per band by the max over components.
//==============================================================================
#pragma once

#include "dyadic.hpp"

namespace oseen2d {

//------------------------------------------------------------------------------
// Parameter bundles
//------------------------------------------------------------------------------
struct BesovParams {
    double s = 0.0;
    double p1 = 2.0, p2 = 2.0, q = 1.0;

    void validate() const {
        require_exponent(p1, "BesovParams(p1)");
        require_exponent(p2, "BesovParams(p2)");
        require_exponent(q, "BesovParams(q)");
        if (!std::isfinite(s)) throw std::invalid_argument("BesovParams: s must be finite");
    }
};

/// Magnitude of the uniform background flow; the hybrid cutoff.
struct HybridContext {
    double alpha = 1.0;

    void validate() const {
        if (!(alpha > 0.0)) throw std::invalid_argument("HybridContext: alpha must be positive");
    }
};

/// Integrability window of the well-posedness theorem:
///   max{1/3, (2/3)(1 - 1/p2)} < 1/p1 <= 1/2,  1 <= p2 < 4,  1 <= q <= inf.
struct ThmParams {
    double p1 = 2.0, p2 = 2.0, q = 1.0;

    static bool in_window(double p1, double p2, double q) {
        if (!(p1 >= 1.0) || !(p2 >= 1.0) || !(q >= 1.0)) return false;
        if (!(p2 < 4.0)) return false;
        const double ip1 = 1.0 / p1;
        const double lower = std::max(1.0 / 3.0, (2.0 / 3.0) * (1.0 - 1.0 / p2));
        return lower < ip1 && ip1 <= 0.5;
    }

    void validate() const {
        if (!in_window(p1, p2, q))
            throw std::invalid_argument(
                "ThmParams: (p1,p2,q) outside the window max{1/3,(2/3)(1-1/p2)} < 1/p1 <= 1/2, 1 <= p2 < 4");
    }
};

//------------------------------------------------------------------------------
// Band norm sequence: one mixed norm per resolved band, max over components.
//------------------------------------------------------------------------------
struct BandNorm {
    int j;
    double two_j;
    double value;  // max over components of ||Delta_j comp||_{L^{p1} L^{p2}}
};

inline std::vector<BandNorm> band_norm_sequence(std::span<const ScalarField* const> comps,
                                                double p1, double p2) {
    if (comps.empty()) throw std::invalid_argument("band_norm_sequence: no components");
    const Grid2& g = comps.front()->grid;
    for (const ScalarField* c : comps) require_same_grid(g, c->grid, "band_norm_sequence");
    const BandRange r = band_range(g);

    std::vector<BandNorm> out;
    out.reserve(static_cast<std::size_t>(r.count()));
    for (int j = r.jmin; j <= r.jmax; ++j) out.push_back({j, pow2(j), 0.0});

    for (const ScalarField* c : comps) {
        SemiSpectralField ch = to_semispectral(*c);
        for (std::size_t b = 0; b < out.size(); ++b) {
            BandProjection bp = band_project(ch, out[b].j);
            double n = mixed_norm(to_physical(bp.field, SymmetryPolicy::symmetrize), p1, p2);
            out[b].value = std::max(out[b].value, n);
        }
    }
    return out;
}

inline std::vector<BandNorm> band_norm_sequence(const ScalarField& f, double p1, double p2) {
    const ScalarField* c[] = {&f};
    return band_norm_sequence(std::span<const ScalarField* const>(c, 1), p1, p2);
}

inline std::vector<BandNorm> band_norm_sequence(const VectorField& u, double p1, double p2) {
    const ScalarField* c[] = {&u.u1, &u.u2};
    return band_norm_sequence(std::span<const ScalarField* const>(c, 2), p1, p2);
}

inline std::vector<BandNorm> band_norm_sequence(const TensorForcing& F, double p1, double p2) {
    const ScalarField* c[] = {&F.f11, &F.f12, &F.f21, &F.f22};
    return band_norm_sequence(std::span<const ScalarField* const>(c, 4), p1, p2);
}

//------------------------------------------------------------------------------
// l^q aggregation of 2^{sj}-weighted band values, optionally restricted to the
// high or low index set at cutoff alpha.
//------------------------------------------------------------------------------
enum class BandSet { all, high, low };

inline double lq_aggregate(std::span<const BandNorm> bands, double s, double q,
                           BandSet set = BandSet::all, double alpha = 0.0) {
    std::vector<double> terms;
    terms.reserve(bands.size());
    for (const BandNorm& b : bands) {
        if (set == BandSet::high && !band_is_high(b.j, alpha)) continue;
        if (set == BandSet::low && band_is_high(b.j, alpha)) continue;
        terms.push_back(std::pow(2.0, s * b.j) * b.value);
    }
    if (terms.empty()) return 0.0;
    if (q == p_inf) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    for (double& t : terms) t = std::pow(t, q);
    return std::pow(pairwise_sum(terms), 1.0 / q);
}

//------------------------------------------------------------------------------
// besov_norm / hybrid_norms
//------------------------------------------------------------------------------
template <class FieldLike>
double besov_norm(const FieldLike& f, const BesovParams& bp) {
    bp.validate();
    auto bands = band_norm_sequence(f, bp.p1, bp.p2);
    return lq_aggregate(bands, bp.s, bp.q);
}

struct HybridNorms {
    double high = 0.0;
    double low = 0.0;
};

template <class FieldLike>
HybridNorms hybrid_norms(const FieldLike& f, const BesovParams& bp, const HybridContext& ctx) {
    bp.validate();
    ctx.validate();
    auto bands = band_norm_sequence(f, bp.p1, bp.p2);
    return {lq_aggregate(bands, bp.s, bp.q, BandSet::high, ctx.alpha),
            lq_aggregate(bands, bp.s, bp.q, BandSet::low, ctx.alpha)};
}

//------------------------------------------------------------------------------
// Composite norms. The high and low terms carry different regularity indices;
// the band sequence is computed once and reweighted per term.
//------------------------------------------------------------------------------
namespace detail {

inline double composite_norm(std::span<const BandNorm> bands, const ThmParams& tp,
                             const HybridContext& ctx, double shift) {
    const double s_high = 2.0 / tp.p1 + 1.0 / tp.p2 - 2.0 + shift;
    const double s_low = 1.0 / tp.p1 + 1.0 / tp.p2 - 2.0 + shift;
    const double high = lq_aggregate(bands, s_high, tp.q, BandSet::high, ctx.alpha);
    const double low = lq_aggregate(bands, s_low, tp.q, BandSet::low, ctx.alpha);
    return std::pow(ctx.alpha, -1.0 / tp.p1) * high + low;
}

}  // namespace detail

template <class FieldLike>
double data_norm_D(const FieldLike& F, const ThmParams& tp, const HybridContext& ctx) {
    tp.validate();
    ctx.validate();
    auto bands = band_norm_sequence(F, tp.p1, tp.p2);
    return detail::composite_norm(bands, tp, ctx, 0.0);
}

template <class FieldLike>
double solution_norm_S(const FieldLike& u, const ThmParams& tp, const HybridContext& ctx) {
    tp.validate();
    ctx.validate();
    auto bands = band_norm_sequence(u, tp.p1, tp.p2);
    return detail::composite_norm(bands, tp, ctx, 1.0);
}

/// Index of the smallest resolved band plus the spectral mass outside the
/// resolved range, reported next to D norms (negative regularity indices make
/// low bands dominant, so truncation sensitivity must stay visible).
struct BandCoverage {
    int jmin, jmax;
    double outside_mass_ratio;  // xi2 = 0 energy over total (bands cover everything else)
};

template <class FieldLike>
BandCoverage band_coverage(const FieldLike& f) {
    const Grid2& g = f.comp(0).grid;
    BandRange r = band_range(g);
    double zero_mode = 0.0, total = 0.0;
    for (int c = 0; c < FieldLike::ncomp; ++c) {
        SemiSpectralField ch = to_semispectral(f.comp(c));
        for (int i = 0; i < g.N1; ++i) {
            zero_mode += std::norm(ch.at(i, 0));
            for (int k = 0; k < g.N2; ++k) total += std::norm(ch.at(i, k));
        }
    }
    return {r.jmin, r.jmax, total > 0.0 ? zero_mode / total : 0.0};
}

//------------------------------------------------------------------------------
// dyadic_rescale: f_lambda(x) = lambda^degree f(lambda x) realized as an exact
// sample relabeling onto the grid with L/lambda (lambda a power of two, N
// unchanged). degree 1 for velocities, 2 for forcings.
//------------------------------------------------------------------------------
inline int dyadic_exponent(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dyadic_rescale: lambda must be positive");
    int m = static_cast<int>(std::lround(std::log2(lambda)));
    if (std::ldexp(1.0, m) != lambda)
        throw std::invalid_argument("dyadic_rescale: lambda must be a power of two (grid commensurability)");
    return m;
}

inline ScalarField dyadic_rescale(const ScalarField& f, double lambda, int degree) {
    const int m = dyadic_exponent(lambda);
    (void)m;
    Grid2 g(f.grid.L1 / lambda, f.grid.N1, f.grid.L2 / lambda, f.grid.N2);
    ScalarField out(g);
    const double amp = std::pow(lambda, degree);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = amp * f.v[i];
    return out;
}

inline VectorField dyadic_rescale(const VectorField& u, double lambda) {
    VectorField out;
    out.u1 = dyadic_rescale(u.u1, lambda, 1);
    out.u2 = dyadic_rescale(u.u2, lambda, 1);
    return out;
}

inline TensorForcing dyadic_rescale(const TensorForcing& F, double lambda) {
    TensorForcing out;
    out.f11 = dyadic_rescale(F.f11, lambda, 2);
    out.f12 = dyadic_rescale(F.f12, lambda, 2);
    out.f21 = dyadic_rescale(F.f21, lambda, 2);
    out.f22 = dyadic_rescale(F.f22, lambda, 2);
    return out;
}

}  // namespace oseen2d

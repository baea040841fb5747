//==============================================================================
// estimates.hpp
// Numerical stress tests of the norm estimates behind the fixed-point
// argument. Each check records per-sample ratios LHS / (symbol bound with
// C = 1, c = 1/2) and their sup; a bound "holds numerically" when the sup is
// finite and moves by less than a factor 2 under grid refinement. The paper
// trail of a measured constant is the profile id and the grid, both recorded.
//==============================================================================
#pragma once

#include <functional>
#include <map>

#include "besov.hpp"
#include "forcing.hpp"
#include "oseen.hpp"
#include "paraproduct.hpp"
#include "rng.hpp"
#include "transforms.hpp"

namespace oseen2d::estimates {

//------------------------------------------------------------------------------
// Ensembles and reports
//------------------------------------------------------------------------------
struct EnsembleSpec {
    std::uint64_t seed = 42;
    int count = 16;
    ForcingSpec law;  // band list, envelope widths, carrier range

    ForcingSpec item(int index) const {
        ForcingSpec s = law;
        s.seed = subseed(seed, static_cast<std::uint64_t>(index));
        return s;
    }
};

struct SampleRatio {
    int sample = 0;
    double alpha = 0.0;
    double T = 0.0;  // semigroup time when applicable
    int j = 0;       // band when applicable
    double ratio = 0.0;
};

struct ConstantReport {
    std::string id;
    double sup_ratio = 0.0;
    std::vector<SampleRatio> samples;
    std::string grid;     // "N1xN2 L1=.. L2=.."
    std::string profile;  // dyadic profile identity

    void record(SampleRatio s) {
        if (!std::isfinite(s.ratio)) throw std::runtime_error("ConstantReport: non-finite ratio in " + id);
        samples.push_back(s);
        sup_ratio = std::max(sup_ratio, s.ratio);
    }
};

inline std::string grid_desc(const Grid2& g) {
    return std::to_string(g.N1) + "x" + std::to_string(g.N2) + " L1=" + std::to_string(g.L1) +
           " L2=" + std::to_string(g.L2);
}

//------------------------------------------------------------------------------
// Frequency-localized multiplier and semigroup bounds (1D in x2). The four
// displays and their comparison symbols (C = 1, c = 1/2):
//   resolvent:  ||Dj (alpha^2 - d2^2)^{-1/2} f||_p <= (alpha^2 + 2^{2j})^{-1/2} ||Dj f||_p
//   eigenvalue: ||Dj lambda_pm(D2) f||_p          <= |lambda_pm(2^j)| ||Dj f||_p
//   oseen semigroup: ||Dj e^{-|lambda_pm(D2)| T} f||_p <= e^{-(1/2)|lambda_pm(2^j)| T} ||Dj f||_p
//   poisson semigroup: ||Dj e^{-|D2| T} f||_p     <= e^{-(1/2) 2^j T} ||Dj f||_p
//------------------------------------------------------------------------------
namespace detail {

struct Profile1D {
    const Grid2* g;
    std::vector<complex> modes;  // FFT order, Hermitian

    std::vector<double> physical() const {
        std::vector<complex> s(modes);
        const double w = 1.0 / (2.0 * g->L2);
        for (int k = 0; k < g->N2; ++k) s[static_cast<std::size_t>(k)] *= (k % 2 == 0 ? w : -w);
        fft::dft_1d(s.data(), g->N2, +1);
        std::vector<double> out(static_cast<std::size_t>(g->N2));
        for (int k = 0; k < g->N2; ++k) out[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)].real();
        return out;
    }
};

inline double lp_norm_1d(const std::vector<double>& v, double p, double h) {
    if (p == p_inf) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    std::vector<double> t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = std::pow(std::abs(v[i]), p);
    return std::pow(h * pairwise_sum(t), 1.0 / p);
}

inline Profile1D random_band_profile(const Grid2& g, int j, Rng& rng) {
    Profile1D f{&g, std::vector<complex>(static_cast<std::size_t>(g.N2), complex{})};
    for (int k = 1; k < g.N2; ++k) {
        if (k == g.N2 / 2) continue;
        const double xi = g.xi2(k);
        if (xi <= 0.0) continue;
        const double w = DyadicProfile::band_weight(j, xi);
        if (w == 0.0) continue;
        const complex c = w * rng.complex_normal();
        f.modes[static_cast<std::size_t>(k)] = c;
        f.modes[static_cast<std::size_t>((g.N2 - k) % g.N2)] = std::conj(c);
    }
    return f;
}

inline Profile1D apply_multiplier_1d(const Profile1D& f, const std::function<double(double)>& m) {
    Profile1D out = f;
    for (int k = 0; k < f.g->N2; ++k) out.modes[static_cast<std::size_t>(k)] *= m(f.g->xi2(k));
    return out;
}

inline Profile1D band_project_1d(const Profile1D& f, int j) {
    Profile1D out = f;
    for (int k = 0; k < f.g->N2; ++k) {
        const double xi = f.g->xi2(k);
        out.modes[static_cast<std::size_t>(k)] *= (k == 0) ? 0.0 : DyadicProfile::band_weight(j, xi);
    }
    return out;
}

}  // namespace detail

struct MultiplierBoundsResult {
    ConstantReport resolvent, eigenvalue, semigroup_oseen, semigroup_poisson;
};

inline MultiplierBoundsResult band_multiplier_bounds(const Grid2& g, const EnsembleSpec& ens,
                                                     std::span<const double> alphas,
                                                     std::span<const double> Ts, double p) {
    require_exponent(p, "band_multiplier_bounds");
    MultiplierBoundsResult R;
    for (ConstantReport* r : {&R.resolvent, &R.eigenvalue, &R.semigroup_oseen, &R.semigroup_poisson}) {
        r->grid = grid_desc(g);
        r->profile = DyadicProfile::id();
    }
    R.resolvent.id = "resolvent";
    R.eigenvalue.id = "eigenvalue";
    R.semigroup_oseen.id = "semigroup-oseen";
    R.semigroup_poisson.id = "semigroup-poisson";

    const double h2 = g.h2();
    const BandRange range = band_range(g);

    for (int s = 0; s < ens.count; ++s) {
        Rng rng(subseed(ens.seed, static_cast<std::uint64_t>(s)));
        for (int j : ens.law.bands) {
            if (!range.contains(j)) continue;
            detail::Profile1D f = detail::random_band_profile(g, j, rng);
            detail::Profile1D dj_f = detail::band_project_1d(f, j);
            const double base = detail::lp_norm_1d(dj_f.physical(), p, h2);
            if (base == 0.0) continue;  // empty sample, skipped

            for (double alpha : alphas) {
                const EigenPair lam_j = eigen_frequencies(alpha, pow2(j));

                auto ratio_for = [&](const std::function<double(double)>& mult, double bound) {
                    detail::Profile1D mf = detail::band_project_1d(detail::apply_multiplier_1d(f, mult), j);
                    return detail::lp_norm_1d(mf.physical(), p, h2) / (bound * base);
                };

                R.resolvent.record({s, alpha, 0.0, j,
                                    ratio_for([&](double xi) { return 1.0 / std::sqrt(alpha * alpha + xi * xi); },
                                              1.0 / std::sqrt(alpha * alpha + pow2(2 * j)))});

                const double re = std::max(
                    ratio_for([&](double xi) { return eigen_frequencies(alpha, xi).lambda_plus; },
                              std::abs(lam_j.lambda_plus)),
                    ratio_for([&](double xi) { return eigen_frequencies(alpha, xi).lambda_minus; },
                              std::abs(lam_j.lambda_minus)));
                R.eigenvalue.record({s, alpha, 0.0, j, re});

                for (double T : Ts) {
                    const double ro = std::max(
                        ratio_for([&](double xi) { return std::exp(-eigen_frequencies(alpha, xi).lambda_plus * T); },
                                  std::exp(-0.5 * lam_j.lambda_plus * T)),
                        ratio_for([&](double xi) { return std::exp(eigen_frequencies(alpha, xi).lambda_minus * T); },
                                  std::exp(0.5 * lam_j.lambda_minus * T)));
                    R.semigroup_oseen.record({s, alpha, T, j, ro});

                    R.semigroup_poisson.record(
                        {s, alpha, T, j,
                         ratio_for([&](double xi) { return std::exp(-std::abs(xi) * T); },
                                   std::exp(-0.5 * pow2(j) * T))});
                }
            }
        }
    }
    return R;
}

//------------------------------------------------------------------------------
// Linear solution estimate: with s_h = 1/p1 + 1/p2 + 1/p3 - 2,
// s_l1 = -1/p1 + 1/p2 + 2/p3 - 2, s_l2 = 1/p1 + 1/p2 - 1,
//   ||D[F]||_S <= alpha^{-1/p1} ||F||^{h}_{B^{s_h}_{p3,p2;q}}
//              + alpha^{1/p1-1/p3} ||F||^{l}_{B^{s_l1}_{p3,p2;q}}
//              + alpha^{-1+1/p3-1/p1} ||F||^{l}_{B^{s_l2}_{p3,p2;q}}.
// The p3 = p1/2 specialization collapses the bound to
//   alpha^{-1/p1} ||F||_{B^{3/p1+1/p2-2}_{p1/2,p2;q}}  (full norm, not hybrid).
//------------------------------------------------------------------------------
inline double linear_estimate_rhs(const TensorForcing& F, const ThmParams& tp, double p3,
                                  const HybridContext& ctx) {
    if (!(p3 >= 1.0) || !(p3 <= tp.p1))
        throw std::invalid_argument("linear_estimate_rhs: need 1 <= p3 <= p1");
    auto bands = band_norm_sequence(F, p3, tp.p2);
    const double ip1 = 1.0 / tp.p1, ip2 = 1.0 / tp.p2, ip3 = 1.0 / p3;
    const double high = lq_aggregate(bands, ip1 + ip2 + ip3 - 2.0, tp.q, BandSet::high, ctx.alpha);
    const double low1 = lq_aggregate(bands, -ip1 + ip2 + 2.0 * ip3 - 2.0, tp.q, BandSet::low, ctx.alpha);
    const double low2 = lq_aggregate(bands, ip1 + ip2 - 1.0, tp.q, BandSet::low, ctx.alpha);
    return std::pow(ctx.alpha, -ip1) * high + std::pow(ctx.alpha, ip1 - ip3) * low1 +
           std::pow(ctx.alpha, -1.0 + ip3 - ip1) * low2;
}

inline double linear_estimate_rhs_halfp1(const TensorForcing& F, const ThmParams& tp,
                                         const HybridContext& ctx) {
    BesovParams bp{3.0 / tp.p1 + 1.0 / tp.p2 - 2.0, tp.p1 / 2.0, tp.p2, tp.q};
    return std::pow(ctx.alpha, -1.0 / tp.p1) * besov_norm(F, bp);
}

struct LinearEstimateResult {
    ConstantReport general;   // chosen p3
    ConstantReport half_p1;   // the p3 = p1/2 specialization
};

inline LinearEstimateResult linear_solution_estimate(const Grid2& g, const EnsembleSpec& ens,
                                                     std::span<const double> alphas, const ThmParams& tp,
                                                     double p3) {
    tp.validate();
    LinearEstimateResult R;
    R.general.id = "linear-p3=" + std::to_string(p3);
    R.half_p1.id = "linear-p3=p1/2";
    for (ConstantReport* r : {&R.general, &R.half_p1}) {
        r->grid = grid_desc(g);
        r->profile = DyadicProfile::id();
    }

    for (int s = 0; s < ens.count; ++s) {
        GeneratedForcing gf = generate_forcing(ens.item(s), g);
        for (double alpha : alphas) {
            const HybridContext ctx{alpha};
            VectorField u = assemble_D(gf.F, OseenConfig{alpha});
            const double lhs = solution_norm_S(u, tp, ctx);
            const double rhs = linear_estimate_rhs(gf.F, tp, p3, ctx);
            if (rhs > 0.0) R.general.record({s, alpha, 0.0, 0, lhs / rhs});
            const double rhs2 = linear_estimate_rhs_halfp1(gf.F, tp, ctx);
            if (rhs2 > 0.0) R.half_p1.record({s, alpha, 0.0, 0, lhs / rhs2});
        }
    }
    return R;
}

//------------------------------------------------------------------------------
// Product estimate: alpha^{-1/p1} ||f g||_{B^{3/p1+1/p2-2}_{p1/2,p2;q}}
//                   <= C ||f||_S ||g||_S   for scalar f, g.
// Rejected outside the theorem window (the estimate's hypothesis).
//------------------------------------------------------------------------------
inline ConstantReport product_estimate(const Grid2& g, const EnsembleSpec& ens,
                                       std::span<const double> alphas, const ThmParams& tp) {
    tp.validate();
    ConstantReport R;
    R.id = "product";
    R.grid = grid_desc(g);
    R.profile = DyadicProfile::id();

    BesovParams bp{3.0 / tp.p1 + 1.0 / tp.p2 - 2.0, tp.p1 / 2.0, tp.p2, tp.q};

    for (int s = 0; s < ens.count; ++s) {
        ForcingSpec spec_f = ens.item(s);
        Rng rf(subseed(spec_f.seed, 1)), rg(subseed(spec_f.seed, 2));
        ScalarField f = oseen2d::detail::random_band_component(g, spec_f, rf);
        ScalarField gg = oseen2d::detail::random_band_component(g, spec_f, rg);
        project_out_x2_mean(f);
        project_out_x2_mean(gg);
        ScalarField fg = multiply_dealiased(f, gg);

        for (double alpha : alphas) {
            const HybridContext ctx{alpha};
            const double lhs = std::pow(alpha, -1.0 / tp.p1) * besov_norm(fg, bp);
            const double rhs = solution_norm_S(f, tp, ctx) * solution_norm_S(gg, tp, ctx);
            if (rhs > 0.0) R.record({s, alpha, 0.0, 0, lhs / rhs});
        }
    }
    return R;
}

//------------------------------------------------------------------------------
// Gate constant: C0 = safety_factor * max( sup ||D[F]||_S / ||F||_D,
//                                          sup ||D[u (x) v]||_S / (||u||_S ||v||_S) ).
// Consumed by the solver's smallness gate ||F||_D <= 1/(8 C0^2).
//------------------------------------------------------------------------------
struct GateConstant {
    double c0 = 0.0;
    double linear_sup = 0.0;
    double bilinear_sup = 0.0;
    double safety_factor = 2.0;
    std::string grid;
    std::string profile;
    std::uint64_t seed = 0;
    int count = 0;
};

inline GateConstant estimate_gate_constant(const Grid2& g, const EnsembleSpec& ens,
                                           std::span<const double> alphas, const ThmParams& tp) {
    tp.validate();
    if (ens.count <= 0) throw std::invalid_argument("estimate_gate_constant: empty ensemble");
    GateConstant out;
    out.grid = grid_desc(g);
    out.profile = DyadicProfile::id();
    out.seed = ens.seed;
    out.count = ens.count;

    for (int s = 0; s < ens.count; ++s) {
        GeneratedForcing gf = generate_forcing(ens.item(s), g);
        VectorField u = random_band_vector(g, ens.item(s), subseed(ens.seed, 1000 + static_cast<std::uint64_t>(s)));
        VectorField v = random_band_vector(g, ens.item(s), subseed(ens.seed, 2000 + static_cast<std::uint64_t>(s)));
        TensorForcing uv = outer_product_dealiased(u, v);

        for (double alpha : alphas) {
            const OseenConfig oc{alpha};
            const HybridContext ctx{alpha};

            const double dnorm = data_norm_D(gf.F, tp, ctx);
            if (dnorm > 0.0)
                out.linear_sup = std::max(out.linear_sup,
                                          solution_norm_S(assemble_D(gf.F, oc), tp, ctx) / dnorm);

            const double su = solution_norm_S(u, tp, ctx), sv = solution_norm_S(v, tp, ctx);
            if (su > 0.0 && sv > 0.0)
                out.bilinear_sup = std::max(out.bilinear_sup,
                                            solution_norm_S(assemble_D(uv, oc), tp, ctx) / (su * sv));
        }
    }
    out.c0 = out.safety_factor * std::max(out.linear_sup, out.bilinear_sup);
    return out;
}

}  // namespace oseen2d::estimates

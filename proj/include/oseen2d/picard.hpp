//==============================================================================
// picard.hpp
// The nonlinear solver: Picard iteration of Phi[u] = D[F - u (x) u], the
// smallness gate ||F||_D <= 1/(8 C0^2), convergence / divergence bookkeeping,
// and the residual diagnostics. The quadratic term is formed pointwise in
// physical space with 3/2-rule dealiasing in xi2.
//==============================================================================
#pragma once

#include <optional>

#include "besov.hpp"
#include "core.hpp"
#include "forcing.hpp"
#include "oseen.hpp"
#include "transforms.hpp"

namespace oseen2d {

//------------------------------------------------------------------------------
// Configuration and reports
//------------------------------------------------------------------------------
struct SolverConfig {
    double alpha = 1.0;
    ThmParams tp;
    double tol = 1e-10;
    int max_iter = 200;
    double c0_estimate = 0.0;  // <= 0: no gate constant available
    bool start_from_linear = false;

    void validate() const {
        if (!(alpha > 0.0)) throw std::invalid_argument("SolverConfig: alpha must be positive");
        if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
        if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
        tp.validate();
    }

    OseenConfig oseen() const { return {alpha}; }
    HybridContext ctx() const { return {alpha}; }
};

enum class SolveStatus { converged, diverged, max_iter };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::diverged: return "diverged";
        default: return "max_iter";
    }
}

struct IterationRow {
    int n = 0;
    double s_norm = 0.0;          // ||u^(n)||_S
    double diff = 0.0;            // ||u^(n) - u^(n-1)||_S
    double ratio = 0.0;           // diff_n / diff_{n-1} (0 when undefined)
    double mild_residual = 0.0;   // ||u^(n) - Phi[u^(n)]||_S, filled one step later
    bool in_ball = true;          // s_norm <= 2 C0 ||F||_D (when the gate constant exists)
};

struct IterationReport {
    std::vector<IterationRow> rows;
    SolveStatus status = SolveStatus::max_iter;
    double data_norm = 0.0;           // ||F||_D
    double mild_discrepancy = 0.0;    // final ||u - D[F - u(x)u]||_S
    double ball_radius = 0.0;         // 2 C0 ||F||_D (0 when no gate constant)
    bool ball_confined = true;
};

struct GateReport {
    bool evaluated = false;  // false: no C0 estimate, gate skipped
    bool pass = false;
    double data_norm = 0.0;
    double threshold = 0.0;  // 1/(8 C0^2)
    double margin = 0.0;     // threshold / data_norm
    double c0 = 0.0;
};

//------------------------------------------------------------------------------
// check_smallness: pass iff ||F||_D <= 1/(8 C0^2), boundary inclusive.
//------------------------------------------------------------------------------
inline GateReport check_smallness(const TensorForcing& F, const SolverConfig& cfg) {
    cfg.validate();
    GateReport rep;
    rep.data_norm = data_norm_D(F, cfg.tp, cfg.ctx());
    if (!(cfg.c0_estimate > 0.0)) return rep;  // skipped, theorem guarantee not claimed
    rep.evaluated = true;
    rep.c0 = cfg.c0_estimate;
    rep.threshold = 1.0 / (8.0 * cfg.c0_estimate * cfg.c0_estimate);
    rep.pass = rep.data_norm <= rep.threshold;
    rep.margin = rep.data_norm > 0.0 ? rep.threshold / rep.data_norm
                                     : std::numeric_limits<double>::infinity();
    return rep;
}

//------------------------------------------------------------------------------
// picard_solve
//------------------------------------------------------------------------------
struct PicardResult {
    std::optional<VectorField> u;  // empty when the iteration diverged
    IterationReport report;
};

inline VectorField apply_Phi(const VectorField& u, const TensorForcing& F, const OseenConfig& oc) {
    TensorForcing G = F - outer_product_dealiased(u, u);
    return assemble_D(G, oc);
}

inline PicardResult picard_solve(const TensorForcing& F, const SolverConfig& cfg,
                                 const VectorField* initial = nullptr) {
    cfg.validate();
    const Grid2& g = F.grid();
    const OseenConfig oc = cfg.oseen();
    const HybridContext ctx = cfg.ctx();

    PicardResult res;
    res.report.data_norm = data_norm_D(F, cfg.tp, ctx);
    if (cfg.c0_estimate > 0.0)
        res.report.ball_radius = 2.0 * cfg.c0_estimate * res.report.data_norm;

    VectorField u = initial ? *initial : VectorField(g);
    if (!initial && cfg.start_from_linear) u = assemble_D(F, oc);

    double prev_diff = 0.0;
    int growth_streak = 0;
    SolveStatus status = SolveStatus::max_iter;

    for (int n = 1; n <= cfg.max_iter; ++n) {
        VectorField unew = apply_Phi(u, F, oc);
        const double diff = solution_norm_S(unew - u, cfg.tp, ctx);
        const double snorm = solution_norm_S(unew, cfg.tp, ctx);

        IterationRow row;
        row.n = n;
        row.s_norm = snorm;
        row.diff = diff;
        row.ratio = (n >= 2 && prev_diff > 0.0) ? diff / prev_diff : 0.0;
        if (res.report.ball_radius > 0.0) {
            row.in_ball = snorm <= res.report.ball_radius * (1.0 + 1e-12);
            res.report.ball_confined = res.report.ball_confined && row.in_ball;
        }
        // diff_n measures the mild residual of the previous iterate
        if (!res.report.rows.empty()) res.report.rows.back().mild_residual = diff;
        res.report.rows.push_back(row);

        u = std::move(unew);

        if (diff <= cfg.tol) {
            status = SolveStatus::converged;
            break;
        }
        if (n >= 2 && diff > prev_diff) {
            if (++growth_streak >= 5) {
                status = SolveStatus::diverged;
                break;
            }
        } else {
            growth_streak = 0;
        }
        prev_diff = diff;
    }

    // final mild-solution identity discrepancy ||u - Phi[u]||_S
    {
        VectorField phi_u = apply_Phi(u, F, oc);
        res.report.mild_discrepancy = solution_norm_S(phi_u - u, cfg.tp, ctx);
        if (!res.report.rows.empty()) res.report.rows.back().mild_residual = res.report.mild_discrepancy;
    }

    res.report.status = status;
    if (status != SolveStatus::diverged) res.u = std::move(u);
    return res;
}

//------------------------------------------------------------------------------
// residual: relative Fourier-form residual of the full system over the
// interior window,
//   r = (|xi|^2 + i alpha xi1) u^ - (P div (F - u (x) u))^,
// normalized by the right-hand side. Exact discrete solutions of the linear
// problem (the multiplier oracle) have residual at roundoff level.
//------------------------------------------------------------------------------
inline double residual(const VectorField& u, const TensorForcing& F, const SolverConfig& cfg,
                       bool include_quadratic = true) {
    require_same_grid(u.grid(), F.grid(), "residual");
    const Grid2& g = F.grid();

    TensorForcing G = include_quadratic ? F - outer_product_dealiased(u, u) : F;
    detail::ProjectedSpectra rhs = detail::helmholtz_spectra(G);

    Spectrum2D u1 = to_spectrum2d(u.u1), u2 = to_spectrum2d(u.u2);
    for (int m = 0; m < g.N1; ++m) {
        const double xi1 = (m == g.N1 / 2) ? 0.0 : g.xi1(m);
        for (int k = 0; k < g.N2; ++k) {
            const double xi2 = g.xi2(k);
            const std::size_t idx = static_cast<std::size_t>(m) * g.N2 + k;
            const complex sym(xi1 * xi1 + xi2 * xi2, cfg.alpha * xi1);
            u1[idx] = sym * u1[idx] - rhs.v1[idx];
            u2[idx] = sym * u2[idx] - rhs.v2[idx];
        }
    }

    const Window w = interior_window(g);
    ScalarField r1 = spectrum2d_to_physical(std::move(u1), g);
    ScalarField r2 = spectrum2d_to_physical(std::move(u2), g);
    ScalarField b1 = spectrum2d_to_physical(std::move(rhs.v1), g);
    ScalarField b2 = spectrum2d_to_physical(std::move(rhs.v2), g);

    double num = 0.0, den = 0.0;
    for (int i = w.i_lo; i < w.i_hi; ++i)
        for (int k = 0; k < g.N2; ++k) {
            num += r1.at(i, k) * r1.at(i, k) + r2.at(i, k) * r2.at(i, k);
            den += b1.at(i, k) * b1.at(i, k) + b2.at(i, k) * b2.at(i, k);
        }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

//------------------------------------------------------------------------------
// uniqueness_probe: multi-start agreement inside the 1/(4 C0) ball.
//------------------------------------------------------------------------------
struct UniquenessTrial {
    std::uint64_t seed = 0;
    double init_norm = 0.0;
    double endpoint_distance = 0.0;
    SolveStatus status = SolveStatus::max_iter;
    bool within_tolerance = false;
};

struct UniquenessReport {
    std::vector<UniquenessTrial> trials;
    double baseline_norm = 0.0;
    double tolerance = 0.0;  // 100 * tol
    bool all_within = true;
};

inline UniquenessReport uniqueness_probe(const TensorForcing& F, const SolverConfig& cfg, int trials,
                                         std::uint64_t seed) {
    cfg.validate();
    if (!(cfg.c0_estimate > 0.0))
        throw std::invalid_argument("uniqueness_probe: requires a C0 estimate (ball radius 1/(4 C0))");

    UniquenessReport rep;
    rep.tolerance = 100.0 * cfg.tol;
    if (trials == 0) return rep;

    PicardResult base = picard_solve(F, cfg);
    if (base.report.status != SolveStatus::converged || !base.u)
        throw std::runtime_error("uniqueness_probe: baseline solve did not converge");
    rep.baseline_norm = solution_norm_S(*base.u, cfg.tp, cfg.ctx());

    const double radius = 1.0 / (4.0 * cfg.c0_estimate);
    ForcingSpec guess_spec;  // band-limited initial-guess texture
    guess_spec.bands = {1, 2, 3};

    for (int t = 0; t < trials; ++t) {
        UniquenessTrial trial;
        trial.seed = subseed(seed, static_cast<std::uint64_t>(t));
        VectorField u0 = random_band_vector(F.grid(), guess_spec, trial.seed);
        const double n0 = solution_norm_S(u0, cfg.tp, cfg.ctx());
        Rng rng(trial.seed);
        const double target = radius * rng.uniform(0.2, 1.0);
        if (n0 > 0.0) u0 = (target / n0) * u0;
        trial.init_norm = solution_norm_S(u0, cfg.tp, cfg.ctx());

        PicardResult run = picard_solve(F, cfg, &u0);
        trial.status = run.report.status;
        if (run.u) {
            trial.endpoint_distance = solution_norm_S(*run.u - *base.u, cfg.tp, cfg.ctx());
            trial.within_tolerance =
                run.report.status == SolveStatus::converged && trial.endpoint_distance <= rep.tolerance;
        }
        rep.all_within = rep.all_within && trial.within_tolerance;
        rep.trials.push_back(trial);
    }
    return rep;
}

//------------------------------------------------------------------------------
// lipschitz_probe: finite-difference data-to-solution ratio.
//------------------------------------------------------------------------------
struct LipschitzReport {
    bool identical_inputs = false;
    double data_distance = 0.0;      // ||F - G||_D
    double solution_distance = 0.0;  // ||u_F - u_G||_S
    double ratio = 0.0;
};

inline LipschitzReport lipschitz_probe(const TensorForcing& F, const TensorForcing& G,
                                       const SolverConfig& cfg) {
    cfg.validate();
    GateReport gf = check_smallness(F, cfg), gg = check_smallness(G, cfg);
    if (gf.evaluated && (!gf.pass || !gg.pass))
        throw std::invalid_argument("lipschitz_probe: both inputs must pass the smallness gate");

    LipschitzReport rep;
    rep.data_distance = data_norm_D(F - G, cfg.tp, cfg.ctx());
    if (rep.data_distance <= 1e-300) {
        rep.identical_inputs = true;
        return rep;
    }
    PicardResult uf = picard_solve(F, cfg), ug = picard_solve(G, cfg);
    if (!uf.u || !ug.u) throw std::runtime_error("lipschitz_probe: a solve did not converge");
    rep.solution_distance = solution_norm_S(*uf.u - *ug.u, cfg.tp, cfg.ctx());
    rep.ratio = rep.solution_distance / rep.data_distance;
    return rep;
}

}  // namespace oseen2d

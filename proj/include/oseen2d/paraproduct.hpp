//==============================================================================
// paraproduct.hpp
// Paraproduct decomposition of a pointwise product over the dyadic bands:
//   f g = T_f g + R(f,g) + T_g f,
//   T_f g = sum_k ( sum_{l <= k-3} Delta_l f ) Delta_k g,
//   R(f,g) = sum_{|k-l| <= 2} Delta_k f Delta_l g.
// Band sums are truncated to the grid's resolved range; products are formed on
// the dealiased fine grid so the three pieces reconstruct the dealiased
// product exactly up to roundoff.
//==============================================================================
#pragma once

#include "besov.hpp"
#include "dyadic.hpp"
#include "transforms.hpp"

namespace oseen2d {

struct ParaproductParts {
    ScalarField low_high;   // T_f g
    ScalarField high_low;   // T_g f
    ScalarField diagonal;   // R(f,g)
};

namespace detail {

inline std::vector<FineGridField> fine_bands(const ScalarField& f) {
    const BandRange r = band_range(f.grid);
    SemiSpectralField fh = to_semispectral(f);
    std::vector<FineGridField> out;
    out.reserve(static_cast<std::size_t>(r.count()));
    for (int j = r.jmin; j <= r.jmax; ++j) out.push_back(upsample_x2(band_project(fh, j).field));
    return out;
}

}  // namespace detail

inline ParaproductParts paraproduct_decompose(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid, g.grid, "paraproduct_decompose");
    const BandRange r = band_range(f.grid);
    const int nb = r.count();

    std::vector<FineGridField> bf = detail::fine_bands(f);
    std::vector<FineGridField> bg = detail::fine_bands(g);

    // prefix[b] = sum of bands 0..b
    auto prefix_sums = [&](const std::vector<FineGridField>& bands) {
        std::vector<FineGridField> pre = bands;
        for (int b = 1; b < nb; ++b)
            for (std::size_t i = 0; i < pre[static_cast<std::size_t>(b)].v.size(); ++i)
                pre[static_cast<std::size_t>(b)].v[i] += pre[static_cast<std::size_t>(b - 1)].v[i];
        return pre;
    };
    std::vector<FineGridField> pf = prefix_sums(bf);
    std::vector<FineGridField> pg = prefix_sums(bg);

    FineGridField tfg{f.grid, std::vector<double>(bf[0].v.size(), 0.0)};
    FineGridField tgf = tfg, diag = tfg;

    for (int b = 0; b < nb; ++b) {
        // low-high: partner index strictly below b-2 (l <= k-3)
        if (b - 3 >= 0) {
            const auto& low_f = pf[static_cast<std::size_t>(b - 3)];
            const auto& low_g = pg[static_cast<std::size_t>(b - 3)];
            for (std::size_t i = 0; i < tfg.v.size(); ++i) {
                tfg.v[i] += low_f.v[i] * bg[static_cast<std::size_t>(b)].v[i];
                tgf.v[i] += low_g.v[i] * bf[static_cast<std::size_t>(b)].v[i];
            }
        }
        // diagonal: |k - l| <= 2
        for (int d = -2; d <= 2; ++d) {
            const int l = b + d;
            if (l < 0 || l >= nb) continue;
            for (std::size_t i = 0; i < diag.v.size(); ++i)
                diag.v[i] += bf[static_cast<std::size_t>(b)].v[i] * bg[static_cast<std::size_t>(l)].v[i];
        }
    }

    return {downsample_x2(tfg), downsample_x2(tgf), downsample_x2(diag)};
}

}  // namespace oseen2d

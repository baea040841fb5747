//==============================================================================
// fft.hpp
// Thin deterministic wrapper around FFTW3 complex transforms. Plans are cached
// per (shape, direction) and created with FFTW_ESTIMATE | FFTW_UNALIGNED so
// that repeated runs of the same binary produce bit-identical results.
//==============================================================================
#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "core.hpp"

namespace oseen2d::fft {

namespace detail {

struct PlanCache {
    std::mutex mtx;
    std::map<std::tuple<int, int, int, int>, fftw_plan> plans;  // (n1,n2,sign,kind)

    ~PlanCache() {
        for (auto& [key, p] : plans) fftw_destroy_plan(p);
    }

    // kind 0: batched 1D transforms of length n2 along contiguous rows (n1 rows)
    // kind 1: full 2D transform n1 x n2
    fftw_plan get(int n1, int n2, int sign, int kind) {
        std::scoped_lock lk(mtx);
        auto key = std::make_tuple(n1, n2, sign, kind);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;

        // FFTW planner is not thread safe; creation stays under the lock.
        // A scratch buffer is required at planning time even with ESTIMATE.
        fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n1) * n2);
        fftw_plan p = nullptr;
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (kind == 0) {
            int n[] = {n2};
            p = fftw_plan_many_dft(1, n, n1, buf, nullptr, 1, n2, buf, nullptr, 1, n2, sign, flags);
        } else {
            p = fftw_plan_dft_2d(n1, n2, buf, buf, sign, flags);
        }
        fftw_free(buf);
        if (!p) throw std::runtime_error("fft: FFTW plan creation failed");
        plans.emplace(key, p);
        return p;
    }
};

inline PlanCache& cache() {
    static PlanCache c;
    return c;
}

inline fftw_complex* as_fftw(complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace detail

/// In-place unnormalized DFT of each length-n2 row; sign -1 forward, +1 backward.
inline void rows_dft(complex* data, int n1, int n2, int sign) {
    fftw_plan p = detail::cache().get(n1, n2, sign, 0);
    fftw_execute_dft(p, detail::as_fftw(data), detail::as_fftw(data));
}

/// In-place unnormalized 2D DFT.
inline void dft_2d(complex* data, int n1, int n2, int sign) {
    fftw_plan p = detail::cache().get(n1, n2, sign, 1);
    fftw_execute_dft(p, detail::as_fftw(data), detail::as_fftw(data));
}

/// Single 1D transform, length n.
inline void dft_1d(complex* data, int n, int sign) { rows_dft(data, 1, n, sign); }

}  // namespace oseen2d::fft

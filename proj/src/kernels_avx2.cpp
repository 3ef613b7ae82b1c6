#include <immintrin.h>

#include <cassert>
#include <cstddef>

#include "microgrid/kernels.hpp"

// AVX2 variants. Operation order and shape mirror the scalar reference
// exactly (separate mul/add, division kept as division) so the two paths
// produce bit-identical results.

namespace microgrid::kernels {

void pv_series_avx2(const PvSpec& spec, double capacity_scale,
                    std::span<const double> irradiance,
                    std::span<const double> temperature, std::span<double> out) {
    assert(irradiance.size() == out.size() && temperature.size() == out.size());
    const std::size_t n = out.size();
    const __m256d rated = _mm256_set1_pd(spec.rated_kw);
    const __m256d g_stc = _mm256_set1_pd(spec.g_stc);
    const __m256d kc = _mm256_set1_pd(spec.temp_coeff);
    const __m256d t_stc = _mm256_set1_pd(spec.t_stc);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d scale = _mm256_set1_pd(capacity_scale);

    std::size_t h = 0;
    for (; h + 4 <= n; h += 4) {
        __m256d g = _mm256_loadu_pd(irradiance.data() + h);
        __m256d t = _mm256_loadu_pd(temperature.data() + h);
        __m256d term = _mm256_add_pd(one, _mm256_mul_pd(kc, _mm256_sub_pd(t, t_stc)));
        __m256d p = _mm256_mul_pd(rated, _mm256_div_pd(g, g_stc));
        p = _mm256_mul_pd(p, term);
        p = _mm256_max_pd(p, zero);
        _mm256_storeu_pd(out.data() + h, _mm256_mul_pd(p, scale));
    }
    if (h < n)
        pv_series_scalar(spec, capacity_scale, irradiance.subspan(h), temperature.subspan(h),
                         out.subspan(h));
}

void wind_series_avx2(const WindSpec& spec, double capacity_scale,
                      std::span<const double> wind_speed, std::span<double> out) {
    assert(wind_speed.size() == out.size());
    const std::size_t n = out.size();
    const __m256d rated = _mm256_set1_pd(spec.rated_kw);
    const __m256d v_ci = _mm256_set1_pd(spec.v_cut_in);
    const __m256d v_r = _mm256_set1_pd(spec.v_rated);
    const __m256d v_co = _mm256_set1_pd(spec.v_cut_out);
    const __m256d ramp_span = _mm256_set1_pd(spec.v_rated - spec.v_cut_in);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d scale = _mm256_set1_pd(capacity_scale);

    std::size_t h = 0;
    for (; h + 4 <= n; h += 4) {
        __m256d v = _mm256_loadu_pd(wind_speed.data() + h);
        __m256d ramp =
            _mm256_mul_pd(rated, _mm256_div_pd(_mm256_sub_pd(v, v_ci), ramp_span));
        // v <= v_r picks the ramp, otherwise rated
        __m256d le_r = _mm256_cmp_pd(v, v_r, _CMP_LE_OQ);
        __m256d p = _mm256_blendv_pd(rated, ramp, le_r);
        // zero outside (v_ci, v_co]
        __m256d dead = _mm256_or_pd(_mm256_cmp_pd(v, v_ci, _CMP_LE_OQ),
                                    _mm256_cmp_pd(v, v_co, _CMP_GT_OQ));
        p = _mm256_blendv_pd(p, zero, dead);
        _mm256_storeu_pd(out.data() + h, _mm256_mul_pd(p, scale));
    }
    if (h < n) wind_series_scalar(spec, capacity_scale, wind_speed.subspan(h), out.subspan(h));
}

}  // namespace microgrid::kernels

#include "microgrid/kernels.hpp"

#include <algorithm>
#include <cassert>

namespace microgrid::kernels {

namespace {
Isa g_isa = detect_isa();
}

Isa detect_isa() {
#if defined(MICROGRID_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
    return Isa::Scalar;
}

Isa active_isa() { return g_isa; }

void set_isa(Isa isa) {
#if !defined(MICROGRID_HAVE_AVX2)
    assert(isa == Isa::Scalar);
#endif
    g_isa = isa;
}

void pv_series_scalar(const PvSpec& spec, double capacity_scale,
                      std::span<const double> irradiance,
                      std::span<const double> temperature, std::span<double> out) {
    assert(irradiance.size() == out.size() && temperature.size() == out.size());
    const double rated = spec.rated_kw;
    const double g_stc = spec.g_stc;
    const double kc = spec.temp_coeff;
    const double t_stc = spec.t_stc;
    for (std::size_t h = 0; h < out.size(); ++h) {
        double term = 1.0 + kc * (temperature[h] - t_stc);
        double p = rated * (irradiance[h] / g_stc);
        p = p * term;
        p = std::max(p, 0.0);
        out[h] = p * capacity_scale;
    }
}

void wind_series_scalar(const WindSpec& spec, double capacity_scale,
                        std::span<const double> wind_speed, std::span<double> out) {
    assert(wind_speed.size() == out.size());
    const double rated = spec.rated_kw;
    const double v_ci = spec.v_cut_in;
    const double v_r = spec.v_rated;
    const double v_co = spec.v_cut_out;
    for (std::size_t h = 0; h < out.size(); ++h) {
        double v = wind_speed[h];
        double p;
        if (v <= v_ci || v > v_co)
            p = 0.0;
        else if (v <= v_r)
            p = rated * ((v - v_ci) / (v_r - v_ci));
        else
            p = rated;
        out[h] = p * capacity_scale;
    }
}

void pv_series(const PvSpec& spec, double capacity_scale, std::span<const double> irradiance,
               std::span<const double> temperature, std::span<double> out) {
#if defined(MICROGRID_HAVE_AVX2)
    if (g_isa == Isa::Avx2) {
        pv_series_avx2(spec, capacity_scale, irradiance, temperature, out);
        return;
    }
#endif
    pv_series_scalar(spec, capacity_scale, irradiance, temperature, out);
}

void wind_series(const WindSpec& spec, double capacity_scale,
                 std::span<const double> wind_speed, std::span<double> out) {
#if defined(MICROGRID_HAVE_AVX2)
    if (g_isa == Isa::Avx2) {
        wind_series_avx2(spec, capacity_scale, wind_speed, out);
        return;
    }
#endif
    wind_series_scalar(spec, capacity_scale, wind_speed, out);
}

}  // namespace microgrid::kernels

#pragma once

#include <cstddef>
#include <span>

#include "microgrid/components.hpp"

namespace microgrid::kernels {

// Hourly generation kernels. The dispatch loop calls these once per simulated
// year to precompute renewable potential; they are the only data-parallel hot
// path, so they carry an AVX2 variant next to the scalar reference. The two
// are equivalence-tested bit-for-bit.

enum class Isa { Scalar, Avx2 };

// Best ISA the CPU supports (and the build enables).
Isa detect_isa();

// Active ISA; defaults to detect_isa(). Overridable for tests.
Isa active_isa();
void set_isa(Isa isa);

// out[h] = pv_power(spec, irradiance[h], temperature[h]) * capacity_scale
void pv_series_scalar(const PvSpec& spec, double capacity_scale,
                      std::span<const double> irradiance,
                      std::span<const double> temperature, std::span<double> out);

// out[h] = wind_power(spec, wind_speed[h]) * capacity_scale
void wind_series_scalar(const WindSpec& spec, double capacity_scale,
                        std::span<const double> wind_speed, std::span<double> out);

#if defined(MICROGRID_HAVE_AVX2)
void pv_series_avx2(const PvSpec& spec, double capacity_scale,
                    std::span<const double> irradiance,
                    std::span<const double> temperature, std::span<double> out);
void wind_series_avx2(const WindSpec& spec, double capacity_scale,
                      std::span<const double> wind_speed, std::span<double> out);
#endif

// Runtime-dispatched entry points.
void pv_series(const PvSpec& spec, double capacity_scale, std::span<const double> irradiance,
               std::span<const double> temperature, std::span<double> out);
void wind_series(const WindSpec& spec, double capacity_scale,
                 std::span<const double> wind_speed, std::span<double> out);

}  // namespace microgrid::kernels

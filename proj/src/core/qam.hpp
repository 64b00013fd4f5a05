// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/types.hpp"

namespace splp {

// Gray-mapped square QAM, unit average energy. Bit order per symbol is
// (y0 y1 ... y_{m-1}): even-position bits steer I, odd-position bits steer Q.
// y0/y1 are the axis signs; remaining bits select the magnitude ring
// Gray-wise (00 -> outermost ... 10 -> innermost for 64-QAM).
cplx qam_map_symbol(std::span<const std::uint8_t> bits, Constellation c);

std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, Constellation c);

// Exact max-log per-axis demapping of z = gain * x + n, n ~ CN(0, noise_var).
// Emits m LLRs, positive = bit 0 more likely, clipped to +-llr_clip.
// A zero/degenerate gain yields all-zero LLRs (erasure).
void qam_demap_symbol(cplx z, Constellation c, cplx gain, double noise_var,
                      double llr_clip, std::span<double> llrs);

// per-axis amplitude levels indexed by the magnitude-bit pattern
std::span<const double> qam_axis_levels(Constellation c);
double qam_axis_scale(Constellation c);  // 1/sqrt(10) or 1/sqrt(42)

}  // namespace splp

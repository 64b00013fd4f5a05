// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/qam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace splp {

namespace {

// magnitude-bit pattern -> level, index (m1 << 1) | m2 for 64-QAM
const double kLevels16[] = {3.0, 1.0};
const double kLevels64[] = {7.0, 5.0, 1.0, 3.0};

int magnitude_bits(Constellation c) {
  return c == Constellation::Qam16 ? 1 : 2;
}

}  // namespace

std::span<const double> qam_axis_levels(Constellation c) {
  if (c == Constellation::Qam16) return {kLevels16, 2};
  return {kLevels64, 4};
}

double qam_axis_scale(Constellation c) {
  return c == Constellation::Qam16 ? 1.0 / std::sqrt(10.0)
                                   : 1.0 / std::sqrt(42.0);
}

cplx qam_map_symbol(std::span<const std::uint8_t> bits, Constellation c) {
  const int m = bits_per_symbol(c);
  if (static_cast<int>(bits.size()) != m)
    throw std::invalid_argument("bit count mismatch");
  const auto levels = qam_axis_levels(c);
  const double scale = qam_axis_scale(c);
  const int mb = magnitude_bits(c);
  auto axis = [&](int offset) {
    int sign = bits[offset];
    int idx = 0;
    for (int k = 0; k < mb; ++k) idx = (idx << 1) | bits[offset + 2 * (k + 1)];
    return (1 - 2 * sign) * levels[idx] * scale;
  };
  return {axis(0), axis(1)};
}

std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, Constellation c) {
  const int m = bits_per_symbol(c);
  if (bits.size() % m != 0)
    throw std::invalid_argument("bit stream not a whole number of symbols");
  std::vector<cplx> out(bits.size() / m);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = qam_map_symbol(bits.subspan(i * m, m), c);
  return out;
}

void qam_demap_symbol(cplx z, Constellation c, cplx gain, double noise_var,
                      double llr_clip, std::span<double> llrs) {
  const int m = bits_per_symbol(c);
  if (static_cast<int>(llrs.size()) != m)
    throw std::invalid_argument("llr buffer size mismatch");
  const double g2 = std::norm(gain);
  if (!(g2 > 0) || !std::isfinite(g2)) {
    std::fill(llrs.begin(), llrs.end(), 0.0);
    return;
  }
  const cplx u = z / gain;
  const double metric_scale = g2 / std::max(noise_var, 1e-300);
  const auto levels = qam_axis_levels(c);
  const int mb = magnitude_bits(c);
  const double scale = qam_axis_scale(c);
  const int bits_per_axis = 1 + mb;

  // one axis at a time: bit pattern (sign, m1[, m2]) over 2^(1+mb) points
  for (int axis = 0; axis < 2; ++axis) {
    const double v = axis == 0 ? u.real() : u.imag();
    double best0[3], best1[3];
    for (int k = 0; k < bits_per_axis; ++k) {
      best0[k] = best1[k] = std::numeric_limits<double>::infinity();
    }
    const int npoints = 2 << mb;
    for (int p = 0; p < npoints; ++p) {
      const int sign = p >> mb;
      const int mag = p & ((1 << mb) - 1);
      const double point = (1 - 2 * sign) * levels[mag] * scale;
      const double d = (v - point) * (v - point);
      for (int k = 0; k < bits_per_axis; ++k) {
        const int bit = k == 0 ? sign : (mag >> (mb - k)) & 1;
        if (bit)
          best1[k] = std::min(best1[k], d);
        else
          best0[k] = std::min(best0[k], d);
      }
    }
    for (int k = 0; k < bits_per_axis; ++k) {
      double llr = metric_scale * (best1[k] - best0[k]);
      llr = std::clamp(llr, -llr_clip, llr_clip);
      llrs[2 * k + axis] = llr;
    }
  }
}

}  // namespace splp

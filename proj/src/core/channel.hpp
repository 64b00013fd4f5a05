// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace splp {

struct LinkConfig;
class RngStream;

struct Tap {
  double amplitude = 0;  // linear field amplitude
  double delay_s = 0;
  double phase_rad = 0;
};

// A multipath profile: echo taps plus an optional line-of-sight ray.
// load/parse normalize total power (sum of amplitude^2 over all rays,
// LOS included) to 1 so noise calibration is channel-independent.
struct TapSet {
  std::vector<Tap> echoes;
  std::optional<Tap> los;
  std::string source;        // resolved path or builtin id
  std::uint64_t content_hash = 0;  // FNV-1a over the defining text

  double total_power() const;
  double max_delay_s() const;
  size_t ray_count() const { return echoes.size() + (los ? 1 : 0); }
  // Snap every delay to the nearest multiple of t_sample.
  TapSet rounded_to_sample(double t_sample) const;
};

// Text format, one ray per line: "amplitude delay_us phase_rad".
// A line starting with LOS declares the line-of-sight ray. '#' comments.
TapSet parse_tap_text(const std::string& text, const std::string& source_name);
TapSet load_tap_file(const std::string& path);

// Resolve cfg.channel_id (builtin ids map to shipped profile files; the data
// directory comes from SPLP_DATA_DIR or the built-in default).
TapSet load_tap_set(const LinkConfig& cfg);

struct ChannelRealization {
  std::vector<cplx> h;        // frequency response per active carrier
  std::vector<cplx> impulse;  // sample-spaced impulse response
};

// Deterministic realization of a tap set on the active-carrier grid.
// When rng is non-null every ray gets a fresh uniform phase (fading draws);
// otherwise the profile phases are used as-is.
ChannelRealization realize_channel(const TapSet& taps, const LinkConfig& cfg,
                                   RngStream* rng = nullptr);

// Per-carrier application: y = h .* x + noise, noise CN(0, noise_var) iid.
void apply_channel_freq(ComplexFrame& frame, const ChannelRealization& chan,
                        double noise_var, RngStream* noise_rng);

// Sample-domain application: linear convolution with the impulse response
// plus iid CN(0, noise_var) per sample.
std::vector<cplx> apply_channel_time(std::span<const cplx> samples,
                                     const ChannelRealization& chan,
                                     double noise_var, RngStream* noise_rng);

// Mean and biased sample variance ((1/n) sum |h - mean|^2) of a response.
std::pair<cplx, double> channel_variance(std::span<const cplx> h);

// Unbiased variant (1/(n-1) normalization); n == 1 gives 0.
double channel_variance_unbiased(std::span<const cplx> h);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace splp

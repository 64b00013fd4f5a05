// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/channel.hpp"
#include "core/chip_map.hpp"
#include "core/config.hpp"
#include "core/fec.hpp"
#include "core/ofdm.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"
#include "core/walsh.hpp"

namespace splp {

// Everything that is fixed across the Monte Carlo frames of one run:
// spreading matrix, tiling, channel profile (and its deterministic
// realization when fading is frozen), and the coded-bit budget of a frame.
struct LinkContext {
  LinkConfig cfg;
  int L = 0;
  SpreadingMatrix matrix;   // unused in baseline mode
  ChipMapping mapping;      // unused in baseline mode
  TapSet taps;
  ChannelRealization fixed_chan;
  std::vector<int> baseline_carriers;  // data-cell -> active-carrier index
  int n_data_cells = 0;                // QAM symbols per frame
  std::uint64_t capacity_bits = 0;
  CodedBudget budget;
  // coded bit j -> cell-bit position, seeded by master_seed; empty when off
  std::vector<std::uint32_t> interleave_map;
  std::vector<std::string> warnings;
};

LinkContext make_link_context(const LinkConfig& cfg);

// subset-average true response per subset for a given realization
std::vector<cplx> subset_means(const LinkContext& ctx,
                               const ChannelRealization& chan);

struct FrameResult {
  std::uint64_t info_bits = 0;
  std::uint64_t bit_errors = 0;
};

// One frame end to end: random payload, spreading (or the classical
// scattered-pilot layout in baseline mode), propagation, estimation,
// equalization, demapping, decoding, error count. chan_rng, when given,
// redraws the tap phases for this frame.
FrameResult run_ber_frame(const LinkContext& ctx, double noise_var,
                          RngStream& data_rng, RngStream& noise_rng,
                          RngStream* chan_rng);

struct MseFrameResult {
  std::uint64_t trials = 0;      // subset estimates
  double sum_sq_error = 0;       // |h_hat - subset mean|^2 accumulated
  double sum_quad_error = 0;     // |h_hat - subset mean|^4, for CI
  cplx sum_error = {0, 0};       // signed error, for bias checks
  double sum_pred = 0;           // closed-form MSE prediction accumulated
  double sum_floor = 0;          // noise-free floor prediction accumulated
};

// One frame of pilot-estimation trials: full spread transmit path, no FEC.
// Every subset contributes one estimate scored against the realized
// subset-average response.
MseFrameResult run_mse_frame(const LinkContext& ctx, double noise_var,
                             RngStream& data_rng, RngStream& noise_rng,
                             RngStream* chan_rng);

}  // namespace splp

// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "core/types.hpp"
#include "core/walsh.hpp"

namespace splp {

// Pilot-sequence channel estimation over one despread subset.
//
// Received chips r_j = h_j * s_j + n_j. Correlating with the pilot sequence
// and dividing by the boosted pilot gives
//   h_hat = h_avg + (code cross-talk from the channel deviation) + noise/B,
// an unbiased estimate of the subset-average response. The closed forms
// below give its error variance components for deviation power sigma_h_sq
// and per-chip noise sigma_n_sq.
double estimator_si_variance(double boost, int length, double sigma_h_sq);
double estimator_noise_variance(double boost, double sigma_n_sq);
double theoretical_mse(double boost, int length, double sigma_h_sq,
                       double sigma_n_sq);

// h_hat from received chips; pilot_symbol is the known transmitted pilot
cplx estimate_subset(std::span<const cplx> chips, const SpreadingMatrix& m,
                     cplx pilot_symbol, double boost);

// same, starting from the full despread vector y = C^H r
cplx estimate_from_despread(std::span<const cplx> despread,
                            const SpreadingMatrix& m, cplx pilot_symbol,
                            double boost);

struct GainReport {
  cplx gain = {1.0, 0.0};   // residual complex gain on the data symbols
  double noise_var = 0.0;   // post-equalizer noise variance per symbol
  bool erasure = false;     // channel too weak to invert
};

struct EqualizedSubset {
  std::vector<cplx> symbols;  // L-1 data symbols, sequence order
  GainReport gain;
};

// Equalize one subset's despread data symbols with the estimated flat gain.
//   zf:   x_hat = y / h_hat, gain 1, noise sigma_eff^2 / |h_hat|^2
//   mmse: x_hat = y * conj(h_hat) / (|h_hat|^2 + sigma_eff^2), biased gain
// sigma_eff^2 = sigma_n_sq, plus the predicted code cross-talk power when
// si_sigma_h_sq > 0 (oracle diagnostics).
EqualizedSubset equalize_from_despread(std::span<const cplx> despread,
                                       const SpreadingMatrix& m, cplx h_hat,
                                       Equalizer eq, double sigma_n_sq,
                                       double erasure_epsilon,
                                       double si_sigma_h_sq = 0.0,
                                       double boost = 1.0);

EqualizedSubset equalize_subset(std::span<const cplx> chips,
                                const SpreadingMatrix& m, cplx h_hat,
                                Equalizer eq, double sigma_n_sq,
                                double erasure_epsilon,
                                double si_sigma_h_sq = 0.0,
                                double boost = 1.0);

}  // namespace splp

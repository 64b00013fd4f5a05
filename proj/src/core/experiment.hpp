// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "core/config.hpp"
#include "core/report.hpp"

namespace splp {

// Pilot-estimation MSE versus SNR, one curve per lf_sweep entry (the
// time/frequency split varies, the total spreading factor stays fixed).
Report run_mse_experiment(const LinkConfig& cfg);

// Per-subset response variance of the frozen channel realization versus the
// frequency spreading span, plus its weighted form that predicts the
// high-SNR estimation floor. Deterministic (no Monte Carlo).
Report run_weighted_variance_experiment(const LinkConfig& cfg);

// Coded BER versus Eb/N0 for the configured link.
Report run_ber_experiment(const LinkConfig& cfg);

// Coded BER versus pilot boost at the first Eb/N0 grid point; the row
// minimizing BER is marked and recorded as best_boost metadata.
Report run_boost_sweep(const LinkConfig& cfg);

// Net useful bitrate of the standard presets (both classical and spread
// configurations) on the configured OFDM dimensioning.
Report run_bitrate_table(const LinkConfig& cfg);

// dispatch by name: mse | variance | ber | boost-sweep | bitrate
Report run_experiment(const LinkConfig& cfg, const std::string& name);

const char* version_string();

}  // namespace splp

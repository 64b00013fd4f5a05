// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "core/types.hpp"

namespace splp {

// Signed subcarrier offset of active carrier a in a DC-free symmetric layout:
// actives 0..n/2-1 sit at offsets -n/2..-1, actives n/2..n-1 at +1..+n/2.
inline int signed_carrier_offset(int active_index, int n_active) {
  int half = n_active / 2;
  return active_index < half ? active_index - half : active_index - half + 1;
}

inline int carrier_bin(int active_index, int n_active, int fft_size) {
  int off = signed_carrier_offset(active_index, n_active);
  return off < 0 ? fft_size + off : off;
}

// OFDM modulator/demodulator with cyclic prefix and unitary transforms
// (1/sqrt(N) both directions, so per-cell signal power is preserved).
class OfdmModem {
 public:
  OfdmModem(int fft_size, int guard_samples, int n_active);

  int symbol_samples() const { return fft_size_ + guard_; }

  // frame -> time samples, n_symbols * (guard + fft_size) long
  std::vector<cplx> modulate(const ComplexFrame& frame) const;
  // time samples -> frame (guard stripped)
  ComplexFrame demodulate(std::span<const cplx> samples, int n_symbols) const;

  // in-place unitary transform, exposed for spectrum tests
  void fft_unitary(std::span<cplx> data, bool inverse) const;

 private:
  int fft_size_;
  int guard_;
  int n_active_;
  std::vector<cplx> twiddle_;       // e^{-2*pi*i*k/N}, k < N/2
  std::vector<int> bit_reverse_;
};

}  // namespace splp

// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/ofdm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace splp {

OfdmModem::OfdmModem(int fft_size, int guard_samples, int n_active)
    : fft_size_(fft_size), guard_(guard_samples), n_active_(n_active) {
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0)
    throw std::invalid_argument("fft_size must be a power of two");
  if (n_active >= fft_size || n_active % 2 != 0)
    throw std::invalid_argument("n_active must be even and below fft_size");
  twiddle_.resize(fft_size / 2);
  for (int k = 0; k < fft_size / 2; ++k) {
    double ang = -2.0 * std::numbers::pi * k / fft_size;
    twiddle_[k] = {std::cos(ang), std::sin(ang)};
  }
  bit_reverse_.resize(fft_size);
  int bits = 0;
  while ((1 << bits) < fft_size) ++bits;
  for (int i = 0; i < fft_size; ++i) {
    int r = 0;
    for (int b = 0; b < bits; ++b)
      if (i & (1 << b)) r |= 1 << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
}

void OfdmModem::fft_unitary(std::span<cplx> data, bool inverse) const {
  const int n = fft_size_;
  if (static_cast<int>(data.size()) != n)
    throw std::invalid_argument("fft length mismatch");
  for (int i = 0; i < n; ++i) {
    int j = bit_reverse_[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    int half = len >> 1;
    int stride = n / len;
    for (int start = 0; start < n; start += len) {
      for (int k = 0; k < half; ++k) {
        cplx w = twiddle_[k * stride];
        if (inverse) w = std::conj(w);
        cplx a = data[start + k];
        cplx b = data[start + k + half] * w;
        data[start + k] = a + b;
        data[start + k + half] = a - b;
      }
    }
  }
  double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : data) v *= scale;
}

std::vector<cplx> OfdmModem::modulate(const ComplexFrame& frame) const {
  if (frame.n_carriers != n_active_)
    throw std::invalid_argument("frame carrier count mismatch");
  const int sym_len = symbol_samples();
  std::vector<cplx> out(static_cast<size_t>(frame.n_symbols) * sym_len);
  std::vector<cplx> spectrum(fft_size_);
  for (int t = 0; t < frame.n_symbols; ++t) {
    std::fill(spectrum.begin(), spectrum.end(), cplx{0, 0});
    for (int a = 0; a < n_active_; ++a)
      spectrum[carrier_bin(a, n_active_, fft_size_)] = frame.at(t, a);
    fft_unitary(spectrum, true);
    cplx* dst = out.data() + static_cast<size_t>(t) * sym_len;
    for (int i = 0; i < guard_; ++i)
      dst[i] = spectrum[fft_size_ - guard_ + i];
    for (int i = 0; i < fft_size_; ++i) dst[guard_ + i] = spectrum[i];
  }
  return out;
}

ComplexFrame OfdmModem::demodulate(std::span<const cplx> samples,
                                   int n_symbols) const {
  const int sym_len = symbol_samples();
  if (static_cast<int>(samples.size()) < n_symbols * sym_len)
    throw std::invalid_argument("sample buffer too short");
  ComplexFrame frame(n_symbols, n_active_);
  std::vector<cplx> spectrum(fft_size_);
  for (int t = 0; t < n_symbols; ++t) {
    const cplx* src = samples.data() + static_cast<size_t>(t) * sym_len + guard_;
    std::copy(src, src + fft_size_, spectrum.begin());
    fft_unitary(spectrum, false);
    for (int a = 0; a < n_active_; ++a)
      frame.at(t, a) = spectrum[carrier_bin(a, n_active_, fft_size_)];
  }
  return frame;
}

}  // namespace splp

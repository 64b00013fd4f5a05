// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/walsh.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace splp {

int hadamard_sign(int i, int j) {
  return (std::popcount(static_cast<unsigned>(i) & static_cast<unsigned>(j)) & 1)
             ? -1
             : 1;
}

SpreadingMatrix make_spreading_matrix(int length, int pilot_index_zero_based) {
  if (length < 2 || !std::has_single_bit(static_cast<unsigned>(length)))
    throw std::invalid_argument("spreading length must be a power of two >= 2");
  if (pilot_index_zero_based < 0 || pilot_index_zero_based >= length)
    throw std::invalid_argument("pilot index out of range");
  SpreadingMatrix m;
  m.size = length;
  m.pilot_index = pilot_index_zero_based;
  m.entries.resize(static_cast<size_t>(length) * length);
  const double scale = 1.0 / std::sqrt(static_cast<double>(length));
  for (int i = 0; i < length; ++i)
    for (int j = 0; j < length; ++j)
      m.entries[static_cast<size_t>(i) * length + j] =
          hadamard_sign(i, j) * scale;
  return m;
}

void wht_unscaled(std::span<cplx> v) {
  const size_t n = v.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("wht length must be a power of two");
  for (size_t half = 1; half < n; half <<= 1) {
    for (size_t start = 0; start < n; start += half << 1) {
      for (size_t k = start; k < start + half; ++k) {
        cplx a = v[k];
        cplx b = v[k + half];
        v[k] = a + b;
        v[k + half] = a - b;
      }
    }
  }
}

std::vector<cplx> spread(const SubsetPayload& payload,
                         const SpreadingMatrix& m) {
  const int L = m.size;
  if (static_cast<int>(payload.data.size()) != L - 1)
    throw std::invalid_argument("payload must carry L-1 data symbols");
  std::vector<cplx> v(L);
  int d = 0;
  for (int i = 0; i < L; ++i)
    v[i] = (i == m.pilot_index) ? std::sqrt(payload.boost) * payload.pilot
                                : payload.data[d++];
  wht_unscaled(v);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  for (auto& s : v) s *= scale;
  return v;
}

std::vector<cplx> despread_all(std::span<const cplx> chips) {
  std::vector<cplx> y(chips.begin(), chips.end());
  wht_unscaled(y);
  const double scale = 1.0 / std::sqrt(static_cast<double>(chips.size()));
  for (auto& v : y) v *= scale;
  return y;
}

cplx despread(std::span<const cplx> chips, const SpreadingMatrix& m,
              int sequence_index) {
  if (static_cast<int>(chips.size()) != m.size)
    throw std::invalid_argument("chip count mismatch");
  auto seq = m.sequence(sequence_index);
  cplx acc{0, 0};
  for (int j = 0; j < m.size; ++j) acc += seq[j] * chips[j];
  return acc;
}

}  // namespace splp

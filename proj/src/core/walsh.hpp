// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "core/types.hpp"

namespace splp {

// Orthonormal Walsh-Hadamard spreading matrix in natural (Sylvester) order:
// sign of entry (i, j) is (-1)^popcount(i & j), scaled by 1/sqrt(L).
// The matrix is symmetric, so sequence i is both row i and column i.
struct SpreadingMatrix {
  int size = 0;         // L, power of two
  int pilot_index = 0;  // 0-based sequence reserved for the pilot
  std::vector<double> entries;  // row-major, entries[i * size + j]

  double entry(int i, int j) const { return entries[static_cast<size_t>(i) * size + j]; }
  std::span<const double> sequence(int i) const {
    return {entries.data() + static_cast<size_t>(i) * size,
            static_cast<size_t>(size)};
  }
};

SpreadingMatrix make_spreading_matrix(int length, int pilot_index_zero_based);

// Integer +-1 Hadamard sign: +1 or -1 for entry (i, j).
int hadamard_sign(int i, int j);

// In-place unscaled Walsh-Hadamard transform (natural order): v <- H_int * v
// where H_int is the +-1 matrix. Length must be a power of two.
void wht_unscaled(std::span<cplx> v);

// One subset's transmit content: L-1 data symbols (sequence order, pilot
// slot skipped) plus an amplified pilot.
struct SubsetPayload {
  std::vector<cplx> data;
  cplx pilot = {1.0, 0.0};
  double boost = 1.0;
};

// chips s_j = sum_i c_i[j] * v_i with v_pilot = sqrt(boost) * pilot
std::vector<cplx> spread(const SubsetPayload& payload,
                         const SpreadingMatrix& m);

// all despread outputs y_i = c_i^H r (the transform is real, so the
// conjugate is a no-op; exposed this way for symmetry with spread)
std::vector<cplx> despread_all(std::span<const cplx> chips);

// single-sequence correlation c_i^H r
cplx despread(std::span<const cplx> chips, const SpreadingMatrix& m,
              int sequence_index);

}  // namespace splp

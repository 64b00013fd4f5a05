// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/types.hpp"

namespace splp {

// Rate-1/2 constraint-length-7 convolutional mother code, generators
// 133/171 (octal), first output from 133. The encoder starts in the all-zero
// state and appends 6 zero tail bits, so every codeword is terminated.
inline constexpr int kConstraintLength = 7;
inline constexpr unsigned kGenA = 0133;  // first output bit of each pair
inline constexpr unsigned kGenB = 0171;
inline constexpr int kTailBits = kConstraintLength - 1;

// info bits -> 2 * (K + 6) coded bits, pairs (A, B) interleaved
std::vector<std::uint8_t> conv_encode(std::span<const std::uint8_t> info);

// Puncturing period per rate, over pairs (A_i, B_i), i = 0..info-1:
//   1/2 : keep everything
//   3/4 : A1 B1 B2 A3      (A2, B3 dropped)
//   5/6 : A1 B1 B2 A3 B4 A5
// Patterns are returned as keep flags over one period of the A and B streams.
struct PuncturePattern {
  int period = 1;                 // info bits per period
  std::vector<std::uint8_t> keep_a;
  std::vector<std::uint8_t> keep_b;
  int kept_per_period() const;
};
PuncturePattern puncture_pattern(CodeRate rate);

std::vector<std::uint8_t> puncture(std::span<const std::uint8_t> coded,
                                   CodeRate rate);

// Reinsert dropped positions as zero LLRs (no information).
std::vector<double> depuncture(std::span<const double> llrs, CodeRate rate);

// Max-log soft Viterbi over the terminated mother code. Input is one LLR per
// mother-code bit (positive = bit 0), length 2 * (K + 6). Returns the K info
// bits (tail stripped). Traceback starts from the zero state.
std::vector<std::uint8_t> viterbi_decode(std::span<const double> llrs);

// coded-bit capacity bookkeeping: how many info bits fit into `capacity`
// coded bits at `rate`, keeping whole puncturing periods, tail included
struct CodedBudget {
  std::uint64_t info_bits = 0;   // usable payload bits (tail excluded)
  std::uint64_t coded_bits = 0;  // punctured bits actually transmitted
  std::uint64_t pad_bits = 0;    // capacity left over, filled with zeros
};
CodedBudget coded_budget(std::uint64_t capacity_bits, CodeRate rate);

}  // namespace splp

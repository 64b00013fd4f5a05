// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/fec.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace splp {

namespace {

constexpr int kStates = 1 << (kConstraintLength - 1);

inline int parity(unsigned v) { return std::popcount(v) & 1; }

// branch outputs for register r = (input << 6) | state, r < 128
struct BranchTable {
  std::uint8_t out_a[2 * kStates];
  std::uint8_t out_b[2 * kStates];
  BranchTable() {
    for (unsigned r = 0; r < 2 * kStates; ++r) {
      out_a[r] = static_cast<std::uint8_t>(parity(r & kGenA));
      out_b[r] = static_cast<std::uint8_t>(parity(r & kGenB));
    }
  }
};
const BranchTable kBranch;

}  // namespace

std::vector<std::uint8_t> conv_encode(std::span<const std::uint8_t> info) {
  std::vector<std::uint8_t> out;
  out.reserve(2 * (info.size() + kTailBits));
  unsigned state = 0;
  auto push = [&](unsigned bit) {
    unsigned r = (bit << (kConstraintLength - 1)) | state;
    out.push_back(kBranch.out_a[r]);
    out.push_back(kBranch.out_b[r]);
    state = r >> 1;
  };
  for (std::uint8_t b : info) {
    if (b > 1) throw std::invalid_argument("info bits must be 0 or 1");
    push(b);
  }
  for (int i = 0; i < kTailBits; ++i) push(0);
  return out;
}

int PuncturePattern::kept_per_period() const {
  int n = 0;
  for (std::uint8_t k : keep_a) n += k;
  for (std::uint8_t k : keep_b) n += k;
  return n;
}

PuncturePattern puncture_pattern(CodeRate rate) {
  switch (rate) {
    case CodeRate::Uncoded:
    case CodeRate::Half:
      return {1, {1}, {1}};
    case CodeRate::ThreeQuarters:
      return {3, {1, 0, 1}, {1, 1, 0}};
    case CodeRate::FiveSixths:
      return {5, {1, 0, 1, 0, 1}, {1, 1, 0, 1, 0}};
  }
  return {1, {1}, {1}};
}

std::vector<std::uint8_t> puncture(std::span<const std::uint8_t> coded,
                                   CodeRate rate) {
  if (coded.size() % 2 != 0)
    throw std::invalid_argument("coded stream must be bit pairs");
  const PuncturePattern p = puncture_pattern(rate);
  std::vector<std::uint8_t> out;
  out.reserve(coded.size());
  const size_t pairs = coded.size() / 2;
  for (size_t i = 0; i < pairs; ++i) {
    const int ph = static_cast<int>(i % p.period);
    if (p.keep_a[ph]) out.push_back(coded[2 * i]);
    if (p.keep_b[ph]) out.push_back(coded[2 * i + 1]);
  }
  return out;
}

std::vector<double> depuncture(std::span<const double> llrs, CodeRate rate) {
  const PuncturePattern p = puncture_pattern(rate);
  const int kept = p.kept_per_period();
  if (llrs.size() % kept != 0)
    throw std::invalid_argument("llr stream not whole puncturing periods");
  const size_t periods = llrs.size() / kept;
  std::vector<double> out;
  out.reserve(periods * p.period * 2);
  size_t pos = 0;
  for (size_t n = 0; n < periods; ++n) {
    for (int ph = 0; ph < p.period; ++ph) {
      out.push_back(p.keep_a[ph] ? llrs[pos++] : 0.0);
      out.push_back(p.keep_b[ph] ? llrs[pos++] : 0.0);
    }
  }
  return out;
}

std::vector<std::uint8_t> viterbi_decode(std::span<const double> llrs) {
  if (llrs.size() % 2 != 0)
    throw std::invalid_argument("llr stream must be bit pairs");
  const size_t steps = llrs.size() / 2;
  if (steps <= static_cast<size_t>(kTailBits))
    throw std::invalid_argument("codeword shorter than the tail");

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> prev(kStates, kNegInf), next(kStates);
  prev[0] = 0.0;
  // tb[step][state]: low bit of the surviving predecessor state
  std::vector<std::uint8_t> tb(steps * kStates);

  for (size_t t = 0; t < steps; ++t) {
    const double la = llrs[2 * t];
    const double lb = llrs[2 * t + 1];
    std::uint8_t* tbrow = tb.data() + t * kStates;
    for (int ns = 0; ns < kStates; ++ns) {
      const unsigned b = static_cast<unsigned>(ns) >> (kConstraintLength - 2);
      const unsigned base = (static_cast<unsigned>(ns) & (kStates / 2 - 1)) << 1;
      double best = kNegInf;
      std::uint8_t choice = 0;
      for (unsigned s0 = 0; s0 < 2; ++s0) {
        const unsigned s = base | s0;
        if (prev[s] == kNegInf) continue;
        const unsigned r = (b << (kConstraintLength - 1)) | s;
        const double bm = (kBranch.out_a[r] ? -la : la) +
                          (kBranch.out_b[r] ? -lb : lb);
        const double m = prev[s] + bm;
        if (m > best) {
          best = m;
          choice = static_cast<std::uint8_t>(s0);
        }
      }
      next[ns] = best;
      tbrow[ns] = choice;
    }
    std::swap(prev, next);
  }

  // terminated codeword: trace back from the zero state
  std::vector<std::uint8_t> bits(steps);
  unsigned cur = 0;
  for (size_t t = steps; t-- > 0;) {
    bits[t] = static_cast<std::uint8_t>(cur >> (kConstraintLength - 2));
    cur = ((cur & (kStates / 2 - 1)) << 1) | tb[t * kStates + cur];
  }
  bits.resize(steps - kTailBits);
  return bits;
}

CodedBudget coded_budget(std::uint64_t capacity_bits, CodeRate rate) {
  CodedBudget b;
  if (rate == CodeRate::Uncoded) {
    b.info_bits = capacity_bits;
    b.coded_bits = capacity_bits;
    b.pad_bits = 0;
    return b;
  }
  const PuncturePattern p = puncture_pattern(rate);
  const std::uint64_t kept = p.kept_per_period();
  const std::uint64_t periods = capacity_bits / kept;
  const std::uint64_t total_info = periods * p.period;
  if (total_info <= static_cast<std::uint64_t>(kTailBits))
    throw std::invalid_argument("capacity too small for a terminated codeword");
  b.info_bits = total_info - kTailBits;
  b.coded_bits = periods * kept;
  b.pad_bits = capacity_bits - b.coded_bits;
  return b;
}

}  // namespace splp

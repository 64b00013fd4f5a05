// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/chain.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "core/bitrate.hpp"
#include "core/estimator.hpp"
#include "core/qam.hpp"

namespace splp {

LinkContext make_link_context(const LinkConfig& cfg) {
  ValidationResult v = validate_config(cfg);
  if (!v.ok) throw ConfigError(v.error);

  LinkContext ctx;
  ctx.cfg = cfg;
  ctx.warnings = v.warnings;
  ctx.L = cfg.spreading_total();
  ctx.taps = load_tap_set(cfg);
  if (cfg.time_domain) {
    // keep both propagation paths on the identical sample-spaced response
    ctx.taps = ctx.taps.rounded_to_sample(elementary_period_s(cfg.bandwidth_hz));
  }
  ctx.fixed_chan = realize_channel(ctx.taps, cfg, nullptr);

  if (cfg.baseline_mode) {
    ctx.baseline_carriers.resize(cfg.dvbt_data_carriers);
    for (int d = 0; d < cfg.dvbt_data_carriers; ++d)
      ctx.baseline_carriers[d] = static_cast<int>(
          static_cast<long long>(d) * cfg.n_carriers / cfg.dvbt_data_carriers);
    ctx.n_data_cells = cfg.n_symbols * cfg.dvbt_data_carriers;
  } else {
    ctx.matrix = make_spreading_matrix(ctx.L, cfg.pilot_index - 1);
    ctx.mapping = make_chip_mapping(cfg.lt, cfg.lf, cfg.n_symbols,
                                    cfg.n_carriers, cfg.mapping);
    ctx.n_data_cells = ctx.mapping.subset_count() * (ctx.L - 1);
  }
  const int m = bits_per_symbol(cfg.constellation);
  ctx.capacity_bits = static_cast<std::uint64_t>(ctx.n_data_cells) * m;
  ctx.budget = coded_budget(ctx.capacity_bits, cfg.code_rate);
  if (cfg.interleaver == Interleaver::Random &&
      cfg.code_rate != CodeRate::Uncoded) {
    ctx.interleave_map.resize(ctx.budget.coded_bits);
    std::iota(ctx.interleave_map.begin(), ctx.interleave_map.end(), 0u);
    RngStream perm(cfg.master_seed, stream_id(0, 0, 0, RngRole::Misc));
    for (size_t i = ctx.interleave_map.size() - 1; i > 0; --i)
      std::swap(ctx.interleave_map[i],
                ctx.interleave_map[perm.raw() % (i + 1)]);
  }
  return ctx;
}

std::vector<cplx> subset_means(const LinkContext& ctx,
                               const ChannelRealization& chan) {
  const ChipMapping& map = ctx.mapping;
  std::vector<cplx> means(map.subset_count());
  for (int s = 0; s < map.subset_count(); ++s) {
    cplx acc{0, 0};
    for (int j = 0; j < ctx.L; ++j) {
      auto [t, f] = chip_cell(map, s, j);
      acc += chan.h[f];
    }
    means[s] = acc / static_cast<double>(ctx.L);
  }
  return means;
}

namespace {

std::vector<std::uint8_t> random_bits(RngStream& rng, std::uint64_t n) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
  return bits;
}

// payload bits for one frame: encode, puncture, optionally scatter with the
// frame interleaver, zero-pad to cell capacity
std::vector<std::uint8_t> frame_coded_bits(const LinkContext& ctx,
                                           std::span<const std::uint8_t> info) {
  if (ctx.cfg.code_rate == CodeRate::Uncoded)
    return {info.begin(), info.end()};
  std::vector<std::uint8_t> coded = conv_encode(info);
  std::vector<std::uint8_t> kept = puncture(coded, ctx.cfg.code_rate);
  if (!ctx.interleave_map.empty()) {
    std::vector<std::uint8_t> cells(ctx.capacity_bits, 0);
    for (size_t j = 0; j < kept.size(); ++j)
      cells[ctx.interleave_map[j]] = kept[j];
    return cells;
  }
  kept.resize(ctx.capacity_bits, 0);
  return kept;
}

// coded-bit LLRs in decoder order from the per-cell LLR stream
std::vector<double> gather_coded_llrs(const LinkContext& ctx,
                                      std::vector<double>&& cell_llrs) {
  if (ctx.interleave_map.empty()) {
    cell_llrs.resize(ctx.budget.coded_bits);
    return std::move(cell_llrs);
  }
  std::vector<double> out(ctx.budget.coded_bits);
  for (size_t j = 0; j < out.size(); ++j)
    out[j] = cell_llrs[ctx.interleave_map[j]];
  return out;
}

// channel response seen by frame cell (t, f)
inline cplx cell_response(const ChannelRealization& chan, int carrier) {
  return chan.h[carrier];
}

void propagate(const LinkContext& ctx, ComplexFrame& frame,
               const ChannelRealization& chan, double noise_var,
               RngStream* noise_rng) {
  if (!ctx.cfg.time_domain) {
    apply_channel_freq(frame, chan, noise_var, noise_rng);
    return;
  }
  OfdmModem modem(ctx.cfg.fft_size, ctx.cfg.guard_samples, ctx.cfg.n_carriers);
  std::vector<cplx> tx = modem.modulate(frame);
  std::vector<cplx> rx = apply_channel_time(tx, chan, noise_var, noise_rng);
  frame = modem.demodulate(rx, ctx.cfg.n_symbols);
}

FrameResult count_errors(std::span<const std::uint8_t> sent,
                         std::span<const std::uint8_t> decoded) {
  FrameResult r;
  r.info_bits = sent.size();
  for (size_t i = 0; i < sent.size(); ++i)
    r.bit_errors += sent[i] != decoded[i];
  return r;
}

FrameResult run_ber_frame_spread(const LinkContext& ctx,
                                 const ChannelRealization& chan,
                                 double noise_var, RngStream& data_rng,
                                 RngStream& noise_rng) {
  const LinkConfig& cfg = ctx.cfg;
  const int L = ctx.L;
  const int m = bits_per_symbol(cfg.constellation);
  const int subsets = ctx.mapping.subset_count();

  std::vector<std::uint8_t> info = random_bits(data_rng, ctx.budget.info_bits);
  std::vector<std::uint8_t> cell_bits = frame_coded_bits(ctx, info);
  std::vector<cplx> symbols = qam_map(cell_bits, cfg.constellation);

  ComplexFrame frame(cfg.n_symbols, cfg.n_carriers);
  SubsetPayload payload;
  payload.boost = cfg.boost;
  std::vector<cplx> chips(static_cast<size_t>(subsets) * L);
  for (int s = 0; s < subsets; ++s) {
    payload.data.assign(symbols.begin() + static_cast<size_t>(s) * (L - 1),
                        symbols.begin() + static_cast<size_t>(s + 1) * (L - 1));
    std::vector<cplx> sc = spread(payload, ctx.matrix);
    std::copy(sc.begin(), sc.end(), chips.begin() + static_cast<size_t>(s) * L);
  }
  map_chips(chips, ctx.mapping, frame);

  propagate(ctx, frame, chan, noise_var, &noise_rng);

  std::vector<cplx> rx_chips(chips.size());
  demap_chips(frame, ctx.mapping, rx_chips);

  std::vector<cplx> means;
  if (cfg.perfect_csi) means = subset_means(ctx, chan);

  std::vector<double> llrs(ctx.capacity_bits);
  std::vector<double> sym_llr(m);
  for (int s = 0; s < subsets; ++s) {
    std::span<const cplx> sub(rx_chips.data() + static_cast<size_t>(s) * L, L);
    std::vector<cplx> y = despread_all(sub);
    cplx h_hat = cfg.perfect_csi
                     ? means[s]
                     : estimate_from_despread(y, ctx.matrix, payload.pilot,
                                              cfg.boost);
    double si_var = 0.0;
    if (cfg.oracle_mode) {
      std::vector<cplx> sub_h(L);
      for (int j = 0; j < L; ++j) {
        auto [t, f] = chip_cell(ctx.mapping, s, j);
        sub_h[j] = chan.h[f];
      }
      si_var = channel_variance_unbiased(sub_h);
    }
    EqualizedSubset eq = equalize_from_despread(
        y, ctx.matrix, h_hat, cfg.equalizer, noise_var, cfg.zf_erasure_epsilon,
        si_var, cfg.boost);
    for (int i = 0; i < L - 1; ++i) {
      if (eq.gain.erasure) {
        std::fill(sym_llr.begin(), sym_llr.end(), 0.0);
      } else {
        qam_demap_symbol(eq.symbols[i], cfg.constellation, eq.gain.gain,
                         eq.gain.noise_var, cfg.llr_saturation, sym_llr);
      }
      const size_t base = (static_cast<size_t>(s) * (L - 1) + i) * m;
      std::copy(sym_llr.begin(), sym_llr.end(), llrs.begin() + base);
    }
  }

  if (cfg.code_rate == CodeRate::Uncoded) {
    std::vector<std::uint8_t> decided(ctx.capacity_bits);
    for (size_t i = 0; i < llrs.size(); ++i) decided[i] = llrs[i] < 0;
    return count_errors(cell_bits, decided);
  }
  std::vector<double> full =
      depuncture(gather_coded_llrs(ctx, std::move(llrs)), cfg.code_rate);
  std::vector<std::uint8_t> decoded = viterbi_decode(full);
  return count_errors(info, decoded);
}

FrameResult run_ber_frame_baseline(const LinkContext& ctx,
                                   const ChannelRealization& chan,
                                   double noise_var, RngStream& data_rng,
                                   RngStream& noise_rng) {
  const LinkConfig& cfg = ctx.cfg;
  const int m = bits_per_symbol(cfg.constellation);
  const int nd = cfg.dvbt_data_carriers;

  std::vector<std::uint8_t> info = random_bits(data_rng, ctx.budget.info_bits);
  std::vector<std::uint8_t> cell_bits = frame_coded_bits(ctx, info);
  std::vector<cplx> symbols = qam_map(cell_bits, cfg.constellation);

  ComplexFrame frame(cfg.n_symbols, cfg.n_carriers);
  for (int t = 0; t < cfg.n_symbols; ++t)
    for (int d = 0; d < nd; ++d)
      frame.at(t, ctx.baseline_carriers[d]) =
          symbols[static_cast<size_t>(t) * nd + d];

  propagate(ctx, frame, chan, noise_var, &noise_rng);

  std::vector<double> llrs(ctx.capacity_bits);
  std::vector<double> sym_llr(m);
  for (int t = 0; t < cfg.n_symbols; ++t) {
    for (int d = 0; d < nd; ++d) {
      const int carrier = ctx.baseline_carriers[d];
      const cplx h = cell_response(chan, carrier);
      const cplx z = frame.at(t, carrier);
      if (std::abs(h) < cfg.zf_erasure_epsilon) {
        std::fill(sym_llr.begin(), sym_llr.end(), 0.0);
      } else {
        qam_demap_symbol(z / h, cfg.constellation, cplx{1.0, 0.0},
                         noise_var / std::norm(h), cfg.llr_saturation,
                         sym_llr);
      }
      const size_t base = (static_cast<size_t>(t) * nd + d) * m;
      std::copy(sym_llr.begin(), sym_llr.end(), llrs.begin() + base);
    }
  }

  if (cfg.code_rate == CodeRate::Uncoded) {
    std::vector<std::uint8_t> decided(ctx.capacity_bits);
    for (size_t i = 0; i < llrs.size(); ++i) decided[i] = llrs[i] < 0;
    return count_errors(cell_bits, decided);
  }
  std::vector<double> full =
      depuncture(gather_coded_llrs(ctx, std::move(llrs)), cfg.code_rate);
  std::vector<std::uint8_t> decoded = viterbi_decode(full);
  return count_errors(info, decoded);
}

}  // namespace

FrameResult run_ber_frame(const LinkContext& ctx, double noise_var,
                          RngStream& data_rng, RngStream& noise_rng,
                          RngStream* chan_rng) {
  ChannelRealization fresh;
  const ChannelRealization* chan = &ctx.fixed_chan;
  if (chan_rng) {
    fresh = realize_channel(ctx.taps, ctx.cfg, chan_rng);
    chan = &fresh;
  }
  return ctx.cfg.baseline_mode
             ? run_ber_frame_baseline(ctx, *chan, noise_var, data_rng, noise_rng)
             : run_ber_frame_spread(ctx, *chan, noise_var, data_rng, noise_rng);
}

MseFrameResult run_mse_frame(const LinkContext& ctx, double noise_var,
                             RngStream& data_rng, RngStream& noise_rng,
                             RngStream* chan_rng) {
  const LinkConfig& cfg = ctx.cfg;
  const int L = ctx.L;
  const int m = bits_per_symbol(cfg.constellation);
  const int subsets = ctx.mapping.subset_count();

  ChannelRealization fresh;
  const ChannelRealization* chan = &ctx.fixed_chan;
  if (chan_rng) {
    fresh = realize_channel(ctx.taps, cfg, chan_rng);
    chan = &fresh;
  }

  // random payload on the data sequences, pilot on its own
  std::vector<std::uint8_t> bits =
      random_bits(data_rng, static_cast<std::uint64_t>(ctx.n_data_cells) * m);
  std::vector<cplx> symbols = qam_map(bits, cfg.constellation);

  ComplexFrame frame(cfg.n_symbols, cfg.n_carriers);
  SubsetPayload payload;
  payload.boost = cfg.boost;
  std::vector<cplx> chips(static_cast<size_t>(subsets) * L);
  for (int s = 0; s < subsets; ++s) {
    payload.data.assign(symbols.begin() + static_cast<size_t>(s) * (L - 1),
                        symbols.begin() + static_cast<size_t>(s + 1) * (L - 1));
    std::vector<cplx> sc = spread(payload, ctx.matrix);
    std::copy(sc.begin(), sc.end(), chips.begin() + static_cast<size_t>(s) * L);
  }
  map_chips(chips, ctx.mapping, frame);

  propagate(ctx, frame, *chan, noise_var, &noise_rng);

  std::vector<cplx> rx_chips(chips.size());
  demap_chips(frame, ctx.mapping, rx_chips);

  MseFrameResult r;
  std::vector<cplx> sub_h(L);
  for (int s = 0; s < subsets; ++s) {
    std::span<const cplx> sub(rx_chips.data() + static_cast<size_t>(s) * L, L);
    cplx h_hat = estimate_subset(sub, ctx.matrix, payload.pilot, cfg.boost);
    for (int j = 0; j < L; ++j) {
      auto [t, f] = chip_cell(ctx.mapping, s, j);
      sub_h[j] = chan->h[f];
    }
    auto [mean, biased_var] = channel_variance(sub_h);
    cplx err = h_hat - mean;
    const double e2 = std::norm(err);
    r.trials += 1;
    r.sum_sq_error += e2;
    r.sum_quad_error += e2 * e2;
    r.sum_error += err;
    const double unb = channel_variance_unbiased(sub_h);
    r.sum_pred += theoretical_mse(cfg.boost, L, unb, noise_var);
    r.sum_floor += estimator_si_variance(cfg.boost, L, unb);
  }
  return r;
}

}  // namespace splp

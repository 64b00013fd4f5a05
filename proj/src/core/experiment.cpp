// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

#include "core/bitrate.hpp"
#include "core/chain.hpp"
#include "core/estimator.hpp"

namespace splp {

const char* version_string() { return "0.1.0"; }

namespace {

enum ExperimentId : unsigned { kMse = 1, kBer = 2, kSweep = 3 };

// Results must not depend on the worker count: blocks are numbered, each
// block draws from streams derived only from (seed, point, block), blocks
// are executed speculatively in waves, and reduction always walks blocks in
// index order. Early stopping keeps the shortest prefix of blocks that
// satisfies the stop rule, which is a property of the block contents alone.
template <typename F>
void run_wave(std::uint64_t first, std::uint64_t count, int workers, F&& fn) {
  if (count == 0) return;
  if (workers <= 1 || count == 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(first + i, i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> threads;
  threads.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    threads.emplace_back([&, i] {
      try {
        fn(first + i, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// execution-only keys are stripped so output bytes cannot depend on them
std::string config_meta_line(const LinkConfig& cfg) {
  std::string full = serialize_config(cfg);
  std::string out;
  std::string line;
  for (char c : full) {
    if (c == '\n') {
      if (line.rfind("workers ", 0) != 0) {
        if (!out.empty()) out += "; ";
        out += line;
      }
      line.clear();
    } else {
      line += c;
    }
  }
  return out;
}

char hex_digit(unsigned v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

std::string hex64(std::uint64_t v) {
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = hex_digit(v & 0xF);
  return s;
}

void add_common_meta(Report& rep, const char* experiment,
                     const LinkConfig& cfg, const LinkContext& ctx) {
  rep.add_meta("experiment", experiment);
  rep.add_meta("version", version_string());
  rep.add_meta("config", config_meta_line(cfg));
  rep.add_meta("master_seed", std::to_string(cfg.master_seed));
  rep.add_meta("channel", ctx.taps.source);
  rep.add_meta("channel_hash", hex64(ctx.taps.content_hash));
  for (const auto& w : ctx.warnings) rep.add_meta("warning", w);
}

struct BerPoint {
  std::uint64_t info_bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t blocks = 0;
};

BerPoint run_ber_point(const LinkContext& ctx, double noise_var,
                       unsigned experiment, unsigned point) {
  const LinkConfig& cfg = ctx.cfg;
  const std::uint64_t bits_per_block = ctx.budget.info_bits;
  const std::uint64_t max_blocks = std::max<std::uint64_t>(
      1, (cfg.ber_max_info_bits + bits_per_block - 1) / bits_per_block);
  const int workers = std::max(1, cfg.workers);

  BerPoint acc;
  std::uint64_t done = 0;
  bool stopped = false;
  while (!stopped && done < max_blocks) {
    const std::uint64_t wave =
        std::min<std::uint64_t>(workers, max_blocks - done);
    std::vector<FrameResult> res(wave);
    run_wave(done, wave, workers, [&](std::uint64_t block, std::uint64_t slot) {
      RngStream data(cfg.master_seed,
                     stream_id(experiment, point, block, RngRole::Data));
      RngStream noise(cfg.master_seed,
                      stream_id(experiment, point, block, RngRole::Noise));
      if (cfg.rerandomize_channel) {
        RngStream chan(cfg.master_seed,
                       stream_id(experiment, point, block, RngRole::Channel));
        res[slot] = run_ber_frame(ctx, noise_var, data, noise, &chan);
      } else {
        res[slot] = run_ber_frame(ctx, noise_var, data, noise, nullptr);
      }
    });
    for (std::uint64_t i = 0; i < wave; ++i) {
      acc.info_bits += res[i].info_bits;
      acc.bit_errors += res[i].bit_errors;
      acc.blocks += 1;
      if (acc.bit_errors >= cfg.ber_target_errors ||
          acc.info_bits >= cfg.ber_max_info_bits) {
        stopped = true;
        break;
      }
    }
    done += wave;
  }
  return acc;
}

void append_ber_row(Report& rep, const LinkConfig& cfg, double x_value,
                    double noise_var, const BerPoint& p) {
  const double n = static_cast<double>(p.info_bits);
  const double ber = n > 0 ? static_cast<double>(p.bit_errors) / n : 0.0;
  const double ci =
      n > 0 ? 1.96 * std::sqrt(std::max(ber * (1.0 - ber), 0.0) / n) : 0.0;
  const double reliable = p.bit_errors >= cfg.ber_min_errors_reliable ? 1.0 : 0.0;
  rep.rows.push_back({x_value, noise_var, static_cast<double>(p.info_bits),
                      static_cast<double>(p.bit_errors), ber, ci, reliable});
}

}  // namespace

Report run_mse_experiment(const LinkConfig& base) {
  ValidationResult v = validate_config(base);
  if (!v.ok) throw ConfigError(v.error);
  const int L = base.spreading_total();

  Report rep;
  rep.columns = {"lf",     "lt",       "snr_db",   "noise_var",
                 "trials", "mse_emp",  "mse_pred", "floor_pred",
                 "bias_re", "bias_im", "ci_hw"};

  unsigned point = 0;
  bool meta_done = false;
  for (int lf : base.lf_sweep) {
    if (lf <= 0 || L % lf != 0)
      throw ConfigError("lf_sweep entry does not divide the spreading factor");
    LinkConfig cfg = base;
    cfg.lf = lf;
    cfg.lt = L / lf;
    ValidationResult vv = validate_config(cfg);
    if (!vv.ok) throw ConfigError("lf_sweep entry " + std::to_string(lf) +
                                  ": " + vv.error);
    LinkContext ctx = make_link_context(cfg);
    if (!meta_done) {
      add_common_meta(rep, "mse", base, ctx);
      rep.add_meta("snr_convention", snr_convention(base));
      meta_done = true;
    }
    const std::uint64_t per_frame = ctx.mapping.subset_count();
    const std::uint64_t blocks =
        std::max<std::uint64_t>(1, (cfg.mse_trials + per_frame - 1) / per_frame);
    const int workers = std::max(1, cfg.workers);

    for (double snr_db : cfg.snr_grid_db) {
      const double noise_var = noise_var_for_snr(cfg, db_to_lin(snr_db));
      std::vector<MseFrameResult> res(blocks);
      std::uint64_t done = 0;
      while (done < blocks) {
        const std::uint64_t wave = std::min<std::uint64_t>(workers, blocks - done);
        run_wave(done, wave, workers,
                 [&](std::uint64_t block, std::uint64_t slot) {
                   RngStream data(cfg.master_seed,
                                  stream_id(kMse, point, block, RngRole::Data));
                   RngStream noise(cfg.master_seed,
                                   stream_id(kMse, point, block, RngRole::Noise));
                   if (cfg.rerandomize_channel) {
                     RngStream chan(
                         cfg.master_seed,
                         stream_id(kMse, point, block, RngRole::Channel));
                     res[done + slot] =
                         run_mse_frame(ctx, noise_var, data, noise, &chan);
                   } else {
                     res[done + slot] =
                         run_mse_frame(ctx, noise_var, data, noise, nullptr);
                   }
                 });
        done += wave;
      }
      // index-ordered reduction keeps the sums byte-stable across workers
      MseFrameResult acc;
      for (const auto& r : res) {
        acc.trials += r.trials;
        acc.sum_sq_error += r.sum_sq_error;
        acc.sum_quad_error += r.sum_quad_error;
        acc.sum_error += r.sum_error;
        acc.sum_pred += r.sum_pred;
        acc.sum_floor += r.sum_floor;
      }
      const double n = static_cast<double>(acc.trials);
      const double mse = acc.sum_sq_error / n;
      const double var_e2 =
          std::max(acc.sum_quad_error / n - mse * mse, 0.0);
      rep.rows.push_back({static_cast<double>(lf), static_cast<double>(cfg.lt),
                          snr_db, noise_var, n, mse, acc.sum_pred / n,
                          acc.sum_floor / n, acc.sum_error.real() / n,
                          acc.sum_error.imag() / n,
                          1.96 * std::sqrt(var_e2 / n)});
      ++point;
    }
  }
  return rep;
}

Report run_weighted_variance_experiment(const LinkConfig& base) {
  ValidationResult v = validate_config(base);
  if (!v.ok) throw ConfigError(v.error);
  const int L = base.spreading_total();

  Report rep;
  rep.columns = {"lf", "lt", "subsets", "sigma_h_sq", "weighted_variance"};
  bool meta_done = false;
  for (int lf : base.lf_sweep) {
    if (lf <= 0 || L % lf != 0)
      throw ConfigError("lf_sweep entry does not divide the spreading factor");
    LinkConfig cfg = base;
    cfg.lf = lf;
    cfg.lt = L / lf;
    ValidationResult vv = validate_config(cfg);
    if (!vv.ok) throw ConfigError("lf_sweep entry " + std::to_string(lf) +
                                  ": " + vv.error);
    LinkContext ctx = make_link_context(cfg);
    if (!meta_done) {
      add_common_meta(rep, "variance", base, ctx);
      meta_done = true;
    }
    const int subsets = ctx.mapping.subset_count();
    double sum_var = 0;
    std::vector<cplx> sub_h(L);
    for (int s = 0; s < subsets; ++s) {
      for (int j = 0; j < L; ++j) {
        auto [t, f] = chip_cell(ctx.mapping, s, j);
        (void)t;
        sub_h[j] = ctx.fixed_chan.h[f];
      }
      sum_var += channel_variance_unbiased(sub_h);
    }
    const double sigma_h_sq = sum_var / subsets;
    const double weighted = (L - 1.0) / L * sigma_h_sq;
    rep.rows.push_back({static_cast<double>(lf), static_cast<double>(cfg.lt),
                        static_cast<double>(subsets), sigma_h_sq, weighted});
  }
  return rep;
}

Report run_ber_experiment(const LinkConfig& cfg) {
  LinkContext ctx = make_link_context(cfg);
  Report rep;
  add_common_meta(rep, "ber", cfg, ctx);
  rep.add_meta("ebn0_convention", ebn0_convention(cfg));
  rep.columns = {"ebn0_db",    "noise_var", "info_bits", "bit_errors",
                 "ber",        "ci_hw",     "reliable"};
  unsigned point = 0;
  for (double ebn0_db : cfg.ebn0_grid_db) {
    const double noise_var = noise_var_for_ebn0(cfg, db_to_lin(ebn0_db));
    BerPoint p = run_ber_point(ctx, noise_var, kBer, point);
    append_ber_row(rep, cfg, ebn0_db, noise_var, p);
    ++point;
  }
  return rep;
}

Report run_boost_sweep(const LinkConfig& base) {
  ValidationResult v = validate_config(base);
  if (!v.ok) throw ConfigError(v.error);
  const double ebn0_db = base.ebn0_grid_db.front();

  Report rep;
  rep.columns = {"boost",      "noise_var", "info_bits", "bit_errors",
                 "ber",        "ci_hw",     "reliable",  "is_best"};
  std::vector<BerPoint> points;
  bool meta_done = false;
  unsigned point = 0;
  for (double boost : base.boost_grid) {
    LinkConfig cfg = base;
    cfg.boost = boost;
    LinkContext ctx = make_link_context(cfg);
    if (!meta_done) {
      add_common_meta(rep, "boost-sweep", base, ctx);
      rep.add_meta("ebn0_db", format_double(ebn0_db));
      rep.add_meta("ebn0_convention", ebn0_convention(base));
      meta_done = true;
    }
    const double noise_var = noise_var_for_ebn0(cfg, db_to_lin(ebn0_db));
    BerPoint p = run_ber_point(ctx, noise_var, kSweep, point);
    append_ber_row(rep, cfg, boost, noise_var, p);
    rep.rows.back().push_back(0.0);  // is_best, filled in below
    points.push_back(p);
    ++point;
  }
  // mark the minimizer (ties go to the smaller boost)
  int best = 0;
  const int ber_col = rep.column_index("ber");
  for (size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i][ber_col] < rep.rows[best][ber_col])
      best = static_cast<int>(i);
  for (size_t i = 0; i < rep.rows.size(); ++i)
    rep.rows[i].back() = i == static_cast<size_t>(best) ? 1.0 : 0.0;
  rep.add_meta("best_boost", format_double(base.boost_grid[best]));
  return rep;
}

Report run_bitrate_table(const LinkConfig& base) {
  ValidationResult v = validate_config(base);
  if (!v.ok) throw ConfigError(v.error);

  Report rep;
  rep.add_meta("experiment", "bitrate");
  rep.add_meta("version", version_string());
  rep.add_meta("config", config_meta_line(base));
  rep.columns = {"baseline", "qam_bits", "rate_num", "rate_den",
                 "lt",       "lf",       "bitrate_mbps"};

  struct Preset {
    bool baseline;
    Constellation c;
    CodeRate r;
    int lt, lf;
  };
  const Preset presets[] = {
      {true, Constellation::Qam16, CodeRate::ThreeQuarters, 0, 0},
      {false, Constellation::Qam16, CodeRate::ThreeQuarters, 8, 2},
      {false, Constellation::Qam16, CodeRate::ThreeQuarters, 16, 2},
      {false, Constellation::Qam16, CodeRate::ThreeQuarters, 32, 2},
      {true, Constellation::Qam64, CodeRate::FiveSixths, 0, 0},
      {false, Constellation::Qam64, CodeRate::FiveSixths, 8, 2},
      {false, Constellation::Qam64, CodeRate::FiveSixths, 16, 2},
      {false, Constellation::Qam64, CodeRate::FiveSixths, 32, 2},
  };
  for (const Preset& p : presets) {
    LinkConfig cfg = base;
    cfg.baseline_mode = p.baseline;
    cfg.constellation = p.c;
    cfg.code_rate = p.r;
    if (!p.baseline) {
      cfg.lt = p.lt;
      cfg.lf = p.lf;
    }
    RateFraction rf = rate_fraction(p.r);
    rep.rows.push_back({p.baseline ? 1.0 : 0.0,
                        static_cast<double>(bits_per_symbol(p.c)),
                        static_cast<double>(rf.info),
                        static_cast<double>(rf.coded),
                        static_cast<double>(p.baseline ? 0 : p.lt),
                        static_cast<double>(p.baseline ? 0 : p.lf),
                        useful_bitrate_mbps(cfg)});
  }
  return rep;
}

Report run_experiment(const LinkConfig& cfg, const std::string& name) {
  if (name == "mse") return run_mse_experiment(cfg);
  if (name == "variance") return run_weighted_variance_experiment(cfg);
  if (name == "ber") return run_ber_experiment(cfg);
  if (name == "boost-sweep") return run_boost_sweep(cfg);
  if (name == "bitrate") return run_bitrate_table(cfg);
  throw ConfigError("unknown experiment: " + name);
}

}  // namespace splp

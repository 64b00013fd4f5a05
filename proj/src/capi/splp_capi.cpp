// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "splp/splp.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "core/bitrate.hpp"
#include "core/config.hpp"
#include "core/experiment.hpp"
#include "core/report.hpp"

struct splp_config_s {
  splp::LinkConfig cfg;
};

struct splp_report_s {
  splp::Report rep;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

int copy_out(const std::string& s, char* buf, size_t bufsize) {
  if (!buf || bufsize == 0)
    return fail(SPLP_ERR_CONFIG, "output buffer is null or empty");
  if (s.size() + 1 > bufsize)
    return fail(SPLP_ERR_CONFIG, "output buffer too small (need " +
                                     std::to_string(s.size() + 1) + " bytes)");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return SPLP_OK;
}

int write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return fail(SPLP_ERR_IO, "cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) return fail(SPLP_ERR_IO, "write failed: " + path);
  return SPLP_OK;
}

// Every entry point funnels through here so C++ exceptions never cross the
// C boundary.
template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const splp::ConfigError& e) {
    return fail(SPLP_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SPLP_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(SPLP_ERROR, e.what());
  } catch (...) {
    return fail(SPLP_ERROR, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* splp_version(void) { return splp::version_string(); }

const char* splp_last_error(void) { return g_last_error.c_str(); }

splp_config* splp_config_create(void) {
  try {
    return new splp_config_s{splp::default_config()};
  } catch (...) {
    return nullptr;
  }
}

void splp_config_destroy(splp_config* cfg) { delete cfg; }

int splp_config_load_file(splp_config* cfg, const char* path) {
  if (!cfg || !path) return fail(SPLP_ERR_CONFIG, "null argument");
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(SPLP_ERR_IO, std::string("cannot open: ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg->cfg = splp::parse_config(buf.str());
    return SPLP_OK;
  });
}

int splp_config_set(splp_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(SPLP_ERR_CONFIG, "null argument");
  return guarded([&] {
    splp::set_config_value(cfg->cfg, key, value);
    return SPLP_OK;
  });
}

int splp_config_get(const splp_config* cfg, const char* key, char* buf,
                    size_t bufsize) {
  if (!cfg || !key) return fail(SPLP_ERR_CONFIG, "null argument");
  return guarded([&] {
    return copy_out(splp::get_config_value(cfg->cfg, key), buf, bufsize);
  });
}

int splp_config_validate(const splp_config* cfg) {
  if (!cfg) return fail(SPLP_ERR_CONFIG, "null argument");
  return guarded([&] {
    splp::ValidationResult v = splp::validate_config(cfg->cfg);
    if (!v.ok) return fail(SPLP_ERR_CONFIG, v.error);
    return SPLP_OK;
  });
}

int splp_config_write_file(const splp_config* cfg, const char* path) {
  if (!cfg || !path) return fail(SPLP_ERR_CONFIG, "null argument");
  return guarded([&] {
    return write_text_file(path, splp::serialize_config(cfg->cfg));
  });
}

int splp_useful_bitrate(const splp_config* cfg, double* mbps) {
  if (!cfg || !mbps) return fail(SPLP_ERR_CONFIG, "null argument");
  return guarded([&] {
    splp::ValidationResult v = splp::validate_config(cfg->cfg);
    if (!v.ok) return fail(SPLP_ERR_CONFIG, v.error);
    *mbps = splp::useful_bitrate_mbps(cfg->cfg);
    return SPLP_OK;
  });
}

int splp_run(const splp_config* cfg, const char* experiment,
             splp_report** out) {
  if (!cfg || !experiment || !out)
    return fail(SPLP_ERR_CONFIG, "null argument");
  *out = nullptr;
  return guarded([&] {
    splp::Report rep = splp::run_experiment(cfg->cfg, experiment);
    *out = new splp_report_s{std::move(rep)};
    return SPLP_OK;
  });
}

int splp_report_num_rows(const splp_report* rep) {
  return rep ? static_cast<int>(rep->rep.rows.size()) : -1;
}

int splp_report_num_columns(const splp_report* rep) {
  return rep ? static_cast<int>(rep->rep.columns.size()) : -1;
}

int splp_report_column_name(const splp_report* rep, int column, char* buf,
                            size_t bufsize) {
  if (!rep) return fail(SPLP_ERR_CONFIG, "null report");
  if (column < 0 || column >= static_cast<int>(rep->rep.columns.size()))
    return fail(SPLP_ERR_CONFIG, "column out of range");
  return copy_out(rep->rep.columns[column], buf, bufsize);
}

int splp_report_value(const splp_report* rep, int row, int column,
                      double* out) {
  if (!rep || !out) return fail(SPLP_ERR_CONFIG, "null argument");
  if (row < 0 || row >= static_cast<int>(rep->rep.rows.size()))
    return fail(SPLP_ERR_CONFIG, "row out of range");
  if (column < 0 || column >= static_cast<int>(rep->rep.columns.size()))
    return fail(SPLP_ERR_CONFIG, "column out of range");
  *out = rep->rep.rows[row][column];
  return SPLP_OK;
}

int splp_report_meta(const splp_report* rep, const char* key, char* buf,
                     size_t bufsize) {
  if (!rep || !key) return fail(SPLP_ERR_CONFIG, "null argument");
  const std::string* v = rep->rep.find_meta(key);
  if (!v) return fail(SPLP_ERR_CONFIG, std::string("no metadata key: ") + key);
  return copy_out(*v, buf, bufsize);
}

int splp_report_has_unreliable(const splp_report* rep) {
  if (!rep) return -1;
  return splp::report_has_unreliable(rep->rep) ? 1 : 0;
}

int splp_report_write_csv(const splp_report* rep, const char* path) {
  if (!rep || !path) return fail(SPLP_ERR_CONFIG, "null argument");
  return guarded([&] {
    return write_text_file(path, splp::report_to_csv(rep->rep));
  });
}

int splp_report_write_svg(const splp_report* rep, const char* path,
                          const char* x_column, const char* y_column,
                          const char* curve_column, int log_y) {
  if (!rep || !path || !x_column || !y_column)
    return fail(SPLP_ERR_CONFIG, "null argument");
  return guarded([&] {
    splp::SvgOptions opt;
    opt.x_column = x_column;
    opt.y_column = y_column;
    opt.curve_column = curve_column ? curve_column : "";
    opt.log_y = log_y != 0;
    return write_text_file(path, splp::report_to_svg(rep->rep, opt));
  });
}

void splp_report_destroy(splp_report* rep) { delete rep; }

}  // extern "C"

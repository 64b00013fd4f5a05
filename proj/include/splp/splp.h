/* Copyright 2026 splp developers
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the spread-pilot linearly precoded OFDM link simulator.
 *
 * Usage pattern:
 *   splp_config *cfg = splp_config_create();
 *   splp_config_set(cfg, "lt", "32");
 *   splp_report *rep = NULL;
 *   int rc = splp_run(cfg, "ber", &rep);
 *   ... splp_report_value(rep, row, col, &v) ...
 *   splp_report_destroy(rep);
 *   splp_config_destroy(cfg);
 *
 * All functions returning int use the SPLP_* status codes. On failure,
 * splp_last_error() returns a message describing the most recent error in
 * the calling thread.
 */
#ifndef SPLP_SPLP_H
#define SPLP_SPLP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SPLP_OK 0
#define SPLP_ERROR 1          /* internal failure */
#define SPLP_ERR_CONFIG 2     /* invalid configuration or arguments */
#define SPLP_ERR_IO 4         /* file could not be read or written */

typedef struct splp_config_s splp_config;
typedef struct splp_report_s splp_report;

const char *splp_version(void);

/* Message for the most recent failure in this thread ("" if none). The
 * returned pointer stays valid until the next failing call in the thread. */
const char *splp_last_error(void);

/* ---- configuration ---------------------------------------------------- */

/* New configuration with default values; NULL only on allocation failure. */
splp_config *splp_config_create(void);
void splp_config_destroy(splp_config *cfg);

/* Load "key = value" lines from a file, replacing the current contents. */
int splp_config_load_file(splp_config *cfg, const char *path);

/* Set / get a single key. Keys and value grammar match the file format. */
int splp_config_set(splp_config *cfg, const char *key, const char *value);
int splp_config_get(const splp_config *cfg, const char *key, char *buf,
                    size_t bufsize);

/* Check cross-field constraints. Returns SPLP_OK or SPLP_ERR_CONFIG with
 * the violated constraint in splp_last_error(). */
int splp_config_validate(const splp_config *cfg);

/* Canonical serialization (fixed key order, round-trip exact numbers). */
int splp_config_write_file(const splp_config *cfg, const char *path);

/* Net useful bitrate (Mbit/s) of the configured link. */
int splp_useful_bitrate(const splp_config *cfg, double *mbps);

/* ---- experiments ------------------------------------------------------ */

/* Run one experiment: "mse", "variance", "ber", "boost-sweep", "bitrate".
 * On SPLP_OK, *out owns a new report (destroy it when done). */
int splp_run(const splp_config *cfg, const char *experiment,
             splp_report **out);

/* ---- report access ----------------------------------------------------- */

int splp_report_num_rows(const splp_report *rep);
int splp_report_num_columns(const splp_report *rep);
int splp_report_column_name(const splp_report *rep, int column, char *buf,
                            size_t bufsize);
int splp_report_value(const splp_report *rep, int row, int column,
                      double *out);

/* Metadata lookup by key (e.g. "best_boost", "channel_hash"). Returns
 * SPLP_ERR_CONFIG if the key is absent. */
int splp_report_meta(const splp_report *rep, const char *key, char *buf,
                     size_t bufsize);

/* 1 when any Monte Carlo point ended at its trial cap with too few errors
 * to trust, else 0. */
int splp_report_has_unreliable(const splp_report *rep);

int splp_report_write_csv(const splp_report *rep, const char *path);

/* Line plot of y_column vs x_column, one polyline per distinct value of
 * curve_column (pass NULL or "" for a single curve). log_y != 0 plots the
 * y axis in decades. */
int splp_report_write_svg(const splp_report *rep, const char *path,
                          const char *x_column, const char *y_column,
                          const char *curve_column, int log_y);

void splp_report_destroy(splp_report *rep);

#ifdef __cplusplus
}
#endif

#endif /* SPLP_SPLP_H */

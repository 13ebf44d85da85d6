// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <string>

#include "nafcode/audit.hpp"
#include "nafcode/dmt.hpp"
#include "nafcode/harness.hpp"
#include "nafcode/nafcode.h"

struct nafcode_curve {
  nafcode::dmt::DmtCurve curve;
};

struct nafcode_config {
  nafcode::harness::ConfigBuilder builder;
};

struct nafcode_table {
  nafcode::harness::FerTable table;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
nafcode_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return NAFCODE_OK;
  } catch (const nafcode::ConfigError& e) {
    g_last_error = e.what();
    return NAFCODE_ERR_CONFIG;
  } catch (const nafcode::BudgetError& e) {
    g_last_error = e.what();
    return NAFCODE_ERR_BUDGET;
  } catch (const nafcode::InvalidArgument& e) {
    g_last_error = e.what();
    return NAFCODE_ERR_INVALID_ARGUMENT;
  } catch (const nafcode::IoError& e) {
    g_last_error = e.what();
    return NAFCODE_ERR_IO;
  } catch (const nafcode::InsufficientData& e) {
    g_last_error = e.what();
    return NAFCODE_ERR_INSUFFICIENT_DATA;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NAFCODE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NAFCODE_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw nafcode::InvalidArgument(std::string(what) + " must not be NULL");
}

nafcode::harness::SimConfig finalize(nafcode_config* cfg) {
  require(cfg, "config");
  return cfg->builder.build();
}

}  // namespace

extern "C" {

const char* nafcode_last_error(void) { return g_last_error.c_str(); }

const char* nafcode_version(void) { return "0.1.0"; }

nafcode_status nafcode_dmt_rayleigh(int m, int n, nafcode_curve** out) {
  return guard([&] {
    require(out, "out");
    *out = new nafcode_curve{nafcode::dmt::rayleigh_dmt(m, n)};
  });
}

nafcode_status nafcode_dmt_product(int m, int n, int l, nafcode_curve** out) {
  return guard([&] {
    require(out, "out");
    *out = new nafcode_curve{nafcode::dmt::product_dmt({m, n, l})};
  });
}

nafcode_status nafcode_dmt_product_oracle(int m, int n, int l, double r, double* d) {
  return guard([&] {
    require(d, "d");
    *d = nafcode::dmt::product_dmt_oracle({m, n, l}, r);
  });
}

nafcode_status nafcode_dmt_naf_bound(int ns, int nr, int nd, int relays, const int* relay_dims,
                                     nafcode_curve** out) {
  return guard([&] {
    require(out, "out");
    if (relay_dims == nullptr) {
      *out = new nafcode_curve{nafcode::dmt::naf_bound(ns, nr, nd, relays)};
      return;
    }
    if (relays < 1) throw nafcode::InvalidArgument("relays must be positive");
    std::vector<nafcode::dmt::ProductChannelDims> dims;
    for (int i = 0; i < relays; ++i) {
      dims.emplace_back(relay_dims[3 * i], relay_dims[3 * i + 1], relay_dims[3 * i + 2]);
    }
    *out = new nafcode_curve{nafcode::dmt::naf_bound(
        ns, nr, nd, relays, std::span<const nafcode::dmt::ProductChannelDims>(dims))};
  });
}

nafcode_status nafcode_dmt_max_diversity(int ns, int nr, int nd, int relays, double* lower,
                                         double* upper, int* equality) {
  return guard([&] {
    require(lower, "lower");
    require(upper, "upper");
    require(equality, "equality");
    const auto b = nafcode::dmt::max_diversity_bounds(ns, nr, nd, relays);
    *lower = b.lower;
    *upper = b.upper;
    *equality = b.equality ? 1 : 0;
  });
}

size_t nafcode_curve_size(const nafcode_curve* c) { return c ? c->curve.vertices.size() : 0; }

nafcode_status nafcode_curve_vertex(const nafcode_curve* c, size_t i, double* r, double* d) {
  return guard([&] {
    require(c, "curve");
    require(r, "r");
    require(d, "d");
    if (i >= c->curve.vertices.size()) throw nafcode::InvalidArgument("vertex index out of range");
    *r = c->curve.vertices[i].r;
    *d = c->curve.vertices[i].d;
  });
}

nafcode_status nafcode_curve_eval(const nafcode_curve* c, double r, double* d) {
  return guard([&] {
    require(c, "curve");
    require(d, "d");
    *d = c->curve.eval(r);
  });
}

nafcode_status nafcode_curve_write_csv(const nafcode_curve* c, const char* path) {
  return guard([&] {
    require(c, "curve");
    require(path, "path");
    std::ofstream out(path);
    if (!out) throw nafcode::IoError(std::string("cannot write '") + path + "'");
    nafcode::dmt::write_curve_csv(out, c->curve);
  });
}

void nafcode_curve_free(nafcode_curve* c) { delete c; }

nafcode_status nafcode_config_new(nafcode_config** out) {
  return guard([&] {
    require(out, "out");
    *out = new nafcode_config{};
  });
}

nafcode_status nafcode_config_load(nafcode_config* cfg, const char* path) {
  return guard([&] {
    require(cfg, "config");
    require(path, "path");
    cfg->builder.parse_file(path);
  });
}

nafcode_status nafcode_config_parse(nafcode_config* cfg, const char* text) {
  return guard([&] {
    require(cfg, "config");
    require(text, "text");
    cfg->builder.parse(text);
  });
}

nafcode_status nafcode_config_set(nafcode_config* cfg, const char* key, const char* value) {
  return guard([&] {
    require(cfg, "config");
    require(key, "key");
    require(value, "value");
    cfg->builder.set(key, value);
  });
}

nafcode_status nafcode_config_finalize(nafcode_config* cfg) {
  return guard([&] { finalize(cfg); });
}

nafcode_status nafcode_config_ebn0_offset(nafcode_config* cfg, double* offset_db) {
  return guard([&] {
    require(offset_db, "offset_db");
    *offset_db = nafcode::harness::ebn0_offset_db(finalize(cfg));
  });
}

void nafcode_config_free(nafcode_config* cfg) { delete cfg; }

nafcode_status nafcode_run_fer(nafcode_config* cfg, nafcode_table** out) {
  return guard([&] {
    require(out, "out");
    *out = new nafcode_table{nafcode::harness::run_fer(finalize(cfg))};
  });
}

nafcode_status nafcode_run_outage(nafcode_config* cfg, double rate, nafcode_table** out) {
  return guard([&] {
    require(out, "out");
    const auto sim = finalize(cfg);
    *out = new nafcode_table{nafcode::harness::run_outage(sim, rate < 0 ? sim.rate_bits_pcu : rate)};
  });
}

size_t nafcode_table_rows(const nafcode_table* t) { return t ? t->table.size() : 0; }

nafcode_status nafcode_table_row(const nafcode_table* t, size_t i, nafcode_fer_row* row) {
  return guard([&] {
    require(t, "table");
    require(row, "row");
    if (i >= t->table.size()) throw nafcode::InvalidArgument("row index out of range");
    const auto& r = t->table[i];
    *row = {r.snr_db, r.trials, r.frame_errors, r.fer, r.ci_low, r.ci_high};
  });
}

nafcode_status nafcode_table_write_csv(const nafcode_table* t, const char* path, double snr_offset_db) {
  return guard([&] {
    require(t, "table");
    require(path, "path");
    nafcode::harness::emit_csv(std::string(path), t->table, snr_offset_db);
  });
}

nafcode_status nafcode_table_read_csv(const char* path, nafcode_table** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new nafcode_table{nafcode::harness::read_csv_file(path)};
  });
}

nafcode_status nafcode_table_slope(const nafcode_table* t, double fer_hi, double fer_lo, double* slope) {
  return guard([&] {
    require(t, "table");
    require(slope, "slope");
    *slope = nafcode::harness::slope_estimate(t->table, fer_hi, fer_lo);
  });
}

void nafcode_table_free(nafcode_table* t) { delete t; }

int nafcode_code_count(void) { return static_cast<int>(nafcode::algebra::all_codes().size()); }

const char* nafcode_code_name(int index) {
  const auto codes = nafcode::algebra::all_codes();
  if (index < 0 || static_cast<std::size_t>(index) >= codes.size()) return nullptr;
  return nafcode::algebra::to_string(codes[static_cast<std::size_t>(index)]).data();
}

nafcode_status nafcode_code_info_get(const char* name, nafcode_code_info* info) {
  return guard([&] {
    require(name, "name");
    require(info, "info");
    const auto spec = nafcode::codes::code_spec(nafcode::algebra::parse_code_id(name));
    *info = {spec.N, spec.ns, spec.symbols_per_codeword, spec.length(), spec.generator.scale,
             spec.det_multiplier()};
  });
}

nafcode_status nafcode_code_export_generator(const char* name, const char* path) {
  return guard([&] {
    require(name, "name");
    require(path, "path");
    const auto spec = nafcode::codes::code_spec(nafcode::algebra::parse_code_id(name));
    std::ofstream out(path);
    if (!out) throw nafcode::IoError(std::string("cannot write '") + path + "'");
    nafcode::codes::write_generator_csv(out, spec);
  });
}

nafcode_status nafcode_audit(const char* code, const char* constellation_kind, int m, uint64_t samples,
                             uint64_t seed, uint64_t budget, nafcode_audit_report* out) {
  return guard([&] {
    require(code, "code");
    require(constellation_kind, "constellation_kind");
    require(out, "out");
    const auto spec = nafcode::codes::code_spec(nafcode::algebra::parse_code_id(code));
    const auto cons =
        nafcode::codes::make_constellation(nafcode::codes::parse_constellation_kind(constellation_kind), m);
    const auto alphabet = cons.difference_alphabet();
    const auto mode = samples == 0 ? nafcode::algebra::AuditMode::exhaustive()
                                   : nafcode::algebra::AuditMode::sampled(samples, seed);
    const auto rep = nafcode::algebra::nvd_audit(spec, alphabet, mode, budget);
    *out = {rep.min_det2, rep.min_rank, rep.full_rank, rep.evaluated, rep.rank_deficient,
            rep.max_rounding_residual};
  });
}

}  // extern "C"

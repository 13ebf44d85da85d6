// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the nafcode C API.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nafcode/nafcode.h"

namespace {

constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

int exit_code(nafcode_status s) {
  switch (s) {
    case NAFCODE_OK: return 0;
    case NAFCODE_ERR_CONFIG:
    case NAFCODE_ERR_INVALID_ARGUMENT: return kExitConfig;
    case NAFCODE_ERR_BUDGET: return kExitBudget;
    default: return kExitOther;
  }
}

struct Failure {
  nafcode_status status;
};

void check(nafcode_status s) {
  if (s != NAFCODE_OK) {
    std::fprintf(stderr, "error: %s\n", nafcode_last_error());
    throw Failure{s};
  }
}

void print_curve(const nafcode_curve* c, const std::string& out) {
  if (!out.empty()) {
    check(nafcode_curve_write_csv(c, out.c_str()));
    return;
  }
  std::printf("r,d\n");
  for (size_t i = 0; i < nafcode_curve_size(c); ++i) {
    double r = 0;
    double d = 0;
    check(nafcode_curve_vertex(c, i, &r, &d));
    std::printf("%.17g,%.17g\n", r, d);
  }
}

void print_table(const nafcode_table* t) {
  std::printf("snr_db,trials,frame_errors,fer,ci_low,ci_high\n");
  for (size_t i = 0; i < nafcode_table_rows(t); ++i) {
    nafcode_fer_row row{};
    check(nafcode_table_row(t, i, &row));
    std::printf("%.17g,%llu,%llu,%.17g,%.17g,%.17g\n", row.snr_db,
                static_cast<unsigned long long>(row.trials),
                static_cast<unsigned long long>(row.frame_errors), row.fer, row.ci_low, row.ci_high);
  }
}

// Options shared by `fer` and `outage`: a config file plus one flag per key.
struct SimOptions {
  std::string config;
  std::map<std::string, std::string> overrides;
  std::string out;
  std::string ebn0_out;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "Flat key=value configuration file");
    for (const char* key : {"code_id", "topology", "relays", "scheme", "snr_grid_db", "rho_db", "power",
                            "constellation", "max_trials", "target_frame_errors", "seed",
                            "shadowing_sigma_db", "threads", "common_random_numbers", "relay_gain",
                            "rate_bits_pcu"}) {
      app->add_option_function<std::string>(
          std::string("--") + key, [this, key](const std::string& v) { overrides[key] = v; },
          std::string("Overrides config key ") + key);
    }
    app->add_option("--out", out, "Raw-SNR CSV output path (stdout if omitted)");
    app->add_option("--ebn0-out", ebn0_out, "Additional CSV with SNR per bit on the first column");
  }

  nafcode_config* build() const {
    nafcode_config* cfg = nullptr;
    check(nafcode_config_new(&cfg));
    try {
      if (!config.empty()) check(nafcode_config_load(cfg, config.c_str()));
      for (const auto& [k, v] : overrides) check(nafcode_config_set(cfg, k.c_str(), v.c_str()));
      check(nafcode_config_finalize(cfg));
    } catch (...) {
      nafcode_config_free(cfg);
      throw;
    }
    return cfg;
  }

  void emit(nafcode_config* cfg, nafcode_table* t) const {
    if (out.empty()) {
      print_table(t);
    } else {
      check(nafcode_table_write_csv(t, out.c_str(), 0.0));
    }
    if (!ebn0_out.empty()) {
      double offset = 0;
      check(nafcode_config_ebn0_offset(cfg, &offset));
      check(nafcode_table_write_csv(t, ebn0_out.c_str(), offset));
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-diagonal space-time codes over non-orthogonal amplify-and-forward relays"};
  app.require_subcommand(1);

  auto* dmt = app.add_subcommand("dmt", "Emit tradeoff curves as r,d CSV");
  dmt->require_subcommand(1);
  int m = 1, n = 1, l = 1, ns = 1, nr = 1, nd = 1, relays = 1;
  double r = 0;
  std::string curve_out;
  auto* rayleigh = dmt->add_subcommand("rayleigh", "Rayleigh m x n curve");
  rayleigh->add_option("--m", m)->required();
  rayleigh->add_option("--n", n)->required();
  rayleigh->add_option("--out", curve_out);
  auto* product = dmt->add_subcommand("product", "Rayleigh product channel curve");
  auto* oracle = dmt->add_subcommand("oracle", "Product channel diversity from the linear program");
  for (auto* sub : {product, oracle}) {
    sub->add_option("--m", m)->required();
    sub->add_option("--n", n)->required();
    sub->add_option("--l", l)->required();
  }
  product->add_option("--out", curve_out);
  oracle->add_option("--r", r)->required();
  auto* naf = dmt->add_subcommand("naf", "Lower bound for the N-relay NAF channel");
  auto* bounds = dmt->add_subcommand("bounds", "Maximal diversity bounds");
  std::vector<int> relay_dims;
  for (auto* sub : {naf, bounds}) {
    sub->add_option("--ns", ns)->required();
    sub->add_option("--nr", nr)->required();
    sub->add_option("--nd", nd)->required();
    sub->add_option("--relays", relays)->default_val(1);
  }
  naf->add_option("--relay-dims", relay_dims, "m,n,l triples, one per relay")->delimiter(',');
  naf->add_option("--out", curve_out);

  SimOptions fer_opts;
  auto* fer = app.add_subcommand("fer", "Monte Carlo frame error rate");
  fer_opts.attach(fer);

  SimOptions out_opts;
  double rate = -1;
  auto* outage = app.add_subcommand("outage", "Monte Carlo outage probability");
  out_opts.attach(outage);
  outage->add_option("--rate", rate, "Target rate in bits per channel use");

  std::string code = "golden", kind = "qam";
  int order = 4;
  unsigned long long samples = 0, seed = 20260101, budget = 100000000ULL;
  auto* audit = app.add_subcommand("audit", "Non-vanishing determinant audit");
  audit->add_option("--code", code);
  audit->add_option("--kind", kind, "qam or hex");
  audit->add_option("--M", order);
  audit->add_option("--samples", samples, "0 enumerates exhaustively");
  audit->add_option("--seed", seed);
  audit->add_option("--budget", budget);

  auto* codes = app.add_subcommand("codes", "Bundled codes");
  codes->require_subcommand(1);
  auto* list = codes->add_subcommand("list", "List bundled codes");
  std::string gen_out;
  auto* exp = codes->add_subcommand("export", "Write a generator matrix CSV");
  exp->add_option("--code", code)->required();
  exp->add_option("--out", gen_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (rayleigh->parsed() || product->parsed() || naf->parsed()) {
      nafcode_curve* c = nullptr;
      if (rayleigh->parsed()) {
        check(nafcode_dmt_rayleigh(m, n, &c));
      } else if (product->parsed()) {
        check(nafcode_dmt_product(m, n, l, &c));
      } else {
        if (!relay_dims.empty() && relay_dims.size() != static_cast<size_t>(3 * relays)) {
          std::fprintf(stderr, "error: --relay-dims needs %d values\n", 3 * relays);
          return kExitConfig;
        }
        check(nafcode_dmt_naf_bound(ns, nr, nd, relays, relay_dims.empty() ? nullptr : relay_dims.data(), &c));
      }
      print_curve(c, curve_out);
      nafcode_curve_free(c);
    } else if (oracle->parsed()) {
      double d = 0;
      check(nafcode_dmt_product_oracle(m, n, l, r, &d));
      std::printf("%.12g\n", d);
    } else if (bounds->parsed()) {
      double lo = 0, hi = 0;
      int eq = 0;
      check(nafcode_dmt_max_diversity(ns, nr, nd, relays, &lo, &hi, &eq));
      std::printf("lower,upper,equality\n%.15g,%.15g,%d\n", lo, hi, eq);
    } else if (fer->parsed() || outage->parsed()) {
      const SimOptions& opts = fer->parsed() ? fer_opts : out_opts;
      nafcode_config* cfg = opts.build();
      nafcode_table* t = nullptr;
      const nafcode_status s = fer->parsed() ? nafcode_run_fer(cfg, &t) : nafcode_run_outage(cfg, rate, &t);
      if (s != NAFCODE_OK) {
        nafcode_config_free(cfg);
        check(s);
      }
      opts.emit(cfg, t);
      nafcode_table_free(t);
      nafcode_config_free(cfg);
    } else if (audit->parsed()) {
      nafcode_audit_report rep{};
      check(nafcode_audit(code.c_str(), kind.c_str(), order, samples, seed, budget, &rep));
      std::printf("code,min_det2,min_rank,full_rank,evaluated,rank_deficient,max_rounding_residual\n");
      std::printf("%s,%.15g,%d,%d,%llu,%llu,%.3g\n", code.c_str(), rep.min_det2, rep.min_rank, rep.full_rank,
                  static_cast<unsigned long long>(rep.evaluated),
                  static_cast<unsigned long long>(rep.rank_deficient), rep.max_rounding_residual);
    } else if (list->parsed()) {
      std::printf("name,blocks,ns,symbols,length,scale,det_multiplier\n");
      for (int i = 0; i < nafcode_code_count(); ++i) {
        nafcode_code_info info{};
        check(nafcode_code_info_get(nafcode_code_name(i), &info));
        std::printf("%s,%d,%d,%d,%d,%.15g,%.15g\n", nafcode_code_name(i), info.blocks, info.ns, info.symbols,
                    info.length, info.scale, info.det_multiplier);
      }
    } else if (exp->parsed()) {
      check(nafcode_code_export_generator(code.c_str(), gen_out.c_str()));
    }
  } catch (const Failure& f) {
    return exit_code(f.status);
  }
  return 0;
}

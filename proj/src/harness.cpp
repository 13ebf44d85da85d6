// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include "nafcode/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "nafcode/decoder.hpp"
#include "nafcode/rng.hpp"

namespace nafcode::harness {

namespace {

constexpr std::uint64_t kSharedStream = std::numeric_limits<std::uint64_t>::max();

// Everything a trial needs that does not change between trials.
struct Prepared {
  SimConfig cfg;
  codes::CodeSpec code;
  codes::Constellation constellation;
  channel::PowerAllocation power;
  std::vector<double> snr;

  explicit Prepared(const SimConfig& c)
      : cfg(c),
        code(codes::code_spec(c.code_id)),
        constellation(codes::make_constellation(c.constellation.kind, c.constellation.M)),
        power(c.resolved_power()) {
    cfg.validate();
    for (double db : c.snr_grid_db) snr.push_back(channel::db_to_linear(db));
  }

  Stream stream(std::size_t snr_index, std::uint64_t trial) const {
    return Stream(cfg.seed, cfg.common_random_numbers ? kSharedStream : snr_index, trial);
  }
};

bool run_fer_trial(const Prepared& p, std::size_t si, std::uint64_t trial) {
  Stream rng = p.stream(si, trial);
  auto cr = channel::sample_realization(p.cfg.topology, p.cfg.rho_db, rng);
  if (p.cfg.shadowing_sigma_db > 0) cr = channel::apply_shadowing(cr, p.cfg.shadowing_sigma_db, rng);
  const auto links = channel::cooperation_links(cr, p.cfg.topology);

  const auto k = static_cast<std::size_t>(p.code.symbols_per_codeword);
  std::vector<int> sent(k);
  std::vector<cplx> symbols(k);
  for (std::size_t i = 0; i < k; ++i) {
    sent[i] = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(p.constellation.M)));
    symbols[i] = p.constellation.points[static_cast<std::size_t>(sent[i])];
  }
  const auto noise = channel::draw_noise(links, p.code.ns, rng);

  const auto frames = codes::split_frames(codes::encode(p.code, symbols), p.code.ns);
  channel::ReceptionOptions opt;
  opt.snr = p.snr[si];
  opt.rule = p.cfg.relay_gain;
  opt.direct = p.cfg.topology.scheme == channel::Scheme::Direct;
  const auto rec = channel::simulate_reception(frames, links, noise, p.power, cr.rho, opt);

  std::vector<CMatrix> he;
  for (const auto& e : rec.equivalents) he.push_back(e.He);
  auto lattice = decoder::build_lattice(p.code, he, opt.snr, p.constellation);
  decoder::set_target(lattice, rec.whitened);
  const auto got = decoder::indices_from_coords(decoder::sphere_decode(lattice), p.constellation.side);
  return got != sent;
}

bool run_outage_trial(const Prepared& p, std::size_t si, std::uint64_t trial, double rate) {
  Stream rng = p.stream(si, trial);
  auto cr = channel::sample_realization(p.cfg.topology, p.cfg.rho_db, rng);
  if (p.cfg.shadowing_sigma_db > 0) cr = channel::apply_shadowing(cr, p.cfg.shadowing_sigma_db, rng);
  const auto links = channel::cooperation_links(cr, p.cfg.topology);
  const double snr = p.snr[si];
  const bool direct = p.cfg.topology.scheme == channel::Scheme::Direct;
  double mi = 0.0;
  for (const auto& l : links) {
    channel::EquivalentChannel ec;
    if (direct) {
      ec = channel::equivalent_channel_direct(l.F, p.power);
    } else {
      const CMatrix b = channel::relay_gain(p.cfg.relay_gain, l.H, p.power, cr.rho, snr);
      ec = channel::equivalent_channel_mimo(l.F, l.G, l.H, b, p.power, cr.rho, snr);
    }
    mi += channel::mutual_information(ec.He, snr);
  }
  return mi < 2.0 * static_cast<double>(links.size()) * rate;
}

// Runs trials in index order until target errors or max_trials. Parallel
// chunks are reduced in trial order so the result never depends on threads.
FerRow run_point(const SimConfig& cfg, double snr_db,
                 const std::function<bool(std::uint64_t)>& trial) {
  std::uint64_t errors = 0;
  std::uint64_t done = 0;
  const auto threads = static_cast<std::uint64_t>(cfg.threads);
  if (threads == 1) {
    while (done < cfg.max_trials && errors < cfg.target_frame_errors) {
      errors += trial(done) ? 1 : 0;
      ++done;
    }
    return make_row(snr_db, done, errors);
  }
  const std::uint64_t chunk = 64 * threads;
  std::vector<char> hits;
  while (done < cfg.max_trials && errors < cfg.target_frame_errors) {
    const std::uint64_t n = std::min(chunk, cfg.max_trials - done);
    hits.assign(n, 0);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::uint64_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::uint64_t i = t; i < n; i += threads) hits[i] = trial(done + i) ? 1 : 0;
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    for (std::uint64_t i = 0; i < n; ++i) {
      errors += static_cast<std::uint64_t>(hits[i]);
      ++done;
      if (errors >= cfg.target_frame_errors) break;
    }
  }
  return make_row(snr_db, done, errors);
}

}  // namespace

FerRow make_row(double snr_db, std::uint64_t trials, std::uint64_t errors) {
  if (trials == 0) throw InvalidArgument("make_row: zero trials");
  if (errors > trials) throw InvalidArgument("make_row: more errors than trials");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(errors) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (ph + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / n + z * z / (4.0 * n * n)) / denom;
  FerRow row;
  row.snr_db = snr_db;
  row.trials = trials;
  row.frame_errors = errors;
  row.fer = ph;
  row.ci_low = std::clamp(center - half, 0.0, ph);
  row.ci_high = std::clamp(center + half, ph, 1.0);
  return row;
}

bool fer_trial(const SimConfig& cfg, std::size_t snr_index, std::uint64_t trial) {
  const Prepared p(cfg);
  if (snr_index >= p.snr.size()) throw InvalidArgument("fer_trial: snr index out of range");
  return run_fer_trial(p, snr_index, trial);
}

bool outage_trial(const SimConfig& cfg, std::size_t snr_index, std::uint64_t trial) {
  const Prepared p(cfg);
  if (snr_index >= p.snr.size()) throw InvalidArgument("outage_trial: snr index out of range");
  return run_outage_trial(p, snr_index, trial, cfg.rate_bits_pcu);
}

FerTable run_fer(const SimConfig& cfg) {
  const Prepared p(cfg);
  FerTable table;
  for (std::size_t si = 0; si < p.snr.size(); ++si) {
    table.push_back(run_point(cfg, cfg.snr_grid_db[si],
                              [&](std::uint64_t t) { return run_fer_trial(p, si, t); }));
  }
  return table;
}

FerTable run_outage(const SimConfig& cfg, double rate_bits_pcu) {
  if (rate_bits_pcu < 0) throw InvalidArgument("run_outage: rate must be nonnegative");
  const Prepared p(cfg);
  FerTable table;
  for (std::size_t si = 0; si < p.snr.size(); ++si) {
    table.push_back(run_point(cfg, cfg.snr_grid_db[si], [&](std::uint64_t t) {
      return run_outage_trial(p, si, t, rate_bits_pcu);
    }));
  }
  return table;
}

double slope_estimate(const FerTable& table, double fer_hi, double fer_lo) {
  if (fer_lo > fer_hi) std::swap(fer_lo, fer_hi);
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : table) {
    if (!(row.fer > 0) || row.fer < fer_lo || row.fer > fer_hi) continue;
    if ((row.ci_high - row.ci_low) / row.fer >= 0.5) continue;
    pts.emplace_back(row.snr_db / 10.0, std::log10(row.fer));
  }
  if (pts.size() < 2) {
    throw InsufficientData("slope_estimate: " + std::to_string(pts.size()) +
                           " usable rows inside the FER window, need at least 2");
  }
  double mx = 0;
  double my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0;
  double sxx = 0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0) throw InsufficientData("slope_estimate: rows share one SNR value");
  return -sxy / sxx;
}

double snr_at_fer(const FerTable& table, double fer) {
  if (!(fer > 0)) throw InvalidArgument("snr_at_fer: level must be positive");
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto& a = table[i - 1];
    const auto& b = table[i];
    if (a.fer >= fer && b.fer <= fer && a.fer > 0 && b.fer > 0) {
      if (a.fer == b.fer) return a.snr_db;
      const double t = (std::log10(a.fer) - std::log10(fer)) / (std::log10(a.fer) - std::log10(b.fer));
      return a.snr_db + t * (b.snr_db - a.snr_db);
    }
  }
  throw InsufficientData("snr_at_fer: FER level not bracketed by the table");
}

void emit_csv(std::ostream& os, const FerTable& table, double snr_offset_db) {
  os << kFerHeader << '\n';
  for (const auto& r : table) {
    os << format_double(r.snr_db - snr_offset_db) << ',' << r.trials << ',' << r.frame_errors << ','
       << format_double(r.fer) << ',' << format_double(r.ci_low) << ',' << format_double(r.ci_high)
       << '\n';
  }
}

void emit_csv(const std::string& path, const FerTable& table, double snr_offset_db) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  emit_csv(out, table, snr_offset_db);
  if (!out) throw IoError("write failed for '" + path + "'");
}

FerTable read_csv(std::istream& is) {
  FerTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != kFerHeader) throw IoError("fer csv line 1: expected header '" + std::string(kFerHeader) + "'");
      continue;
    }
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw IoError("fer csv line " + std::to_string(lineno) + ": expected 6 fields");
    try {
      FerRow r;
      r.snr_db = std::stod(cells[0]);
      r.trials = std::stoull(cells[1]);
      r.frame_errors = std::stoull(cells[2]);
      r.fer = std::stod(cells[3]);
      r.ci_low = std::stod(cells[4]);
      r.ci_high = std::stod(cells[5]);
      table.push_back(r);
    } catch (const std::exception&) {
      throw IoError("fer csv line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return table;
}

FerTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_csv(in);
}

double ebn0_offset_db(const SimConfig& cfg) { return 10.0 * std::log10(cfg.bits_per_channel_use()); }

}  // namespace nafcode::harness

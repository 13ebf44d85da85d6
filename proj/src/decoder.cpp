// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include "nafcode/decoder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace nafcode::decoder {

namespace {

constexpr double kRankTolerance = 1e-10;

double tie_tolerance(double best) { return 1e-10 * (1.0 + best); }

// True when (d, coords) beats the incumbent: strictly closer, or tied within
// tolerance and lexicographically smaller.
bool improves(double d, std::span<const int> coords, double best, const std::vector<int>& incumbent) {
  if (incumbent.empty()) return true;
  const double tol = tie_tolerance(best);
  if (d < best - tol) return true;
  if (d > best + tol) return false;
  return std::lexicographical_compare(coords.begin(), coords.end(), incumbent.begin(), incumbent.end());
}

}  // namespace

RVector realify(const CVector& v) {
  RVector out(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out(2 * i) = v(i).real();
    out(2 * i + 1) = v(i).imag();
  }
  return out;
}

LatticeProblem build_lattice(const codes::CodeSpec& code, std::span<const CMatrix> channels,
                             double snr, const codes::Constellation& constellation) {
  if (static_cast<int>(channels.size()) != code.N) {
    throw InvalidArgument("build_lattice: expected " + std::to_string(code.N) + " channels, got " +
                          std::to_string(channels.size()));
  }
  if (!(snr > 0)) throw InvalidArgument("build_lattice: snr must be positive");
  const Eigen::Index n = code.block_dim();
  const Eigen::Index rows = channels.front().rows();
  for (const auto& he : channels) {
    if (he.cols() != n || he.rows() != rows) throw InvalidArgument("build_lattice: channel dimension mismatch");
  }
  const CMatrix g = code.generator.matrix();
  const Eigen::Index k = g.cols();
  // Row block j of the observation is vec(He_j Xi_j) = (I (x) He_j) vec(Xi_j).
  CMatrix a(rows * n * code.N, k);
  const double root = std::sqrt(snr);
  for (int j = 0; j < code.N; ++j) {
    const CMatrix& he = channels[static_cast<std::size_t>(j)];
    for (Eigen::Index c = 0; c < n; ++c) {
      a.middleRows((j * n + c) * rows, rows) = root * he * g.middleRows((j * n + c) * n, n);
    }
  }

  LatticeProblem p;
  p.constellation = constellation;
  p.levels = constellation.side;
  p.symbol_map = a;
  const double step = 2.0 * constellation.energy_scale;
  const cplx u = constellation.axis();
  const double corner = -(constellation.side - 1) * constellation.energy_scale;
  p.offset = a * CVector::Constant(k, cplx(corner, 0.0) * (1.0 + u));
  p.basis.resize(2 * a.rows(), 2 * k);
  for (Eigen::Index c = 0; c < k; ++c) {
    p.basis.col(2 * c) = realify(a.col(c) * step);
    p.basis.col(2 * c + 1) = realify(a.col(c) * (step * u));
  }
  p.target = RVector::Zero(p.basis.rows());
  return p;
}

void set_target(LatticeProblem& p, const CVector& observation) {
  if (observation.size() != p.offset.size()) throw InvalidArgument("set_target: observation length mismatch");
  p.target = realify(observation - p.offset);
}

double distance(const LatticeProblem& p, std::span<const int> coords) {
  RVector x(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) x(static_cast<Eigen::Index>(i)) = coords[i];
  return (p.target - p.basis * x).squaredNorm();
}

std::vector<int> exhaustive_ml(const LatticeProblem& p, std::uint64_t budget) {
  const auto n = static_cast<std::size_t>(p.dimension());
  if (p.levels < 1) throw InvalidArgument("exhaustive_ml: empty alphabet");
  if (p.target.size() != p.basis.rows()) throw InvalidArgument("exhaustive_ml: target length mismatch");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > budget / static_cast<std::uint64_t>(p.levels)) {
      throw BudgetError("exhaustive_ml: " + std::to_string(p.levels) + "^" + std::to_string(n) +
                        " candidates exceed the budget of " + std::to_string(budget));
    }
    count *= static_cast<std::uint64_t>(p.levels);
  }
  std::vector<int> cur(n, 0);
  std::vector<int> best_coords;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t it = 0; it < count; ++it) {
    const double d = distance(p, cur);
    if (improves(d, cur, best, best_coords)) {
      best = d;
      best_coords = cur;
    }
    for (std::size_t i = n; i-- > 0;) {
      if (++cur[i] < p.levels) break;
      cur[i] = 0;
    }
  }
  return best_coords;
}

std::vector<int> sphere_decode(const LatticeProblem& p) {
  const Eigen::Index n = p.dimension();
  const int levels = p.levels;
  if (levels < 1 || levels > 8) throw InvalidArgument("sphere_decode: levels must be in [1, 8]");
  if (n == 0) throw InvalidArgument("sphere_decode: empty problem");
  if (p.target.size() != p.basis.rows()) throw InvalidArgument("sphere_decode: target length mismatch");
  if (p.basis.rows() < n) return exhaustive_ml(p);

  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index a, Eigen::Index b) {
    return p.basis.col(a).squaredNorm() < p.basis.col(b).squaredNorm();
  });
  RMatrix bp(p.basis.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) bp.col(j) = p.basis.col(perm[static_cast<std::size_t>(j)]);

  const Eigen::HouseholderQR<RMatrix> qr(bp);
  const RMatrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const RVector qt = (qr.householderQ().transpose() * p.target).head(n);
  const RVector diag = r.diagonal().cwiseAbs();
  if (diag.minCoeff() < kRankTolerance * std::max(diag.maxCoeff(), 1e-300)) return exhaustive_ml(p);
  const double floor_dist = std::max(0.0, p.target.squaredNorm() - qt.squaredNorm());

  const auto un = static_cast<std::size_t>(n);
  std::vector<int> s(un, 0);
  std::vector<double> partial(un + 1, 0.0);
  std::vector<std::array<int, 8>> cand(un);
  std::vector<std::array<double, 8>> inc(un);
  std::vector<int> pos(un, 0);

  auto setup = [&](std::size_t k) {
    double c = qt(static_cast<Eigen::Index>(k));
    for (std::size_t j = k + 1; j < un; ++j) {
      c -= r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) * s[j];
    }
    const double rkk = r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    c /= rkk;
    for (int v = 0; v < levels; ++v) {
      const double e = rkk * (v - c);
      double cost = e * e;
      int at = v;
      // insertion sort by (cost, value)
      while (at > 0 && inc[k][static_cast<std::size_t>(at - 1)] > cost) {
        inc[k][static_cast<std::size_t>(at)] = inc[k][static_cast<std::size_t>(at - 1)];
        cand[k][static_cast<std::size_t>(at)] = cand[k][static_cast<std::size_t>(at - 1)];
        --at;
      }
      inc[k][static_cast<std::size_t>(at)] = cost;
      cand[k][static_cast<std::size_t>(at)] = v;
    }
    pos[k] = 0;
  };

  std::vector<int> best_coords;
  std::vector<int> coords(un, 0);
  double best = std::numeric_limits<double>::infinity();

  std::size_t k = un - 1;
  setup(k);
  while (true) {
    if (pos[k] < levels) {
      const auto at = static_cast<std::size_t>(pos[k]++);
      const double pd = partial[k + 1] + inc[k][at];
      if (pd + floor_dist > best + tie_tolerance(best)) {
        pos[k] = levels;
        continue;
      }
      s[k] = cand[k][at];
      partial[k] = pd;
      if (k == 0) {
        for (std::size_t j = 0; j < un; ++j) coords[static_cast<std::size_t>(perm[j])] = s[j];
        const double d = distance(p, coords);
        if (improves(d, coords, best, best_coords)) {
          best = d;
          best_coords = coords;
        }
      } else {
        --k;
        setup(k);
      }
    } else {
      if (++k == un) break;
    }
  }
  return best_coords;
}

std::vector<int> coords_from_indices(std::span<const int> indices, int side) {
  std::vector<int> out;
  out.reserve(2 * indices.size());
  for (int idx : indices) {
    out.push_back(idx / side);
    out.push_back(idx % side);
  }
  return out;
}

std::vector<int> indices_from_coords(std::span<const int> coords, int side) {
  if (coords.size() % 2 != 0) throw InvalidArgument("indices_from_coords: odd coordinate count");
  std::vector<int> out;
  out.reserve(coords.size() / 2);
  for (std::size_t i = 0; i < coords.size(); i += 2) out.push_back(coords[i] * side + coords[i + 1]);
  return out;
}

}  // namespace nafcode::decoder

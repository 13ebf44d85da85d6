// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include "nafcode/audit.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nafcode/rng.hpp"

namespace nafcode::algebra {

namespace {

struct Scanner {
  const codes::CodeSpec& code;
  std::span<const cplx> alphabet;
  CMatrix gen;
  double multiplier;
  NvdReport report;
  std::vector<std::size_t> best_index;
  bool have_best = false;

  Scanner(const codes::CodeSpec& c, std::span<const cplx> a)
      : code(c), alphabet(a), gen(c.generator.matrix()), multiplier(c.det_multiplier()) {
    report.min_rank = c.N * c.block_dim();
    report.full_rank = report.min_rank;
    report.min_det2 = std::numeric_limits<double>::infinity();
  }

  int rank_of(const CVector& v) const {
    const codes::Codeword cw = codes::encode(code, std::span<const cplx>(v.data(), static_cast<std::size_t>(v.size())));
    Eigen::JacobiSVD<CMatrix> svd(cw.assembled());
    const auto& sv = svd.singularValues();
    const double tol = 1e-9 * std::max(1.0, sv(0));
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > tol ? 1 : 0;
    return rank;
  }

  void visit(const std::vector<std::size_t>& idx) {
    const int n = code.block_dim();
    CVector s(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) s(static_cast<Eigen::Index>(k)) = alphabet[idx[k]];
    const CVector v = gen * s;
    cplx det{1.0, 0.0};
    for (int j = 0; j < code.N; ++j) {
      const Eigen::Map<const CMatrix> blk(v.data() + j * n * n, n, n);
      det *= blk.determinant();
    }
    const cplx scaled = multiplier * det;
    const RingElement ring = round_to_ring(scaled, code.ring);
    report.max_rounding_residual = std::max(report.max_rounding_residual, std::abs(scaled - ring.value()));
    ++report.evaluated;

    int rank = report.full_rank;
    if (ring.norm() == 0) {
      rank = rank_of(s);
      ++report.rank_deficient;
    }
    report.min_rank = std::min(report.min_rank, rank);

    const double det2 = ring.norm() / (multiplier * multiplier);
    // Deterministic reduction: smallest value, then lexicographically smallest index.
    if (!have_best || det2 < report.min_det2 || (det2 == report.min_det2 && idx < best_index)) {
      have_best = true;
      report.min_det2 = det2;
      report.min_det_ring = ring;
      best_index = idx;
      report.argmin.assign(s.data(), s.data() + s.size());
    }
  }
};

bool all_zero(const std::vector<std::size_t>& idx, std::size_t zero_pos) {
  for (auto i : idx) {
    if (i != zero_pos) return false;
  }
  return true;
}

}  // namespace

NvdReport nvd_audit(const codes::CodeSpec& code, std::span<const cplx> difference_alphabet,
                    const AuditMode& mode, std::uint64_t budget) {
  if (difference_alphabet.empty()) throw InvalidArgument("nvd_audit: empty difference alphabet");
  std::size_t zero_pos = difference_alphabet.size();
  for (std::size_t i = 0; i < difference_alphabet.size(); ++i) {
    if (std::abs(difference_alphabet[i]) == 0.0) zero_pos = i;
  }
  const auto k = static_cast<std::size_t>(code.symbols_per_codeword);
  Scanner scan(code, difference_alphabet);
  std::vector<std::size_t> idx(k, 0);

  if (mode.kind == AuditMode::Kind::Exhaustive) {
    const double total = std::pow(static_cast<double>(difference_alphabet.size()), static_cast<double>(k));
    if (total > static_cast<double>(budget)) {
      throw BudgetError("nvd_audit: exhaustive scan needs " + std::to_string(total) +
                        " determinant evaluations, budget is " + std::to_string(budget) +
                        "; use sampled mode");
    }
    for (;;) {
      if (!all_zero(idx, zero_pos)) scan.visit(idx);
      std::size_t pos = k;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < difference_alphabet.size()) break;
        idx[pos] = 0;
        if (pos == 0) return scan.report;
      }
    }
  }

  if (mode.samples == 0) throw InvalidArgument("nvd_audit: sampled mode needs a positive count");
  Stream rng(mode.seed, 0x4e5644, 0);
  for (std::uint64_t t = 0; t < mode.samples; ++t) {
    do {
      for (auto& i : idx) i = static_cast<std::size_t>(rng.uniform_int(difference_alphabet.size()));
    } while (all_zero(idx, zero_pos));
    scan.visit(idx);
  }
  return scan.report;
}

}  // namespace nafcode::algebra

// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nafcode/audit.hpp"
#include "nafcode/codes.hpp"

using namespace nafcode;
using algebra::CodeId;
using algebra::RingId;

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
const double kPhiBar = (1.0 - std::sqrt(5.0)) / 2.0;
const cplx kI{0.0, 1.0};

// Golden code written out entry by entry.
CMatrix golden_reference(const cplx s[4]) {
  const cplx a = 1.0 + kI - kI * kPhi;
  const cplx ab = 1.0 + kI - kI * kPhiBar;
  CMatrix x(2, 2);
  x(0, 0) = a * (s[0] + s[1] * kPhi);
  x(0, 1) = a * (s[2] + s[3] * kPhi);
  x(1, 0) = kI * ab * (s[2] + s[3] * kPhiBar);
  x(1, 1) = ab * (s[0] + s[1] * kPhiBar);
  return x / std::sqrt(5.0);
}

// Two-relay block code with the displayed 1/sqrt(5) normalization; tau maps
// zeta_8 to -zeta_8.
std::vector<CMatrix> c21_reference(const cplx s[8]) {
  std::vector<CMatrix> out;
  for (double sign : {1.0, -1.0}) {
    const cplx z = sign * std::polar(1.0, std::numbers::pi / 4.0);
    const cplx a = 1.0 + kI - kI * kPhi;
    const cplx ab = 1.0 + kI - kI * kPhiBar;
    CMatrix x(2, 2);
    x(0, 0) = a * (s[0] + s[1] * z + s[2] * kPhi + s[3] * z * kPhi);
    x(0, 1) = a * (s[4] + s[5] * z + s[6] * kPhi + s[7] * z * kPhi);
    x(1, 0) = z * ab * (s[4] + s[5] * z + s[6] * kPhiBar + s[7] * z * kPhiBar);
    x(1, 1) = ab * (s[0] + s[1] * z + s[2] * kPhiBar + s[3] * z * kPhiBar);
    out.push_back(x / std::sqrt(5.0));
  }
  return out;
}

}  // namespace

TEST_CASE("cyclotomic units") {
  CHECK(algebra::cyclotomic_unit(4) == cplx(0.0, 1.0));
  const cplx z8 = algebra::cyclotomic_unit(8);
  CHECK(std::abs(z8 - cplx(std::sqrt(0.5), std::sqrt(0.5))) < 1e-15);
  const cplx z16 = algebra::cyclotomic_unit(16);
  CHECK(std::abs(z16 - std::polar(1.0, std::numbers::pi / 8.0)) < 1e-15);
  for (int n = 1; n <= 32; ++n) CHECK(std::abs(std::abs(algebra::cyclotomic_unit(n)) - 1.0) < 1e-15);
  CHECK_THROWS_AS(algebra::cyclotomic_unit(0), InvalidArgument);
  CHECK_THROWS_AS(algebra::cyclotomic_unit(-3), InvalidArgument);
}

TEST_CASE("algebra parameters keep |gamma| = 1 and the bundled root orders") {
  for (CodeId id : algebra::all_codes()) {
    const auto p = algebra::algebra_params(id);
    CHECK(std::abs(std::abs(p.gamma()) - 1.0) < 1e-15);
    CHECK((p.zeta_order == 4 || p.zeta_order == 8 || p.zeta_order == 16));
  }
}

TEST_CASE("code ids parse case-insensitively") {
  CHECK(algebra::parse_code_id("golden") == CodeId::Golden);
  CHECK(algebra::parse_code_id("C21") == CodeId::C21);
  CHECK(algebra::parse_code_id("perfect4") == CodeId::Perfect4);
  CHECK_THROWS_AS(algebra::parse_code_id("c99"), InvalidArgument);
}

TEST_CASE("every generator is unitary") {
  for (CodeId id : algebra::all_codes()) {
    CAPTURE(algebra::to_string(id));
    const auto g = algebra::generator_matrix(id);
    CHECK(g.is_unitary(1e-9));
  }
  CHECK(std::abs(algebra::generator_matrix(CodeId::Golden).scale - 1.0 / std::sqrt(5.0)) < 1e-15);
}

TEST_CASE("Golden generator matches the explicit codeword") {
  const auto code = codes::code_spec(CodeId::Golden);
  std::mt19937 gen(3);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 50; ++t) {
    cplx s[4];
    for (auto& v : s) v = cplx(d(gen), d(gen));
    const auto cw = codes::encode(code, std::span<const cplx>(s, 4));
    CHECK((cw.blocks[0] - golden_reference(s)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("C21 generator matches the displayed blocks up to the unitary rescaling") {
  const auto code = codes::code_spec(CodeId::C21);
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 50; ++t) {
    cplx s[8];
    for (auto& v : s) v = cplx(d(gen), d(gen));
    const auto cw = codes::encode(code, std::span<const cplx>(s, 8));
    const auto ref = c21_reference(s);
    REQUIRE(cw.blocks.size() == 2);
    for (int j = 0; j < 2; ++j) {
      CHECK((cw.blocks[static_cast<std::size_t>(j)] * std::sqrt(2.0) - ref[static_cast<std::size_t>(j)])
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("round_to_ring") {
  auto r = algebra::round_to_ring({1.02, -0.01}, RingId::Gaussian);
  CHECK(r.a == 1);
  CHECK(r.b == 0);
  r = algebra::round_to_ring({0.0, 0.0}, RingId::Eisenstein);
  CHECK(r.a == 0);
  CHECK(r.b == 0);
  r = algebra::round_to_ring({2.49, 2.51}, RingId::Gaussian);
  CHECK(r.a == 2);
  CHECK(r.b == 3);
  // Exact ties resolve toward smaller |a|, then smaller |b|.
  r = algebra::round_to_ring({0.5, 0.0}, RingId::Gaussian);
  CHECK(r.a == 0);
  r = algebra::round_to_ring({-8.0, -4.0}, RingId::Gaussian);
  CHECK(r.a == -8);
  CHECK(r.b == -4);
}

TEST_CASE("round_to_ring returns the nearest point against a brute-force search") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (RingId ring : {RingId::Gaussian, RingId::Eisenstein}) {
    for (int t = 0; t < 2000; ++t) {
      const cplx z(u(gen), u(gen));
      const auto got = algebra::round_to_ring(z, ring);
      double best = 1e300;
      for (long long a = -30; a <= 30; ++a) {
        for (long long b = -30; b <= 30; ++b) {
          best = std::min(best, std::norm(z - algebra::RingElement{a, b, ring}.value()));
        }
      }
      CHECK(std::norm(z - got.value()) <= best + 1e-12);
    }
  }
}

TEST_CASE("scaled determinants are ring integers") {
  std::mt19937 gen(17);
  std::uniform_int_distribution<int> d(-3, 3);
  for (CodeId id : algebra::all_codes()) {
    CAPTURE(algebra::to_string(id));
    const auto code = codes::code_spec(id);
    for (int t = 0; t < 200; ++t) {
      std::vector<cplx> s(static_cast<std::size_t>(code.symbols_per_codeword));
      for (auto& v : s) v = cplx(d(gen), d(gen));
      const auto cw = codes::encode(code, s);
      cplx det = 1.0;
      for (const auto& b : cw.blocks) det *= b.determinant();
      const cplx scaled = code.det_multiplier() * det;
      const auto ring = algebra::round_to_ring(scaled, code.ring);
      const double tol = 1e-9 * std::max(1.0, std::abs(scaled));
      CHECK(std::abs(scaled - ring.value()) <= tol);
    }
  }
  // C21 with small symbols: 100 det(X) within 1e-6 of a Gaussian integer.
  const auto c21 = codes::code_spec(CodeId::C21);
  CHECK(c21.det_multiplier() == doctest::Approx(100.0).epsilon(1e-12));
  for (int t = 0; t < 500; ++t) {
    std::vector<cplx> s(8);
    for (auto& v : s) v = cplx(d(gen), d(gen));
    const auto cw = codes::encode(c21, s);
    const cplx scaled = 100.0 * cw.blocks[0].determinant() * cw.blocks[1].determinant();
    CHECK(std::abs(scaled - algebra::round_to_ring(scaled, RingId::Gaussian).value()) < 1e-6);
  }
}

TEST_CASE("Golden audit over 4-QAM differences against an explicit enumeration") {
  const auto code = codes::code_spec(CodeId::Golden);
  const auto alphabet = codes::make_constellation(codes::ConstellationKind::QAM, 4).difference_alphabet();
  REQUIRE(alphabet.size() == 9);

  double oracle = 1e300;
  std::size_t idx[4] = {0, 0, 0, 0};
  for (idx[0] = 0; idx[0] < 9; ++idx[0]) {
    for (idx[1] = 0; idx[1] < 9; ++idx[1]) {
      for (idx[2] = 0; idx[2] < 9; ++idx[2]) {
        for (idx[3] = 0; idx[3] < 9; ++idx[3]) {
          cplx s[4];
          bool zero = true;
          for (int k = 0; k < 4; ++k) {
            s[k] = alphabet[idx[k]];
            zero = zero && s[k] == cplx(0.0);
          }
          if (zero) continue;
          oracle = std::min(oracle, std::norm(golden_reference(s).determinant()));
        }
      }
    }
  }
  const auto rep = algebra::nvd_audit(code, alphabet, algebra::AuditMode::exhaustive());
  CHECK(rep.evaluated == 6560);
  CHECK(rep.min_det2 == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(rep.min_det2 == doctest::Approx(3.2).epsilon(1e-12));  // frozen from the enumeration above
  CHECK(rep.min_rank == 2);
  CHECK(rep.rank_deficient == 0);
  CHECK(rep.max_rounding_residual < 1e-9);
  // Witness really attains the minimum.
  const auto cw = codes::encode(code, rep.argmin);
  CHECK(std::norm(cw.blocks[0].determinant()) == doctest::Approx(rep.min_det2).epsilon(1e-9));
}

TEST_CASE("audit is non-vanishing over a larger constellation and deterministic") {
  const auto code = codes::code_spec(CodeId::Golden);
  const auto a4 = codes::make_constellation(codes::ConstellationKind::QAM, 4).difference_alphabet();
  const auto a16 = codes::make_constellation(codes::ConstellationKind::QAM, 16).difference_alphabet();
  const auto r16 = algebra::nvd_audit(code, a16, algebra::AuditMode::sampled(20000, 9));
  const auto r4 = algebra::nvd_audit(code, a4, algebra::AuditMode::exhaustive());
  CHECK(r16.min_det2 >= r4.min_det2 - 1e-9);
  const auto again = algebra::nvd_audit(code, a16, algebra::AuditMode::sampled(20000, 9));
  CHECK(again.min_det2 == r16.min_det2);
  CHECK(again.argmin == r16.argmin);
}

TEST_CASE("exhaustive audit respects its budget") {
  const auto code = codes::code_spec(CodeId::C21);
  const auto a4 = codes::make_constellation(codes::ConstellationKind::QAM, 4).difference_alphabet();
  CHECK_THROWS_AS(algebra::nvd_audit(code, a4, algebra::AuditMode::exhaustive(), 1000000), BudgetError);
  CHECK_THROWS_AS(algebra::nvd_audit(code, a4, algebra::AuditMode::sampled(0)), InvalidArgument);
}

TEST_CASE("sampled audits find full rank for every bundled code") {
  const auto a4 = codes::make_constellation(codes::ConstellationKind::QAM, 4).difference_alphabet();
  for (CodeId id : algebra::all_codes()) {
    CAPTURE(algebra::to_string(id));
    const auto code = codes::code_spec(id);
    const auto rep = algebra::nvd_audit(code, a4, algebra::AuditMode::sampled(2000, 21));
    CHECK(rep.rank_deficient == 0);
    CHECK(rep.min_rank == code.N * code.block_dim());
    CHECK(rep.min_det2 > 0.0);
  }
}

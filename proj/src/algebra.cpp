// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include "nafcode/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

namespace nafcode::algebra {

namespace {

constexpr std::array<CodeId, 5> kCodes{CodeId::Golden, CodeId::C21, CodeId::C41,
                                       CodeId::Perfect4, CodeId::C22};

const cplx kOmega{-0.5, std::numbers::sqrt3 / 2.0};  // j

std::vector<double> golden_conjugates() {
  const double s5 = std::sqrt(5.0);
  return {(1.0 + s5) / 2.0, (1.0 - s5) / 2.0};
}

// sigma: theta -> theta^2 - 2 cycles 2cos(2 pi k / 15) through k = 1, 2, 4, 8.
std::vector<double> perfect_conjugates() {
  std::vector<double> out;
  for (int k : {1, 2, 4, 8}) out.push_back(2.0 * std::cos(2.0 * std::numbers::pi * k / 15.0));
  return out;
}

// Golden ideal: alpha = 1 + i - i*theta, Z-basis {1, theta}.
void set_golden_ideal(AlgebraParams& p) {
  p.theta_conjugates = golden_conjugates();
  p.alpha_re = {1};
  p.alpha_im = {1, -1};
  p.ideal_basis = {{1}, {0, 1}};
  p.ideal_norm = 5.0;
  p.dim = 2;
}

// Perfect 4x4 ideal: alpha = (1 - 3i) + i*theta^2 over Q(theta), theta = 2cos(2pi/15).
// The basis below is orthogonal for the alpha-weighted trace form, which is
// 15 times the identity on it.
void set_perfect_ideal(AlgebraParams& p) {
  p.theta_conjugates = perfect_conjugates();
  p.alpha_re = {1};
  p.alpha_im = {-3, 0, 1};
  p.ideal_basis = {{1}, {0, 1}, {0, -3, 0, 1}, {1, 3, -1, -1}};
  p.ideal_norm = 15.0;
  p.dim = 4;
}

}  // namespace

cplx RingElement::value() const {
  const cplx u = ring == RingId::Gaussian ? cplx{0.0, 1.0} : kOmega;
  return static_cast<double>(a) + static_cast<double>(b) * u;
}

double RingElement::norm() const {
  const auto x = static_cast<__int128>(a);
  const auto y = static_cast<__int128>(b);
  const __int128 n = ring == RingId::Gaussian ? x * x + y * y : x * x - x * y + y * y;
  return static_cast<double>(n);
}

std::string_view to_string(CodeId id) {
  switch (id) {
    case CodeId::Golden: return "Golden";
    case CodeId::C21: return "C21";
    case CodeId::C41: return "C41";
    case CodeId::Perfect4: return "Perfect4";
    case CodeId::C22: return "C22";
  }
  return "?";
}

CodeId parse_code_id(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
  };
  const std::string key = lower(name);
  for (CodeId id : kCodes) {
    if (lower(to_string(id)) == key) return id;
  }
  throw InvalidArgument("unknown code id '" + std::string(name) + "'");
}

std::span<const CodeId> all_codes() { return kCodes; }

cplx AlgebraParams::gamma() const {
  return std::pow(cyclotomic_unit(zeta_order), gamma_power);
}

AlgebraParams algebra_params(CodeId id) {
  AlgebraParams p;
  switch (id) {
    case CodeId::Golden:
      set_golden_ideal(p);
      p.zeta_order = 4;
      p.tau_powers = {1};
      p.gamma_power = 1;  // gamma = i
      break;
    case CodeId::C21:
      set_golden_ideal(p);
      p.zeta_order = 8;
      p.tau_powers = {1, 5};  // zeta_8 -> -zeta_8
      p.gamma_power = 1;
      break;
    case CodeId::C41:
      set_golden_ideal(p);
      p.zeta_order = 16;
      p.tau_powers = {1, 5, 9, 13};  // Gal(Q(zeta_16)/Q(i))
      p.gamma_power = 1;
      break;
    case CodeId::Perfect4:
      set_perfect_ideal(p);
      p.zeta_order = 4;
      p.tau_powers = {1};
      p.gamma_power = 1;
      break;
    case CodeId::C22:
      set_perfect_ideal(p);
      p.zeta_order = 8;
      p.tau_powers = {1, 5};
      p.gamma_power = 1;
      break;
  }
  p.blocks = static_cast<int>(p.tau_powers.size());
  return p;
}

cplx cyclotomic_unit(int n) {
  if (n <= 0) throw InvalidArgument("cyclotomic_unit: order must be positive");
  if (n == 1) return {1.0, 0.0};
  if (n == 2) return {-1.0, 0.0};
  if (n == 4) return {0.0, 1.0};
  const double a = 2.0 * std::numbers::pi / n;
  return {std::cos(a), std::sin(a)};
}

double eval_poly(std::span<const long long> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + static_cast<double>(*it);
  return acc;
}

// Codeword block j is tau_j(sum_c diag(z_c, sigma z_c, ...) e^c), where
// z_c = sum_{l,b} s_{c,l,b} zeta^b alpha nu_l and e is the companion shift with
// gamma in the bottom-left corner. Symbol index = c*(dim*N) + l*N + b.
GeneratorMatrix generator_matrix(CodeId id) {
  const AlgebraParams p = algebra_params(id);
  const int n = p.dim;
  const int blocks = p.blocks;
  const int k_total = blocks * n * n;
  const cplx zeta = cyclotomic_unit(p.zeta_order);
  const cplx unit_i{0.0, 1.0};

  GeneratorMatrix g;
  g.entries = CMatrix::Zero(k_total, k_total);
  g.scale = 1.0 / std::sqrt(p.ideal_norm * blocks);

  for (int j = 0; j < blocks; ++j) {
    const int tau = p.tau_powers[static_cast<std::size_t>(j)];
    const cplx gamma_j = std::pow(zeta, tau * p.gamma_power);
    for (int c = 0; c < n; ++c) {
      for (int l = 0; l < n; ++l) {
        for (int b = 0; b < blocks; ++b) {
          const int sym = c * (n * blocks) + l * blocks + b;
          const cplx zeta_b = std::pow(zeta, tau * b);
          for (int r = 0; r < n; ++r) {
            const double th = p.theta_conjugates[static_cast<std::size_t>(r)];
            const cplx alpha = eval_poly(p.alpha_re, th) + unit_i * eval_poly(p.alpha_im, th);
            const double nu = eval_poly(p.ideal_basis[static_cast<std::size_t>(l)], th);
            cplx v = zeta_b * alpha * nu;
            if (r + c >= n) v *= gamma_j;
            const int col = (r + c) % n;
            const int row = j * n * n + col * n + r;
            g.entries(row, sym) = v;
          }
        }
      }
    }
  }
  return g;
}

bool GeneratorMatrix::is_unitary(double tol) const {
  const CMatrix m = matrix();
  const CMatrix gram = m.adjoint() * m;
  return (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= tol;
}

RingElement round_to_ring(cplx z, RingId ring) {
  double ca = 0.0;
  double cb = 0.0;
  if (ring == RingId::Gaussian) {
    ca = z.real();
    cb = z.imag();
  } else {
    cb = z.imag() / kOmega.imag();
    ca = z.real() + cb / 2.0;
  }
  const auto a0 = static_cast<long long>(std::floor(ca));
  const auto b0 = static_cast<long long>(std::floor(cb));
  RingElement best{a0, b0, ring};
  double best_d = std::numeric_limits<double>::infinity();
  bool first = true;
  for (long long da = -1; da <= 2; ++da) {
    for (long long db = -1; db <= 2; ++db) {
      const RingElement cand{a0 + da, b0 + db, ring};
      const double d = std::norm(z - cand.value());
      if (first) {
        best = cand;
        best_d = d;
        first = false;
        continue;
      }
      const double tol = 1e-12 * std::max(1.0, best_d);
      bool take = d < best_d - tol;
      if (!take && std::abs(d - best_d) <= tol) {
        const auto key = [](const RingElement& e) { return std::pair{std::llabs(e.a), std::llabs(e.b)}; };
        take = key(cand) < key(best);
      }
      if (take) {
        best = cand;
        best_d = std::min(d, best_d);
      }
    }
  }
  return best;
}

}  // namespace nafcode::algebra

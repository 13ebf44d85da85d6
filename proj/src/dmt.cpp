// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include "nafcode/dmt.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "nafcode/common.hpp"
#include "simplex.hpp"

namespace nafcode::dmt {

namespace {

constexpr double kTol = 1e-9;

// Drops interior vertices that lie on the segment joining their neighbours.
DmtCurve simplify(std::vector<Vertex> v) {
  DmtCurve out;
  for (const auto& p : v) {
    while (out.vertices.size() >= 2) {
      const Vertex& a = out.vertices[out.vertices.size() - 2];
      const Vertex& b = out.vertices.back();
      const double s1 = (b.d - a.d) / (b.r - a.r);
      const double s2 = (p.d - b.d) / (p.r - b.r);
      if (std::abs(s1 - s2) > 1e-12) break;
      out.vertices.pop_back();
    }
    out.vertices.push_back(p);
  }
  return out;
}

}  // namespace

double DmtCurve::eval(double r) const {
  if (vertices.empty()) throw InvalidArgument("DmtCurve::eval: empty curve");
  if (r < -kTol) throw InvalidArgument("DmtCurve::eval: negative multiplexing gain");
  if (r <= vertices.front().r) return vertices.front().d;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Vertex& a = vertices[i - 1];
    const Vertex& b = vertices[i];
    if (r <= b.r) {
      const double t = (r - a.r) / (b.r - a.r);
      return a.d + t * (b.d - a.d);
    }
  }
  return 0.0;
}

void DmtCurve::validate() const {
  if (vertices.empty()) throw InvalidArgument("dmt curve: no vertices");
  if (vertices.front().r != 0.0) throw InvalidArgument("dmt curve: first vertex must have r = 0");
  if (std::abs(vertices.back().d) > kTol) throw InvalidArgument("dmt curve: final diversity must be 0");
  double prev_slope = -INFINITY;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Vertex& a = vertices[i - 1];
    const Vertex& b = vertices[i];
    if (!(b.r > a.r)) throw InvalidArgument("dmt curve: r must strictly increase");
    if (b.d > a.d + kTol) throw InvalidArgument("dmt curve: d must not increase");
    const double slope = (b.d - a.d) / (b.r - a.r);
    if (slope < prev_slope - kTol) throw InvalidArgument("dmt curve: not convex");
    prev_slope = slope;
  }
}

ProductChannelDims::ProductChannelDims(int m, int n, int l) : m_(m), n_(n), l_(l) {
  if (m < 1 || n < 1 || l < 1) throw InvalidArgument("product dims must be positive");
  if (m < l || n < l) {
    throw InvalidArgument("product dims need m >= l and n >= l (got m=" + std::to_string(m) +
                          ", n=" + std::to_string(n) + ", l=" + std::to_string(l) + ")");
  }
}

DmtCurve rayleigh_dmt(int m, int n) {
  if (m < 1 || n < 1) throw InvalidArgument("rayleigh_dmt: antenna counts must be positive");
  DmtCurve c;
  for (int k = 0; k <= std::min(m, n); ++k) {
    c.vertices.push_back({static_cast<double>(k), static_cast<double>((m - k) * (n - k))});
  }
  return c;
}

DmtCurve product_dmt(const ProductChannelDims& dims) {
  const int l = dims.l();
  const int q = dims.q();
  const int delta = dims.delta();
  DmtCurve c;
  for (int s = 0; s <= l; ++s) {
    const int e = std::max(0, l - delta - s);
    const double d = static_cast<double>((l - s) * (q - s)) - 0.5 * static_cast<double>((e * e) / 2);
    c.vertices.push_back({static_cast<double>(s), d});
  }
  return c;
}

double product_dmt_oracle(const ProductChannelDims& dims, double r) {
  const int m = dims.m();
  const int n = dims.n();
  const int l = dims.l();
  if (r < -kTol || r > l + kTol) throw InvalidArgument("product_dmt_oracle: r must lie in [0, l]");
  r = std::clamp(r, 0.0, static_cast<double>(l));

  // Variables: alpha_1..l, beta_1..l, t_ij >= (alpha_i - beta_j) for i < j,
  // u_k >= (1 - alpha_k).
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < l; ++j) {
    for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  const auto np = static_cast<int>(pairs.size());
  const int nv = 2 * l + np + l;
  const int u0 = 2 * l + np;
  std::vector<double> c(static_cast<std::size_t>(nv), 0.0);
  for (int i = 0; i < l; ++i) {
    c[static_cast<std::size_t>(i)] = n - (i + 1) + 1;
    c[static_cast<std::size_t>(l + i)] = m - n + l - (i + 1);
  }
  for (int p = 0; p < np; ++p) c[static_cast<std::size_t>(2 * l + p)] = 1.0;

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  auto row = [&] { return std::vector<double>(static_cast<std::size_t>(nv), 0.0); };
  auto at = [](std::vector<double>& v, int k) -> double& { return v[static_cast<std::size_t>(k)]; };
  for (int p = 0; p < np; ++p) {
    auto v = row();
    at(v, pairs[static_cast<std::size_t>(p)].first) = 1.0;
    at(v, l + pairs[static_cast<std::size_t>(p)].second) = -1.0;
    at(v, 2 * l + p) = -1.0;
    a.push_back(v);
    b.push_back(0.0);
  }
  for (int k = 0; k < l; ++k) {
    auto v = row();
    at(v, k) = -1.0;
    at(v, u0 + k) = -1.0;
    a.push_back(v);
    b.push_back(-1.0);
  }
  {
    auto v = row();
    for (int k = 0; k < l; ++k) at(v, u0 + k) = 1.0;
    a.push_back(v);
    b.push_back(r);
  }
  for (int k = 0; k + 1 < l; ++k) {
    auto v = row();
    at(v, k) = 1.0;
    at(v, k + 1) = -1.0;
    a.push_back(v);
    b.push_back(0.0);
    auto w = row();
    at(w, l + k) = 1.0;
    at(w, l + k + 1) = -1.0;
    a.push_back(w);
    b.push_back(0.0);
  }
  for (int k = 0; k < l; ++k) {
    auto v = row();
    at(v, l + k) = 1.0;
    at(v, k) = -1.0;
    a.push_back(v);
    b.push_back(0.0);
  }
  return detail::solve_lp(c, a, b);
}

DmtCurve add_scaled(const DmtCurve& f, const DmtCurve& g, double scale) {
  if (!(scale > 0)) throw InvalidArgument("add_scaled: scale must be positive");
  std::vector<double> rs;
  for (const auto& v : f.vertices) rs.push_back(v.r);
  for (const auto& v : g.vertices) rs.push_back(v.r / scale);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }),
           rs.end());
  const double end = std::max(f.max_r(), g.max_r() / scale);
  std::vector<Vertex> v;
  for (double r : rs) {
    if (r > end + 1e-12) break;
    v.push_back({r, f.eval(r) + g.eval(scale * r)});
  }
  return simplify(std::move(v));
}

DmtCurve infimal_convolution(std::span<const DmtCurve> curves) {
  if (curves.empty()) throw InvalidArgument("infimal_convolution: no curves");
  struct Segment {
    double slope;
    double length;
  };
  std::vector<Segment> segs;
  double start = 0.0;
  for (const auto& c : curves) {
    if (c.vertices.empty()) throw InvalidArgument("infimal_convolution: empty curve");
    start += c.vertices.front().d;
    for (std::size_t i = 1; i < c.vertices.size(); ++i) {
      const double len = c.vertices[i].r - c.vertices[i - 1].r;
      segs.push_back({(c.vertices[i].d - c.vertices[i - 1].d) / len, len});
    }
  }
  std::stable_sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.slope < b.slope; });
  std::vector<Vertex> v{{0.0, start}};
  for (const auto& s : segs) {
    const Vertex& last = v.back();
    v.push_back({last.r + s.length, last.d + s.slope * s.length});
  }
  if (std::abs(v.back().d) < 1e-9) v.back().d = 0.0;
  return simplify(std::move(v));
}

namespace {

ProductChannelDims relay_dims_for(int ns, int nr, int nd) {
  if (nr <= ns) return {ns, nd, nr};
  return {nr, nd, ns};
}

}  // namespace

DmtCurve naf_bound(int ns, int nr, int nd, int relays,
                   std::optional<std::span<const ProductChannelDims>> relay_dims) {
  if (ns < 1 || nr < 1 || nd < 1 || relays < 1) throw InvalidArgument("naf_bound: counts must be positive");
  const DmtCurve df = rayleigh_dmt(nd, ns);
  if (!relay_dims) {
    const DmtCurve dgh = product_dmt(relay_dims_for(ns, nr, nd));
    DmtCurve scaled = dgh;
    for (auto& v : scaled.vertices) v.d *= relays;
    return add_scaled(df, scaled, 2.0);
  }
  if (static_cast<int>(relay_dims->size()) != relays) {
    throw InvalidArgument("naf_bound: expected " + std::to_string(relays) + " relay dims");
  }
  std::vector<DmtCurve> parts;
  for (const auto& d : *relay_dims) parts.push_back(product_dmt(d));
  return add_scaled(df, infimal_convolution(parts), 2.0 * relays);
}

DiversityBounds max_diversity_bounds(int ns, int nr, int nd, int relays) {
  if (relays < 1) throw InvalidArgument("max_diversity_bounds: relays must be positive");
  const ProductChannelDims dims = relay_dims_for(ns, nr, nd);
  const double df0 = rayleigh_dmt(nd, ns).vertices.front().d;
  const double prod0 = product_dmt(dims).vertices.front().d;
  const double cap = std::min(dims.n() * dims.l(), dims.l() * dims.m());
  DiversityBounds out;
  out.lower = df0 + relays * prod0;
  out.upper = df0 + relays * cap;
  out.equality = dims.delta() >= dims.l() - 1;
  return out;
}

void write_curve_csv(std::ostream& os, const DmtCurve& curve) {
  os << "r,d\n";
  for (const auto& v : curve.vertices) os << format_double(v.r) << ',' << format_double(v.d) << '\n';
}

DmtCurve read_curve_csv(std::istream& is) {
  DmtCurve c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (lineno == 1) {
      if (line != "r,d") throw IoError("curve csv: expected header 'r,d'");
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("curve csv: malformed line " + std::to_string(lineno));
    try {
      c.vertices.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw IoError("curve csv: malformed number at line " + std::to_string(lineno));
    }
  }
  return c;
}

}  // namespace nafcode::dmt

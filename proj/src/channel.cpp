// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#include "nafcode/channel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace nafcode::channel {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Direct: return "direct";
    case Scheme::Naf: return "naf";
    case Scheme::VirtualRelay: return "virtual_relay";
    case Scheme::AntennaSelection: return "antenna_selection";
  }
  return "?";
}

Scheme parse_scheme(std::string_view s) {
  std::string key(s);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Scheme v : {Scheme::Direct, Scheme::Naf, Scheme::VirtualRelay, Scheme::AntennaSelection}) {
    if (to_string(v) == key) return v;
  }
  throw InvalidArgument("unknown scheme '" + std::string(s) + "'");
}

int Topology::frames() const {
  switch (scheme) {
    case Scheme::Direct:
    case Scheme::Naf: return relays;
    case Scheme::VirtualRelay: return nr;  // C(nr, 1)
    case Scheme::AntennaSelection: return 1;
  }
  return relays;
}

int Topology::active_relay_antennas() const {
  switch (scheme) {
    case Scheme::Direct: return 0;
    case Scheme::Naf: return nr;
    case Scheme::VirtualRelay:
    case Scheme::AntennaSelection: return ns;
  }
  return nr;
}

void Topology::validate() const {
  if (ns < 1 || nd < 1 || nr < 0 || relays < 1) {
    throw InvalidArgument("topology: antenna and relay counts must be positive");
  }
  switch (scheme) {
    case Scheme::Direct: break;
    case Scheme::Naf:
      if (nr < 1) throw InvalidArgument("topology: naf needs at least one relay antenna");
      if (nr > ns) {
        throw InvalidArgument("topology: naf needs nr <= ns; use virtual_relay or antenna_selection");
      }
      if (nd < nr) throw InvalidArgument("topology: nd >= nr is required");
      break;
    case Scheme::VirtualRelay:
    case Scheme::AntennaSelection:
      if (ns != 1) {
        throw InvalidArgument("topology: virtual_relay/antenna_selection are implemented for ns = 1 only");
      }
      if (nr <= ns) throw InvalidArgument("topology: scheme needs nr > ns");
      if (relays != 1) throw InvalidArgument("topology: scheme needs exactly one physical relay");
      break;
  }
}

PowerAllocation PowerAllocation::standard(const Topology& top) {
  if (top.scheme == Scheme::Direct) {
    const double p = 1.0 / top.ns;
    return {p, p, 0.0};
  }
  const double pi2 = 2.0 / (3.0 * top.ns + top.active_relay_antennas());
  return {2.0 * pi2, pi2, pi2};
}

void PowerAllocation::validate(const Topology& top) const {
  if (pi1 < 0 || pi2 < 0 || pi3 < 0) throw InvalidArgument("power allocation: factors must be nonnegative");
  const double total = top.ns * (pi1 + pi2) + top.active_relay_antennas() * pi3;
  if (std::abs(total - 2.0) > 1e-9) {
    throw InvalidArgument("power allocation: ns(pi1+pi2) + nr pi3 = " + std::to_string(total) +
                          ", expected 2");
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

ChannelRealization sample_realization(const Topology& top, double rho_db, Stream& rng) {
  ChannelRealization cr;
  cr.rho = db_to_linear(rho_db);
  cr.F = rng.complex_normal(top.nd, top.ns);
  int physical = 0;
  switch (top.scheme) {
    case Scheme::Direct: physical = 0; break;
    case Scheme::Naf: physical = top.relays; break;
    case Scheme::VirtualRelay:
    case Scheme::AntennaSelection: physical = 1; break;
  }
  for (int i = 0; i < physical; ++i) {
    cr.G.push_back(rng.complex_normal(top.nd, top.nr));
    cr.H.push_back(rng.complex_normal(top.nr, top.ns));
  }
  return cr;
}

double relay_gain_single(cplx h, const PowerAllocation& pa, double rho, double snr) {
  if (!(snr > 0)) throw InvalidArgument("relay_gain_single: snr must be positive");
  return 1.0 / std::sqrt(pa.pi1 * rho * snr * std::norm(h) + 1.0);
}

CMatrix relay_gain_matrix(const CMatrix& H, const PowerAllocation& pa, double rho, double snr) {
  if (!(snr > 0)) throw InvalidArgument("relay_gain_matrix: snr must be positive");
  const Eigen::Index nr = H.rows();
  double lmax = 0.0;
  if (H.size() > 0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H * H.adjoint(), Eigen::EigenvaluesOnly);
    lmax = es.eigenvalues().maxCoeff();
  }
  const double c = 1.0 / (1.0 / snr + pa.pi1 * rho);
  const double m = lmax > 1.0 ? 1.0 / lmax : 1.0;
  const double sqrt_snr_b = std::sqrt(c * m);
  return CMatrix::Identity(nr, nr) * (sqrt_snr_b / std::sqrt(snr));
}

CMatrix relay_gain(RelayGainRule rule, const CMatrix& H, const PowerAllocation& pa, double rho,
                   double snr) {
  if (rule == RelayGainRule::BoundedEigen) return relay_gain_matrix(H, pa, rho, snr);
  if (!(snr > 0)) throw InvalidArgument("relay_gain: snr must be positive");
  const Eigen::Index nr = H.rows();
  // Tr{(I + pi1 rho SNR H H^H)} b^2 = nr.
  const double tr = static_cast<double>(nr) + pa.pi1 * rho * snr * H.squaredNorm();
  const double b = std::sqrt(static_cast<double>(nr) / tr);
  return CMatrix::Identity(nr, nr) * b;
}

double relay_power(const CMatrix& H, const CMatrix& B, const PowerAllocation& pa, double rho,
                   double snr) {
  const Eigen::Index nr = H.rows();
  const CMatrix m = (CMatrix::Identity(nr, nr) + pa.pi1 * rho * snr * H * H.adjoint()) * B.adjoint() * B;
  return m.trace().real();
}

CMatrix equivalent_channel_single(cplx f, cplx g, cplx h, const PowerAllocation& pa, double rho,
                                  double snr) {
  const double b = relay_gain_single(h, pa, rho, snr);
  const double denom = 1.0 + pa.pi3 * snr * std::norm(b * g);
  CMatrix out(2, 2);
  out(0, 0) = std::sqrt(pa.pi1) * f;
  out(0, 1) = 0.0;
  out(1, 0) = std::sqrt(pa.pi1 * pa.pi3 * rho * snr / denom) * b * h * g;
  out(1, 1) = std::sqrt(pa.pi2 / denom) * f;
  return out;
}

CMatrix inverse_sqrt_hermitian(const CMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma);
  if (es.info() != Eigen::Success) throw InternalError("inverse_sqrt_hermitian: eigensolver failed");
  RVector ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) throw InternalError("inverse_sqrt_hermitian: matrix is not positive definite");
  ev = ev.cwiseMax(1e-12).cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

EquivalentChannel equivalent_channel_mimo(const CMatrix& F, const CMatrix& G, const CMatrix& H,
                                          const CMatrix& B, const PowerAllocation& pa, double rho,
                                          double snr) {
  const Eigen::Index nd = F.rows();
  const Eigen::Index ns = F.cols();
  if (G.rows() != nd || H.cols() != ns || G.cols() != H.rows() || B.rows() != H.rows()) {
    throw InvalidArgument("equivalent_channel_mimo: dimension mismatch");
  }
  EquivalentChannel ec;
  ec.B = B;
  ec.P = std::sqrt(snr) * G * B;
  const CMatrix sigma = CMatrix::Identity(nd, nd) + pa.pi3 * ec.P * ec.P.adjoint();
  ec.Sigma_inv_sqrt = inverse_sqrt_hermitian(sigma);
  ec.He = CMatrix::Zero(2 * nd, 2 * ns);
  ec.He.topLeftCorner(nd, ns) = std::sqrt(pa.pi1) * F;
  ec.He.bottomLeftCorner(nd, ns) = std::sqrt(pa.pi1 * pa.pi3 * rho) * ec.Sigma_inv_sqrt * ec.P * H;
  ec.He.bottomRightCorner(nd, ns) = std::sqrt(pa.pi2) * ec.Sigma_inv_sqrt * F;
  return ec;
}

EquivalentChannel equivalent_channel_direct(const CMatrix& F, const PowerAllocation& pa) {
  const Eigen::Index nd = F.rows();
  const Eigen::Index ns = F.cols();
  EquivalentChannel ec;
  ec.Sigma_inv_sqrt = CMatrix::Identity(nd, nd);
  ec.He = CMatrix::Zero(2 * nd, 2 * ns);
  ec.He.topLeftCorner(nd, ns) = std::sqrt(pa.pi1) * F;
  ec.He.bottomRightCorner(nd, ns) = std::sqrt(pa.pi2) * F;
  return ec;
}

CMatrix superframe_channel(std::span<const CMatrix> blocks) {
  if (blocks.empty()) throw InvalidArgument("superframe_channel: no blocks");
  const Eigen::Index r = blocks.front().rows();
  const Eigen::Index c = blocks.front().cols();
  CMatrix out = CMatrix::Zero(r * static_cast<Eigen::Index>(blocks.size()),
                              c * static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rows() != r || blocks[i].cols() != c) {
      throw InvalidArgument("superframe_channel: blocks must share dimensions");
    }
    const auto k = static_cast<Eigen::Index>(i);
    out.block(k * r, k * c, r, c) = blocks[i];
  }
  return out;
}

double mutual_information(const CMatrix& He, double snr) {
  if (He.size() == 0) return 0.0;
  const Eigen::Index n = He.rows();
  const CMatrix m = CMatrix::Identity(n, n) + snr * He * He.adjoint();
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw InternalError("mutual_information: factorization failed");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) acc += std::log2(llt.matrixL()(i, i).real());
  return 2.0 * acc;
}

std::vector<ChannelRealization> virtual_relay_expand(const ChannelRealization& cr) {
  if (cr.relays() != 1) throw InvalidArgument("virtual_relay_expand: needs one physical relay");
  const CMatrix& H = cr.H.front();
  const CMatrix& G = cr.G.front();
  if (H.cols() != 1 || H.rows() <= H.cols()) {
    throw InvalidArgument("virtual_relay_expand: needs ns = 1 and nr > ns");
  }
  CMatrix h_eff(1, 1);
  h_eff(0, 0) = H.col(0).norm();
  std::vector<ChannelRealization> out;
  for (Eigen::Index k = 0; k < G.cols(); ++k) {
    ChannelRealization v;
    v.F = cr.F;
    v.rho = cr.rho;
    v.shadow = cr.shadow;
    v.G.push_back(G.col(k));
    v.H.push_back(h_eff);
    out.push_back(std::move(v));
  }
  return out;
}

ChannelRealization select_antenna(const ChannelRealization& cr) {
  if (cr.relays() != 1) throw InvalidArgument("select_antenna: needs one physical relay");
  const CMatrix& H = cr.H.front();
  const CMatrix& G = cr.G.front();
  if (H.cols() != 1 || H.rows() <= H.cols()) throw InvalidArgument("select_antenna: needs ns = 1 and nr > ns");
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < G.cols(); ++k) {
    if (G.col(k).squaredNorm() > G.col(best).squaredNorm()) best = k;
  }
  ChannelRealization out;
  out.F = cr.F;
  out.rho = cr.rho;
  out.shadow = cr.shadow;
  out.G.push_back(G.col(best));
  CMatrix h_eff(1, 1);
  h_eff(0, 0) = H.col(0).norm();
  out.H.push_back(h_eff);
  return out;
}

std::vector<FrameLink> cooperation_links(const ChannelRealization& cr, const Topology& top) {
  std::vector<FrameLink> links;
  switch (top.scheme) {
    case Scheme::Direct:
      for (int i = 0; i < top.frames(); ++i) links.push_back({cr.F, CMatrix(), CMatrix()});
      break;
    case Scheme::Naf:
      for (int i = 0; i < cr.relays(); ++i) {
        links.push_back({cr.F, cr.G[static_cast<std::size_t>(i)], cr.H[static_cast<std::size_t>(i)]});
      }
      break;
    case Scheme::VirtualRelay:
      for (const auto& v : virtual_relay_expand(cr)) links.push_back({v.F, v.G.front(), v.H.front()});
      break;
    case Scheme::AntennaSelection: {
      const auto s = select_antenna(cr);
      links.push_back({s.F, s.G.front(), s.H.front()});
      break;
    }
  }
  return links;
}

ChannelRealization apply_shadowing(const ChannelRealization& cr, double sigma_db, Stream& rng) {
  if (sigma_db < 0) throw InvalidArgument("apply_shadowing: sigma_db must be nonnegative");
  ChannelRealization out = cr;
  if (sigma_db == 0.0) return out;
  auto draw = [&] { return std::pow(10.0, sigma_db * rng.normal() / 20.0); };
  const double sf = draw();
  out.F *= sf;
  out.shadow.push_back(sf);
  for (auto& g : out.G) {
    const double s = draw();
    g *= s;
    out.shadow.push_back(s);
  }
  for (auto& h : out.H) {
    const double s = draw();
    h *= s;
    out.shadow.push_back(s);
  }
  return out;
}

std::vector<FrameNoise> draw_noise(std::span<const FrameLink> links, int ns, Stream& rng) {
  std::vector<FrameNoise> out;
  for (const auto& l : links) {
    FrameNoise n;
    n.V1 = rng.complex_normal(l.F.rows(), 2 * ns);
    n.W = rng.complex_normal(l.H.rows(), 2 * ns);
    n.V2 = rng.complex_normal(l.F.rows(), 2 * ns);
    out.push_back(std::move(n));
  }
  return out;
}

Reception simulate_reception(std::span<const CMatrix> frames, std::span<const FrameLink> links,
                             std::span<const FrameNoise> noise, const PowerAllocation& pa,
                             double rho, const ReceptionOptions& opt) {
  if (frames.size() != links.size() || frames.size() != noise.size()) {
    throw InvalidArgument("simulate_reception: frame, link and noise counts differ");
  }
  const double snr = opt.snr;
  Reception rec;
  std::vector<CMatrix> observed;
  Eigen::Index total = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const CMatrix& C = frames[i];
    const FrameLink& l = links[i];
    const FrameNoise& z = noise[i];
    const Eigen::Index ns = C.rows();
    if (C.cols() != 4 * ns || l.F.cols() != ns) throw InvalidArgument("simulate_reception: frame shape mismatch");
    const auto X1 = C.leftCols(2 * ns);
    const auto X2 = C.rightCols(2 * ns);

    const CMatrix Y1 = std::sqrt(pa.pi1 * snr) * l.F * X1 + z.V1;
    CMatrix Y2 = std::sqrt(pa.pi2 * snr) * l.F * X2 + z.V2;
    EquivalentChannel ec;
    if (opt.direct || l.G.size() == 0) {
      ec = equivalent_channel_direct(l.F, pa);
    } else {
      const CMatrix B = relay_gain(opt.rule, l.H, pa, rho, snr);
      const CMatrix Yr = std::sqrt(pa.pi1 * rho * snr) * l.H * X1 + z.W;
      Y2 += std::sqrt(pa.pi3 * snr) * l.G * (B * Yr);
      ec = equivalent_channel_mimo(l.F, l.G, l.H, B, pa, rho, snr);
    }
    CMatrix Y(2 * l.F.rows(), 2 * ns);
    Y.topRows(l.F.rows()) = Y1;
    Y.bottomRows(l.F.rows()) = ec.Sigma_inv_sqrt * Y2;
    total += Y.size();
    observed.push_back(std::move(Y));
    rec.equivalents.push_back(std::move(ec));
  }
  rec.whitened.resize(total);
  Eigen::Index off = 0;
  for (const auto& Y : observed) {
    rec.whitened.segment(off, Y.size()) = Eigen::Map<const CVector>(Y.data(), Y.size());
    off += Y.size();
  }
  return rec;
}

CVector equivalent_observation(std::span<const CMatrix> frames,
                               std::span<const EquivalentChannel> eqs,
                               std::span<const FrameLink> links,
                               std::span<const FrameNoise> noise, const PowerAllocation& pa,
                               double snr) {
  std::vector<CMatrix> parts;
  Eigen::Index total = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const CMatrix& C = frames[i];
    const Eigen::Index ns = C.rows();
    const Eigen::Index nd = links[i].F.rows();
    CMatrix xi(2 * ns, 2 * ns);
    xi.topRows(ns) = C.leftCols(2 * ns);
    xi.bottomRows(ns) = C.rightCols(2 * ns);
    CMatrix z(2 * nd, 2 * ns);
    z.topRows(nd) = noise[i].V1;
    CMatrix second = noise[i].V2;
    if (links[i].G.size() != 0 && eqs[i].B.size() != 0) {
      second += std::sqrt(pa.pi3 * snr) * links[i].G * eqs[i].B * noise[i].W;
    }
    z.bottomRows(nd) = eqs[i].Sigma_inv_sqrt * second;
    CMatrix y = std::sqrt(snr) * eqs[i].He * xi + z;
    total += y.size();
    parts.push_back(std::move(y));
  }
  CVector out(total);
  Eigen::Index off = 0;
  for (const auto& y : parts) {
    out.segment(off, y.size()) = Eigen::Map<const CVector>(y.data(), y.size());
    off += y.size();
  }
  return out;
}

void write_realization_csv(std::ostream& os, const ChannelRealization& cr) {
  const auto old = os.precision(17);
  os << "link,index,row,col,re,im\n";
  os << "rho,0,0,0," << cr.rho << ",0\n";
  auto dump = [&](const char* name, std::size_t idx, const CMatrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        os << name << ',' << idx << ',' << r << ',' << c << ',' << m(r, c).real() << ','
           << m(r, c).imag() << '\n';
      }
    }
  };
  auto shape = [&](const char* name, std::size_t idx, const CMatrix& m) {
    os << name << "_shape," << idx << ',' << m.rows() << ',' << m.cols() << ",0,0\n";
  };
  shape("F", 0, cr.F);
  dump("F", 0, cr.F);
  for (std::size_t i = 0; i < cr.G.size(); ++i) {
    shape("G", i, cr.G[i]);
    dump("G", i, cr.G[i]);
    shape("H", i, cr.H[i]);
    dump("H", i, cr.H[i]);
  }
  for (std::size_t i = 0; i < cr.shadow.size(); ++i) os << "shadow," << i << ",0,0," << cr.shadow[i] << ",0\n";
  os.precision(old);
}

ChannelRealization read_realization_csv(std::istream& is) {
  ChannelRealization cr;
  std::string line;
  std::size_t lineno = 0;
  auto target = [&](const std::string& name, std::size_t idx) -> CMatrix& {
    if (name == "F") return cr.F;
    auto& vec = name == "G" ? cr.G : cr.H;
    if (vec.size() <= idx) vec.resize(idx + 1);
    return vec[idx];
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;
    std::stringstream ss(line);
    std::string name;
    std::string cell;
    std::getline(ss, name, ',');
    double v[5];
    for (double& x : v) {
      if (!std::getline(ss, cell, ',')) throw IoError("realization csv: short line " + std::to_string(lineno));
      try {
        x = std::stod(cell);
      } catch (const std::exception&) {
        throw IoError("realization csv: malformed value at line " + std::to_string(lineno));
      }
    }
    const auto idx = static_cast<std::size_t>(v[0]);
    if (name == "rho") {
      cr.rho = v[3];
    } else if (name == "shadow") {
      cr.shadow.push_back(v[3]);
    } else if (name == "F_shape" || name == "G_shape" || name == "H_shape") {
      target(name.substr(0, 1), idx).setZero(static_cast<Eigen::Index>(v[1]), static_cast<Eigen::Index>(v[2]));
    } else if (name == "F" || name == "G" || name == "H") {
      CMatrix& m = target(name, idx);
      const auto r = static_cast<Eigen::Index>(v[1]);
      const auto c = static_cast<Eigen::Index>(v[2]);
      if (r >= m.rows() || c >= m.cols()) throw IoError("realization csv: entry outside shape at line " + std::to_string(lineno));
      m(r, c) = cplx{v[3], v[4]};
    } else {
      throw IoError("realization csv: unknown link '" + name + "' at line " + std::to_string(lineno));
    }
  }
  return cr;
}

}  // namespace nafcode::channel

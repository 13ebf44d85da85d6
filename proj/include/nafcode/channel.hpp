// Copyright 2026 The nafcode Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NAFCODE_CHANNEL_HPP
#define NAFCODE_CHANNEL_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nafcode/common.hpp"
#include "nafcode/rng.hpp"

namespace nafcode::channel {

enum class Scheme { Direct, Naf, VirtualRelay, AntennaSelection };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

/// (ns, nr, nd) antennas and the number of physical relays. For the
/// virtual-relay and antenna-selection schemes there is one physical relay
/// with nr > ns antennas.
struct Topology {
  int ns = 1;
  int nr = 1;
  int nd = 1;
  int relays = 1;
  Scheme scheme = Scheme::Naf;

  /// Cooperation frames per codeword.
  int frames() const;
  /// Relay antennas active in one cooperation frame.
  int active_relay_antennas() const;
  void validate() const;
};

struct PowerAllocation {
  double pi1 = 1.0;
  double pi2 = 0.5;
  double pi3 = 0.5;

  /// pi1 = 2 pi2 = 2 pi3 scaled to meet ns (pi1 + pi2) + nr pi3 = 2; for the
  /// direct scheme pi3 = 0 and pi1 = pi2 = 1 / ns.
  static PowerAllocation standard(const Topology& top);
  /// ns (pi1 + pi2) + nr pi3 = 2 within 1e-9, using the active relay antennas.
  void validate(const Topology& top) const;
};

/// How the relay scales what it heard.
enum class RelayGainRule {
  /// B = b I with the power constraint met with equality. For one relay
  /// antenna b^2 = 1 / (pi1 rho SNR |h|^2 + 1).
  TraceEquality,
  /// sqrt(SNR) B = sqrt(c min(1/lambda_max(H H^H), 1)) I, c = 1 / (1/SNR + pi1 rho).
  BoundedEigen,
};

/// One draw of all fading matrices for a superframe coherence block.
struct ChannelRealization {
  CMatrix F;               // nd x ns
  std::vector<CMatrix> G;  // nd x nr, per relay
  std::vector<CMatrix> H;  // nr x ns, per relay
  /// Shadowing amplitudes applied so far, order F, G_1..G_N, H_1..H_N.
  std::vector<double> shadow;
  double rho = 1.0;  // linear geometric gain of the source-relay hop

  int relays() const { return static_cast<int>(G.size()); }
};

struct EquivalentChannel {
  CMatrix He;               // 2 nd x 2 ns
  CMatrix B;                // nr x nr relay gain
  CMatrix P;                // sqrt(SNR) G B
  CMatrix Sigma_inv_sqrt;   // whitening of the second partition
};

double db_to_linear(double db);

ChannelRealization sample_realization(const Topology& top, double rho_db, Stream& rng);

double relay_gain_single(cplx h, const PowerAllocation& pa, double rho, double snr);
CMatrix relay_gain_matrix(const CMatrix& H, const PowerAllocation& pa, double rho, double snr);
CMatrix relay_gain(RelayGainRule rule, const CMatrix& H, const PowerAllocation& pa, double rho,
                   double snr);

/// Tr{(I + pi1 rho SNR H H^H) B^H B}; the relay power constraint is <= nr.
double relay_power(const CMatrix& H, const CMatrix& B, const PowerAllocation& pa, double rho,
                   double snr);

/// Closed-form 2x2 channel of the single-antenna relay link.
CMatrix equivalent_channel_single(cplx f, cplx g, cplx h, const PowerAllocation& pa, double rho,
                                  double snr);

/// Whitened 2nd x 2ns channel of one cooperation frame with relay gain B.
EquivalentChannel equivalent_channel_mimo(const CMatrix& F, const CMatrix& G, const CMatrix& H,
                                          const CMatrix& B, const PowerAllocation& pa, double rho,
                                          double snr);

/// Source-destination only: diag(sqrt(pi1) F, sqrt(pi2) F).
EquivalentChannel equivalent_channel_direct(const CMatrix& F, const PowerAllocation& pa);

/// Hermitian inverse square root with eigenvalues floored at 1e-12.
CMatrix inverse_sqrt_hermitian(const CMatrix& sigma);

/// Block-diagonal assembly diag(H_1, ..., H_N).
CMatrix superframe_channel(std::span<const CMatrix> blocks);

/// log2 det(I + SNR He He^H).
double mutual_information(const CMatrix& He, double snr);

/// Splits a physical realization into one single-relay link per cooperation frame.
struct FrameLink {
  CMatrix F;
  CMatrix G;  // empty for the direct scheme
  CMatrix H;
};

std::vector<FrameLink> cooperation_links(const ChannelRealization& cr, const Topology& top);

/// (1, nr, nd) -> nr virtual (1, 1, nd) relays sharing the matched-filter
/// source-relay gain sqrt(sum |h_i|^2); relay k forwards on antenna k.
std::vector<ChannelRealization> virtual_relay_expand(const ChannelRealization& cr);

/// Keeps the relay antenna with the largest relay-destination gain (lowest
/// index on ties); the relay still combines all antennas on reception.
ChannelRealization select_antenna(const ChannelRealization& cr);

/// Multiplies each link matrix by an independent 10^(x/20), x ~ N(0, sigma_db^2).
ChannelRealization apply_shadowing(const ChannelRealization& cr, double sigma_db, Stream& rng);

/// AWGN terms of one cooperation frame.
struct FrameNoise {
  CMatrix V1;  // nd x 2ns
  CMatrix W;   // nr x 2ns
  CMatrix V2;  // nd x 2ns
};

std::vector<FrameNoise> draw_noise(std::span<const FrameLink> links, int ns, Stream& rng);

struct Reception {
  /// Stacked vec() of the whitened per-frame observations [Y1; Sigma^-1/2 Y2].
  CVector whitened;
  std::vector<EquivalentChannel> equivalents;
};

struct ReceptionOptions {
  double snr = 1.0;
  RelayGainRule rule = RelayGainRule::TraceEquality;
  bool direct = false;
};

/// Runs both partitions literally: the relay listens in partition 1 and
/// forwards B Y_r in partition 2 while the source sends X_2. The second
/// partition is then whitened by Sigma^-1/2.
Reception simulate_reception(std::span<const CMatrix> frames, std::span<const FrameLink> links,
                             std::span<const FrameNoise> noise, const PowerAllocation& pa,
                             double rho, const ReceptionOptions& opt);

/// Equivalent-model output sqrt(SNR) He Xi + z for the same noise draws.
CVector equivalent_observation(std::span<const CMatrix> frames,
                               std::span<const EquivalentChannel> eqs,
                               std::span<const FrameLink> links,
                               std::span<const FrameNoise> noise, const PowerAllocation& pa,
                               double snr);

void write_realization_csv(std::ostream& os, const ChannelRealization& cr);
ChannelRealization read_realization_csv(std::istream& is);

}  // namespace nafcode::channel

#endif  // NAFCODE_CHANNEL_HPP

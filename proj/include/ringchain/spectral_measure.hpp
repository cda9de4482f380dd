#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ringchain/band_solver.hpp"

namespace ringchain {

/// Lebesgue measure of the positive spectrum inside the energy window [0, K].
struct MeasureReport {
  ChainSpec spec{0.0};
  double window = 0.0;  // K
  double measure = 0.0;
  double fraction = 0.0;
  int band_count = 0;
  int gap_count = 0;
  double resolution = kDefaultResolution;
};

MeasureReport spectrum_measure(const ChainSpec& spec, double window,
                               double resolution = kDefaultResolution);

/// Same report computed from an existing band list covering [0, window].
MeasureReport measure_from_bands(const ChainSpec& spec, std::span<const Band> bands, double window,
                                 double resolution);

/// Least-squares slope of log(fraction) against log(K). Zero for a chain
/// whose fraction stays at 1; requires at least two reports.
double fit_decay_exponent(std::span<const MeasureReport> reports);

enum class GapCertificate { in_gap_strong, in_gap_asymptotic, inconclusive };

std::string_view to_string(GapCertificate c);

/// Both sufficient gap conditions at one momentum:
///   strong:      r(k) |sin(k l) sin(k pi)| > 2
///   asymptotic:  |sin(k l) sin(k pi)| > 8 / k^2
/// Since r(k) > k^2 / 4, the asymptotic condition implies the strong one.
struct CertificateDetail {
  GapCertificate certificate = GapCertificate::inconclusive;
  bool strong = false;
  bool asymptotic = false;
  double product = 0.0;  // |sin(k l) sin(k pi)|
  double phi = 0.0;      // reduced dispersion at k
};

/// The logically strongest condition that holds: asymptotic (which also
/// implies strong), then strong, else inconclusive.
GapCertificate gap_certificate(const ChainSpec& spec, double k);
CertificateDetail certify(const ChainSpec& spec, double k);

/// k in M_l  <=>  |sin(k l)| > 2 sqrt(2) / k.
bool m_ell_membership(double k, double ell);

}  // namespace ringchain

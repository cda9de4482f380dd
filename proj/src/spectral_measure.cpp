#include "ringchain/spectral_measure.hpp"

#include <algorithm>
#include <cmath>

#include "ringchain/errors.hpp"

namespace ringchain {

MeasureReport measure_from_bands(const ChainSpec& spec, std::span<const Band> bands, double window,
                                 double resolution) {
  MeasureReport rep;
  rep.spec = spec;
  rep.window = window;
  rep.resolution = resolution;

  double cursor = 0.0;  // end of the last band seen, clipped to the window
  for (const Band& b : bands) {
    const double lo = std::max(0.0, b.e_lo);
    const double hi = std::min(window, b.e_hi);
    if (hi < lo) continue;
    rep.measure += hi - lo;
    ++rep.band_count;
    if (lo > cursor) ++rep.gap_count;
    cursor = std::max(cursor, hi);
  }
  if (cursor < window) ++rep.gap_count;
  rep.fraction = std::clamp(rep.measure / window, 0.0, 1.0);
  return rep;
}

MeasureReport spectrum_measure(const ChainSpec& spec, double window, double resolution) {
  if (!(window > 0.0) || !std::isfinite(window)) throw InvalidArgument("window K must be positive");
  const auto bands = positive_bands(spec, std::sqrt(window), resolution);
  return measure_from_bands(spec, bands, window, resolution);
}

double fit_decay_exponent(std::span<const MeasureReport> reports) {
  if (reports.size() < 2) throw InvalidArgument("decay fit needs at least two windows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(reports.size());
  for (const auto& r : reports) {
    if (!(r.fraction > 0.0)) throw InvalidArgument("decay fit needs positive fractions");
    const double x = std::log(r.window), y = std::log(r.fraction);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InvalidArgument("decay fit needs distinct windows");
  return (n * sxy - sx * sy) / denom;
}

std::string_view to_string(GapCertificate c) {
  switch (c) {
    case GapCertificate::in_gap_strong: return "in_gap_strong";
    case GapCertificate::in_gap_asymptotic: return "in_gap_asymptotic";
    case GapCertificate::inconclusive: return "inconclusive";
  }
  return "?";
}

CertificateDetail certify(const ChainSpec& spec, double k) {
  if (spec.is_tight()) throw InvalidArgument("gap certificates apply to loose chains");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("k must be positive");
  const double l = spec.link_length();
  CertificateDetail out;
  out.product = std::abs(detail::sin_pi(k * (l / detail::kPi)) * detail::sin_pi(k));
  out.strong = coupling_ratio(k) * out.product > 2.0;
  out.asymptotic = out.product > 8.0 / (k * k);
  out.phi = ReducedDispersion(spec, Branch::positive).value(k);
  if (out.asymptotic) {
    out.certificate = GapCertificate::in_gap_asymptotic;
  } else if (out.strong) {
    out.certificate = GapCertificate::in_gap_strong;
  }
  return out;
}

GapCertificate gap_certificate(const ChainSpec& spec, double k) { return certify(spec, k).certificate; }

bool m_ell_membership(double k, double ell) {
  if (!(k > 0.0) || !(ell > 0.0)) throw InvalidArgument("M_l membership needs k > 0 and l > 0");
  return std::abs(detail::sin_pi(k * (ell / detail::kPi))) > 2.0 * std::sqrt(2.0) / k;
}

}  // namespace ringchain

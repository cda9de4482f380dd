#include "ringchain/band_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ringchain/errors.hpp"
#include "ringchain/secular.hpp"

namespace ringchain {

namespace {

using detail::bisect_root;
using detail::cos_pi;
using detail::kPi;
using detail::sin_pi;

constexpr double kTouchTol = 1e-9;
constexpr double kKappaStart = 1.0 + 1e-8;
constexpr double kKappaCapStart = 8.0;
constexpr double kKappaCapLimit = 1e6;
constexpr int kFlatThetaSamples = 16;
constexpr double kFlatResidualTol = 1e-9;

double q_factor(double kappa) {
  const double k2 = kappa * kappa;
  return (k2 - 3.0) * (k2 - 3.0) / (4.0 * (k2 - 1.0));
}

double q_factor_prime(double kappa) {
  const double k2 = kappa * kappa;
  const double m = k2 - 1.0;
  return kappa * (k2 - 3.0) / m - kappa * (k2 - 3.0) * (k2 - 3.0) / (2.0 * m * m);
}

double coupling_ratio_prime(double k) {
  const double s = k * k + 1.0;
  return 0.5 * k - 2.0 * k / (s * s);
}

void validate_resolution(double resolution) {
  if (!(resolution > 0.0) || resolution > 1e-2) {
    throw InvalidArgument("resolution must lie in (0, 1e-2]");
  }
}

double clamp2(double v) { return std::clamp(v, -2.0, 2.0); }

// Inserts midpoints where the clamped dispersion jumps by more than 0.5.
void refine_into(const ReducedDispersion& d, double x0, double v0, double x1, double v1,
                 double min_step, std::vector<double>& out) {
  if (x1 - x0 <= min_step || std::abs(clamp2(v1) - clamp2(v0)) <= 0.5) return;
  const double xm = 0.5 * (x0 + x1);
  const double vm = d.value(xm);
  refine_into(d, x0, v0, xm, vm, min_step, out);
  out.push_back(xm);
  refine_into(d, xm, vm, x1, v1, min_step, out);
}

std::vector<double> build_grid(const ReducedDispersion& d, double a, double b, double step,
                               const std::vector<double>& extra) {
  const auto n = static_cast<std::size_t>(std::ceil((b - a) / step));
  std::vector<double> base;
  base.reserve(n + extra.size() + 1);
  for (std::size_t i = 0; i < n; ++i) base.push_back(a + static_cast<double>(i) * step);
  base.push_back(b);
  for (double x : extra) {
    if (x > a && x < b) base.push_back(x);
  }
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());

  std::vector<double> grid;
  grid.reserve(base.size() * 2);
  double prev_v = d.value(base.front());
  grid.push_back(base.front());
  for (std::size_t i = 1; i < base.size(); ++i) {
    const double v = d.value(base[i]);
    refine_into(d, base[i - 1], prev_v, base[i], v, step / 64.0, grid);
    grid.push_back(base[i]);
    prev_v = v;
  }
  return grid;
}

struct Partition {
  std::vector<double> points;     // sorted partition of [a, b]
  std::vector<double> extrema;    // sorted interior extrema of Phi
  std::vector<double> crossings;  // sorted level crossings
};

// Splits [a, b] into pieces on which Phi is monotone and locates every
// crossing of the requested levels inside each piece.
Partition partition(const ReducedDispersion& d, const std::vector<double>& grid,
                    const std::vector<double>& levels) {
  Partition p;
  std::vector<double> slopes(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) slopes[i] = d.slope(grid[i]);

  auto slope_fn = [&d](double x) { return d.slope(x); };
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (i > 0 && slopes[i] == 0.0) p.extrema.push_back(grid[i]);
    if ((slopes[i] < 0.0 && slopes[i + 1] > 0.0) || (slopes[i] > 0.0 && slopes[i + 1] < 0.0)) {
      p.extrema.push_back(bisect_root(slope_fn, grid[i], grid[i + 1]));
    }
  }

  std::vector<double> breaks;
  breaks.reserve(p.extrema.size() + 2);
  breaks.push_back(grid.front());
  breaks.insert(breaks.end(), p.extrema.begin(), p.extrema.end());
  breaks.push_back(grid.back());

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    if (!(hi > lo)) continue;
    for (double level : levels) {
      const double e_lo = d.excess(lo, level);
      const double e_hi = d.excess(hi, level);
      if ((e_lo < 0.0 && e_hi > 0.0) || (e_lo > 0.0 && e_hi < 0.0)) {
        auto f = [&d, level](double x) { return d.excess(x, level); };
        p.crossings.push_back(bisect_root(f, lo, hi));
      }
    }
  }
  std::sort(p.crossings.begin(), p.crossings.end());

  p.points = breaks;
  p.points.insert(p.points.end(), p.crossings.begin(), p.crossings.end());
  std::sort(p.points.begin(), p.points.end());
  p.points.erase(std::unique(p.points.begin(), p.points.end()), p.points.end());
  return p;
}

bool contains_sorted(const std::vector<double>& v, double x) {
  return std::binary_search(v.begin(), v.end(), x);
}

struct MomentumBand {
  double lo, hi;
  std::vector<double> touchings;
};

bool touches_unit(const ReducedDispersion& d, double x) {
  return std::abs(d.excess(x, 1.0)) <= kTouchTol || std::abs(d.excess(x, -1.0)) <= kTouchTol;
}

// +1 above the band levels, -1 below, 0 inside.
int side(const ReducedDispersion& d, double x) {
  if (d.excess(x, 1.0) > 0.0) return 1;
  if (d.excess(x, -1.0) < 0.0) return -1;
  return 0;
}

std::vector<MomentumBand> sublevel_bands(const ReducedDispersion& d, const Partition& p) {
  const auto& pts = p.points;
  const std::size_t nseg = pts.size() - 1;
  std::vector<int> sides(nseg);
  for (std::size_t i = 0; i < nseg; ++i) sides[i] = side(d, 0.5 * (pts[i] + pts[i + 1]));

  auto isolated_touch = [&](std::size_t i) {
    return contains_sorted(p.extrema, pts[i]) && touches_unit(d, pts[i]);
  };

  std::vector<MomentumBand> bands;
  bool open = false;
  for (std::size_t i = 0; i < nseg; ++i) {
    if (sides[i] == 0) {
      if (!open) {
        bands.push_back({pts[i], pts[i + 1], {}});
        open = true;
      } else {
        if (isolated_touch(i)) bands.back().touchings.push_back(pts[i]);
        bands.back().hi = pts[i + 1];
      }
    } else {
      open = false;
      if (i == 0 || sides[i - 1] == 0) continue;
      // Zero-width band: a tangency from outside, or a band narrower than
      // the floating-point spacing, where Phi jumps from above +1 to below -1.
      if (isolated_touch(i) || sides[i - 1] == -sides[i]) bands.push_back({pts[i], pts[i], {}});
    }
  }
  return bands;
}

double theta_at(const ReducedDispersion& d, double x) {
  const double v = d.value(x);
  if (v >= 1.0 - kTouchTol) return 0.0;
  if (v <= -1.0 + kTouchTol) return -kPi;
  return std::acos(v);
}

std::vector<SolverError::Sample> profile(const ReducedDispersion& d, double a, double b) {
  std::vector<SolverError::Sample> out;
  constexpr int n = 256;
  for (int i = 0; i <= n; ++i) {
    const double x = a + (b - a) * i / n;
    out.push_back({x, d.value(x)});
  }
  return out;
}

}  // namespace

double coupling_ratio(double k) {
  const double k2 = k * k;
  return (k2 * k2 + 2.0 * k2 + 5.0) / (4.0 * (k2 + 1.0));
}

ReducedDispersion::ReducedDispersion(ChainSpec spec, Branch branch)
    : spec_(spec), branch_(branch) {
  if (branch == Branch::zero) throw InvalidArgument("reduced dispersion needs a nonzero branch");
}

double ReducedDispersion::value(double x) const {
  const double l = spec_.link_length();
  if (branch_ == Branch::positive) {
    if (spec_.is_tight()) return cos_pi(x);
    const double xl = x * (l / kPi);
    return cos_pi(xl) * cos_pi(x) - coupling_ratio(x) * sin_pi(xl) * sin_pi(x);
  }
  if (spec_.is_tight()) return std::cosh(x * kPi);
  const double e0 = excess(x, 0.0);
  if (e0 == 0.0) return 0.0;
  const double a = x * kPi, b = x * l;
  // value = excess(x, 0) * sinh(a) sinh(b)
  return e0 * std::exp(a + b) * 0.25 * detail::one_minus_exp_neg2(a) *
         detail::one_minus_exp_neg2(b);
}

double ReducedDispersion::excess(double x, double level) const {
  if (branch_ == Branch::positive || spec_.is_tight()) return value(x) - level;
  const double l = spec_.link_length();
  const double a = x * kPi, b = x * l;
  return detail::cosh_over_sinh_sinh(x * (kPi - l), a, b) - level * detail::inv_sinh_sinh(a, b) -
         q_factor(x);
}

double ReducedDispersion::slope(double x) const {
  if (branch_ == Branch::positive || spec_.is_tight()) return derivative(x);
  const double l = spec_.link_length();
  const double a = x * kPi, b = x * l;
  return -q_factor(x) * (l * detail::coth(b) + kPi * detail::coth(a)) - q_factor_prime(x) +
         (kPi - l) * detail::sinh_over_sinh_sinh(x * (kPi - l), a, b);
}

double ReducedDispersion::derivative(double x) const {
  const double l = spec_.link_length();
  if (branch_ == Branch::positive) {
    if (spec_.is_tight()) return -kPi * sin_pi(x);
    const double xl = x * (l / kPi);
    const double sl = sin_pi(xl), cl = cos_pi(xl), sp = sin_pi(x), cp = cos_pi(x);
    const double r = coupling_ratio(x);
    return -l * sl * cp - kPi * cl * sp - coupling_ratio_prime(x) * sl * sp -
           r * (l * cl * sp + kPi * sl * cp);
  }
  if (spec_.is_tight()) return kPi * std::sinh(x * kPi);
  const double s = slope(x);
  if (s == 0.0) return 0.0;
  const double a = x * kPi, b = x * l;
  return s * std::exp(a + b) * 0.25 * detail::one_minus_exp_neg2(a) *
         detail::one_minus_exp_neg2(b);
}

std::vector<FlatBand> flat_bands(const ChainSpec& spec, double e_max) {
  if (!(e_max > 0.0) || !std::isfinite(e_max)) throw InvalidArgument("e_max must be positive");
  const ReducedDispersion positive(spec, Branch::positive);
  std::vector<FlatBand> out;

  auto verify = [&spec](const SpectralParameter& sp) {
    for (int i = 0; i < kFlatThetaSamples; ++i) {
      const auto q = normalize_theta(-kPi + 2.0 * kPi * i / kFlatThetaSamples);
      const double v = closed_form_value(spec, sp, q);
      if (!(std::abs(v) < kFlatResidualTol)) {
        throw std::logic_error("flat band at E = " + std::to_string(sp.energy()) +
                               " fails the closed form at theta = " + std::to_string(q.value()));
      }
    }
  };

  if (spec.is_tight()) {
    const auto sp = SpectralParameter::from_kappa(1.0);
    verify(sp);
    out.push_back({-1.0, FlatBandSource::kappa_squared_minus_one, false});
  } else {
    verify(SpectralParameter::from_energy(0.0));  // the k^5 prefactor vanishes
    out.push_back({0.0, FlatBandSource::zero_momentum, std::abs(positive.value(0.0)) <= 1.0});
  }
  for (int n = 1; static_cast<double>(n) * n <= e_max; ++n) {
    const double k = n;
    verify(SpectralParameter::from_k(k));
    out.push_back({k * k, FlatBandSource::sin_k_pi, std::abs(positive.value(k)) <= 1.0 + 1e-12});
  }
  return out;
}

std::vector<double> anchor_points(const ChainSpec& spec, double k_max) {
  std::vector<double> pts;
  for (int m = 1; m <= k_max; ++m) pts.push_back(m);
  if (!spec.is_tight()) {
    const double step = kPi / spec.link_length();
    for (int m = 1; m * step <= k_max; ++m) pts.push_back(m * step);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> merged;
  for (double x : pts) {
    if (!merged.empty() && x - merged.back() <= 1e-9 * std::max(1.0, x)) continue;
    merged.push_back(x);
  }
  return merged;
}

std::vector<Band> positive_bands(const ChainSpec& spec, double k_max, double resolution) {
  if (!(k_max > 0.0) || !std::isfinite(k_max)) throw InvalidArgument("k_max must be positive");
  validate_resolution(resolution);

  std::vector<double> anchors;
  if (!spec.is_tight()) {
    anchors = anchor_points(spec, k_max);
    double spacing = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < anchors.size(); ++i) {
      spacing = std::min(spacing, anchors[i] - anchors[i - 1]);
    }
    if (!anchors.empty()) spacing = std::min(spacing, anchors.front());
    if (resolution >= 0.5 * spacing) {
      throw InvalidArgument("resolution " + std::to_string(resolution) +
                            " cannot separate anchor points spaced by " + std::to_string(spacing));
    }
  }

  const ReducedDispersion d(spec, Branch::positive);
  const auto grid = build_grid(d, 0.0, k_max, resolution, anchors);
  const auto part = partition(d, grid, {-1.0, 1.0});

  std::vector<Band> bands;
  for (const auto& mb : sublevel_bands(d, part)) {
    Band b;
    b.kind = BandKind::positive_ac;
    b.e_lo = mb.lo * mb.lo;
    b.e_hi = mb.hi * mb.hi;
    b.edge_theta_lo = theta_at(d, mb.lo);
    b.edge_theta_hi = theta_at(d, mb.hi);
    for (double x : mb.touchings) b.touchings.push_back(x * x);
    bands.push_back(std::move(b));
  }
  return bands;
}

std::vector<Band> negative_bands(const ChainSpec& spec, double resolution) {
  validate_resolution(resolution);
  if (spec.is_tight()) return {};

  const ReducedDispersion d(spec, Branch::negative);
  const double a = kKappaStart;
  if (!(d.excess(a, -1.0) < 0.0)) {
    throw SolverError("dispersion does not diverge to -infinity at kappa = 1+", profile(d, a, 2.0));
  }
  double cap = kKappaCapStart;
  while (!(d.excess(cap, -1.0) < 0.0)) {
    cap *= 2.0;
    if (cap > kKappaCapLimit) {
      throw SolverError("no kappa cap with f_l < -1 found", profile(d, a, kKappaCapLimit));
    }
  }

  const double root3 = std::sqrt(3.0);
  const auto grid = build_grid(d, a, cap, resolution, {root3});
  const auto part = partition(d, grid, {-1.0, 1.0});
  const auto mbands = sublevel_bands(d, part);

  std::vector<Band> bands;
  for (auto it = mbands.rbegin(); it != mbands.rend(); ++it) {
    Band b;
    b.kind = BandKind::negative_ac;
    b.e_lo = -it->hi * it->hi;
    b.e_hi = -it->lo * it->lo;
    b.edge_theta_lo = theta_at(d, it->hi);
    b.edge_theta_hi = theta_at(d, it->lo);
    for (auto t = it->touchings.rbegin(); t != it->touchings.rend(); ++t) {
      b.touchings.push_back(-(*t) * (*t));
    }
    bands.push_back(std::move(b));
  }

  // f_l(sqrt 3) = cosh(sqrt3 (pi - l)) equals 1 only for l = pi.
  const bool single = d.excess(root3, 1.0) <= kTouchTol;
  const std::size_t expected = single ? 1 : 2;
  if (bands.size() != expected) {
    throw SolverError("expected " + std::to_string(expected) + " negative band(s), found " +
                          std::to_string(bands.size()),
                      profile(d, a, std::min(cap, 4.0)));
  }
  for (const auto& b : bands) {
    if (!(b.e_hi < -1.0)) throw SolverError("negative band reaches above -1", profile(d, a, 4.0));
  }
  if (single) {
    if (!bands[0].contains(-3.0)) throw SolverError("single band misses E = -3", profile(d, a, 4.0));
  } else if (!(bands[0].e_hi < -3.0 && bands[1].e_lo > -3.0)) {
    throw SolverError("E = -3 is not in the gap between the negative bands", profile(d, a, 4.0));
  }
  return bands;
}

std::vector<SpectralParameter> dispersion(const ChainSpec& spec, const Quasimomentum& q,
                                          double k_lo, double k_hi, double resolution) {
  if (!(k_lo >= 0.0) || !(k_hi > k_lo) || !std::isfinite(k_hi)) {
    throw InvalidArgument("dispersion needs 0 <= k_lo < k_hi");
  }
  validate_resolution(resolution);

  std::vector<double> ks;
  if (spec.is_tight()) {
    // cos(k pi) = cos(theta)  <=>  k = |theta/pi + 2n|
    const double t = std::abs(q.value() / kPi);
    for (int n = 0; 2.0 * n - t < k_hi; ++n) {
      for (double k : {2.0 * n + t, 2.0 * n - t}) {
        if (k > k_lo && k < k_hi) ks.push_back(k);
      }
    }
  } else {
    const ReducedDispersion d(spec, Branch::positive);
    const double level = q.cos();
    const auto grid = build_grid(d, k_lo, k_hi, resolution, anchor_points(spec, k_hi));
    const auto part = partition(d, grid, {level});
    for (double x : part.crossings) {
      if (x > k_lo && x < k_hi) ks.push_back(x);
    }
    for (double x : part.extrema) {
      if (x > k_lo && x < k_hi && std::abs(d.excess(x, level)) <= kTouchTol) ks.push_back(x);
    }
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::vector<SpectralParameter> out;
  out.reserve(ks.size());
  for (double k : ks) out.push_back(SpectralParameter::from_k(k));
  return out;
}

}  // namespace ringchain

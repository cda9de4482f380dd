#include "ringchain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "ringchain/detail/numeric.hpp"
#include "ringchain/errors.hpp"
#include "ringchain/secular.hpp"

namespace ringchain {

namespace {

constexpr double kWindow = 0.25;
constexpr int kSamples = 100;

SpectralParameter param(Branch branch, double x) {
  return branch == Branch::positive ? SpectralParameter::from_k(x) : SpectralParameter::from_kappa(x);
}

template <class F>
std::vector<double> sign_change_roots(F&& f, double a, double b) {
  std::vector<double> roots;
  const double h = (b - a) / kSamples;
  double x0 = a;
  double v0 = f(x0);
  if (v0 == 0.0) roots.push_back(x0);
  for (int i = 1; i <= kSamples; ++i) {
    const double x1 = a + h * i;
    const double v1 = f(x1);
    if (v1 == 0.0) {
      roots.push_back(x1);
    } else if (v0 != 0.0 && (v0 < 0.0) != (v1 < 0.0)) {
      roots.push_back(detail::bisect_root(f, x0, x1));
    }
    x0 = x1;
    v0 = v1;
  }
  return roots;
}

double nearest(const std::vector<double>& xs, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (double y : xs) best = std::min(best, std::abs(x - y));
  return best;
}

}  // namespace

OracleReport check_oracle_equivalence(const ChainSpec& spec, Branch branch, int n_points,
                                      std::uint64_t seed, double tolerance) {
  if (branch == Branch::zero) throw InvalidArgument("oracle check needs a nonzero branch");
  if (n_points <= 0) throw InvalidArgument("n_points must be positive");

  OracleReport rep;
  rep.spec = spec;
  rep.branch = branch;
  rep.tolerance = tolerance;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta_dist(-detail::kPi, detail::kPi);
  std::uniform_real_distribution<double> start_dist(0.1, branch == Branch::positive ? 20.0 : 6.0);

  for (int w = 0; w < n_points; ++w) {
    const double theta = theta_dist(rng);
    const double a = start_dist(rng);
    const double b = a + kWindow;
    const Quasimomentum q = normalize_theta(theta);

    auto ndet = [&](double x) { return normalized_determinant(assemble(spec, param(branch, x), q)); };

    // Phase from the sample with the largest modulus.
    std::complex<double> peak = 0.0;
    std::vector<std::complex<double>> samples;
    for (int i = 0; i <= kSamples; ++i) {
      samples.push_back(ndet(a + (b - a) * i / kSamples));
      if (std::abs(samples.back()) > std::abs(peak)) peak = samples.back();
    }
    if (peak == 0.0) throw SolverError("determinant vanishes on a whole oracle window");
    const std::complex<double> rot = std::conj(peak) / std::abs(peak);
    for (const auto& s : samples) {
      rep.max_imag_leakage = std::max(rep.max_imag_leakage, std::abs((s * rot).imag()) / std::abs(peak));
    }

    auto det_real = [&](double x) { return (ndet(x) * rot).real(); };
    auto closed = [&](double x) { return closed_form_scaled(spec, param(branch, x), q); };

    const auto det_roots = sign_change_roots(det_real, a, b);
    const auto cf_roots = sign_change_roots(closed, a, b);
    rep.windows += 1;
    rep.determinant_roots += static_cast<int>(det_roots.size());
    rep.closed_form_roots += static_cast<int>(cf_roots.size());

    auto near_edge = [&](double x) { return x - a <= tolerance || b - x <= tolerance; };
    for (double r : det_roots) {
      const double d = nearest(cf_roots, r);
      if (d <= tolerance) {
        rep.matched += 1;
        rep.max_root_distance = std::max(rep.max_root_distance, d);
      } else if (!near_edge(r)) {
        rep.mismatches.push_back({theta, r, true});
      }
    }
    for (double r : cf_roots) {
      if (nearest(det_roots, r) > tolerance && !near_edge(r)) rep.mismatches.push_back({theta, r, false});
    }
  }
  return rep;
}

}  // namespace ringchain

#pragma once

// Auxiliary functions used in the negative band-edge analysis, and the
// small-l / large-l predictions compared against the band solver.

#include <span>
#include <string>
#include <vector>

#include "ringchain/band_solver.hpp"

namespace ringchain {

namespace lemma {

/// f_l(kappa), the negative-branch reduced dispersion.
double f_ell(double kappa, double ell);

/// h(kappa) = (kappa^2 - 3) sinh(kappa pi) / (2 sqrt(kappa^2 - 1)); f_pi = 1 - h^2.
double h(double kappa);
double h_prime(double kappa);

/// g1(kappa) = 2 kappa (kappa^2 + 1) / ((3 - kappa^2)(kappa^2 - 1)) on (1, sqrt 3).
double g1(double kappa);

/// g2(kappa, l) = pi coth(kappa pi) + l coth(kappa l) + (l - pi) coth(kappa (pi - l) / 2),
/// continuous at l = 0 and l = pi.
double g2(double kappa, double ell);

/// lim_{l -> 0+} g2 = 1/kappa + pi (coth(kappa pi) - coth(kappa pi / 2)).
double g2_small_ell(double kappa);

/// Closed-form partial derivative of g2 in l; singular at l = pi.
double g2_dell(double kappa, double ell);

/// Limit of g2_dell at l = pi: coth(kappa pi) - kappa pi csch^2(kappa pi).
double g2_dell_at_pi(double kappa);

/// sup over l of g2(kappa, .) = pi (1 + coth(kappa pi)).
double g2_sup(double kappa);

/// F(u) = (sinh u - u) / (2 sinh^2(u/2)); odd, increasing, F(0+) = 0, F(inf) = 1.
double F(double u);

/// F'(u) = (u coth(u/2) - 2) / (cosh u - 1).
double F_prime(double u);

/// (pi/kappa) (kappa^2 - 1)(3 - kappa^2) / (kappa^2 + 1); compared with tanh(kappa pi).
double tanh_competitor(double kappa);

/// g(kappa, l) = (kappa^2-3)^2 sinh(kappa l) sinh(kappa pi)
///               + 4 (kappa^2-1)(cos theta - cosh(kappa (pi - l))).
double implicit_g(double kappa, double ell, double cos_theta);

/// implicit_g divided by the sum of the magnitudes of its terms.
double implicit_g_relative(double kappa, double ell, double cos_theta);

}  // namespace lemma

struct Witness {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Evaluates every numerical witness of the negative band-edge analysis.
std::vector<Witness> evaluate_lemma_witnesses();

/// As evaluate_lemma_witnesses, but throws WitnessFailure if any fails.
std::vector<Witness> lemma_witnesses();

struct UpperBandPrediction {
  double kappa = 0.0;              // kappa(l; theta)
  double energy = 0.0;             // -kappa^2
  double lower_edge_energy = 0.0;  // -1 - l coth(pi/2)
  double band_width = 0.0;         // 2 l / sinh(pi)
  bool in_regime = true;
  std::string note;
};

/// Leading-order position of the upper negative band for small l.
UpperBandPrediction small_l_upper_band(double ell, const Quasimomentum& q);

struct LowerBandPrediction {
  double kappa = 0.0;  // (4/l)^{1/3}
  double energy = 0.0;
  bool in_regime = true;
  std::string note;
};

/// Leading-order position of the lower negative band for small l; theta-independent.
LowerBandPrediction small_l_lower_band(double ell);

struct SqueezePrediction {
  double epsilon = 0.0;              // 4 exp(-pi sqrt 3)
  double kappa_sq_upper_band = 0.0;  // 3 - epsilon
  double kappa_sq_lower_band = 0.0;  // 3 + epsilon
  double energy_upper_band = 0.0;
  double energy_lower_band = 0.0;
  bool in_regime = true;
  std::string note;
};

/// Large-l positions of the negative band pair around kappa^2 = 3.
SqueezePrediction large_l_squeeze(double ell);

/// (2n + 1)(pi / l)^2: distance between the anchor energies (n pi/l)^2 and ((n+1) pi/l)^2.
double large_l_gap_spacing(int n, double ell);

struct AsymptoticRow {
  std::string quantity;
  double predicted = 0.0;
  double solved = 0.0;
  double ratio = 0.0;  // solved / predicted
};

/// Predicted versus solved quantities for the regime(s) l falls into.
std::vector<AsymptoticRow> asymptotic_comparison(double ell, double resolution = kDefaultResolution);

/// sup over E in [0, e_max] of dist(E, sigma(H_l) cap [0, e_max]); the tight
/// chain's positive spectrum is all of [0, e_max].
double distance_from_tight_spectrum(const ChainSpec& spec, double e_max,
                                    double resolution = kDefaultResolution);

struct SetConvergenceEntry {
  double ell = 0.0;
  double hausdorff = 0.0;
  bool witness_found = false;
  double witness_window = 0.0;  // K of the first [K, K + width] with gap fraction > 1/2
  double witness_gap_fraction = 0.0;
};

struct SetConvergenceReport {
  std::vector<SetConvergenceEntry> entries;
  bool distance_decreasing = false;
  bool threshold_growing = false;
  bool passed() const { return distance_decreasing && threshold_growing; }
};

/// Set convergence of sigma(H_l) towards sigma(H_0) on [0, e_max] along a
/// decreasing list of l, together with the high-energy gap windows that make
/// the convergence nonuniform.
SetConvergenceReport set_convergence_check(std::span<const double> ells, double e_max,
                                           double resolution = kDefaultResolution,
                                           double window_width = 10.0, double search_limit = 1e4);

}  // namespace ringchain

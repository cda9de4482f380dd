#pragma once

// Flat bands, absolutely continuous bands and gaps from the reduced
// dispersion Phi: E belongs to the ac spectrum iff |Phi| <= 1.

#include <vector>

#include "ringchain/graph_model.hpp"

namespace ringchain {

inline constexpr double kDefaultResolution = 1e-3;

/// Reduced dispersion of one energy branch, as a function of k (positive)
/// or kappa (negative):
///   tight, E>0:  cos(k pi)
///   tight, E<0:  cosh(kappa pi)
///   loose, E>0:  cos(k l) cos(k pi) - r(k) sin(k l) sin(k pi),
///                r(k) = (k^4 + 2k^2 + 5) / (4 (k^2 + 1))
///   loose, E<0:  f_l(kappa) = cosh(kappa (pi - l))
///                  - (kappa^2-3)^2 / (4 (kappa^2-1)) sinh(kappa l) sinh(kappa pi)
/// The loose negative expression is valid on both sides of kappa = 1 (it is
/// the same function as the kappa < 1 rewriting) and diverges at kappa = 1.
class ReducedDispersion {
 public:
  ReducedDispersion(ChainSpec spec, Branch branch);

  const ChainSpec& spec() const noexcept { return spec_; }
  Branch branch() const noexcept { return branch_; }

  double value(double x) const;
  /// Same sign as value(x) - level, evaluated in an overflow-safe scale.
  double excess(double x, double level) const;
  /// Same sign as the derivative of value at x, overflow-safe scale.
  double slope(double x) const;
  /// Derivative of value at x (may overflow to infinity on the negative branch).
  double derivative(double x) const;

 private:
  ChainSpec spec_;
  Branch branch_;
};

/// r(k) = (k^4 + 2k^2 + 5) / (4 (k^2 + 1)).
double coupling_ratio(double k);

std::vector<FlatBand> flat_bands(const ChainSpec& spec, double e_max);

/// Points k = m pi / l and k = m (m >= 1) up to k_max, merged and sorted.
/// Each lies in the closure of a positive band of a loose chain.
std::vector<double> anchor_points(const ChainSpec& spec, double k_max);

/// Maximal intervals in E of {k in [0, k_max] : |Phi(k)| <= 1}, sorted.
std::vector<Band> positive_bands(const ChainSpec& spec, double k_max,
                                 double resolution = kDefaultResolution);

/// Negative ac bands of a loose chain, sorted by energy. Empty for the tight
/// chain, whose only negative spectrum is the flat band at -1.
std::vector<Band> negative_bands(const ChainSpec& spec, double resolution = kDefaultResolution);

/// Momenta k in the open range (k_lo, k_hi) with Phi(k) = cos(theta).
std::vector<SpectralParameter> dispersion(const ChainSpec& spec, const Quasimomentum& q,
                                          double k_lo, double k_hi,
                                          double resolution = kDefaultResolution);

}  // namespace ringchain

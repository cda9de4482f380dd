#pragma once

// Domain types shared by every analysis: the cyclic vertex coupling, the
// chain geometry, energy parametrizations and band records.

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ringchain/detail/numeric.hpp"

namespace ringchain {

using ComplexMatrix = Eigen::MatrixXcd;

/// Length of every ring arc. Each ring is made of four arcs of this length,
/// so the ring circumference is 2*pi.
inline constexpr double kArcLength = detail::kPi / 2.0;

/// Vertex coupling (U - I) psi + i (U + I) psi' = 0 with U the cyclic shift
/// of size n: row j carries a single 1 in column j+1 mod n.
class VertexCoupling {
 public:
  explicit VertexCoupling(int degree);

  int degree() const noexcept { return degree_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  int degree_;
  ComplexMatrix matrix_;
};

VertexCoupling make_coupling(int n);

enum class ChainModel { tight, loose };

/// Periodic ring chain. link_length == 0 couples neighbouring rings directly
/// at their touching point; link_length > 0 inserts a connecting segment.
class ChainSpec {
 public:
  explicit ChainSpec(double link_length);

  static ChainSpec tight() { return ChainSpec(0.0); }
  static ChainSpec loose(double link_length);

  double link_length() const noexcept { return link_length_; }
  ChainModel model() const noexcept {
    return link_length_ == 0.0 ? ChainModel::tight : ChainModel::loose;
  }
  bool is_tight() const noexcept { return model() == ChainModel::tight; }

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

 private:
  double link_length_;
};

enum class Branch { negative, zero, positive };

std::string_view to_string(Branch b);

/// Energy E together with its momentum parametrization: E = k^2 with k > 0
/// on the positive branch, E = -kappa^2 with kappa > 0 on the negative one.
class SpectralParameter {
 public:
  static SpectralParameter from_energy(double energy);
  static SpectralParameter from_k(double k);
  static SpectralParameter from_kappa(double kappa);

  double energy() const noexcept { return energy_; }
  Branch branch() const noexcept { return branch_; }

  /// k on the positive branch; throws otherwise.
  double k() const;
  /// kappa on the negative branch; throws otherwise.
  double kappa() const;
  /// k or kappa, whichever applies; 0 at zero energy.
  double momentum() const noexcept { return momentum_; }

 private:
  SpectralParameter(double energy, Branch branch, double momentum)
      : energy_(energy), branch_(branch), momentum_(momentum) {}

  double energy_;
  Branch branch_;
  double momentum_;
};

/// Quasimomentum in the Brillouin zone [-pi, pi).
class Quasimomentum {
 public:
  static Quasimomentum normalize(double raw);

  double value() const noexcept { return theta_; }
  double cos() const noexcept { return std::cos(theta_); }

 private:
  explicit Quasimomentum(double theta) : theta_(theta) {}
  double theta_;
};

Quasimomentum normalize_theta(double raw);

enum class BandKind { positive_ac, negative_ac };

/// Closed energy interval of absolutely continuous spectrum.
///
/// Edges sit where the reduced dispersion equals +1 (theta = 0) or -1
/// (theta = -pi). `touchings` lists interior energies where |Phi| reaches 1
/// tangentially; there two quasimomentum branches meet without opening a gap.
struct Band {
  double e_lo = 0.0;
  double e_hi = 0.0;
  double edge_theta_lo = 0.0;
  double edge_theta_hi = 0.0;
  BandKind kind = BandKind::positive_ac;
  std::vector<double> touchings;

  double width() const noexcept { return e_hi - e_lo; }
  bool contains(double e, double slack = 0.0) const noexcept {
    return e >= e_lo - slack && e <= e_hi + slack;
  }
};

enum class FlatBandSource {
  sin_k_pi,                // sin(k pi) prefactor, E = n^2 with n >= 1
  kappa_squared_minus_one, // (kappa^2 - 1) prefactor, E = -1
  zero_momentum,           // k^5 prefactor of the loose chain, E = 0
};

std::string_view to_string(FlatBandSource s);

/// Infinitely degenerate eigenvalue (theta-independent fiber eigenvalue).
struct FlatBand {
  double energy = 0.0;
  FlatBandSource source = FlatBandSource::sin_k_pi;
  bool embedded = false;
};

}  // namespace ringchain

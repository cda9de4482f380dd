#pragma once

// Fiber-operator secular systems and the closed-form spectral conditions.
//
// The assembled determinant and the closed forms are two independent routes
// to the same zero set; band extraction uses only the closed forms.

#include <complex>

#include "ringchain/graph_model.hpp"

namespace ringchain {

/// Largest kappa * max(pi, link) for which the raw system is formed.
inline constexpr double kOverflowGuard = 700.0;

/// Linear system for the Ansatz coefficients of one period cell.
///
/// Tight chain (8 unknowns c1+,c1-,...,c4+,c4-): rows 0-3 Floquet
/// conditions, rows 4-7 the four vertex relations.
/// Loose chain (12 unknowns a1+,a1-,a2+,a2-,a3+,a3-,b1+,...,b3-): rows 0-1
/// midpoint smoothness of the link, rows 2-5 Floquet, rows 6-11 the vertex
/// relations at the two vertices of the cell.
///
/// Positive energies use the basis e^{+ikx}, e^{-ikx}; negative energies use
/// cosh(kappa x), sinh(kappa x).
struct SecularSystem {
  ChainModel model = ChainModel::tight;
  Branch branch = Branch::positive;
  ComplexMatrix matrix;

  int size() const noexcept { return static_cast<int>(matrix.rows()); }
};

SecularSystem assemble(const ChainSpec& spec, const SpectralParameter& sp, const Quasimomentum& q);

/// Determinant by partially pivoted LU.
std::complex<double> determinant(const SecularSystem& sys);

/// Determinant divided by the product of the row 2-norms; |value| <= 1.
std::complex<double> normalized_determinant(const SecularSystem& sys);

/// Left-hand side of the displayed spectral condition, prefactors included:
///   tight, E>0:  k^3 (k^2+1) sin(k pi) (cos(k pi) - cos theta)
///   tight, E<0:  kappa^3 (kappa^2-1) sinh(kappa pi) (cosh(kappa pi) - cos theta)
///   loose, E>0:  k^5 sin(k pi) ((k^4+2k^2+5) sin(k pi) sin(k l)
///                               - 4 (k^2+1)(cos(k pi) cos(k l) - cos theta))
///   loose, E<0:  kappa^5 sinh(kappa pi) (4 (1-kappa^2)(cosh(kappa pi) cosh(kappa l) - cos theta)
///                               + (kappa^4-2kappa^2+5) sinh(kappa pi) sinh(kappa l))
/// Saturates to +-infinity (never NaN) when the value exceeds double range.
double closed_form_value(const ChainSpec& spec, const SpectralParameter& sp, const Quasimomentum& q);

/// closed_form_value multiplied by a positive factor exp(-kappa (2 pi + l))
/// on the negative branch (1 on the positive branch). Always finite; same
/// sign and zero set as closed_form_value.
double closed_form_scaled(const ChainSpec& spec, const SpectralParameter& sp, const Quasimomentum& q);

/// On-shell vertex scattering matrix S(k) = (k-1+(k+1)U) (k+1+(k-1)U)^{-1}.
ComplexMatrix vertex_scattering(int n, double k);

/// Eigenvalue of S(k) on the eigenspace of U with eigenvalue lambda.
std::complex<double> scattering_eigenvalue(double k, std::complex<double> lambda);

}  // namespace ringchain

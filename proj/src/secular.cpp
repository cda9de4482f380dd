#include "ringchain/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "ringchain/errors.hpp"

namespace ringchain {

namespace {

using detail::cos_pi;
using detail::kPi;
using detail::one_minus_exp_neg2;
using detail::sin_pi;
using cplx = std::complex<double>;

constexpr cplx kI{0.0, 1.0};

// Values and derivatives of the two basis functions at a point.
struct BasisAt {
  cplx f_plus, f_minus;
  cplx d_plus, d_minus;
};

// `x_over_pi` is the abscissa in units of pi so that the trigonometric
// factors at the arc ends are exact.
BasisAt basis(Branch branch, double momentum, double x_over_pi) {
  if (branch == Branch::positive) {
    const double phase = momentum * x_over_pi;
    const cplx e_plus{cos_pi(phase), sin_pi(phase)};
    const cplx e_minus = std::conj(e_plus);
    return {e_plus, e_minus, kI * momentum * e_plus, -kI * momentum * e_minus};
  }
  const double arg = momentum * kPi * x_over_pi;
  const double ch = std::cosh(arg);
  const double sh = std::sinh(arg);
  return {ch, sh, momentum * sh, momentum * ch};
}

// Row builder over the unknown layout: edge e owns columns 2e, 2e+1.
class RowBuilder {
 public:
  RowBuilder(ComplexMatrix& m, Branch branch, double momentum)
      : m_(m), branch_(branch), momentum_(momentum) {}

  RowBuilder& value(int row, int edge, double x_over_pi, cplx coef) {
    const BasisAt b = basis(branch_, momentum_, x_over_pi);
    m_(row, 2 * edge) += coef * b.f_plus;
    m_(row, 2 * edge + 1) += coef * b.f_minus;
    return *this;
  }

  RowBuilder& deriv(int row, int edge, double x_over_pi, cplx coef) {
    const BasisAt b = basis(branch_, momentum_, x_over_pi);
    m_(row, 2 * edge) += coef * b.d_plus;
    m_(row, 2 * edge + 1) += coef * b.d_minus;
    return *this;
  }

 private:
  ComplexMatrix& m_;
  Branch branch_;
  double momentum_;
};

void check_guard(const ChainSpec& spec, const SpectralParameter& sp) {
  if (sp.branch() != Branch::negative) return;
  const double extent = std::max(kPi, spec.link_length());
  if (sp.kappa() * extent > kOverflowGuard) {
    throw OverflowGuard("kappa * max(pi, l) exceeds the overflow guard; use the closed forms");
  }
}

// Edges 0..3 carry psi_1..psi_4; arcs 1,2 live on [0, pi/2], arcs 3,4 on
// [-pi/2, 0]. The vertex sits at x = 0.
ComplexMatrix assemble_tight(Branch branch, double p, const Quasimomentum& q) {
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  RowBuilder rb(m, branch, p);
  const cplx floquet = std::polar(1.0, q.value());
  // psi_j(pi/2) = e^{i theta} psi_{5-j}(-pi/2) and likewise for derivatives.
  for (int j = 0; j < 2; ++j) {
    const int partner = 3 - j;
    rb.value(2 * j, j, 0.5, 1.0).value(2 * j, partner, -0.5, -floquet);
    rb.deriv(2 * j + 1, j, 0.5, 1.0).deriv(2 * j + 1, partner, -0.5, -floquet);
  }
  // psi2 - psi1 + i( psi2' + psi1') = 0
  rb.value(4, 1, 0, 1).value(4, 0, 0, -1).deriv(4, 1, 0, kI).deriv(4, 0, 0, kI);
  // psi3 - psi2 + i(-psi3' + psi2') = 0
  rb.value(5, 2, 0, 1).value(5, 1, 0, -1).deriv(5, 2, 0, -kI).deriv(5, 1, 0, kI);
  // psi4 - psi3 + i(-psi4' - psi3') = 0
  rb.value(6, 3, 0, 1).value(6, 2, 0, -1).deriv(6, 3, 0, -kI).deriv(6, 2, 0, -kI);
  // psi1 - psi4 + i( psi1' - psi4') = 0
  rb.value(7, 0, 0, 1).value(7, 3, 0, -1).deriv(7, 0, 0, kI).deriv(7, 3, 0, -kI);
  return m;
}

// Edges 0..2 carry psi_1 (half link on [0, l/2]) and psi_2, psi_3 (arcs on
// [0, pi/2]); edges 3..5 carry phi_1 (half link on [-l/2, 0]) and phi_2,
// phi_3 (arcs on [-pi/2, 0]).
ComplexMatrix assemble_loose(Branch branch, double p, double link, const Quasimomentum& q) {
  ComplexMatrix m = ComplexMatrix::Zero(12, 12);
  RowBuilder rb(m, branch, p);
  const cplx floquet = std::polar(1.0, q.value());
  const double h = 0.5 * link / kPi;  // half link in units of pi
  constexpr int psi1 = 0, psi2 = 1, psi3 = 2, phi1 = 3, phi2 = 4, phi3 = 5;

  rb.value(0, psi1, 0, 1).value(0, phi1, 0, -1);
  rb.deriv(1, psi1, 0, 1).deriv(1, phi1, 0, -1);
  for (int j = 0; j < 2; ++j) {
    const int arc = psi2 + j;
    const int partner = phi2 + j;
    rb.value(2 + 2 * j, arc, 0.5, 1.0).value(2 + 2 * j, partner, -0.5, -floquet);
    rb.deriv(3 + 2 * j, arc, 0.5, 1.0).deriv(3 + 2 * j, partner, -0.5, -floquet);
  }
  // Right vertex of the link.
  rb.value(6, psi3, 0, 1).value(6, psi1, h, -1).deriv(6, psi3, 0, kI).deriv(6, psi1, h, -kI);
  rb.value(7, psi2, 0, 1).value(7, psi3, 0, -1).deriv(7, psi2, 0, kI).deriv(7, psi3, 0, kI);
  rb.value(8, psi1, h, 1).value(8, psi2, 0, -1).deriv(8, psi1, h, -kI).deriv(8, psi2, 0, kI);
  // Left vertex of the link.
  rb.value(9, phi2, 0, 1).value(9, phi1, -h, -1).deriv(9, phi2, 0, -kI).deriv(9, phi1, -h, kI);
  rb.value(10, phi3, 0, 1).value(10, phi2, 0, -1).deriv(10, phi3, 0, -kI).deriv(10, phi2, 0, -kI);
  rb.value(11, phi1, -h, 1).value(11, phi3, 0, -1).deriv(11, phi1, -h, kI).deriv(11, phi3, 0, -kI);
  return m;
}

// Scaled closed forms: returns {mantissa, log_scale} with value = mantissa * e^{log_scale}.
struct Scaled {
  double mantissa;
  double log_scale;
};

Scaled tight_form(const SpectralParameter& sp, double cos_theta) {
  if (sp.branch() == Branch::positive) {
    const double k = sp.k();
    const double k2 = k * k;
    return {k2 * k * (k2 + 1.0) * sin_pi(k) * (cos_pi(k) - cos_theta), 0.0};
  }
  const double kap = sp.kappa();
  const double kap2 = kap * kap;
  const double a = kap * kPi;
  // sinh(a) e^{-a} and (cosh(a) - cos theta) e^{-a}
  const double sh = 0.5 * one_minus_exp_neg2(a);
  const double ch_minus = 0.5 * (1.0 + std::exp(-2.0 * a)) - cos_theta * std::exp(-a);
  return {kap2 * kap * (kap2 - 1.0) * sh * ch_minus, 2.0 * a};
}

Scaled loose_form(const SpectralParameter& sp, double link, double cos_theta) {
  if (sp.branch() == Branch::positive) {
    const double k = sp.k();
    const double k2 = k * k;
    const double k_link = k * (link / kPi);
    const double s_pi = sin_pi(k), c_pi = cos_pi(k);
    const double s_l = sin_pi(k_link), c_l = cos_pi(k_link);
    const double k5 = k2 * k2 * k;
    const double inner =
        (k2 * k2 + 2.0 * k2 + 5.0) * s_pi * s_l - 4.0 * (k2 + 1.0) * (c_pi * c_l - cos_theta);
    return {k5 * s_pi * inner, 0.0};
  }
  const double kap = sp.kappa();
  const double kap2 = kap * kap;
  const double a = kap * kPi;
  const double b = kap * link;
  const double ea = std::exp(-2.0 * a), eb = std::exp(-2.0 * b);
  // Each hyperbolic factor multiplied by e^{-argument}.
  const double sh_pi = 0.5 * one_minus_exp_neg2(a);
  const double ch_ch = 0.25 * (1.0 + ea) * (1.0 + eb) - cos_theta * std::exp(-a - b);
  const double sh_sh = 0.25 * one_minus_exp_neg2(a) * one_minus_exp_neg2(b);
  const double inner = 4.0 * (1.0 - kap2) * ch_ch + (kap2 * kap2 - 2.0 * kap2 + 5.0) * sh_sh;
  return {kap2 * kap2 * kap * sh_pi * inner, 2.0 * a + b};
}

Scaled scaled_form(const ChainSpec& spec, const SpectralParameter& sp, const Quasimomentum& q) {
  if (sp.branch() == Branch::zero) return {0.0, 0.0};
  const double c = q.cos();
  return spec.is_tight() ? tight_form(sp, c) : loose_form(sp, spec.link_length(), c);
}

}  // namespace

SecularSystem assemble(const ChainSpec& spec, const SpectralParameter& sp, const Quasimomentum& q) {
  if (sp.branch() == Branch::zero) throw InvalidArgument("the secular system is not formed at E = 0");
  check_guard(spec, sp);
  SecularSystem sys;
  sys.model = spec.model();
  sys.branch = sp.branch();
  sys.matrix = spec.is_tight() ? assemble_tight(sp.branch(), sp.momentum(), q)
                               : assemble_loose(sp.branch(), sp.momentum(), spec.link_length(), q);
  if (!sys.matrix.allFinite()) throw OverflowGuard("secular matrix is not finite");
  return sys;
}

std::complex<double> determinant(const SecularSystem& sys) {
  return Eigen::PartialPivLU<ComplexMatrix>(sys.matrix).determinant();
}

std::complex<double> normalized_determinant(const SecularSystem& sys) {
  std::complex<double> det = determinant(sys);
  for (Eigen::Index r = 0; r < sys.matrix.rows(); ++r) det /= sys.matrix.row(r).norm();
  return det;
}

double closed_form_scaled(const ChainSpec& spec, const SpectralParameter& sp, const Quasimomentum& q) {
  return scaled_form(spec, sp, q).mantissa;
}

double closed_form_value(const ChainSpec& spec, const SpectralParameter& sp, const Quasimomentum& q) {
  const Scaled s = scaled_form(spec, sp, q);
  if (s.mantissa == 0.0) return 0.0;
  return s.mantissa * std::exp(s.log_scale);
}

std::complex<double> scattering_eigenvalue(double k, std::complex<double> lambda) {
  return (k - 1.0 + (k + 1.0) * lambda) / (k + 1.0 + (k - 1.0) * lambda);
}

ComplexMatrix vertex_scattering(int n, double k) {
  if (!std::isfinite(k) || !(k > 0.0)) throw InvalidArgument("scattering needs k > 0");
  const VertexCoupling coupling = make_coupling(n);
  const ComplexMatrix& u = coupling.matrix();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix numer = (k - 1.0) * id + (k + 1.0) * u;
  const ComplexMatrix denom = (k + 1.0) * id + (k - 1.0) * u;
  Eigen::FullPivLU<ComplexMatrix> lu(denom);
  if (!lu.isInvertible()) throw SolverError("scattering denominator is singular");
  // numer and denom are polynomials in U and commute.
  return lu.solve(numer);
}

}  // namespace ringchain

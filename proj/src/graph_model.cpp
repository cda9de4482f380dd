#include "ringchain/graph_model.hpp"

#include <cmath>
#include <string>

#include "ringchain/errors.hpp"

namespace ringchain {

VertexCoupling::VertexCoupling(int degree) : degree_(degree) {
  if (degree < 2) {
    throw InvalidArgument("vertex degree must be at least 2, got " + std::to_string(degree));
  }
  matrix_ = ComplexMatrix::Zero(degree, degree);
  for (int j = 0; j < degree; ++j) matrix_(j, (j + 1) % degree) = 1.0;
}

VertexCoupling make_coupling(int n) { return VertexCoupling(n); }

ChainSpec::ChainSpec(double link_length) : link_length_(link_length) {
  if (!std::isfinite(link_length) || link_length < 0.0) {
    throw InvalidArgument("link length must be finite and nonnegative");
  }
}

ChainSpec ChainSpec::loose(double link_length) {
  if (!(link_length > 0.0)) throw InvalidArgument("a loose chain needs a positive link length");
  return ChainSpec(link_length);
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::negative: return "negative";
    case Branch::zero: return "zero";
    case Branch::positive: return "positive";
  }
  return "?";
}

SpectralParameter SpectralParameter::from_energy(double energy) {
  if (!std::isfinite(energy)) throw InvalidArgument("energy must be finite");
  if (energy > 0.0) return {energy, Branch::positive, std::sqrt(energy)};
  if (energy < 0.0) return {energy, Branch::negative, std::sqrt(-energy)};
  return {0.0, Branch::zero, 0.0};
}

SpectralParameter SpectralParameter::from_k(double k) {
  if (!std::isfinite(k) || !(k > 0.0)) throw InvalidArgument("k must be positive and finite");
  return {k * k, Branch::positive, k};
}

SpectralParameter SpectralParameter::from_kappa(double kappa) {
  if (!std::isfinite(kappa) || !(kappa > 0.0)) {
    throw InvalidArgument("kappa must be positive and finite");
  }
  return {-kappa * kappa, Branch::negative, kappa};
}

double SpectralParameter::k() const {
  if (branch_ != Branch::positive) throw InvalidArgument("k is defined on the positive branch only");
  return momentum_;
}

double SpectralParameter::kappa() const {
  if (branch_ != Branch::negative) {
    throw InvalidArgument("kappa is defined on the negative branch only");
  }
  return momentum_;
}

Quasimomentum Quasimomentum::normalize(double raw) {
  if (!std::isfinite(raw)) throw InvalidArgument("quasimomentum must be finite");
  constexpr double two_pi = 2.0 * detail::kPi;
  double theta = raw - two_pi * std::floor((raw + detail::kPi) / two_pi);
  if (theta >= detail::kPi) theta -= two_pi;
  if (theta < -detail::kPi) theta += two_pi;
  return Quasimomentum(theta);
}

Quasimomentum normalize_theta(double raw) { return Quasimomentum::normalize(raw); }

std::string_view to_string(FlatBandSource s) {
  switch (s) {
    case FlatBandSource::sin_k_pi: return "sin_k_pi";
    case FlatBandSource::kappa_squared_minus_one: return "kappa_squared_minus_one";
    case FlatBandSource::zero_momentum: return "zero_momentum";
  }
  return "?";
}

}  // namespace ringchain

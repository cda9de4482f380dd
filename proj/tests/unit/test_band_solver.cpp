#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ringchain/band_solver.hpp"
#include "ringchain/errors.hpp"
#include "ringchain/secular.hpp"

using namespace ringchain;
using detail::kPi;

namespace {

double phi(const ChainSpec& s, double k) { return ReducedDispersion(s, Branch::positive).value(k); }

std::vector<double> energies(const std::vector<FlatBand>& fb) {
  std::vector<double> out;
  for (const auto& f : fb) out.push_back(f.energy);
  return out;
}

}  // namespace

TEST_SUITE("band_solver") {

TEST_CASE("flat bands") {
  CHECK(energies(flat_bands(ChainSpec::tight(), 10.0)) == std::vector<double>{-1, 1, 4, 9});
  CHECK(energies(flat_bands(ChainSpec::loose(1.0), 5.0)) == std::vector<double>{0, 1, 4});
  const auto tight = flat_bands(ChainSpec::tight(), 10.0);
  CHECK_FALSE(tight[0].embedded);
  CHECK(tight[0].source == FlatBandSource::kappa_squared_minus_one);
  for (const auto& f : flat_bands(ChainSpec::loose(1.0), 30.0)) CHECK(f.embedded);
  CHECK(flat_bands(ChainSpec::loose(1.0), 5.0)[0].source == FlatBandSource::zero_momentum);
}

TEST_CASE("reduced dispersion") {
  CHECK(phi(ChainSpec::tight(), 0.3) == doctest::Approx(std::cos(0.3 * kPi)));
  CHECK(coupling_ratio(1.0) == doctest::Approx(1.0));
  const ChainSpec s(1.0);
  for (double k : {0.4, 1.7, 3.3}) {
    const double r = (std::pow(k, 4) + 2 * k * k + 5) / (4 * (k * k + 1));
    CHECK(phi(s, k) == doctest::Approx(std::cos(k) * std::cos(k * kPi) - r * std::sin(k) * std::sin(k * kPi)));
  }
  // f_1(sqrt 3) = cosh(sqrt3 (pi - 1))
  const ReducedDispersion neg(s, Branch::negative);
  CHECK(neg.value(std::sqrt(3.0)) == doctest::Approx(std::cosh(std::sqrt(3.0) * (kPi - 1.0))).epsilon(1e-12));
  // kappa < 1: always above 1
  for (double k = 0.05; k < 1.0; k += 0.05) CHECK(neg.value(k) > 1.0);
  // the tight negative form never reaches 1
  for (double k = 0.05; k < 5.0; k += 0.05) CHECK(ReducedDispersion(ChainSpec::tight(), Branch::negative).value(k) > 1.0);
}

TEST_CASE("analytic derivatives") {
  for (double ell : {0.3, 1.0, 5.0}) {
    const ReducedDispersion pos(ChainSpec(ell), Branch::positive);
    const ReducedDispersion neg(ChainSpec(ell), Branch::negative);
    for (double x : {0.6, 1.4, 2.5, 3.9}) {
      const double h = 1e-6;
      CHECK(pos.derivative(x) == doctest::Approx((pos.value(x + h) - pos.value(x - h)) / (2 * h)).epsilon(1e-6));
      if (x > 1.0) {
        CHECK(neg.derivative(x) == doctest::Approx((neg.value(x + h) - neg.value(x - h)) / (2 * h)).epsilon(1e-6));
        CHECK((neg.slope(x) > 0) == (neg.derivative(x) > 0));
      }
    }
  }
}

TEST_CASE("l -> 0 pointwise limit") {
  // |cos kl - 1| <= (kl)^2/2 and |sin kl| <= kl bound the deviation
  for (double ell : {1e-3, 1e-4, 1e-6}) {
    for (double k = 0.0; k <= 10.0; k += 1e-3) {
      const double r = (k * k * k * k + 2 * k * k + 5) / (4 * (k * k + 1));
      const double bound = r * k * ell + 0.5 * (k * ell) * (k * ell);
      CHECK(std::abs(phi(ChainSpec(ell), k) - std::cos(k * kPi)) <= bound + 1e-14);
    }
  }
}

TEST_CASE("tight positive spectrum is one band") {
  const auto b = positive_bands(ChainSpec::tight(), 5.0);
  REQUIRE(b.size() == 1);
  CHECK(b[0].e_lo == 0.0);
  CHECK(b[0].e_hi == doctest::Approx(25.0));
  CHECK(negative_bands(ChainSpec::tight()).empty());
}

// DERIVED (tests/oracle/derive.py): dense scan at step 1e-5 in k with brentq refinement.
TEST_CASE("loose l=1 bands up to k=10") {
  const ChainSpec s(1.0);
  const auto bands = positive_bands(s, 10.0);
  CHECK(bands.size() == 14);
  CHECK(bands.size() - 1 >= 5);

  for (double a : anchor_points(s, 10.0)) {
    const double e = a * a;
    CHECK(std::any_of(bands.begin(), bands.end(), [e](const Band& b) { return b.contains(e, 1e-12); }));
  }
  for (std::size_t i = 0; i < bands.size(); ++i) {
    CHECK(bands[i].e_lo <= bands[i].e_hi);
    if (i > 0) CHECK(bands[i - 1].e_hi < bands[i].e_lo);
  }
}

TEST_CASE("edge consistency") {
  for (double ell : {0.5, 1.0, 2.5}) {
    const ChainSpec s(ell);
    const double k_max = 12.0;
    for (const auto& b : positive_bands(s, k_max)) {
      for (auto [e, theta, outward] : {std::tuple{b.e_lo, b.edge_theta_lo, -1.0}, std::tuple{b.e_hi, b.edge_theta_hi, 1.0}}) {
        const double k = std::sqrt(e);
        if (k == 0.0 || k >= k_max) continue;
        CAPTURE(ell);
        CAPTURE(k);
        const double v = phi(s, k);
        CHECK(std::abs(std::abs(v) - 1.0) < 1e-9);
        CHECK(std::abs(phi(s, k + outward * 1e-9)) > 1.0);
        CHECK(std::abs(phi(s, k - outward * 1e-6)) < 1.0);
        CHECK(std::cos(theta) == doctest::Approx(v > 0 ? 1.0 : -1.0));
      }
    }
  }
}

TEST_CASE("anchors and resolution guard") {
  const auto a = anchor_points(ChainSpec(kPi), 5.0);
  CHECK(a == std::vector<double>{1, 2, 3, 4, 5});
  CHECK_THROWS_AS(positive_bands(ChainSpec(1000.0), 1.0, 2e-3), InvalidArgument);
  CHECK_NOTHROW(positive_bands(ChainSpec(1000.0), 0.1, 1e-3));
  CHECK_THROWS_AS(positive_bands(ChainSpec(1.0), 5.0, 0.02), InvalidArgument);
  CHECK_THROWS_AS(positive_bands(ChainSpec(1.0), 5.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(positive_bands(ChainSpec(1.0), -1.0), InvalidArgument);
}

TEST_CASE("band and gap partition tiles the window") {
  const ChainSpec s(0.7);
  const double k_max = 15.0;
  const auto bands = positive_bands(s, k_max);
  double covered = 0.0, gaps = 0.0, prev = 0.0;
  for (const auto& b : bands) {
    gaps += b.e_lo - prev;
    covered += b.width();
    prev = b.e_hi;
  }
  gaps += k_max * k_max - prev;
  CHECK(std::abs(covered + gaps - k_max * k_max) < 1e-9);
  // Gap interiors are outside the spectrum.
  prev = 0.0;
  for (const auto& b : bands) {
    if (b.e_lo > prev) CHECK(std::abs(phi(s, std::sqrt(0.5 * (prev + b.e_lo)))) > 1.0);
    prev = b.e_hi;
  }
}

TEST_CASE("dispersion") {
  auto ks = [](const std::vector<SpectralParameter>& v) {
    std::vector<double> out;
    for (const auto& s : v) out.push_back(s.k());
    return out;
  };
  CHECK(ks(dispersion(ChainSpec::tight(), normalize_theta(0.0), 0.0, 5.0)) == std::vector<double>{2, 4});
  const auto half = ks(dispersion(ChainSpec::tight(), normalize_theta(kPi / 2), 0.0, 3.0));
  REQUIRE(half.size() == 3);
  CHECK(half[0] == doctest::Approx(0.5));
  CHECK(half[1] == doctest::Approx(1.5));
  CHECK(half[2] == doctest::Approx(2.5));

  // DERIVED (tests/oracle/derive.py): roots of Phi - 1 on (0, 4), scan step 1e-6.
  const double oracle[] = {1.4189361597498882, 1.6641715551886032, 3.0084455947499897, 3.088499651966128};
  const auto loose = ks(dispersion(ChainSpec(1.0), normalize_theta(0.0), 0.0, 4.0));
  REQUIRE(loose.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(loose[i] - oracle[i]) < 1e-10);

  for (double theta : {0.3, 1.2, 2.9}) {
    CHECK(ks(dispersion(ChainSpec(1.0), normalize_theta(theta), 0.0, 8.0)) ==
          ks(dispersion(ChainSpec(1.0), normalize_theta(-theta), 0.0, 8.0)));
  }
  for (double k : ks(dispersion(ChainSpec(2.0), normalize_theta(1.0), 0.0, 8.0))) {
    CHECK(phi(ChainSpec(2.0), k) == doctest::Approx(std::cos(1.0)).epsilon(1e-9));
  }
}

// DERIVED (tests/oracle/derive.py): f_l = +-1 crossings refined in 60-digit arithmetic.
TEST_CASE("negative bands") {
  struct Case {
    double ell;
    double kappa[4];  // edges in increasing kappa
  };
  const Case cases[] = {
      {0.5, {1.259752469444809, 1.2814862334515023, 2.225169546715536, 2.2276253242570987}},
      {1.0, {1.4990087732900488, 1.51743582906525, 1.917369126722977, 1.9229220258259603}},
      {2.0, {1.6879809539693635, 1.6996367716109282, 1.7620519729307869, 1.7707783418185445}},
      {5.0, {1.7267739717180424, 1.727188741546886, 1.736798064895003, 1.7371848156069327}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.ell);
    const auto b = negative_bands(ChainSpec(c.ell));
    REQUIRE(b.size() == 2);
    // bands are sorted by energy: the lower band holds the larger kappa
    CHECK(std::sqrt(-b[0].e_lo) == doctest::Approx(c.kappa[3]).epsilon(1e-10));
    CHECK(std::sqrt(-b[0].e_hi) == doctest::Approx(c.kappa[2]).epsilon(1e-10));
    CHECK(std::sqrt(-b[1].e_lo) == doctest::Approx(c.kappa[1]).epsilon(1e-10));
    CHECK(std::sqrt(-b[1].e_hi) == doctest::Approx(c.kappa[0]).epsilon(1e-10));
    CHECK(b[0].e_hi < -3.0);
    CHECK(b[1].e_lo > -3.0);
    CHECK(b[1].e_hi < -1.0);
  }

  const auto single = negative_bands(ChainSpec(kPi));
  REQUIRE(single.size() == 1);
  CHECK(std::sqrt(-single[0].e_lo) == doctest::Approx(1.741810811283557).epsilon(1e-10));
  CHECK(std::sqrt(-single[0].e_hi) == doctest::Approx(1.7217763308342908).epsilon(1e-10));
  REQUIRE(single[0].touchings.size() == 1);
  CHECK(std::abs(single[0].touchings[0] + 3.0) < 1e-8);

  // ell = 20: both bands are narrower than 1e-12 in kappa^2
  const auto wide = negative_bands(ChainSpec(20.0));
  REQUIRE(wide.size() == 2);
  CHECK(-wide[0].e_lo == doctest::Approx(1.7369916052127057 * 1.7369916052127057).epsilon(1e-12));
  CHECK(-wide[1].e_hi == doctest::Approx(1.7269815473474202 * 1.7269815473474202).epsilon(1e-12));
}

TEST_CASE("lower negative band narrower than double spacing") {
  const auto b = negative_bands(ChainSpec(1e-4));
  REQUIRE(b.size() == 2);
  CHECK(b[0].width() == 0.0);
  // DERIVED (tests/oracle/derive.py)
  CHECK(std::sqrt(-b[0].e_hi) == doctest::Approx(34.209276773342445).epsilon(1e-12));
}

TEST_CASE("negative band edges carry their theta") {
  for (const auto& b : negative_bands(ChainSpec(1.0))) {
    const ReducedDispersion d(ChainSpec(1.0), Branch::negative);
    CHECK(std::cos(b.edge_theta_lo) == doctest::Approx(d.value(std::sqrt(-b.e_lo))).epsilon(1e-8));
    CHECK(std::cos(b.edge_theta_hi) == doctest::Approx(d.value(std::sqrt(-b.e_hi))).epsilon(1e-8));
  }
}

}  // TEST_SUITE

TEST_CASE("simple-root band widths shrink like 1/k in energy") {
  // l/pi irrational, so every root is simple. Medians keep near-resonant bands from dominating.
  const auto bands = positive_bands(ChainSpec(1.0), 200.0);
  auto medians = [&](double a, double b) {
    std::vector<double> e_width_k, k_width_k;
    for (const auto& band : bands) {
      const double lo = std::sqrt(band.e_lo), hi = std::sqrt(band.e_hi), k = 0.5 * (lo + hi);
      if (lo < a || lo >= b) continue;
      e_width_k.push_back(band.width() * k);
      k_width_k.push_back((hi - lo) * k);
    }
    REQUIRE(e_width_k.size() > 20);
    auto median = [](std::vector<double> v) {
      std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
      return v[v.size() / 2];
    };
    return std::pair{median(e_width_k), median(k_width_k)};
  };
  const auto [e1, k1] = medians(20, 60);
  const auto [e2, k2] = medians(60, 120);
  const auto [e3, k3] = medians(120, 200);
  for (double e : {e2, e3}) CHECK(e / e1 == doctest::Approx(1.0).epsilon(0.25));
  CHECK(k2 < 0.6 * k1);
  CHECK(k3 < 0.7 * k2);
}

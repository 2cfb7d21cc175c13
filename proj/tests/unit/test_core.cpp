#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cattaneo/core.hpp"
#include "oracles.hpp"

using namespace cattaneo;

namespace {

Parameters point(double alpha, double beta, double gamma, double m) {
  Parameters p;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.m = m;
  return p;
}

}  // namespace

TEST(Region, ExampleInQ) {
  const Region r = classify_region(point(1, 0, 0.5, 1));
  EXPECT_EQ(r.tag, RegionTag::InQ);
  EXPECT_EQ(r.margin, 0.5);
}

TEST(Region, BoundaryIsOutside) {
  const Region r = classify_region(point(0.5, 0, 0.5, 1));
  EXPECT_EQ(r.tag, RegionTag::OutsideQ);
  EXPECT_EQ(r.margin, 0.0);
}

TEST(Region, NonInertialUsesQStar) {
  EXPECT_EQ(classify_region(point(1, 0, 0.5, 0)).tag, RegionTag::InQStar);
  EXPECT_EQ(classify_region(point(0.4, 0.9, 0.5, 0)).tag, RegionTag::OutsideQStar);
}

TEST(Region, ScaleFreeInM) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u;
  for (int i = 0; i < 500; ++i) {
    const Parameters a = point(u(rng), u(rng), 1.0 - u(rng), 0.01 + u(rng));
    Parameters b = a;
    b.m = 100.0 * u(rng) + 0.01;
    EXPECT_EQ(classify_region(a).tag, classify_region(b).tag);
  }
}

TEST(Validate, RejectsFourierCase) {
  Parameters p;
  p.tau = 0.0;
  try {
    validate(p);
    FAIL() << "tau = 0 accepted";
  } catch (const InvalidParameters& e) {
    EXPECT_NE(std::string(e.what()).find("Fourier case unsupported"), std::string::npos);
  }
}

TEST(Validate, RejectsOutOfRangeExponents) {
  EXPECT_THROW(validate(point(1.2, 0, 0.5, 1)), InvalidParameters);
  EXPECT_THROW(validate(point(1, -0.1, 0.5, 1)), InvalidParameters);
  EXPECT_THROW(validate(point(1, 0, 0.0, 1)), InvalidParameters);
  EXPECT_THROW(validate(point(1, 0, 1.5, 1)), InvalidParameters);
  EXPECT_NO_THROW(validate(point(1, 0, 0.0, 0)));  // gamma ignored when m = 0
  Parameters p;
  p.sigma = 0.0;
  EXPECT_THROW(validate(p), InvalidParameters);
  p = Parameters{};
  p.m = -1.0;
  EXPECT_THROW(validate(p), InvalidParameters);
}

TEST(DecayExponents, InertialPreset) {
  const DecayExponents e = decay_exponents(point(1, 0, 0.5, 1));
  EXPECT_EQ(e.l, 1.0);
  EXPECT_DOUBLE_EQ(e.k, 2.0);
  EXPECT_DOUBLE_EQ(e.a, 2.0);
  EXPECT_DOUBLE_EQ(e.decay_exponent, 0.5);
  EXPECT_EQ(e.sharp, Sharpness::Sharp);
}

TEST(DecayExponents, NonInertialPreset) {
  const DecayExponents e = decay_exponents(point(1, 0, 0.5, 0));
  EXPECT_DOUBLE_EQ(e.k, 2.0);
  EXPECT_DOUBLE_EQ(e.decay_exponent, 0.5);
  EXPECT_EQ(e.sharp, Sharpness::Sharp);
}

TEST(DecayExponents, UnknownSharpnessBelowThreshold) {
  // k = 2(1.8 − 0.6 − 1)/(1.8 − 1) = 0.5.
  const DecayExponents e = decay_exponents(point(0.9, 0.6, 1.0, 1));
  EXPECT_NEAR(e.k, 0.5, 1e-15);
  EXPECT_EQ(e.a, 1.0);
  EXPECT_EQ(e.decay_exponent, 1.0);
  EXPECT_EQ(e.sharp, Sharpness::Unknown);
}

TEST(DecayExponents, RejectsOutsideRegion) {
  EXPECT_THROW(decay_exponents(point(0.5, 0, 0.5, 1)), InvalidParameters);
  EXPECT_THROW(decay_exponents(point(0.4, 0.9, 0.5, 0)), InvalidParameters);
}

TEST(DecayExponents, KEqualsOneOnSharpnessThreshold) {
  for (double beta = 0.0; beta <= 0.5; beta += 0.05) {
    for (double gamma = 0.1; gamma <= 1.0; gamma += 0.1) {
      const double alpha = beta + gamma / 2.0;
      if (!(alpha > (beta + 1.0) / 2.0) || alpha > 1.0) continue;
      EXPECT_NEAR(decay_exponents(point(alpha, beta, gamma, 1)).k, 1.0, 1e-14);
    }
  }
}

TEST(DecayExponents, SignProperties) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    const Parameters q = oracle::random_parameters(rng, true);
    const DecayExponents e = decay_exponents(q);
    EXPECT_GT(e.k, 0.0);
    EXPECT_DOUBLE_EQ(e.decay_exponent, 1.0 / e.a);
    const Parameters s = oracle::random_parameters(rng, false);
    const DecayExponents f = decay_exponents(s);
    EXPECT_GE(f.k, 1.0);
    EXPECT_DOUBLE_EQ(f.decay_exponent, s.alpha / (2.0 * s.alpha - s.beta));
  }
}

TEST(Spectrum, BiharmonicFirstThree) {
  const auto mu = spectrum(SpectrumModel::biharmonic_1d(), 3);
  const double pi4 = std::pow(std::numbers::pi, 4);
  ASSERT_EQ(mu.size(), 3u);
  EXPECT_NEAR(mu[0], pi4, 1e-12 * pi4);
  EXPECT_NEAR(mu[1], 16 * pi4, 1e-12 * pi4);
  EXPECT_NEAR(mu[2], 81 * pi4, 1e-12 * pi4);
  EXPECT_NEAR(mu[0], 97.409, 1e-3);
  EXPECT_NEAR(mu[1], 1558.55, 1e-2);
  EXPECT_NEAR(mu[2], 7890.14, 1e-2);
}

TEST(Spectrum, LaplaceAndPowerLaw) {
  const auto l = spectrum(SpectrumModel::laplace_1d(), 2);
  EXPECT_NEAR(l[1], 4 * std::numbers::pi * std::numbers::pi, 1e-12);
  EXPECT_EQ(spectrum(SpectrumModel::power_law(1, 2), 3), (std::vector<double>{1, 4, 9}));
}

TEST(Spectrum, ExplicitListMustBeNonDecreasingAndLongEnough) {
  EXPECT_THROW(spectrum(SpectrumModel::explicit_list({5, 2}), 2), InvalidParameters);
  EXPECT_THROW(spectrum(SpectrumModel::explicit_list({1, 2}), 3), InvalidParameters);
  EXPECT_THROW(spectrum(SpectrumModel::explicit_list({0, 2}), 2), InvalidParameters);
  EXPECT_EQ(spectrum(SpectrumModel::explicit_list({2, 2, 3}), 2), (std::vector<double>{2, 2}));
}

TEST(Spectrum, GeometricHitsEndpointsExactly) {
  const auto g = spectrum(SpectrumModel::geometric(1e2, 1e10), 200);
  EXPECT_EQ(g.front(), 1e2);
  EXPECT_EQ(g.back(), 1e10);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
}

TEST(Spectrum, ParseRoundTrips) {
  EXPECT_EQ(SpectrumModel::parse("biharmonic1d").kind, SpectrumKind::Biharmonic1D);
  EXPECT_EQ(SpectrumModel::parse("laplace1d").kind, SpectrumKind::Laplace1D);
  const SpectrumModel p = SpectrumModel::parse("powerlaw:2:3");
  EXPECT_EQ(p.kind, SpectrumKind::PowerLaw);
  EXPECT_EQ(p.c, 2.0);
  EXPECT_EQ(p.p, 3.0);
  EXPECT_EQ(SpectrumModel::parse("list:1,2.5,4").values, (std::vector<double>{1, 2.5, 4}));
  EXPECT_EQ(SpectrumModel::parse("geometric:1:100").kind, SpectrumKind::Geometric);
  EXPECT_THROW(SpectrumModel::parse("fourier"), InvalidParameters);
  EXPECT_THROW(SpectrumModel::parse("powerlaw:1"), InvalidParameters);
  EXPECT_THROW(SpectrumModel::parse("powerlaw:-1:2"), InvalidParameters);
  for (const char* text : {"biharmonic1d", "laplace1d", "powerlaw:2:3"}) {
    EXPECT_EQ(SpectrumModel::parse(SpectrumModel::parse(text).describe()).kind, SpectrumModel::parse(text).kind);
  }
}

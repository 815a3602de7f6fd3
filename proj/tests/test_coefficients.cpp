#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "homog/coefficients.hpp"
#include "homog/error.hpp"
#include "homog/spectral_ops.hpp"

using namespace homog;

TEST(Uniform01, TopBitsOfMersenneTwister) {
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const double u = uniform01(a);
    EXPECT_EQ(u, static_cast<double>(b() >> 11) * 0x1.0p-53);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(MakeCoefficient, RejectsNonPositive) {
  const auto grid = GridSpec::line(4);
  try {
    (void)make_coefficient(grid, {1.0, 2.0, 0.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::DegenerateCoefficient);
  }
  EXPECT_THROW((void)make_coefficient(grid, {1.0, 2.0, NAN, 1.0}), Error);
  EXPECT_THROW((void)make_coefficient(grid, {1.0, 2.0}), Error);
}

TEST(Periodic, TwoPhaseMeans) {
  const auto a = gen_periodic(GridSpec::line(128), 1.0, 4.0, 8);
  EXPECT_NEAR(a.harmonic_mean(), 1.6, 1e-14);
  EXPECT_NEAR(a.mean(), 2.5, 1e-14);
  EXPECT_EQ(a.values[0], 1.0);
  EXPECT_EQ(a.values[3], 1.0);
  EXPECT_EQ(a.values[4], 4.0);
  EXPECT_EQ(a.values[8], 1.0);
}

TEST(Periodic, EqualPhasesGiveConstant) {
  const auto a = gen_periodic(GridSpec::line(32), 2.5, 2.5, 8);
  for (double v : a.values) EXPECT_EQ(v, 2.5);
}

TEST(Periodic, SingleCycleHasTwoLevels) {
  const auto a = gen_periodic(GridSpec::line(16), 1.0, 3.0, 16);
  const std::set<double> levels(a.values.begin(), a.values.end());
  EXPECT_EQ(levels, (std::set<double>{1.0, 3.0}));
}

TEST(Periodic, YInvariantOnSquare) {
  const auto grid = GridSpec::square(16, 8);
  const auto a = gen_periodic(grid, 1.0, 4.0, 4);
  for (int iy = 0; iy < 8; ++iy) {
    for (int ix = 0; ix < 16; ++ix) EXPECT_EQ(a.values[grid.index(ix, iy)], a.values[ix]);
  }
}

TEST(Periodic, RejectsBadPeriod) {
  EXPECT_THROW((void)gen_periodic(GridSpec::line(32), 1.0, 4.0, 6), Error);
  EXPECT_THROW((void)gen_periodic(GridSpec::line(32), 1.0, 4.0, 3), Error);
  EXPECT_THROW((void)gen_periodic(GridSpec::line(32), -1.0, 4.0, 8), Error);
}

TEST(FilteredRandom, DeterministicAndDistinctSeeds) {
  const auto grid = GridSpec::line(256);
  const auto a = gen_filtered_random(grid, 42);
  const auto b = gen_filtered_random(grid, 42);
  const auto c = gen_filtered_random(grid, 43);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
  EXPECT_EQ(a.provenance.seed, 42u);
  EXPECT_EQ(a.provenance.generator, "random");
}

TEST(FilteredRandom, WaterLevelAndSpectrum) {
  for (auto grid : {GridSpec::line(96), GridSpec::square(48, 48)}) {
    const auto a = gen_filtered_random(grid, 7, 0.25);
    EXPECT_NEAR(a.min(), 0.25, 1e-12);
    const auto s = forward(a.values, full_projection(grid));
    const int nx = grid.nx(), ny = grid.ny();
    for (int ky = grid.is_1d() ? 0 : -ny / 2 + 1; ky <= (grid.is_1d() ? 0 : ny / 2); ++ky) {
      for (int kx = -nx / 2 + 1; kx <= nx / 2; ++kx) {
        if (3 * std::abs(kx) > nx || 3 * std::abs(ky) > ny) {
          EXPECT_LE(std::abs(s.at(kx, ky)), 1e-12) << kx << "," << ky;
        }
      }
    }
  }
}

TEST(SparseAnnulus, SupportOnShellOnly) {
  const auto grid = GridSpec::square(64, 64);
  const auto a = gen_sparse_annulus(grid, 3, 8, 12, 1.0, 0.1);
  EXPECT_NEAR(a.min(), 0.1, 1e-12);
  const auto s = forward(a.values, full_projection(grid));
  double shell_power = 0.0;
  for (int ky = -31; ky <= 32; ++ky) {
    for (int kx = -31; kx <= 32; ++kx) {
      const double r = std::hypot(kx, ky);
      const double mag = std::abs(s.at(kx, ky));
      if ((kx != 0 || ky != 0) && (r < 8 || r > 12)) {
        EXPECT_LE(mag, 1e-12) << kx << "," << ky;
      } else if (kx != 0 || ky != 0) {
        shell_power += mag * mag;
      }
    }
  }
  EXPECT_GT(shell_power, 0.0);
}

TEST(SparseAnnulus, RmsAmplitudeAndDeterminism) {
  const auto grid = GridSpec::square(32, 32);
  const auto a = gen_sparse_annulus(grid, 9, 4, 6, 0.5, 0.2);
  const auto b = gen_sparse_annulus(grid, 9, 4, 6, 0.5, 0.2);
  EXPECT_EQ(a.values, b.values);
  const double mean = a.mean();
  double rms = 0.0;
  for (double v : a.values) rms += (v - mean) * (v - mean);
  EXPECT_NEAR(std::sqrt(rms / a.values.size()), 0.5, 1e-12);
}

TEST(SparseAnnulus, RejectsShellOutsideBand) {
  const auto grid = GridSpec::square(32, 32);
  EXPECT_THROW((void)gen_sparse_annulus(grid, 1, 0, 4, 1.0), Error);
  EXPECT_THROW((void)gen_sparse_annulus(grid, 1, 6, 4, 1.0), Error);
  EXPECT_THROW((void)gen_sparse_annulus(grid, 1, 8, 11, 1.0), Error);
}

TEST(TwoThirdsFilter, RemovesUpperThirdOnly) {
  const int n = 48;
  const auto grid = GridSpec::line(n);
  RealVector v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = std::cos(2 * M_PI * 3 * i / n) + std::cos(2 * M_PI * 20 * i / n);
  }
  const double imag = apply_two_thirds_filter(grid, v);
  EXPECT_LE(imag, 1e-12);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(v[i], std::cos(2 * M_PI * 3 * i / n), 1e-12);
}

TEST(Provenance, DescribeListsParameters) {
  const auto a = gen_sparse_annulus(GridSpec::square(32, 32), 5, 4, 6, 1.0);
  const std::string d = a.provenance.describe();
  EXPECT_NE(d.find("annulus"), std::string::npos);
  EXPECT_NE(d.find("seed=5"), std::string::npos);
  EXPECT_NE(d.find("k_min=4"), std::string::npos);
}

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "dssi/error.hpp"
#include "dssi/metrics.hpp"
#include "dssi/synthetic.hpp"

namespace dssi {
namespace {

double direct_psnr(const SpectralCube& x, const SpectralCube& r) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(x.values()[i] - r.values()[i], 2);
  return 10.0 * std::log10(1.0 / (s / static_cast<double>(x.size())));
}

TEST(Psnr, IdenticalIsCapped) {
  const auto x = synthetic::random_cube(4, 4, 3, 1);
  EXPECT_EQ(psnr(x, x), 100.0);
}

TEST(Psnr, OffsetOfOneTenthIsTwentyDb) {
  const auto x = synthetic::random_cube(6, 5, 4, 2);
  auto y = x;
  for (double& v : y.values()) v += 0.1;
  EXPECT_NEAR(psnr(y, x), 20.0, 1e-10);
}

TEST(Psnr, DefinitionAndSymmetry) {
  const auto x = synthetic::random_cube(6, 5, 4, 2);
  const auto y = synthetic::random_cube(6, 5, 4, 3);
  EXPECT_NEAR(psnr(x, y), direct_psnr(x, y), 1e-12);
  EXPECT_EQ(psnr(x, y), psnr(y, x));
  EXPECT_THROW(psnr(x, SpectralCube(6, 5, 3)), DimensionError);
}

TEST(Sam, IdenticalOrthogonalAndScaled) {
  const auto x = synthetic::random_cube(5, 5, 6, 4);
  EXPECT_EQ(sam(x, x), 0.0);

  SpectralCube a(3, 3, 2), b(3, 3, 2);
  for (std::size_t p = 0; p < 9; ++p) {
    a.values()[p * 2] = 1.0;
    b.values()[p * 2 + 1] = 1.0;
  }
  EXPECT_NEAR(sam(a, b), std::numbers::pi / 2, 1e-15);

  auto twice = x;
  for (double& v : twice.values()) v *= 2.0;
  EXPECT_LT(sam(twice, x), 1e-12);
}

TEST(Sam, InvariantToPerPixelPositiveScaling) {
  const auto x = synthetic::random_cube(8, 8, 5, 10);
  const auto ref = synthetic::random_cube(8, 8, 5, 11);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> s(0.01, 100.0);
  auto scaled = x;
  for (std::size_t p = 0; p < x.pixels(); ++p) {
    const double k = s(rng);
    for (std::size_t i = 0; i < 5; ++i) scaled.values()[p * 5 + i] *= k;
  }
  EXPECT_NEAR(sam(scaled, ref), sam(x, ref), 1e-12);
}

TEST(Sam, DegeneratePixels) {
  SpectralCube a(2, 2, 3), b(2, 2, 3);
  for (double& v : b.values()) v = 1.0;
  EXPECT_THROW(sam(a, b), ValidationError);
  a(0, 0, 0) = 1.0;
  const auto r = sam_detail(a, b);
  EXPECT_EQ(r.skipped, 3u);
  EXPECT_NEAR(r.mean_rad, std::acos(1.0 / std::sqrt(3.0)), 1e-14);
}

TEST(Ssim, SelfSimilarityIsExactlyOne) {
  const auto x = synthetic::random_cube(16, 13, 3, 5);
  EXPECT_EQ(ssim(x, x), 1.0);
  SpectralCube c(12, 12, 2);
  for (double& v : c.values()) v = 0.6;
  EXPECT_EQ(ssim(c, c), 1.0);
}

TEST(Ssim, DecreasesWithNoiseAmplitude) {
  const auto ref = synthetic::demo_scene(32, 32, 3, 1);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    double previous = 1.0;
    for (double amp : {0.02, 0.1, 0.3}) {
      auto x = ref;
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> n(0.0, amp);
      for (double& v : x.values()) v += n(rng);
      const double s = ssim(x, ref);
      EXPECT_LT(s, previous);
      previous = s;
    }
  }
}

TEST(Ssim, TooSmall) { EXPECT_THROW(ssim(SpectralCube(10, 20, 1), SpectralCube(10, 20, 1)), DimensionError); }

TEST(Evaluate, CropAndReport) {
  const auto x = synthetic::random_cube(20, 20, 3, 1);
  const auto rep = evaluate(x, x, 0);
  EXPECT_EQ(rep.psnr_db, 100.0);
  EXPECT_EQ(rep.sam_rad, 0.0);
  EXPECT_EQ(rep.ssim, 1.0);
  EXPECT_EQ(rep.to_json(), R"({"psnr_db":100.0,"sam_rad":0.0,"ssim":1.0,"crop":0})");
  EXPECT_THROW(evaluate(x, x, 10), ParameterError);
  EXPECT_EQ(kDefaultCrop, 20u);

  // only the central region counts after cropping
  auto y = x;
  y(0, 0, 0) += 5.0;
  EXPECT_EQ(evaluate(y, x, 2).psnr_db, 100.0);
  EXPECT_LT(evaluate(y, x, 0).psnr_db, 100.0);
}

TEST(Evaluate, PaperScaleCropRegion) {
  // 936 x 952 inputs lose 20 px per edge: 896 x 912 remain.
  const SpectralCube big(936, 952, 1);
  const auto c = big.cropped(20);
  EXPECT_EQ(c.height(), 896u);
  EXPECT_EQ(c.width(), 912u);
}

}  // namespace
}  // namespace dssi

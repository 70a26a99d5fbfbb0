#include <gtest/gtest.h>

#include <random>

#include "dssi/error.hpp"
#include "dssi/metrics.hpp"
#include "dssi/oracle.hpp"
#include "dssi/synthetic.hpp"
#include "dssi/unfolding.hpp"
#include "support/oracles.hpp"

namespace dssi {
namespace {

class FixedInitializer final : public Initializer {
 public:
  explicit FixedInitializer(SpectralCube cube) : cube_(std::move(cube)) {}
  std::string name() const override { return "fixed"; }
  SpectralCube initialize(const CodedImage&, const FrequencyOperator&) const override { return cube_; }

 private:
  SpectralCube cube_;
};

TEST(GammaSchedule, Geometric) {
  const auto g = default_gamma_schedule(5, 0.01, 4.0);
  const std::vector<double> expect = {0.01, 0.04, 0.16, 0.64, 2.56};
  ASSERT_EQ(g.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(g[k], expect[k], 1e-15);
  EXPECT_EQ(default_gamma_schedule(1, 0.3, 2.0), std::vector<double>{0.3});
}

TEST(GammaSchedule, StrictlyIncreasingForRandomParameters) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> g0(1e-4, 10.0), r(1.001, 8.0);
  for (int t = 0; t < 200; ++t) {
    const auto g = default_gamma_schedule(12, g0(rng), r(rng));
    for (std::size_t k = 1; k < g.size(); ++k) EXPECT_GT(g[k], g[k - 1]);
  }
}

TEST(GammaSchedule, Errors) {
  EXPECT_THROW(default_gamma_schedule(3, 0.1, 1.0), ParameterError);
  EXPECT_THROW(default_gamma_schedule(3, 0.1, 0.5), ParameterError);
  EXPECT_THROW(default_gamma_schedule(0, 0.1, 2.0), ParameterError);
  EXPECT_THROW(parse_gamma_schedule("list:1,2", 3), ParameterError);
  EXPECT_THROW(parse_gamma_schedule("spiral:1", 3), ParameterError);
  EXPECT_EQ(parse_gamma_schedule("constant:0.5", 2), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(parse_gamma_schedule("list:1,2,4", 3), (std::vector<double>{1, 2, 4}));
  EXPECT_EQ(parse_gamma_schedule("geometric:0.01,4", 3), default_gamma_schedule(3, 0.01, 4));
}

TEST(StageSchedule, Validation) {
  StageSchedule s = StageSchedule::from_gammas({0.1, 0.2}, 1.0, 0.04);
  EXPECT_NEAR(s.sigma_tilde[0], std::sqrt(0.4), 1e-15);
  s.zeta.pop_back();
  EXPECT_THROW(s.validate(), ParameterError);
  EXPECT_THROW(StageSchedule::from_gammas({0.1, 0.0}), ParameterError);
  EXPECT_THROW(StageSchedule::from_gammas({}), ParameterError);
}

TEST(Initializers, ShapesAndDefinitions) {
  const auto sys = synthetic::random_system(5, 3, 1);
  const auto op = build_frequency_operator(sys, 6, 7);
  const auto j = synthetic::random_image(6, 7, 2);
  for (const auto& name : initializer_names()) {
    const auto z = make_initializer(name)->initialize(j, op);
    EXPECT_EQ(z.height(), 6u);
    EXPECT_EQ(z.width(), 7u);
    EXPECT_EQ(z.bands(), 5u);
  }
  EXPECT_EQ(norm(make_initializer("zero")->initialize(j, op)), 0.0);
  const auto mean = make_initializer("mean")->initialize(j, op);
  EXPECT_DOUBLE_EQ(mean(2, 3, 4), (j(2, 3, 0) + j(2, 3, 1) + j(2, 3, 2)) / 3.0);
  EXPECT_EQ(make_initializer("adjoint")->initialize(j, op), apply_adjoint(op, j));
  const auto r1 = make_initializer("rand:seed=3")->initialize(j, op);
  EXPECT_EQ(r1, make_initializer("rand:seed=3")->initialize(j, op));
  for (double v : r1.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  EXPECT_THROW(make_initializer("learned"), ParameterError);
}

TEST(Reconstruct, SingleStageReturnsInitialization) {
  const auto sys = synthetic::random_system(4, 3, 1);
  const auto op = build_frequency_operator(sys, 8, 8);
  const auto j = synthetic::random_image(8, 8, 2);
  const auto sched = StageSchedule::from_gammas({0.5});
  const auto out = reconstruct(j, op, sched, TvDenoiser(0.1, 10), MeanInitializer(), {});
  EXPECT_EQ(out.estimate, MeanInitializer().initialize(j, op));
}

TEST(Reconstruct, ConsistentFixedPointUnderIdentityOptics) {
  const auto gt = synthetic::random_cube(8, 8, 3, 5);
  const auto sys = OpticalSystem::identity(3, 3);
  const auto op = build_frequency_operator(sys, 8, 8);
  const auto j = forward_encode(gt, sys);
  const auto sched = StageSchedule::from_gammas(default_gamma_schedule(6, 0.01, 5.0));
  ReconstructOptions opt;
  opt.trace = true;
  const auto out = reconstruct(j, op, sched, IdentityDenoiser(), FixedInitializer(gt), opt);
  EXPECT_LT(max_abs_diff(out.estimate, gt), 1e-14);
  for (const auto& rec : out.trace) EXPECT_LT(rec.delta, 1e-13);
}

TEST(Reconstruct, DataConsistentFixedPointGeneralOptics) {
  const auto sys = synthetic::random_system(5, 3, 8);
  const auto op = build_frequency_operator(sys, 8, 8);
  const auto z = synthetic::random_cube(8, 8, 5, 9);
  const auto j = apply_forward_frequency(op, z);
  const auto sched = StageSchedule::from_gammas({0.01, 0.1, 1.0, 10.0});
  const auto out = reconstruct(j, op, sched, IdentityDenoiser(), FixedInitializer(z), {});
  EXPECT_LT(max_abs_diff(out.estimate, z), 1e-12);
}

// With the exact prox of sigma/2 ||Z||^2 and fixed gamma, ADMM solves the
// full Tikhonov program.
TEST(Reconstruct, QuadraticPriorAdmmReachesTikhonovSolution) {
  const auto sys = synthetic::random_system(4, 3, 61);
  const auto op = build_frequency_operator(sys, 8, 8);
  const auto j = synthetic::random_image(8, 8, 62);
  const double sigma = 0.05, gamma = 0.2;
  const auto sched = StageSchedule::from_gammas(std::vector<double>(200, gamma), 1.0, sigma);
  ReconstructOptions opt;
  opt.trace = true;
  const auto out = reconstruct(j, op, sched, QuadraticDenoiser(), ZeroInitializer(), opt);
  const auto ds = oracle::build_dense_phi(sys, 8, 8);
  const auto ref = oracle::dense_tikhonov_solve(ds, j, sigma);
  EXPECT_LT(max_abs_diff(out.estimate, ref), 1e-6);

  // primal residual ||I - Z|| decays monotonically after burn-in until it hits roundoff
  const auto& res = out.primal_residual;
  ASSERT_EQ(res.size(), 199u);
  for (std::size_t k = 20; k < res.size() && res[k - 1] > 1e-12; ++k) EXPECT_LE(res[k], res[k - 1] * (1.0 + 1e-9)) << k;
  EXPECT_LT(res.back(), 1e-6);
}

TEST(Reconstruct, HqsEqualsAdmmWithZeroZeta) {
  const auto sys = synthetic::demo_system(6, 5);
  const auto gt = synthetic::demo_scene(24, 24, 6, 3);
  const auto op = build_frequency_operator(sys, 24, 24);
  const auto j = add_noise(forward_encode(gt, sys), NoiseModel::calibrated(1));
  auto sched = StageSchedule::from_gammas(default_gamma_schedule(5, 0.01, 4.0), 0.0);
  ReconstructOptions admm, hqs;
  admm.trace = hqs.trace = true;
  hqs.splitting = Splitting::hqs;
  const TvDenoiser tv(0.01, 20);
  const auto a = reconstruct(j, op, sched, tv, MeanInitializer(), admm);
  sched.zeta.assign(sched.stages(), 0.7);  // ignored in HQS mode
  const auto h = reconstruct(j, op, sched, tv, MeanInitializer(), hqs);
  EXPECT_EQ(a.estimate, h.estimate);
  ASSERT_EQ(a.trace.size(), h.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    EXPECT_EQ(a.trace[k].fidelity, h.trace[k].fidelity);
    EXPECT_EQ(a.trace[k].delta, h.trace[k].delta);
  }
}

TEST(Reconstruct, TraceLayout) {
  const auto sys = synthetic::random_system(4, 3, 1);
  const auto op = build_frequency_operator(sys, 8, 8);
  const auto j = synthetic::random_image(8, 8, 2);
  const auto sched = StageSchedule::from_gammas({0.1, 0.4, 1.6});
  ReconstructOptions opt;
  opt.trace = true;
  const auto out = reconstruct(j, op, sched, IdentityDenoiser(), AdjointInitializer(), opt);
  ASSERT_EQ(out.trace.size(), 3u);
  EXPECT_EQ(out.trace[0].stage, 1u);
  EXPECT_EQ(out.trace[0].delta, 0.0);
  EXPECT_EQ(out.trace[1].gamma, 0.1);
  EXPECT_EQ(out.trace[2].gamma, 0.4);
  const double r = distance(apply_forward_frequency(op, out.estimate), j);
  EXPECT_NEAR(out.trace[2].fidelity, 0.5 * r * r, 1e-12);
}

TEST(Reconstruct, GdmFidelityPathRuns) {
  const auto sys = synthetic::random_system(4, 3, 1);
  const auto op = build_frequency_operator(sys, 8, 8);
  const auto j = synthetic::random_image(8, 8, 2);
  const auto sched = StageSchedule::from_gammas({0.1, 0.4, 1.6});
  ReconstructOptions opt;
  opt.splitting = Splitting::hqs;
  opt.fidelity.kind = FidelityMethod::Kind::gdm;
  opt.fidelity.iters = 10000;
  const auto gd = reconstruct(j, op, sched, IdentityDenoiser(), MeanInitializer(), opt);
  opt.fidelity.kind = FidelityMethod::Kind::analytic;
  const auto an = reconstruct(j, op, sched, IdentityDenoiser(), MeanInitializer(), opt);
  EXPECT_LT(max_abs_diff(gd.estimate, an.estimate), 1e-6);
}

TEST(Reconstruct, TvImprovesOverAdjointInitialization) {
  const auto sys = synthetic::demo_system(6, 7);
  const auto gt = synthetic::demo_scene(32, 32, 6, 12);
  const auto op = build_frequency_operator(sys, 32, 32);
  const auto j = add_noise(forward_encode(gt, sys), NoiseModel::calibrated(3));
  const auto sched = StageSchedule::from_gammas(default_gamma_schedule(7, 0.01, 4.0));
  const auto out = reconstruct(j, op, sched, TvDenoiser(0.01, 30), AdjointInitializer(), {});
  EXPECT_GT(psnr(out.estimate, gt), psnr(AdjointInitializer().initialize(j, op), gt));
}

// Poor initialization shows up as larger late-stage iterate movement.
TEST(Reconstruct, MeanInitOscillatesLessThanRandomInit) {
  const auto sys = synthetic::demo_system(6, 7);
  const auto op = build_frequency_operator(sys, 32, 32);
  const auto sched = StageSchedule::from_gammas(default_gamma_schedule(7, 0.01, 4.0));
  const TvDenoiser tv(0.01, 30);
  ReconstructOptions opt;
  opt.trace = true;
  int mean_wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto gt = synthetic::demo_scene(32, 32, 6, 100 + seed);
    const auto j = add_noise(forward_encode(gt, sys), NoiseModel::calibrated(seed));
    const auto m = reconstruct(j, op, sched, tv, MeanInitializer(), opt);
    const auto r = reconstruct(j, op, sched, tv, RandomInitializer(seed), opt);
    if (m.trace.back().delta <= r.trace.back().delta) ++mean_wins;
  }
  EXPECT_GT(mean_wins, 5);
}

TEST(Reconstruct, Errors) {
  const auto op = build_frequency_operator(OpticalSystem::identity(3), 4, 4);
  StageSchedule bad;
  EXPECT_THROW(reconstruct(CodedImage(4, 4), op, bad, IdentityDenoiser(), ZeroInitializer(), {}), ParameterError);
  EXPECT_THROW(reconstruct(CodedImage(5, 4), op, StageSchedule::from_gammas({1.0}), IdentityDenoiser(),
                           ZeroInitializer(), {}),
               DimensionError);
}

}  // namespace
}  // namespace dssi

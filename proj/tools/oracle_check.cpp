#include "oracle_check.hpp"

#include <algorithm>
#include <complex>
#include <random>

#include "dssi/denoisers.hpp"
#include "dssi/fidelity.hpp"
#include "dssi/oracle.hpp"
#include "dssi/synthetic.hpp"
#include "dssi/unfolding.hpp"

namespace dssi::tools {

bool OracleSuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.passed(); });
}

OracleSuiteResult run_oracle_suite(std::uint64_t seed, std::size_t trials, bool conjugate_operator) {
  OracleCheck ridge{"fidelity_vs_dense_ridge", 0.0, 1e-8};
  OracleCheck forward{"forward_vs_dense_phi", 0.0, 1e-10};
  OracleCheck admm{"admm_quadratic_vs_tikhonov", 0.0, 1e-6};
  const double gammas[] = {1e-3, 1.0, 1e3};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> bands_d(3, 6);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t side = t % 2 ? 8 : 6;
    const auto bands = static_cast<std::size_t>(bands_d(rng));
    const std::uint64_t s = rng();
    const auto sys = synthetic::random_system(bands, 3, s);
    auto op = build_frequency_operator(sys, side, side);
    if (conjugate_operator) {
      auto h = op.transfer();
      for (auto& v : h) v = std::conj(v);
      op = FrequencyOperator(side, side, bands, std::move(h));
    }
    const auto ds = oracle::build_dense_phi(sys, side, side);
    const auto coded = synthetic::random_image(side, side, s + 1);
    const auto cube = synthetic::random_cube(side, side, bands, s + 2);

    const auto dense_j = oracle::image_from_vector(ds.phi * oracle::vectorize(cube), ds);
    forward.worst =
        std::max(forward.worst, distance(apply_forward_frequency(op, cube), dense_j) / norm(dense_j));

    const double gamma = gammas[t % 3];
    const auto ref = oracle::dense_ridge_solve(ds, coded, cube, gamma);
    const auto got = fidelity_solve(FidelityProblem(op, coded, gamma), cube);
    ridge.worst = std::max(ridge.worst, distance(got, ref) / norm(ref));

    const double sigma = 0.05;
    const auto sched = StageSchedule::from_gammas(std::vector<double>(200, 0.2), 1.0, sigma);
    const auto rec = reconstruct(coded, op, sched, QuadraticDenoiser(), ZeroInitializer(), {});
    admm.worst = std::max(admm.worst, max_abs_diff(rec.estimate, oracle::dense_tikhonov_solve(ds, coded, sigma)));
  }
  return {trials, {ridge, forward, admm}};
}

}  // namespace dssi::tools

#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <ostream>

#include "dssi/denoisers.hpp"
#include "dssi/fidelity.hpp"
#include "dssi/oracle.hpp"
#include "dssi/synthetic.hpp"
#include "dssi/unfolding.hpp"

namespace dssi::tools {
namespace {

double median_seconds(std::size_t repeats, const std::function<void()>& body) {
  std::vector<double> t;
  for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(t.begin(), t.end());
  const std::size_t n = t.size();
  return n % 2 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
}

struct Scene {
  OpticalSystem sys;
  CodedImage coded;
};

Scene make_scene(std::size_t side, std::size_t bands, std::size_t psf_size, std::uint64_t seed) {
  auto sys = synthetic::demo_system(bands, psf_size);
  const auto gt = synthetic::demo_scene(side, side, bands, seed);
  auto coded = add_noise(forward_encode(gt, sys), NoiseModel::calibrated(seed));
  return {std::move(sys), std::move(coded)};
}

}  // namespace

std::vector<BenchRow> bench_fidelity(const BenchOptions& opt) {
  std::vector<BenchRow> rows;
  for (std::size_t side : opt.sizes) {
    for (std::size_t bands : opt.bands) {
      const auto scene = make_scene(side, bands, opt.psf_size, opt.seed);
      const auto op = build_frequency_operator(scene.sys, side, side);
      const FidelityProblem prob(op, scene.coded, opt.gamma);
      const auto anchor = MeanInitializer().initialize(scene.coded, op);
      const double step = gdm_safe_step(prob);

      auto row = [&](std::string method, std::size_t iters, double s) {
        rows.push_back({side, side, bands, std::move(method), iters, opt.repeats, s});
      };
      row("analytic", 0, median_seconds(opt.repeats, [&] { (void)fidelity_solve(prob, anchor); }));
      row("gdm", opt.gdm_iters,
          median_seconds(opt.repeats, [&] { (void)gdm_fidelity_step(prob, anchor, anchor, step, opt.gdm_iters); }));
      if (side * side * bands <= oracle::kMaxUnknowns) {
        const auto ds = oracle::build_dense_phi(scene.sys, side, side);
        row("dense", 0,
            median_seconds(opt.repeats, [&] { (void)oracle::dense_ridge_solve(ds, scene.coded, anchor, opt.gamma); }));
      }
    }
  }
  return rows;
}

PipelineTiming bench_pipeline(std::size_t side, std::size_t bands, std::size_t stages, std::size_t gdm_iters,
                              std::size_t repeats, std::uint64_t seed) {
  const auto scene = make_scene(side, bands, 7, seed);
  const auto op = build_frequency_operator(scene.sys, side, side);
  const auto sched = StageSchedule::from_gammas(default_gamma_schedule(stages, 0.01, 4.0));
  const TvDenoiser tv(0.01, 30);
  const MeanInitializer init;

  ReconstructOptions analytic;
  ReconstructOptions gdm;
  gdm.fidelity.kind = FidelityMethod::Kind::gdm;
  gdm.fidelity.iters = gdm_iters;

  PipelineTiming out;
  out.gdm_iters = gdm_iters;
  out.analytic_s = median_seconds(repeats, [&] { (void)reconstruct(scene.coded, op, sched, tv, init, analytic); });
  out.gdm_s = median_seconds(repeats, [&] { (void)reconstruct(scene.coded, op, sched, tv, init, gdm); });
  return out;
}

std::size_t matched_gdm_iterations(std::size_t side, std::size_t bands, std::size_t stages, double tol,
                                   std::size_t cap, std::uint64_t seed) {
  const auto scene = make_scene(side, bands, 7, seed);
  const auto op = build_frequency_operator(scene.sys, side, side);
  const auto gammas = default_gamma_schedule(stages, 0.01, 4.0);
  const auto anchor = MeanInitializer().initialize(scene.coded, op);
  const std::size_t chunk = 10;

  std::size_t worst = 0;
  for (std::size_t k = 0; k + 1 < gammas.size(); ++k) {
    const FidelityProblem prob(op, scene.coded, gammas[k]);
    const auto exact = fidelity_solve(prob, anchor);
    const double step = gdm_safe_step(prob);
    auto x = anchor;
    std::size_t iters = 0;
    while (iters < cap && max_abs_diff(x, exact) > tol) {
      x = gdm_fidelity_step(prob, anchor, x, step, chunk);
      iters += chunk;
    }
    worst = std::max(worst, std::min(iters, cap));
  }
  return worst;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "height,width,bands,method,gdm_iters,repeats,median_s\n";
  for (const auto& r : rows) {
    out << r.height << ',' << r.width << ',' << r.bands << ',' << r.method << ',' << r.gdm_iters << ',' << r.repeats
        << ',' << r.median_s << '\n';
  }
}

}  // namespace dssi::tools

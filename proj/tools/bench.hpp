#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dssi::tools {

struct BenchRow {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t bands = 0;
  std::string method;
  std::size_t gdm_iters = 0;
  std::size_t repeats = 0;
  double median_s = 0.0;
};

struct BenchOptions {
  std::vector<std::size_t> sizes{64, 128, 256, 512};
  std::vector<std::size_t> bands{8};
  double gamma = 0.01;
  std::size_t repeats = 3;
  std::size_t gdm_iters = 10;
  std::size_t psf_size = 7;
  std::uint64_t seed = 0;
};

/// Median wall-clock of one fidelity subproblem solved by the closed form,
/// by `gdm_iters` gradient steps, and by the dense oracle where it fits.
std::vector<BenchRow> bench_fidelity(const BenchOptions& opt);

struct PipelineTiming {
  double analytic_s = 0.0;
  double gdm_s = 0.0;
  std::size_t gdm_iters = 0;
};

/// Full `stages`-stage TV reconstruction of a side x side coded image with
/// the analytic fidelity step versus `gdm_iters` gradient steps per stage.
PipelineTiming bench_pipeline(std::size_t side, std::size_t bands, std::size_t stages, std::size_t gdm_iters,
                              std::size_t repeats, std::uint64_t seed);

/// Gradient steps needed, from the anchor, before every subproblem of the
/// default schedule is solved to within `tol` (max abs) of the closed form.
/// Returns `cap` if some stage never gets there.
std::size_t matched_gdm_iterations(std::size_t side, std::size_t bands, std::size_t stages, double tol,
                                   std::size_t cap, std::uint64_t seed);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace dssi::tools

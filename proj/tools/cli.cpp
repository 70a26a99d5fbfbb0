#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bench.hpp"
#include "dssi/denoisers.hpp"
#include "dssi/error.hpp"
#include "dssi/metrics.hpp"
#include "dssi/optics.hpp"
#include "dssi/parallel.hpp"
#include "dssi/spec_string.hpp"
#include "dssi/synthetic.hpp"
#include "dssi/tensor_io.hpp"
#include "dssi/unfolding.hpp"
#include "oracle_check.hpp"

#ifndef DSSI_VERSION
#define DSSI_VERSION "0.0.0"
#endif

namespace dssi::tools {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

json file_entry(const fs::path& path) {
  return {{"path", path.string()}, {"fnv1a64", hex64(fnv1a64(read_file_bytes(path)))}};
}

void write_manifest(const fs::path& path, const std::string& command, json config, json inputs, json outputs) {
  json m;
  m["tool"] = "dssi";
  m["version"] = DSSI_VERSION;
  m["command"] = command;
  m["config"] = std::move(config);
  m["inputs"] = std::move(inputs);
  m["outputs"] = std::move(outputs);
  const std::string text = m.dump(2) + "\n";
  write_file_bytes(path, std::vector<unsigned char>(text.begin(), text.end()));
}

fs::path manifest_path(const std::string& explicit_path, const std::string& out) {
  return explicit_path.empty() ? fs::path(out + ".manifest.json") : fs::path(explicit_path);
}

void write_text(const fs::path& path, const std::string& text) {
  write_file_bytes(path, std::vector<unsigned char>(text.begin(), text.end()));
}

DType parse_dtype(const std::string& s) { return s == "f32" ? DType::f32 : DType::f64; }

void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw UsageError("missing required option " + flag);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

NoiseModel parse_noise(const std::string& text, std::uint64_t seed) {
  if (text == "none") return NoiseModel::none();
  if (text == "calibrated") return NoiseModel::calibrated(seed);
  const auto spec = SpecString::parse("noise:" + text);
  spec.only({"gaussian", "poisson_bits"});
  if (!spec.positional.empty()) throw ParameterError("noise must be none, calibrated or gaussian=S,poisson_bits=B");
  NoiseModel nm{spec.number("gaussian", 0.0), static_cast<unsigned>(spec.count("poisson_bits", 0)), seed};
  nm.validate();
  return nm;
}

OpticalSystem load_system(const std::string& psf, const std::string& response) {
  return OpticalSystem(kernels_from_tensor(load_tensor(psf)), load_response_csv(response));
}

void export_pgm(const SpectralCube& cube, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t b = 0; b < cube.bands(); ++b) {
    std::string header = "P5\n" + std::to_string(cube.width()) + " " + std::to_string(cube.height()) + "\n255\n";
    std::vector<unsigned char> bytes(header.begin(), header.end());
    for (std::size_t y = 0; y < cube.height(); ++y)
      for (std::size_t x = 0; x < cube.width(); ++x)
        bytes.push_back(static_cast<unsigned char>(std::lround(std::clamp(cube(y, x, b), 0.0, 1.0) * 255.0)));
    char name[32];
    std::snprintf(name, sizeof name, "band_%03zu.pgm", b);
    write_file_bytes(dir / name, bytes);
  }
}

void export_csv(const SpectralCube& cube, const fs::path& path) {
  std::string text = "y,x";
  for (std::size_t b = 0; b < cube.bands(); ++b) text += ",b" + std::to_string(b);
  text += '\n';
  for (std::size_t y = 0; y < cube.height(); ++y)
    for (std::size_t x = 0; x < cube.width(); ++x) {
      text += std::to_string(y) + "," + std::to_string(x);
      for (std::size_t b = 0; b < cube.bands(); ++b) text += "," + fmt(cube(y, x, b));
      text += '\n';
    }
  write_text(path, text);
}

// Flat key=value config: each key names a long option of the active
// subcommand and is applied only when that option is absent from the command
// line.
std::vector<std::string> apply_config_file(CLI::App& app, std::vector<std::string> args) {
  std::string file;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) file = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) file = args[i].substr(9);
  }
  if (file.empty()) return args;

  CLI::App* sub = nullptr;
  for (std::size_t i = 1; i < args.size() && !sub; ++i) sub = app.get_subcommand_no_throw(args[i]);
  if (!sub) throw UsageError("--config needs a subcommand");

  std::ifstream in(file);
  if (!in) throw IoError(file + ": cannot open config file");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(file + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt) opt = app.get_option_no_throw(flag);
    if (!opt || key == "config" || key == "dump-config") {
      throw UsageError(file + ":" + std::to_string(lineno) + ": unknown key \"" + key + "\"");
    }
    const bool given = std::any_of(args.begin() + 1, args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (opt->get_expected_max() > 1) {
      std::stringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) args.push_back(flag + "=" + trim(item));
    } else {
      args.push_back(flag + "=" + value);
    }
  }
  return args;
}

std::string dump_config(const CLI::App& sub) {
  std::istringstream in(sub.config_to_str(true, false));
  std::string out, line;
  while (std::getline(in, line)) {
    if (line.rfind("dump-config", 0) == 0 || line.rfind("config", 0) == 0 || line.rfind("help", 0) == 0) continue;
    out += line + '\n';
  }
  return out;
}

struct Common {
  bool dump = false;
  std::string config;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Common& common) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", common.config, "flat key=value file; flags on the command line win");
  sub->add_flag("--dump-config", common.dump, "print the resolved configuration and exit");
  return sub;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string cube, psf, response, out, boundary = "circular", noise = "calibrated", gt_out, manifest, dtype = "f64";
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  require(a.cube, "--cube");
  require(a.psf, "--psf");
  require(a.response, "--response");
  require(a.out, "--out");
  const auto cube = to_cube(load_tensor(a.cube));
  const auto sys = load_system(a.psf, a.response);
  if (sys.bands() != cube.bands()) {
    throw DimensionError("cube has " + std::to_string(cube.bands()) + " bands but the PSF stack has " +
                         std::to_string(sys.bands()));
  }
  const Boundary boundary = a.boundary == "valid" ? Boundary::valid_crop : Boundary::circular;
  const NoiseModel noise = parse_noise(a.noise, a.seed);
  const auto coded = add_noise(forward_encode(cube, sys, boundary), noise);
  save_tensor(to_tensor(coded, parse_dtype(a.dtype)), a.out);

  json outputs;
  outputs["coded"] = file_entry(a.out);
  if (!a.gt_out.empty()) {
    const auto gt = boundary == Boundary::valid_crop ? cube.cropped(sys.kernel_size() / 2) : cube;
    save_tensor(to_tensor(gt, parse_dtype(a.dtype)), a.gt_out);
    outputs["ground_truth"] = file_entry(a.gt_out);
  }
  json config = {{"boundary", a.boundary},
                 {"noise", a.noise},
                 {"gaussian_sigma", noise.gaussian_sigma},
                 {"poisson_bits", noise.poisson_bits},
                 {"seed", a.seed},
                 {"dtype", a.dtype}};
  json inputs = {{"cube", file_entry(a.cube)}, {"psf", file_entry(a.psf)}, {"response", file_entry(a.response)}};
  write_manifest(manifest_path(a.manifest, a.out), "simulate", config, inputs, outputs);
  out << "wrote " << a.out << " (" << coded.height() << "x" << coded.width() << "x3)\n";
  return kExitOk;
}

// ---- reconstruct ------------------------------------------------------------

struct ReconstructArgs {
  std::string coded, psf, response, out;
  std::size_t stages = 7;
  std::string method = "admm";
  std::string gamma_schedule = "geometric:0.01,4";
  std::string denoiser = "tv:lambda=0.01,iters=30";
  std::string init = "mean";
  double zeta = 1.0;
  double sigma = 0.0;
  std::size_t gdm_iters = 10;
  double gdm_step = 0.0;
  std::string trace, export_pgm_dir, export_csv_path, manifest, dtype = "f64";
};

int cmd_reconstruct(const ReconstructArgs& a, std::ostream& out) {
  require(a.coded, "--coded");
  require(a.psf, "--psf");
  require(a.response, "--response");
  require(a.out, "--out");
  if (a.stages == 0) throw ParameterError("--stages must be at least 1");
  const auto denoiser = make_denoiser(a.denoiser);
  const auto init = make_initializer(a.init);
  const auto schedule = StageSchedule::from_gammas(parse_gamma_schedule(a.gamma_schedule, a.stages), a.zeta, a.sigma);

  ReconstructOptions opt;
  opt.splitting = a.method == "hqs" ? Splitting::hqs : Splitting::admm;
  if (a.method == "gdm") {
    opt.fidelity.kind = FidelityMethod::Kind::gdm;
    opt.fidelity.iters = a.gdm_iters;
    opt.fidelity.step = a.gdm_step;
  }
  opt.trace = !a.trace.empty();

  const auto coded = to_coded_image(load_tensor(a.coded));
  const auto sys = load_system(a.psf, a.response);
  const auto op = build_frequency_operator(sys, coded.height(), coded.width());
  const auto result = reconstruct(coded, op, schedule, *denoiser, *init, opt);
  save_tensor(to_tensor(result.estimate, parse_dtype(a.dtype)), a.out);

  json outputs;
  outputs["reconstruction"] = file_entry(a.out);
  if (opt.trace) {
    std::string text = "stage,fidelity,delta,gamma\n";
    for (const auto& r : result.trace) {
      text += std::to_string(r.stage) + "," + fmt(r.fidelity) + "," + fmt(r.delta) + "," + fmt(r.gamma) + "\n";
    }
    write_text(a.trace, text);
    outputs["trace"] = file_entry(a.trace);
  }
  if (!a.export_pgm_dir.empty()) export_pgm(result.estimate, a.export_pgm_dir);
  if (!a.export_csv_path.empty()) {
    export_csv(result.estimate, a.export_csv_path);
    outputs["csv"] = file_entry(a.export_csv_path);
  }

  json config = {{"stages", a.stages},
                 {"method", a.method},
                 {"gamma_schedule", a.gamma_schedule},
                 {"gamma", schedule.gamma},
                 {"denoiser", denoiser->name()},
                 {"init", init->name()},
                 {"zeta", a.zeta},
                 {"sigma", a.sigma},
                 {"gdm_iters", a.gdm_iters},
                 {"gdm_step", a.gdm_step},
                 {"dtype", a.dtype}};
  json inputs = {{"coded", file_entry(a.coded)}, {"psf", file_entry(a.psf)}, {"response", file_entry(a.response)}};
  write_manifest(manifest_path(a.manifest, a.out), "reconstruct", config, inputs, outputs);
  out << "wrote " << a.out << " (" << result.estimate.height() << "x" << result.estimate.width() << "x"
      << result.estimate.bands() << ", " << a.stages << " stages)\n";
  return kExitOk;
}

// ---- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
  std::vector<std::string> recon, gt;
  std::size_t crop = kDefaultCrop;
  std::string out;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  if (a.recon.empty()) throw UsageError("missing required option --recon");
  if (a.recon.size() != a.gt.size()) {
    throw UsageError("--recon and --gt must be given the same number of times (" + std::to_string(a.recon.size()) +
                     " vs " + std::to_string(a.gt.size()) + ")");
  }
  std::string lines;
  for (std::size_t i = 0; i < a.recon.size(); ++i) {
    const auto rep = evaluate(to_cube(load_tensor(a.recon[i])), to_cube(load_tensor(a.gt[i])), a.crop);
    lines += rep.to_json() + "\n";
    if (!a.out.empty()) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "PSNR %.2f dB  SAM %.3f deg  SSIM %.4f", rep.psnr_db,
                    rep.sam_rad * 180.0 / std::numbers::pi, rep.ssim);
      out << a.recon[i] << ": " << buf << '\n';
    }
  }
  if (a.out.empty()) {
    out << lines;
  } else {
    write_text(a.out, lines);
  }
  return kExitOk;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  BenchOptions opt;
  std::size_t stages = 7;
  std::string out;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  auto rows = bench_fidelity(a.opt);
  int code = kExitOk;
  const bool has512 = std::find(a.opt.sizes.begin(), a.opt.sizes.end(), 512u) != a.opt.sizes.end();
  if (has512 && a.stages > 1) {
    const std::size_t bands = a.opt.bands.front();
    const auto t = bench_pipeline(512, bands, a.stages, a.opt.gdm_iters, a.opt.repeats, a.opt.seed);
    rows.push_back({512, 512, bands, "pipeline_analytic", 0, a.opt.repeats, t.analytic_s});
    rows.push_back({512, 512, bands, "pipeline_gdm", t.gdm_iters, a.opt.repeats, t.gdm_s});
    if (!(t.analytic_s < t.gdm_s)) {
      err << "bench: analytic pipeline (" << t.analytic_s << " s) is not faster than " << t.gdm_iters
          << "-step GDM (" << t.gdm_s << " s)\n";
      code = kExitOracleBreach;
    }
  }
  if (a.out.empty()) {
    write_bench_csv(out, rows);
  } else {
    std::ostringstream s;
    write_bench_csv(s, rows);
    write_text(a.out, s.str());
    out << "wrote " << a.out << " (" << rows.size() << " rows)\n";
  }
  return code;
}

// ---- oracle-check -----------------------------------------------------------

struct OracleArgs {
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  bool inject_bug = false;
};

int cmd_oracle_check(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  if (a.trials == 0) {
    err << "warning: --trials 0 checks nothing\n";
    out << "oracle-check: 0 trials, vacuous pass\n";
    return kExitOk;
  }
  const auto res = run_oracle_suite(a.seed, a.trials, a.inject_bug);
  for (const auto& c : res.checks) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-28s worst %.3e  tol %.0e  %s", c.name.c_str(), c.worst, c.tolerance,
                  c.passed() ? "ok" : "BREACH");
    out << buf << '\n';
  }
  out << "oracle-check: " << res.trials << " trials, " << (res.passed() ? "pass" : "FAIL") << '\n';
  return res.passed() ? kExitOk : kExitOracleBreach;
}

// ---- synth ------------------------------------------------------------------

struct SynthArgs {
  std::string out_dir;
  std::size_t height = 64, width = 64, bands = 8, psf_size = 7;
  std::uint64_t seed = 1;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  require(a.out_dir, "--out-dir");
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  const auto sys = synthetic::demo_system(a.bands, a.psf_size);
  save_tensor(to_tensor(synthetic::demo_scene(a.height, a.width, a.bands, a.seed)), dir / "cube.htns");
  save_tensor(kernels_to_tensor(sys.psfs()), dir / "psf.htns");
  save_response_csv(sys.response(), synthetic::band_wavelengths(a.bands), dir / "response.csv");
  out << "wrote cube.htns, psf.htns, response.csv to " << dir.string() << '\n';
  return kExitOk;
}

}  // namespace

std::uint64_t fnv1a64(const std::vector<unsigned char>& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diffractive snapshot spectral imaging: simulate, reconstruct, evaluate"};
  app.set_version_flag("--version", DSSI_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker cap (0 = hardware default)")->capture_default_str();

  Common common;

  SimulateArgs sim;
  auto* s = add_command(app, "simulate", "encode a spectral cube into a noisy coded RGB image", common);
  s->add_option("--cube", sim.cube, "input cube (HTNS, H x W x N)");
  s->add_option("--psf", sim.psf, "PSF stack (HTNS, N x k x k)");
  s->add_option("--response", sim.response, "spectral response CSV");
  s->add_option("--out", sim.out, "output coded image (HTNS)");
  s->add_option("--boundary", sim.boundary, "circular | valid")
      ->check(CLI::IsMember({"circular", "valid"}))
      ->capture_default_str();
  s->add_option("--noise", sim.noise, "none | calibrated | gaussian=S,poisson_bits=B")->capture_default_str();
  s->add_option("--seed", sim.seed, "noise seed")->capture_default_str();
  s->add_option("--gt-out", sim.gt_out, "also write the ground truth aligned with the output");
  s->add_option("--manifest", sim.manifest, "manifest path (default <out>.manifest.json)");
  s->add_option("--dtype", sim.dtype, "f64 | f32")->check(CLI::IsMember({"f64", "f32"}))->capture_default_str();

  ReconstructArgs rec;
  auto* r = add_command(app, "reconstruct", "recover a spectral cube from a coded image", common);
  r->add_option("--coded", rec.coded, "coded image (HTNS, H x W x 3)");
  r->add_option("--psf", rec.psf, "PSF stack (HTNS, N x k x k)");
  r->add_option("--response", rec.response, "spectral response CSV");
  r->add_option("--out", rec.out, "output cube (HTNS)");
  r->add_option("--stages", rec.stages, "stage count K")->capture_default_str();
  r->add_option("--method", rec.method, "admm | hqs | gdm")
      ->check(CLI::IsMember({"admm", "hqs", "gdm"}))
      ->capture_default_str();
  r->add_option("--gamma-schedule", rec.gamma_schedule, "geometric:g0,r | constant:g | list:g1,...")
      ->capture_default_str();
  r->add_option("--denoiser", rec.denoiser, "identity | tv:lambda=,iters= | gaussian:sigma= | quadratic")
      ->capture_default_str();
  r->add_option("--init", rec.init, "zero | rand:seed=N | mean | adjoint")->capture_default_str();
  r->add_option("--zeta", rec.zeta, "multiplier update rate")->capture_default_str();
  r->add_option("--sigma", rec.sigma, "prior weight; denoiser level is sqrt(sigma / gamma)")->capture_default_str();
  r->add_option("--gdm-iters", rec.gdm_iters, "gradient steps per stage for --method gdm")->capture_default_str();
  r->add_option("--gdm-step", rec.gdm_step, "gradient step (0 = 1 / (L + gamma))")->capture_default_str();
  r->add_option("--trace", rec.trace, "per-stage CSV: stage,fidelity,delta,gamma");
  r->add_option("--export-pgm", rec.export_pgm_dir, "directory for 8-bit per-band previews");
  r->add_option("--export-csv", rec.export_csv_path, "cube as CSV rows y,x,b0..");
  r->add_option("--manifest", rec.manifest, "manifest path (default <out>.manifest.json)");
  r->add_option("--dtype", rec.dtype, "f64 | f32")->check(CLI::IsMember({"f64", "f32"}))->capture_default_str();

  EvaluateArgs ev;
  auto* e = add_command(app, "evaluate", "PSNR / SAM / SSIM of reconstructions against ground truth", common);
  e->add_option("--recon", ev.recon, "reconstruction (repeatable)");
  e->add_option("--gt", ev.gt, "ground truth, paired with --recon in order (repeatable)");
  e->add_option("--crop", ev.crop, "pixels removed from every edge")->capture_default_str();
  e->add_option("--out", ev.out, "JSON-lines report (default stdout)");

  BenchArgs bench;
  auto* b = add_command(app, "bench", "time closed-form vs gradient fidelity solves", common);
  b->add_option("--sizes", bench.opt.sizes, "square image sizes")->delimiter(',')->capture_default_str();
  b->add_option("--bands", bench.opt.bands, "band counts")->delimiter(',')->capture_default_str();
  b->add_option("--gamma", bench.opt.gamma, "penalty for the single-solve rows")->capture_default_str();
  b->add_option("--repeats", bench.opt.repeats, "timed repeats per row")->capture_default_str();
  b->add_option("--gdm-iters", bench.opt.gdm_iters, "gradient steps")->capture_default_str();
  b->add_option("--stages", bench.stages, "stages for the 512 pipeline rows")->capture_default_str();
  b->add_option("--seed", bench.opt.seed, "scene seed")->capture_default_str();
  b->add_option("--out", bench.out, "CSV path (default stdout)");

  OracleArgs orc;
  auto* o = add_command(app, "oracle-check", "compare fast solvers against the dense oracle", common);
  o->add_option("--seed", orc.seed, "trial seed")->capture_default_str();
  o->add_option("--trials", orc.trials, "random systems to test")->capture_default_str();
  o->add_flag("--inject-conjugate-bug", orc.inject_bug)->group("");

  SynthArgs syn;
  auto* y = add_command(app, "synth", "write a demo cube, PSF stack and response", common);
  y->add_option("--out-dir", syn.out_dir, "output directory");
  y->add_option("--height", syn.height)->capture_default_str();
  y->add_option("--width", syn.width)->capture_default_str();
  y->add_option("--bands", syn.bands)->capture_default_str();
  y->add_option("--psf-size", syn.psf_size)->capture_default_str();
  y->add_option("--seed", syn.seed)->capture_default_str();

  try {
    const auto args = apply_config_file(app, raw_args);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& pe) {
      const int code = app.exit(pe, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    set_max_threads(threads);

    CLI::App* active = app.get_subcommands().front();
    if (common.dump) {
      out << dump_config(*active);
      return kExitOk;
    }
    if (active == s) return cmd_simulate(sim, out);
    if (active == r) return cmd_reconstruct(rec, out);
    if (active == e) return cmd_evaluate(ev, out);
    if (active == b) return cmd_bench(bench, out, err);
    if (active == o) return cmd_oracle_check(orc, out, err);
    return cmd_synth(syn, out);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const IoError& ex) {
    err << "io error: " << ex.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& ex) {
    err << "io error: " << ex.what() << '\n';
    return kExitIo;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace dssi::tools

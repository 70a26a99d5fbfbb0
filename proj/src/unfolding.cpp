#include "dssi/unfolding.hpp"

#include <cmath>
#include <random>

#include "dssi/error.hpp"
#include "dssi/spec_string.hpp"

namespace dssi {

namespace {

void require_coded(const CodedImage& coded, const FrequencyOperator& op) {
  if (coded.height() != op.height() || coded.width() != op.width()) {
    throw DimensionError("coded image does not match the operator size");
  }
}

double data_fidelity(const FrequencyOperator& op, const CodedImage& coded, const SpectralCube& z) {
  const double r = distance(apply_forward_frequency(op, z), coded);
  return 0.5 * r * r;
}

}  // namespace

SpectralCube ZeroInitializer::initialize(const CodedImage& coded, const FrequencyOperator& op) const {
  require_coded(coded, op);
  return SpectralCube(op.height(), op.width(), op.bands());
}

SpectralCube RandomInitializer::initialize(const CodedImage& coded, const FrequencyOperator& op) const {
  require_coded(coded, op);
  SpectralCube out(op.height(), op.width(), op.bands());
  std::mt19937_64 rng(seed_);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (double& v : out.values()) v = uniform(rng);
  return out;
}

SpectralCube MeanInitializer::initialize(const CodedImage& coded, const FrequencyOperator& op) const {
  require_coded(coded, op);
  SpectralCube out(op.height(), op.width(), op.bands());
  const auto j = coded.values();
  auto z = out.values();
  for (std::size_t p = 0; p < coded.pixels(); ++p) {
    const double mean = (j[p * 3] + j[p * 3 + 1] + j[p * 3 + 2]) / 3.0;
    for (std::size_t i = 0; i < op.bands(); ++i) z[p * op.bands() + i] = mean;
  }
  return out;
}

SpectralCube AdjointInitializer::initialize(const CodedImage& coded, const FrequencyOperator& op) const {
  require_coded(coded, op);
  return apply_adjoint(op, coded);
}

std::vector<std::string> initializer_names() { return {"zero", "rand", "mean", "adjoint"}; }

std::unique_ptr<Initializer> make_initializer(std::string_view text) {
  const auto spec = SpecString::parse(text);
  if (spec.name == "zero") {
    spec.only({});
    return std::make_unique<ZeroInitializer>();
  }
  if (spec.name == "rand") {
    spec.only({"seed"});
    return std::make_unique<RandomInitializer>(spec.count("seed", 0));
  }
  if (spec.name == "mean") {
    spec.only({});
    return std::make_unique<MeanInitializer>();
  }
  if (spec.name == "adjoint") {
    spec.only({});
    return std::make_unique<AdjointInitializer>();
  }
  std::string valid;
  for (const auto& n : initializer_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ParameterError("unknown initializer \"" + spec.name + "\"; valid: " + valid);
}

void StageSchedule::validate() const {
  if (gamma.empty()) throw ParameterError("schedule needs at least one stage");
  if (zeta.size() != gamma.size() || sigma_tilde.size() != gamma.size()) {
    throw ParameterError("schedule lists differ in length (gamma " + std::to_string(gamma.size()) + ", zeta " +
                         std::to_string(zeta.size()) + ", sigma_tilde " + std::to_string(sigma_tilde.size()) + ")");
  }
  for (double g : gamma) {
    if (!(g > 0.0) || !std::isfinite(g)) throw ParameterError("every gamma must be finite and > 0");
  }
  for (double z : zeta) {
    if (!(z >= 0.0) || !std::isfinite(z)) throw ParameterError("every zeta must be finite and >= 0");
  }
  for (double s : sigma_tilde) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("every sigma_tilde must be finite and >= 0");
  }
}

StageSchedule StageSchedule::from_gammas(std::vector<double> gammas, double zeta, double prior_weight) {
  if (prior_weight < 0.0) throw ParameterError("prior weight must be >= 0");
  StageSchedule s;
  s.zeta.assign(gammas.size(), zeta);
  s.sigma_tilde.reserve(gammas.size());
  for (double g : gammas) s.sigma_tilde.push_back(g > 0.0 ? std::sqrt(prior_weight / g) : 0.0);
  s.gamma = std::move(gammas);
  s.validate();
  return s;
}

std::vector<double> default_gamma_schedule(std::size_t stages, double gamma0, double ratio) {
  if (stages == 0) throw ParameterError("schedule needs at least one stage");
  if (!(gamma0 > 0.0)) throw ParameterError("gamma0 must be > 0");
  if (!(ratio > 1.0)) {
    throw ParameterError("gamma ratio must be > 1: the penalty has to grow across stages");
  }
  std::vector<double> out(stages);
  double g = gamma0;
  for (auto& v : out) {
    v = g;
    g *= ratio;
  }
  return out;
}

std::vector<double> parse_gamma_schedule(std::string_view text, std::size_t stages) {
  const auto spec = SpecString::parse(text);
  if (!spec.options.empty()) throw ParameterError("gamma schedule takes positional values only");
  auto arg = [&](std::size_t i) { return parse_number(spec.positional.at(i), "gamma schedule"); };
  if (spec.name == "geometric") {
    if (spec.positional.size() != 2) throw ParameterError("geometric schedule is geometric:gamma0,ratio");
    return default_gamma_schedule(stages, arg(0), arg(1));
  }
  if (spec.name == "constant") {
    if (spec.positional.size() != 1) throw ParameterError("constant schedule is constant:gamma");
    if (stages == 0) throw ParameterError("schedule needs at least one stage");
    return std::vector<double>(stages, arg(0));
  }
  if (spec.name == "list") {
    if (spec.positional.size() != stages) {
      throw ParameterError("list schedule has " + std::to_string(spec.positional.size()) + " values for " +
                           std::to_string(stages) + " stages");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < stages; ++i) out.push_back(arg(i));
    return out;
  }
  throw ParameterError("unknown gamma schedule \"" + spec.name + "\"; valid: geometric, constant, list");
}

Reconstruction reconstruct(const CodedImage& coded, const FrequencyOperator& op, const StageSchedule& schedule,
                           const Denoiser& denoiser, const Initializer& init, const ReconstructOptions& options) {
  schedule.validate();
  require_coded(coded, op);
  const bool admm = options.splitting == Splitting::admm;
  const bool gdm = options.fidelity.kind == FidelityMethod::Kind::gdm;
  if (gdm && options.fidelity.step < 0.0) throw ParameterError("GDM step must be >= 0");

  Reconstruction result;
  SpectralCube z = init.initialize(coded, op);
  if (z.height() != op.height() || z.width() != op.width() || z.bands() != op.bands()) {
    throw DimensionError("initializer produced a cube of the wrong shape");
  }
  SpectralCube beta(op.height(), op.width(), op.bands());
  if (options.trace) result.trace.push_back({1, data_fidelity(op, coded, z), 0.0, 0.0});

  const FidelityProblem base(op, coded, schedule.gamma.front());
  const double lipschitz = gdm && options.fidelity.step == 0.0 ? op.lipschitz() : 0.0;

  for (std::size_t k = 0; k + 1 < schedule.stages(); ++k) {
    const double gamma = schedule.gamma[k];
    const double zeta = admm ? schedule.zeta[k] : 0.0;
    const FidelityProblem prob = base.with_gamma(gamma);

    SpectralCube anchor = z;
    axpy(-1.0, beta, anchor);

    SpectralCube x;
    if (gdm) {
      const double step = options.fidelity.step > 0.0 ? options.fidelity.step : 1.0 / (lipschitz + gamma);
      x = gdm_fidelity_step(prob, anchor, anchor, step, options.fidelity.iters);
    } else {
      x = fidelity_solve(prob, anchor);
    }

    SpectralCube z_tilde = x;
    axpy(1.0, beta, z_tilde);
    SpectralCube z_next = denoiser.denoise(z_tilde, schedule.sigma_tilde[k]);

    if (zeta != 0.0) {
      auto b = beta.values();
      const auto xi = x.values();
      const auto zi = z_next.values();
      for (std::size_t j = 0; j < b.size(); ++j) b[j] += zeta * (xi[j] - zi[j]);
    }
    if (options.trace) {
      result.trace.push_back({k + 2, data_fidelity(op, coded, z_next), distance(z_next, z), gamma});
      result.primal_residual.push_back(distance(x, z_next));
    }
    z = std::move(z_next);
  }
  result.estimate = std::move(z);
  return result;
}

}  // namespace dssi

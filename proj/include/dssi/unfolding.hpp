#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dssi/denoisers.hpp"
#include "dssi/fidelity.hpp"
#include "dssi/optics.hpp"

namespace dssi {

/// Produces the first iterate Z(1) from the measurement.
class Initializer {
 public:
  virtual ~Initializer() = default;
  virtual std::string name() const = 0;
  virtual SpectralCube initialize(const CodedImage& coded, const FrequencyOperator& op) const = 0;
};

class ZeroInitializer final : public Initializer {
 public:
  std::string name() const override { return "zero"; }
  SpectralCube initialize(const CodedImage& coded, const FrequencyOperator& op) const override;
};

/// Uniform [0, 1) noise from a seeded generator.
class RandomInitializer final : public Initializer {
 public:
  explicit RandomInitializer(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "rand:seed=" + std::to_string(seed_); }
  SpectralCube initialize(const CodedImage& coded, const FrequencyOperator& op) const override;

 private:
  std::uint64_t seed_;
};

/// Every band set to the per-pixel mean of the three color channels.
class MeanInitializer final : public Initializer {
 public:
  std::string name() const override { return "mean"; }
  SpectralCube initialize(const CodedImage& coded, const FrequencyOperator& op) const override;
};

/// Phi^T J.
class AdjointInitializer final : public Initializer {
 public:
  std::string name() const override { return "adjoint"; }
  SpectralCube initialize(const CodedImage& coded, const FrequencyOperator& op) const override;
};

/// Parses "zero", "rand[:seed=N]", "mean", "adjoint".
std::unique_ptr<Initializer> make_initializer(std::string_view spec);
std::vector<std::string> initializer_names();

/// Per-stage parameters. Stage k (1-based) of the loop uses gamma[k-1],
/// zeta[k-1] and sigma_tilde[k-1] to turn Z(k) into Z(k+1).
struct StageSchedule {
  std::vector<double> gamma;
  std::vector<double> zeta;
  std::vector<double> sigma_tilde;

  std::size_t stages() const { return gamma.size(); }
  /// Throws ParameterError on length mismatch, K = 0, gamma <= 0 or negative zeta/sigma_tilde.
  void validate() const;

  /// gamma from `gammas`, zeta = 1, sigma_tilde = sqrt(prior_weight / gamma).
  static StageSchedule from_gammas(std::vector<double> gammas, double zeta = 1.0, double prior_weight = 0.0);
};

/// gamma_k = gamma0 * ratio^(k-1), k = 1..stages. Requires ratio > 1.
std::vector<double> default_gamma_schedule(std::size_t stages, double gamma0, double ratio);

/// "geometric:g0,r" | "constant:g" | "list:g1,g2,..." expanded to `stages` values.
std::vector<double> parse_gamma_schedule(std::string_view spec, std::size_t stages);

enum class Splitting { admm, hqs };

struct FidelityMethod {
  enum class Kind { analytic, gdm };
  Kind kind = Kind::analytic;
  /// GDM only: 0 selects 1 / (L + gamma) per stage.
  double step = 0.0;
  std::size_t iters = 10;
};

struct ReconstructOptions {
  Splitting splitting = Splitting::admm;
  FidelityMethod fidelity;
  bool trace = false;
};

struct StageRecord {
  std::size_t stage = 0;
  /// 1/2 ||Phi Z(k) - J||^2
  double fidelity = 0.0;
  /// ||Z(k) - Z(k-1)||, 0 for the initialization.
  double delta = 0.0;
  /// gamma that produced Z(k), 0 for the initialization.
  double gamma = 0.0;
};

struct Reconstruction {
  SpectralCube estimate;
  std::vector<StageRecord> trace;
  /// ||I(k+1) - Z(k+1)|| per executed stage (primal residual); filled with the trace.
  std::vector<double> primal_residual;
};

/// Unrolled splitting loop: Z(1) = init(J), beta~(1) = 0, and for k = 1..K-1
///   I~ = Z(k) - beta~(k);  I(k+1) = P(J, I~, gamma_k);  Z~ = I(k+1) + beta~(k)
///   Z(k+1) = S(Z~, sigma~_k);  beta~(k+1) = beta~(k) + zeta_k (I(k+1) - Z(k+1)).
/// HQS forces zeta = 0. Returns Z(K).
Reconstruction reconstruct(const CodedImage& coded, const FrequencyOperator& op, const StageSchedule& schedule,
                           const Denoiser& denoiser, const Initializer& init, const ReconstructOptions& options);

}  // namespace dssi

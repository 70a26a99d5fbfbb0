#pragma once

#include <array>
#include <memory>
#include <vector>

#include "dssi/optics.hpp"
#include "dssi/tensor.hpp"

namespace dssi {

/// Row-major 3 x 3 complex matrix.
using Matrix3c = std::array<cd, 9>;

/// Inverse of A = I + G (G Hermitian PSD) by nested Schur complements:
/// eliminate the (1,1) entry to invert the leading 2 x 2 block, then take the
/// Schur complement of that block for the trailing entry. Throws
/// SingularityError if any pivot magnitude falls below 1e-300.
Matrix3c block_inverse_3x3(const Matrix3c& a);

/// The data-fidelity subproblem
///   argmin_I 1/2 ||Phi I - J||^2 + gamma/2 ||I - anchor||^2
/// for a fixed operator and measurement. Cheap to copy: the measurement and
/// its spectrum are shared.
class FidelityProblem {
 public:
  FidelityProblem(const FrequencyOperator& op, const CodedImage& coded, double gamma);

  FidelityProblem with_gamma(double gamma) const;

  const FrequencyOperator& op() const { return *op_; }
  const CodedImage& coded() const { return *coded_; }
  /// DFT of the coded image, frequency-major (3 entries per bin).
  const std::vector<cd>& coded_spectrum() const { return *spectrum_; }
  double gamma() const { return gamma_; }

 private:
  FidelityProblem(const FrequencyOperator* op, std::shared_ptr<const CodedImage> coded,
                  std::shared_ptr<const std::vector<cd>> spectrum, double gamma);

  const FrequencyOperator* op_;
  std::shared_ptr<const CodedImage> coded_;
  std::shared_ptr<const std::vector<cd>> spectrum_;
  double gamma_;
};

/// Closed-form minimizer: per frequency
///   U = U~ + (1/gamma) H^* [V - A^{-1} ((1/gamma) H H^* V + H U~)],  A = I + (1/gamma) H H^*,
/// evaluated as U~ + (1/gamma) H^* A^{-1} (V - H U~), which is the same bracket
/// without the cancellation at small gamma.
SpectralCube fidelity_solve(const FidelityProblem& prob, const SpectralCube& anchor);

/// Same minimizer through a direct N_lambda x N_lambda Hermitian solve of
/// (H^* H + gamma E) U = H^* V + gamma U~ per frequency. Test scale only.
SpectralCube fidelity_solve_naive(const FidelityProblem& prob, const SpectralCube& anchor);

/// `iters` gradient steps on the subproblem objective from `current`, each
/// applying Phi and Phi^T through the FFT.
SpectralCube gdm_fidelity_step(const FidelityProblem& prob, const SpectralCube& anchor,
                               const SpectralCube& current, double step, std::size_t iters);

/// 1 / (L + gamma), the largest step for which GDM is guaranteed to converge
/// monotonically.
double gdm_safe_step(const FidelityProblem& prob);

double fidelity_objective(const FidelityProblem& prob, const SpectralCube& anchor, const SpectralCube& x);
/// Phi^T (Phi x - J) + gamma (x - anchor).
SpectralCube fidelity_gradient(const FidelityProblem& prob, const SpectralCube& anchor, const SpectralCube& x);

}  // namespace dssi

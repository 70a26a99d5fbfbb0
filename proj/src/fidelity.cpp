#include "dssi/fidelity.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "dssi/error.hpp"
#include "dssi/parallel.hpp"

namespace dssi {

namespace {

constexpr double kPivotFloor = 1e-300;

cd checked_reciprocal(cd pivot, const char* which) {
  if (std::abs(pivot) < kPivotFloor) throw SingularityError(std::string("singular pivot in ") + which);
  return 1.0 / pivot;
}

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("gamma must be a finite positive number, got " + std::to_string(gamma));
  }
}

void require_cube(const FidelityProblem& prob, const SpectralCube& cube, const char* what) {
  const auto& op = prob.op();
  if (cube.height() != op.height() || cube.width() != op.width() || cube.bands() != op.bands()) {
    throw DimensionError(std::string(what) + " does not match the operator's " + std::to_string(op.height()) +
                         "x" + std::to_string(op.width()) + "x" + std::to_string(op.bands()));
  }
}

}  // namespace

Matrix3c block_inverse_3x3(const Matrix3c& m) {
  auto a = [&](int r, int c) { return m[static_cast<std::size_t>((r - 1) * 3 + (c - 1))]; };

  // Leading 2x2 block B11 = [a11 a12; a21 a22] via C = (a22 - a21 a11^-1 a12)^-1.
  const cd inv11 = checked_reciprocal(a(1, 1), "A11");
  const cd c = checked_reciprocal(a(2, 2) - a(2, 1) * inv11 * a(1, 2), "C");
  const cd b11inv[2][2] = {
      {inv11 + inv11 * a(1, 2) * c * a(2, 1) * inv11, -inv11 * a(1, 2) * c},
      {-c * a(2, 1) * inv11, c},
  };

  // Outer split: B12 = [a13; a23], B21 = [a31 a32], B22 = a33.
  const cd b12[2] = {a(1, 3), a(2, 3)};
  const cd b21[2] = {a(3, 1), a(3, 2)};
  const cd t[2] = {b11inv[0][0] * b12[0] + b11inv[0][1] * b12[1],   // B11^-1 B12
                   b11inv[1][0] * b12[0] + b11inv[1][1] * b12[1]};
  const cd s[2] = {b21[0] * b11inv[0][0] + b21[1] * b11inv[1][0],   // B21 B11^-1
                   b21[0] * b11inv[0][1] + b21[1] * b11inv[1][1]};
  const cd d = checked_reciprocal(a(3, 3) - (b21[0] * t[0] + b21[1] * t[1]), "D");

  Matrix3c out;
  for (int r = 0; r < 2; ++r) {
    for (int col = 0; col < 2; ++col) out[static_cast<std::size_t>(r * 3 + col)] = b11inv[r][col] + t[r] * d * s[col];
    out[static_cast<std::size_t>(r * 3 + 2)] = -t[r] * d;
    out[static_cast<std::size_t>(6 + r)] = -d * s[r];
  }
  out[8] = d;

  // One Newton step X += X (I - A X) removes the cancellation error of the
  // Schur recursion when G dominates the identity.
  Matrix3c resid;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t col = 0; col < 3; ++col) {
      cd ax = m[r * 3] * out[col] + m[r * 3 + 1] * out[3 + col] + m[r * 3 + 2] * out[6 + col];
      resid[r * 3 + col] = (r == col ? cd(1.0) : cd(0.0)) - ax;
    }
  Matrix3c refined;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t col = 0; col < 3; ++col)
      refined[r * 3 + col] = out[r * 3 + col] + out[r * 3] * resid[col] + out[r * 3 + 1] * resid[3 + col] +
                             out[r * 3 + 2] * resid[6 + col];
  return refined;
}

FidelityProblem::FidelityProblem(const FrequencyOperator& op, const CodedImage& coded, double gamma)
    : op_(&op), coded_(std::make_shared<const CodedImage>(coded)), gamma_(gamma) {
  require_gamma(gamma);
  if (coded.height() != op.height() || coded.width() != op.width()) {
    throw DimensionError("coded image " + std::to_string(coded.height()) + "x" + std::to_string(coded.width()) +
                         " does not match operator " + std::to_string(op.height()) + "x" +
                         std::to_string(op.width()));
  }
  spectrum_ = std::make_shared<const std::vector<cd>>(grid_spectrum(coded));
}

FidelityProblem::FidelityProblem(const FrequencyOperator* op, std::shared_ptr<const CodedImage> coded,
                                 std::shared_ptr<const std::vector<cd>> spectrum, double gamma)
    : op_(op), coded_(std::move(coded)), spectrum_(std::move(spectrum)), gamma_(gamma) {
  require_gamma(gamma);
}

FidelityProblem FidelityProblem::with_gamma(double gamma) const {
  return FidelityProblem(op_, coded_, spectrum_, gamma);
}

SpectralCube fidelity_solve(const FidelityProblem& prob, const SpectralCube& anchor) {
  require_cube(prob, anchor, "anchor");
  const auto& op = prob.op();
  const std::size_t bands = op.bands();
  const double inv_gamma = 1.0 / prob.gamma();
  const auto& v_all = prob.coded_spectrum();
  std::vector<cd> u_all = grid_spectrum(anchor);

  parallel_for(op.frequencies(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const auto h = op.matrix(f);
      const auto hh = op.gram(f);
      const cd* v = v_all.data() + f * 3;
      cd* u = u_all.data() + f * bands;

      // A = I + HH*/gamma. The bracket V - A^-1 (HH*V/gamma + H U~) equals
      // A^-1 (V - H U~); this form avoids cancelling two O(1/gamma) terms.
      Matrix3c a;
      for (std::size_t k = 0; k < 9; ++k) a[k] = inv_gamma * hh[k];
      a[0] += 1.0;
      a[4] += 1.0;
      a[8] += 1.0;
      const Matrix3c inv = block_inverse_3x3(a);

      cd r[3];
      for (std::size_t c = 0; c < 3; ++c) {
        cd hu{};
        for (std::size_t i = 0; i < bands; ++i) hu += h[c * bands + i] * u[i];
        r[c] = v[c] - hu;
      }
      cd resid[3];
      for (std::size_t c = 0; c < 3; ++c) {
        resid[c] = inv_gamma * (inv[c * 3] * r[0] + inv[c * 3 + 1] * r[1] + inv[c * 3 + 2] * r[2]);
      }
      for (std::size_t i = 0; i < bands; ++i) {
        u[i] += std::conj(h[i]) * resid[0] + std::conj(h[bands + i]) * resid[1] +
                std::conj(h[2 * bands + i]) * resid[2];
      }
    }
  });
  return SpectralCube(grid_from_spectrum(u_all, op.height(), op.width(), bands));
}

SpectralCube fidelity_solve_naive(const FidelityProblem& prob, const SpectralCube& anchor) {
  require_cube(prob, anchor, "anchor");
  const auto& op = prob.op();
  const auto bands = static_cast<Eigen::Index>(op.bands());
  const double gamma = prob.gamma();
  const auto& v_all = prob.coded_spectrum();
  std::vector<cd> u_all = grid_spectrum(anchor);

  parallel_for(op.frequencies(), [&](std::size_t begin, std::size_t end) {
    Eigen::MatrixXcd h(3, bands);
    for (std::size_t f = begin; f < end; ++f) {
      const auto hf = op.matrix(f);
      for (Eigen::Index r = 0; r < 3; ++r)
        for (Eigen::Index i = 0; i < bands; ++i) h(r, i) = hf[static_cast<std::size_t>(r * bands + i)];
      const Eigen::Map<const Eigen::Vector3cd> v(v_all.data() + f * 3);
      Eigen::Map<Eigen::VectorXcd> u(u_all.data() + f * static_cast<std::size_t>(bands), bands);

      Eigen::MatrixXcd normal = h.adjoint() * h;
      normal.diagonal().array() += gamma;
      const Eigen::VectorXcd rhs = h.adjoint() * v + gamma * u;
      u = normal.llt().solve(rhs);
    }
  });
  return SpectralCube(grid_from_spectrum(u_all, op.height(), op.width(), op.bands()));
}

SpectralCube fidelity_gradient(const FidelityProblem& prob, const SpectralCube& anchor, const SpectralCube& x) {
  require_cube(prob, anchor, "anchor");
  require_cube(prob, x, "iterate");
  CodedImage residual = apply_forward_frequency(prob.op(), x);
  axpy(-1.0, prob.coded(), residual);
  SpectralCube grad = apply_adjoint(prob.op(), residual);
  axpy(prob.gamma(), x, grad);
  axpy(-prob.gamma(), anchor, grad);
  return grad;
}

double fidelity_objective(const FidelityProblem& prob, const SpectralCube& anchor, const SpectralCube& x) {
  require_cube(prob, anchor, "anchor");
  require_cube(prob, x, "iterate");
  const CodedImage predicted = apply_forward_frequency(prob.op(), x);
  const double data = distance(predicted, prob.coded());
  const double prior = distance(x, anchor);
  return 0.5 * data * data + 0.5 * prob.gamma() * prior * prior;
}

SpectralCube gdm_fidelity_step(const FidelityProblem& prob, const SpectralCube& anchor,
                               const SpectralCube& current, double step, std::size_t iters) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ParameterError("GDM step must be positive");
  require_cube(prob, anchor, "anchor");
  require_cube(prob, current, "iterate");
  SpectralCube x = current;
  for (std::size_t it = 0; it < iters; ++it) axpy(-step, fidelity_gradient(prob, anchor, x), x);
  return x;
}

double gdm_safe_step(const FidelityProblem& prob) { return 1.0 / (prob.op().lipschitz() + prob.gamma()); }

}  // namespace dssi

#include "localchan/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace localchan {

namespace {

ComplexMatrix make_pauli(int i) {
  ComplexMatrix m(2, 2);
  switch (i) {
    case 0: m << 0, 1, 1, 0; break;
    case 1: m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
    case 2: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 0, 1 or 2");
  }
  return m;
}

const ComplexMatrix& pauli_pair(int j, int k) {
  static const auto table = [] {
    std::array<ComplexMatrix, 9> t;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) t[j * 3 + k] = tensor_product(make_pauli(j), make_pauli(k));
    return t;
  }();
  return table[j * 3 + k];
}

void require_two_qubits(const DensityOperator& rho, const char* who) {
  if (rho.dim() != 4)
    throw std::invalid_argument(std::string(who) + ": state must be two qubits (dim 4)");
}

/// -I + sum_jk gamma_jk s_j (x) s_k, the epsilon-independent core of the
/// detection map's perturbation.
ComplexMatrix detection_core(const PauliCoefficients& c) {
  ComplexMatrix m = -ComplexMatrix::Identity(4, 4);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) m += c.gamma(j, k) * pauli_pair(j, k);
  return m;
}

}  // namespace

const ComplexMatrix& pauli(int i) {
  static const std::array<ComplexMatrix, 3> table = {make_pauli(0), make_pauli(1),
                                                     make_pauli(2)};
  if (i < 0 || i > 2) throw std::invalid_argument("pauli: index must be 0, 1 or 2");
  return table[static_cast<std::size_t>(i)];
}

PauliCoefficients pauli_coefficients(const DensityOperator& rho) {
  require_two_qubits(rho, "pauli_coefficients");
  PauliCoefficients c;
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
  for (int j = 0; j < 3; ++j) {
    c.alpha(j) = (m * tensor_product(pauli(j), eye2)).trace().real();
    c.beta(j) = (m * tensor_product(eye2, pauli(j))).trace().real();
    for (int k = 0; k < 3; ++k) c.gamma(j, k) = (m * pauli_pair(j, k)).trace().real();
  }
  return c;
}

ComplexMatrix pauli_reconstruct(const PauliCoefficients& c) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
  for (int j = 0; j < 3; ++j) {
    m += c.alpha(j) * tensor_product(pauli(j), eye2);
    m += c.beta(j) * tensor_product(eye2, pauli(j));
    for (int k = 0; k < 3; ++k) m += c.gamma(j, k) * pauli_pair(j, k);
  }
  return 0.25 * m;
}

HermitianOperator apply_witness_map(const DensityOperator& rho, double epsilon) {
  require_two_qubits(rho, "apply_witness_map");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("apply_witness_map: epsilon must be positive");
  const PauliCoefficients c = pauli_coefficients(rho);
  ComplexMatrix out = rho.matrix() + 0.25 * epsilon * detection_core(c);
  return HermitianOperator::symmetrized(out);
}

double witness_value(const DensityOperator& rho) {
  require_two_qubits(rho, "witness_value");
  const PauliCoefficients c = pauli_coefficients(rho);
  return 0.25 * schatten_norm(detection_core(c), 1.0) - 1.0;
}

double witness_value_with_epsilon(const DensityOperator& rho, double epsilon) {
  const HermitianOperator image = apply_witness_map(rho, epsilon);
  return schatten_norm(image.matrix() - rho.matrix(), 1.0) / epsilon - 1.0;
}

namespace {

// PSD square root with eigenvalues below a relative noise floor (including
// small negatives) clipped to zero before the root; the clipping keeps the
// zero modes of rank-deficient states from surfacing as sqrt(noise).
ComplexMatrix psd_sqrt_clipped(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("concurrence: eigensolver failed to converge");
  RealVector ev = solver.eigenvalues();
  const double floor = std::max(ev.maxCoeff(), 0.0) * 1e-13;
  RealVector root(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    root(i) = ev(i) > floor ? std::sqrt(ev(i)) : 0.0;
  return solver.eigenvectors() * root.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace

double concurrence(const DensityOperator& rho) {
  require_two_qubits(rho, "concurrence");
  const ComplexMatrix yy = pauli_pair(1, 1);
  const ComplexMatrix flipped = yy * rho.matrix().conjugate() * yy;

  // The descending square-rooted spectrum of rho * flipped equals the
  // singular values of sqrt(flipped) * sqrt(rho); this route stays within
  // Hermitian decompositions and avoids taking roots of noisy eigenvalues.
  const ComplexMatrix z = psd_sqrt_clipped(flipped) * psd_sqrt_clipped(rho.matrix());
  const RealVector lam = singular_values(z);
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

}  // namespace localchan

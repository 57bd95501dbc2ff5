#pragma once

#include <Eigen/Dense>

#include "localchan/linalg.hpp"
#include "localchan/states.hpp"

namespace localchan {

/// Standard (unnormalized, Tr sigma^2 = 2) Pauli matrices; index 0..2 maps
/// to x, y, z. This module works in the quarter-normalized two-qubit Pauli
/// expansion throughout, unlike the orthonormal GeneratorBasis convention.
const ComplexMatrix& pauli(int i);

/// Coefficients of a two-qubit state in the expansion
/// rho = (1/4)[I + sum_j alpha_j s_j (x) I + sum_k beta_k I (x) s_k
///             + sum_jk gamma_jk s_j (x) s_k].
struct PauliCoefficients {
  Eigen::Vector3d alpha = Eigen::Vector3d::Zero();
  Eigen::Vector3d beta = Eigen::Vector3d::Zero();
  Eigen::Matrix3d gamma = Eigen::Matrix3d::Zero();
};

/// alpha_j = Tr(rho s_j (x) I), beta_k = Tr(rho I (x) s_k),
/// gamma_jk = Tr(rho s_j (x) s_k). Requires a 4x4 state.
PauliCoefficients pauli_coefficients(const DensityOperator& rho);

/// Inverse expansion; exact for coefficients extracted from a state.
ComplexMatrix pauli_reconstruct(const PauliCoefficients& c);

/// The non-physical linear detection map applied verbatim:
/// rho -> rho + (epsilon/4)(-I + sum_jk gamma_jk s_j (x) s_k).
/// The perturbation carries trace -epsilon, so the output trace is
/// 1 - epsilon; the map is Hermiticity-preserving but neither
/// trace-preserving nor positive.
HermitianOperator apply_witness_map(const DensityOperator& rho, double epsilon);

/// F(rho) = (1/4) Tr| -I + sum_jk gamma_jk s_j (x) s_k | - 1. The epsilon of
/// the detection map cancels exactly, so this form is epsilon-free.
/// Nonnegative for every state, zero on all separable states, and equal to
/// the concurrence on pure and Werner states. Not faithful: some entangled
/// states also give zero.
double witness_value(const DensityOperator& rho);

/// Literal route through the detection map at an explicit epsilon:
/// (1/epsilon) * Tr|map[rho] - rho| - 1. Agrees with witness_value.
double witness_value_with_epsilon(const DensityOperator& rho, double epsilon);

/// Wootters concurrence from the spin-flip spectrum: with
/// rho_tilde = (s_y (x) s_y) conj(rho) (s_y (x) s_y) and lambda_i the
/// descending square roots of the eigenvalues of rho * rho_tilde,
/// C = max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4). Serves as the
/// independent entanglement oracle for two qubits.
double concurrence(const DensityOperator& rho);

}  // namespace localchan

#pragma once

#include <cstdint>
#include <vector>

#include "localchan/linalg.hpp"
#include "localchan/rng.hpp"

namespace localchan {

/// Unit-trace (within 1e-12), positive-semidefinite (smallest eigenvalue
/// >= -1e-10) Hermitian operator.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator h);

  /// Validating convenience: symmetrizes approximate input first.
  static DensityOperator from_matrix(const ComplexMatrix& m);

  /// Projector onto a unit vector (norm within 1e-8 of 1; renormalized
  /// exactly). Positivity holds by construction, so no eigen-check runs.
  static DensityOperator pure(const ComplexVector& psi);

  Eigen::Index dim() const { return herm_.dim(); }
  const ComplexMatrix& matrix() const { return herm_.matrix(); }
  const HermitianOperator& hermitian() const { return herm_; }
  double purity() const { return herm_.matrix().squaredNorm(); }

 private:
  struct Trusted {};
  DensityOperator(Trusted, HermitianOperator h) : herm_(std::move(h)) {}
  HermitianOperator herm_;
};

inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Orthonormal traceless Hermitian generators of SU(d): d^2-1 operators with
/// Tr(g_a g_b) = delta_ab. Canonical ordering, fixed so that coefficient
/// vectors are stable across runs:
///   1. symmetric pair operators (|j><k| + |k><j|)/sqrt(2), pairs (j,k),
///      j < k, in lexicographic order;
///   2. antisymmetric pair operators (-i|j><k| + i|k><j|)/sqrt(2), same
///      pair order;
///   3. diagonal operators (sum_{m<l} |m><m| - l|l><l|)/sqrt(l(l+1)) for
///      l = 1..d-1.
/// For d=2 this is {sigma_x, sigma_y, sigma_z}/sqrt(2).
class GeneratorBasis {
 public:
  static GeneratorBasis gellmann(int d);

  int dim() const { return dim_; }
  const std::vector<ComplexMatrix>& generators() const { return gens_; }

 private:
  GeneratorBasis(int d, std::vector<ComplexMatrix> gens)
      : dim_(d), gens_(std::move(gens)) {}
  int dim_;
  std::vector<ComplexMatrix> gens_;
};

/// Real coefficient vector of a state in a GeneratorBasis; length d^2-1,
/// squared norm at most 1 - 1/d (within 1e-10).
class BlochVector {
 public:
  BlochVector(int dim, RealVector coeffs);
  int dim() const { return dim_; }
  const RealVector& coeffs() const { return coeffs_; }

 private:
  int dim_;
  RealVector coeffs_;
};

/// coeffs_a = Tr(rho g_a). Exact inverse of from_bloch.
BlochVector to_bloch(const DensityOperator& rho, const GeneratorBasis& basis);

/// I/d + sum_a c_a g_a; throws if the result is not a valid state.
DensityOperator from_bloch(const BlochVector& b, const GeneratorBasis& basis);

inline constexpr double kSchmidtCutoff = 1e-12;

struct SchmidtDecomposition {
  RealVector coefficients;     ///< descending, length min(d1, d2)
  ComplexMatrix left_vectors;  ///< d1 x min(d1,d2), orthonormal columns
  ComplexMatrix right_vectors; ///< d2 x min(d1,d2), orthonormal columns

  /// Number of coefficients above kSchmidtCutoff.
  int rank() const;
  /// sum_k beta_k left_k (x) right_k.
  ComplexVector reconstruct() const;
};

/// Schmidt decomposition of a bipartite unit vector (norm within 1e-10),
/// laid out subsystem-1-major: psi[i*d2 + j] multiplies |i>|j>.
SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, int d1, int d2);

/// Singlet (|01> - |10>)/sqrt(2) as a two-qubit density operator.
DensityOperator bell_state();

/// Projector onto (|0...0> + |1...1>)/sqrt(2) on n qubits, 1 <= n <= 12.
DensityOperator ghz_state(int n);

/// w * singlet + (1-w) * I/4 for w in [0,1].
DensityOperator werner_state(double w);

/// Haar-random pure state: normalized vector of standard complex Gaussians.
ComplexVector random_pure_vector(int d, Rng& rng);
DensityOperator random_pure(int d, std::uint64_t seed);

/// Convex mixture (uniform-simplex weights) of `terms` products of
/// independent Haar-random pure states; separable by construction.
DensityOperator random_separable(int d1, int d2, int terms, std::uint64_t seed);

}  // namespace localchan

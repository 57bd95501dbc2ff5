#pragma once

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace localchan {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major so that flat storage, the JSON interchange
/// order and the tensor index convention all agree.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest total dimension accepted by tensor products and channel products.
inline constexpr Eigen::Index kMaxDim = 4096;

/// Absolute entrywise tolerance for Hermiticity checks.
inline constexpr double kHermitianTol = 1e-12;

bool is_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Kronecker product. Index convention is subsystem-1-major: the joint flat
/// index of basis state (i1, i2) is i1 * dim2 + i2.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(const std::vector<ComplexMatrix>& factors);

/// Traces out every subsystem not listed in `keep`. `dims` are the subsystem
/// dimensions in subsystem-1-major order and must multiply to the matrix
/// dimension; `keep` holds 0-based subsystem indices and must be nonempty.
/// Kept subsystems retain their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep);

/// Schatten p-norm (sum of p-th powers of singular values, to the 1/p).
/// p may be any real >= 1 or infinity (largest singular value). Hermitian
/// input is detected and handled through its eigenvalues.
double schatten_norm(const ComplexMatrix& m, double p);

RealVector singular_values(const ComplexMatrix& m);

/// Square matrix equal to its conjugate transpose within kHermitianTol.
/// The plain constructor validates and rejects; symmetrized() is the one
/// place where approximate input is repaired, by averaging with the adjoint.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m);
  static HermitianOperator symmetrized(const ComplexMatrix& m);

  Eigen::Index dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }

 private:
  ComplexMatrix mat_;
};

/// Eigenvalues sorted descending; vectors.col(i) belongs to values(i).
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;
};

EigenSystem eig_hermitian(const HermitianOperator& h);

/// Descending eigenvalues of a matrix assumed Hermitian (no validation).
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace localchan

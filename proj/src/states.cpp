#include "localchan/states.hpp"

#include <cmath>
#include <stdexcept>

namespace localchan {

DensityOperator::DensityOperator(HermitianOperator h) : herm_(std::move(h)) {
  const double tr = herm_.matrix().trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw std::invalid_argument("DensityOperator: trace must be 1 within 1e-12");
  const RealVector evs = hermitian_eigenvalues(herm_.matrix());
  if (evs(evs.size() - 1) < -kPsdTol)
    throw std::invalid_argument("DensityOperator: operator is not positive semidefinite");
}

DensityOperator DensityOperator::from_matrix(const ComplexMatrix& m) {
  return DensityOperator(HermitianOperator::symmetrized(m));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::invalid_argument("DensityOperator::pure: vector must have unit norm");
  ComplexVector u = psi / norm;
  ComplexMatrix proj = u * u.adjoint();
  return DensityOperator(Trusted{}, HermitianOperator(std::move(proj)));
}

GeneratorBasis GeneratorBasis::gellmann(int d) {
  if (d < 2) throw std::invalid_argument("GeneratorBasis: dimension must be >= 2");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> gens;
  gens.reserve(static_cast<std::size_t>(d) * d - 1);

  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = inv_sqrt2;
      g(k, j) = inv_sqrt2;
      gens.push_back(std::move(g));
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = Complex(0.0, -inv_sqrt2);
      g(k, j) = Complex(0.0, inv_sqrt2);
      gens.push_back(std::move(g));
    }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) g(m, m) = scale;
    g(l, l) = -static_cast<double>(l) * scale;
    gens.push_back(std::move(g));
  }
  return GeneratorBasis(d, std::move(gens));
}

BlochVector::BlochVector(int dim, RealVector coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
  if (dim_ < 2) throw std::invalid_argument("BlochVector: dimension must be >= 2");
  if (coeffs_.size() != static_cast<Eigen::Index>(dim_) * dim_ - 1)
    throw std::invalid_argument("BlochVector: coefficient vector must have length d^2-1");
  const double ceiling = 1.0 - 1.0 / dim_ + 1e-10;
  if (coeffs_.squaredNorm() > ceiling)
    throw std::invalid_argument("BlochVector: squared norm exceeds the physical ceiling");
}

BlochVector to_bloch(const DensityOperator& rho, const GeneratorBasis& basis) {
  if (rho.dim() != basis.dim())
    throw std::invalid_argument("to_bloch: state and basis dimensions differ");
  const auto& gens = basis.generators();
  RealVector coeffs(static_cast<Eigen::Index>(gens.size()));
  for (std::size_t a = 0; a < gens.size(); ++a)
    coeffs(static_cast<Eigen::Index>(a)) =
        (rho.matrix() * gens[a]).trace().real();
  return BlochVector(basis.dim(), std::move(coeffs));
}

DensityOperator from_bloch(const BlochVector& b, const GeneratorBasis& basis) {
  if (b.dim() != basis.dim())
    throw std::invalid_argument("from_bloch: vector and basis dimensions differ");
  const int d = basis.dim();
  ComplexMatrix m = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  const auto& gens = basis.generators();
  for (std::size_t a = 0; a < gens.size(); ++a)
    m += b.coeffs()(static_cast<Eigen::Index>(a)) * gens[a];
  return DensityOperator::from_matrix(m);
}

int SchmidtDecomposition::rank() const {
  int r = 0;
  for (Eigen::Index i = 0; i < coefficients.size(); ++i)
    if (coefficients(i) > kSchmidtCutoff) ++r;
  return r;
}

ComplexVector SchmidtDecomposition::reconstruct() const {
  const Eigen::Index d1 = left_vectors.rows();
  const Eigen::Index d2 = right_vectors.rows();
  ComplexVector psi = ComplexVector::Zero(d1 * d2);
  for (Eigen::Index k = 0; k < coefficients.size(); ++k)
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index j = 0; j < d2; ++j)
        psi(i * d2 + j) += coefficients(k) * left_vectors(i, k) * right_vectors(j, k);
  return psi;
}

SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, int d1, int d2) {
  if (d1 < 1 || d2 < 1 || psi.size() != static_cast<Eigen::Index>(d1) * d2)
    throw std::invalid_argument("schmidt_decompose: vector length must equal d1*d2");
  if (std::abs(psi.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("schmidt_decompose: vector must have unit norm");

  ComplexMatrix coeff(d1, d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) coeff(i, j) = psi(static_cast<Eigen::Index>(i) * d2 + j);

  Eigen::JacobiSVD<ComplexMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left_vectors = svd.matrixU();
  // C = U S V^dagger, so the right Schmidt vectors are conj(V) columns.
  out.right_vectors = svd.matrixV().conjugate();
  return out;
}

DensityOperator bell_state() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return DensityOperator::pure(psi);
}

DensityOperator ghz_state(int n) {
  if (n < 1 || n > 12)
    throw std::invalid_argument("ghz_state: qubit count must be in [1, 12]");
  const Eigen::Index dim = Eigen::Index(1) << n;
  ComplexVector psi = ComplexVector::Zero(dim);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(dim - 1) = 1.0 / std::sqrt(2.0);
  return DensityOperator::pure(psi);
}

DensityOperator werner_state(double w) {
  if (w < 0.0 || w > 1.0)
    throw std::invalid_argument("werner_state: mixing weight must be in [0, 1]");
  ComplexMatrix m = w * bell_state().matrix() +
                    (1.0 - w) * 0.25 * ComplexMatrix::Identity(4, 4);
  return DensityOperator::from_matrix(m);
}

ComplexVector random_pure_vector(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("random_pure_vector: dimension must be >= 1");
  ComplexVector psi(d);
  for (int i = 0; i < d; ++i) psi(i) = rng.complex_normal();
  psi /= psi.norm();
  return psi;
}

DensityOperator random_pure(int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_pure: dimension must be >= 2");
  Rng rng(seed);
  return DensityOperator::pure(random_pure_vector(d, rng));
}

DensityOperator random_separable(int d1, int d2, int terms, std::uint64_t seed) {
  if (terms < 1) throw std::invalid_argument("random_separable: terms must be >= 1");
  Rng rng(seed);
  // Exponential spacings normalize to uniform simplex weights.
  RealVector w(terms);
  for (int i = 0; i < terms; ++i) w(i) = -std::log(1.0 - rng.uniform());
  if (w.sum() <= 0.0) w.setOnes();
  w /= w.sum();

  const Eigen::Index dim = static_cast<Eigen::Index>(d1) * d2;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < terms; ++i) {
    const ComplexVector a = random_pure_vector(d1, rng);
    const ComplexVector b = random_pure_vector(d2, rng);
    const ComplexMatrix rho1 = a * a.adjoint();
    const ComplexMatrix rho2 = b * b.adjoint();
    m += w(i) * tensor_product(rho1, rho2);
  }
  return DensityOperator::from_matrix(m);
}

}  // namespace localchan

#include "localchan/linalg.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace localchan {

bool is_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim)
    throw std::invalid_argument("tensor_product: result exceeds maximum dimension " +
                                std::to_string(kMaxDim));
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix tensor_product(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty())
    throw std::invalid_argument("tensor_product: factor list must be nonempty");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i)
    out = tensor_product(out, factors[i]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("partial_trace: matrix must be square");
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("partial_trace: dimensions must be positive");
    total *= d;
  }
  if (total != m.rows())
    throw std::invalid_argument("partial_trace: subsystem dimensions do not match matrix");
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep set must be nonempty");

  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int s : keep) {
    if (s < 0 || s >= n)
      throw std::invalid_argument("partial_trace: keep index out of range");
    if (kept[s]) throw std::invalid_argument("partial_trace: duplicate keep index");
    kept[s] = true;
  }

  // Subsystem-1-major strides: subsystem s advances by prod(dims[s+1:]).
  std::vector<Eigen::Index> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  std::vector<int> kept_sub, traced_sub;
  for (int s = 0; s < n; ++s) (kept[s] ? kept_sub : traced_sub).push_back(s);

  // Flat offsets contributed by every kept-space and traced-space index.
  auto offsets = [&](const std::vector<int>& subs) {
    Eigen::Index count = 1;
    for (int s : subs) count *= dims[s];
    std::vector<Eigen::Index> off(count, 0);
    for (Eigen::Index flat = 0; flat < count; ++flat) {
      Eigen::Index rem = flat;
      for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
        off[flat] += (rem % dims[*it]) * stride[*it];
        rem /= dims[*it];
      }
    }
    return off;
  };
  const std::vector<Eigen::Index> off_keep = offsets(kept_sub);
  const std::vector<Eigen::Index> off_tr = offsets(traced_sub);

  const Eigen::Index out_dim = static_cast<Eigen::Index>(off_keep.size());
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (Eigen::Index r = 0; r < out_dim; ++r)
    for (Eigen::Index c = 0; c < out_dim; ++c) {
      Complex acc = 0.0;
      for (Eigen::Index t : off_tr) acc += m(off_keep[r] + t, off_keep[c] + t);
      out(r, c) = acc;
    }
  return out;
}

RealVector singular_values(const ComplexMatrix& m) {
  if (m.rows() > 64 || m.cols() > 64) {
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("schatten_norm: matrix must be square");
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (p == 2.0) return m.norm();  // Frobenius equals the Schatten 2-norm

  RealVector s = is_hermitian(m) ? RealVector(hermitian_eigenvalues(m).cwiseAbs())
                                 : singular_values(m);
  if (std::isinf(p)) return s.maxCoeff();
  if (p == 1.0) return s.sum();
  const double top = s.maxCoeff();
  if (top <= 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols())
    throw std::invalid_argument("HermitianOperator: matrix must be square");
  if (mat_.rows() == 0)
    throw std::invalid_argument("HermitianOperator: dimension must be positive");
  if (!is_finite(mat_))
    throw std::invalid_argument("HermitianOperator: entries must be finite");
  if (!is_hermitian(mat_))
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian within tolerance");
}

HermitianOperator HermitianOperator::symmetrized(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("HermitianOperator: matrix must be square");
  ComplexMatrix h = 0.5 * (m + m.adjoint().eval());
  return HermitianOperator(std::move(h));
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed to converge");
  return solver.eigenvalues().reverse();
}

EigenSystem eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  EigenSystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

}  // namespace localchan

#include "localchan/metrics.hpp"

#include <stdexcept>

namespace localchan {

double p_distance(const ComplexMatrix& a, const ComplexMatrix& b, double p) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("p_distance: operands must have equal dimensions");
  return schatten_norm(a - b, p);
}

double p_distance(const DensityOperator& a, const DensityOperator& b, double p) {
  return p_distance(a.matrix(), b.matrix(), p);
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  return p_distance(a, b, 1.0);
}

double hs_distance(const DensityOperator& a, const DensityOperator& b) {
  return p_distance(a, b, 2.0);
}

}  // namespace localchan

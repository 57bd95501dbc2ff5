#pragma once

#include "localchan/linalg.hpp"
#include "localchan/states.hpp"

namespace localchan {

/// Schatten p-norm of a - b. Accepts general Hermitian (or plain square)
/// operators, not only states, so differences of dyad combinations can be
/// measured with the same code path. p = 1 is the trace distance, p = 2 the
/// Hilbert-Schmidt distance.
double p_distance(const ComplexMatrix& a, const ComplexMatrix& b, double p);
double p_distance(const DensityOperator& a, const DensityOperator& b, double p);

double trace_distance(const DensityOperator& a, const DensityOperator& b);
double hs_distance(const DensityOperator& a, const DensityOperator& b);

}  // namespace localchan

#pragma once

#include <limits>
#include <string>

namespace localchan {

/// Absolute slack separating genuine bound violations from floating-point
/// noise in the violation flags.
inline constexpr double kViolationSlack = 1e-9;

/// Tight Hilbert-Schmidt bound on the distance a product of two
/// epsilon-bounded channels can move a separable state:
/// sqrt(2 + 2 sqrt((1-1/d1)(1-1/d2))) * epsilon.
double separable_bound_hs(int d1, int d2, double epsilon);

/// Universal Hilbert-Schmidt bound, valid for entangled as well as separable
/// states: 2 sqrt(2 - 1/d) * epsilon with d the smaller subsystem dimension.
double entangled_bound_hs(int d, double epsilon);

/// Distance-agnostic separable bound 2 * epsilon; holds for any jointly
/// convex distance that contracts under tensoring with a fixed state.
double separable_bound_generic(double epsilon);

/// N-channel Hilbert-Schmidt bound N sqrt(2 - 1/d) * epsilon for a product
/// of N epsilon-bounded channels on N subsystems of dimension d.
double multi_channel_bound(int n, int d, double epsilon);

/// Companion N-channel bound N * epsilon for separable inputs.
double multi_channel_separable_bound(int n, double epsilon);

/// First-order distance produced by the saturating contraction pair acting
/// on |00><00| with both contractions calibrated to be epsilon-bounded in
/// p-distance. Reduces to 2*epsilon at p=1 and to separable_bound_hs at p=2.
double saturation_distance(int d1, int d2, double p, double epsilon);

enum class StateClass { product, separable, entangled, unknown };

std::string state_class_name(StateClass c);
StateClass state_class_from_name(const std::string& name);

/// Record of one measured experiment against the applicable bounds.
/// entangled_bound is infinity when no universal bound applies at the
/// chosen p (only p=2 has one); the flag is then always false.
struct BoundReport {
  StateClass state_class = StateClass::unknown;
  double p = 2.0;
  double epsilon = 0.0;
  double measured_distance = 0.0;
  double separable_bound = 0.0;
  double entangled_bound = std::numeric_limits<double>::infinity();
  bool violates_separable = false;
  bool violates_entangled = false;
};

/// Populates a report: separable bound from the tight Hilbert-Schmidt form
/// at p=2 and the generic 2*epsilon form otherwise; universal bound at p=2
/// only. Violation flags use kViolationSlack.
BoundReport classify(double measured, int d1, int d2, double p, double epsilon,
                     StateClass state_class);

/// True when the report contradicts a bound that holds for its state class:
/// the universal bound for any class, or the separable bound for inputs
/// known to be product/separable. Signals a software defect, not physics.
bool proven_bound_violation(const BoundReport& r);

}  // namespace localchan

#include "localchan/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace localchan {

namespace {

void check_dim(int d, const char* who) {
  if (d < 2) throw std::invalid_argument(std::string(who) + ": dimension must be >= 2");
}

void check_epsilon(double epsilon, const char* who) {
  if (!(epsilon >= 0.0))
    throw std::invalid_argument(std::string(who) + ": epsilon must be nonnegative");
}

}  // namespace

double separable_bound_hs(int d1, int d2, double epsilon) {
  check_dim(d1, "separable_bound_hs");
  check_dim(d2, "separable_bound_hs");
  check_epsilon(epsilon, "separable_bound_hs");
  return std::sqrt(2.0 + 2.0 * std::sqrt((1.0 - 1.0 / d1) * (1.0 - 1.0 / d2))) * epsilon;
}

double entangled_bound_hs(int d, double epsilon) {
  check_dim(d, "entangled_bound_hs");
  check_epsilon(epsilon, "entangled_bound_hs");
  return 2.0 * std::sqrt(2.0 - 1.0 / d) * epsilon;
}

double separable_bound_generic(double epsilon) {
  check_epsilon(epsilon, "separable_bound_generic");
  return 2.0 * epsilon;
}

double multi_channel_bound(int n, int d, double epsilon) {
  if (n < 1) throw std::invalid_argument("multi_channel_bound: n must be >= 1");
  check_dim(d, "multi_channel_bound");
  check_epsilon(epsilon, "multi_channel_bound");
  return n * std::sqrt(2.0 - 1.0 / d) * epsilon;
}

double multi_channel_separable_bound(int n, double epsilon) {
  if (n < 1) throw std::invalid_argument("multi_channel_separable_bound: n must be >= 1");
  check_epsilon(epsilon, "multi_channel_separable_bound");
  return n * epsilon;
}

double saturation_distance(int d1, int d2, double p, double epsilon) {
  check_dim(d1, "saturation_distance");
  check_dim(d2, "saturation_distance");
  check_epsilon(epsilon, "saturation_distance");
  if (!(p >= 1.0)) throw std::invalid_argument("saturation_distance: p must be >= 1");

  auto calibration = [p](int d) {
    const double big = 1.0 - 1.0 / d;
    if (std::isinf(p)) return 1.0 / big;
    return 1.0 / std::pow(std::pow(big, p) + (d - 1) * std::pow(1.0 / d, p), 1.0 / p);
  };
  const double k1 = epsilon * calibration(d1);
  const double k2 = epsilon * calibration(d2);
  const double b1 = 1.0 - 1.0 / d1;
  const double b2 = 1.0 - 1.0 / d2;
  if (std::isinf(p)) return k1 * b1 + k2 * b2;
  return std::pow(std::pow(k1 * b1 + k2 * b2, p) + std::pow(k1 / d1, p) * (d1 - 1) +
                      std::pow(k2 / d2, p) * (d2 - 1),
                  1.0 / p);
}

std::string state_class_name(StateClass c) {
  switch (c) {
    case StateClass::product: return "product";
    case StateClass::separable: return "separable";
    case StateClass::entangled: return "entangled";
    case StateClass::unknown: return "unknown";
  }
  return "unknown";
}

StateClass state_class_from_name(const std::string& name) {
  if (name == "product") return StateClass::product;
  if (name == "separable") return StateClass::separable;
  if (name == "entangled") return StateClass::entangled;
  if (name == "unknown") return StateClass::unknown;
  throw std::invalid_argument("state_class_from_name: unknown class '" + name + "'");
}

BoundReport classify(double measured, int d1, int d2, double p, double epsilon,
                     StateClass state_class) {
  if (!std::isfinite(measured) || measured < 0.0)
    throw std::invalid_argument("classify: measured distance must be finite and nonnegative");
  check_epsilon(epsilon, "classify");

  BoundReport r;
  r.state_class = state_class;
  r.p = p;
  r.epsilon = epsilon;
  r.measured_distance = measured;
  r.separable_bound =
      p == 2.0 ? separable_bound_hs(d1, d2, epsilon) : separable_bound_generic(epsilon);
  if (p == 2.0) r.entangled_bound = entangled_bound_hs(std::min(d1, d2), epsilon);
  r.violates_separable = measured > r.separable_bound + kViolationSlack;
  r.violates_entangled =
      std::isfinite(r.entangled_bound) && measured > r.entangled_bound + kViolationSlack;
  return r;
}

bool proven_bound_violation(const BoundReport& r) {
  if (r.violates_entangled) return true;
  const bool known_separable =
      r.state_class == StateClass::product || r.state_class == StateClass::separable;
  return known_separable && r.violates_separable;
}

}  // namespace localchan

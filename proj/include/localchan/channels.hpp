#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "localchan/linalg.hpp"
#include "localchan/states.hpp"

namespace localchan {

inline constexpr double kKrausTol = 1e-10;

/// Completely positive trace-preserving map in Kraus form:
/// rho -> sum_K K rho K^dagger with sum_K K^dagger K = I within 1e-10.
class QuantumChannel {
 public:
  QuantumChannel(int dim, std::vector<ComplexMatrix> kraus, std::string id = "");

  int dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const std::string& id() const { return id_; }

  /// Physical action; output is validated as a state.
  DensityOperator apply(const DensityOperator& rho) const;

  /// Linear extension of the Kraus action to arbitrary operators (dyads,
  /// Hermitian combinations, differences).
  ComplexMatrix apply_to_operator(const ComplexMatrix& x) const;

  /// Adjoint with respect to the Hilbert-Schmidt inner product:
  /// x -> sum_K K^dagger x K. Unital whenever the channel is trace-preserving.
  ComplexMatrix apply_adjoint(const ComplexMatrix& x) const;

 private:
  int dim_;
  std::vector<ComplexMatrix> kraus_;
  std::string id_;
};

QuantumChannel identity_channel(int d);

/// rho -> (1-k) rho + k I/d for k in [0,1]; Kraus realization through the
/// d^2 Weyl (shift/clock) unitaries. Fixed point I/d.
QuantumChannel depolarizing_contraction(int d, double k);

/// Qubit map that keeps populations in the sigma_z eigenbasis and scales
/// the off-diagonal elements by (1-k); Kraus set
/// {sqrt(1-k/2) I, sqrt(k/2) sigma_z}, k in [0,1].
QuantumChannel dephasing(double k);

/// Kraus set of the product channel: all tensor products of component Kraus
/// operators. Component order matches the subsystem-1-major index layout.
QuantumChannel tensor_channels(const std::vector<QuantumChannel>& chs);

/// Applies a channel to one subsystem of a multipartite operator without
/// materializing the product channel. `dims` lists subsystem dimensions in
/// subsystem-1-major order; `site` selects the subsystem acted on. Works on
/// arbitrary operators (linear extension).
ComplexMatrix apply_local(const QuantumChannel& ch, const ComplexMatrix& m,
                          const std::vector<int>& dims, int site);

/// Stinespring sample: Haar-random isometry from dimension d into
/// d * env_dim followed by a trace over the environment; env_dim Kraus
/// operators. env_dim = 1 gives a Haar-random unitary channel.
QuantumChannel random_channel(int d, int env_dim, std::uint64_t seed);

/// V_kl = channel[|k><l|] - |k><l|, obtained by linearity from the channel's
/// action on the Hermitian combinations of the two dyads.
ComplexMatrix channel_deviation_on_dyad(const QuantumChannel& ch, int k_index,
                                        int l_index);

/// If the channel acts as rho -> (1-k) rho + k I/d on every operator,
/// returns k; otherwise nullopt. Detection is by action, so any Kraus
/// representation of the same map is recognized.
std::optional<double> contraction_parameter(const QuantumChannel& ch);

/// Largest p-distance the contraction moves any state:
/// epsilon = k * [(1-1/d)^p + (d-1)/d^p]^{1/p} (largest singular value
/// factor (1-1/d) for p = infinity).
double contraction_epsilon(int d, double k, double p);

/// Inverse calibration: the k for which the contraction is epsilon-bounded.
double contraction_k_for_epsilon(int d, double epsilon, double p);

/// Calibration for the dephasing map: the maximal p-distance is attained on
/// equatorial pure states and equals k * 2^{1/p} / 2, so k = epsilon * 2^{1-1/p}.
double dephasing_k_for_epsilon(double epsilon, double p);

enum class CertMethod { closed_form, optimized };

/// Certified bound on how far the channel moves any state, in p-distance.
/// Closed form for recognized contractions; otherwise the supremum over pure
/// states (sufficient, since the objective is convex in the state) found by
/// multi-start ascent, recorded together with the achieving state. Optimized
/// certificates are achieved lower bounds of the supremum.
struct EpsilonCertificate {
  std::string channel_id;
  double p = 2.0;
  double epsilon = 0.0;
  CertMethod method = CertMethod::optimized;
  ComplexVector achieving_state;

  /// Distance the channel moves the achieving state; reproduces epsilon.
  double reevaluate(const QuantumChannel& ch) const;
};

/// budget = number of random restarts on top of the deterministic starts
/// (basis states and all pairwise superpositions).
EpsilonCertificate epsilon_of_channel(const QuantumChannel& ch, double p,
                                      int budget = 64);

/// One ascent run of the convex objective psi -> D_p(ch[psi psi*], psi psi*)
/// from the given start: each step moves to the pure state maximizing the
/// linearized objective (top eigenvector of the pulled-back norm
/// subgradient), which never decreases the value. Leaves psi at the best
/// state visited and returns its value.
double maximize_deviation_from(const QuantumChannel& ch, double p,
                               ComplexVector& psi, int max_iters = 120);

/// Coordinate pattern search with a shrinking step on the real and imaginary
/// parts of psi; refines an ascent result through kinks and flat directions.
double refine_deviation(const QuantumChannel& ch, double p, ComplexVector& psi,
                        int max_sweeps = 200);

}  // namespace localchan

#pragma once

#include <cstdint>
#include <vector>

#include "localchan/bounds.hpp"
#include "localchan/channels.hpp"

namespace localchan {

enum class ChannelKind { contraction, dephasing, random, imported };

struct ChannelSpec {
  ChannelKind kind = ChannelKind::contraction;
  int env_dim = 2;    ///< random channels: environment dimension
  int pool_size = 8;  ///< random channels: certified channels drawn per side
  /// kind == imported: caller-supplied channels per side, certified on entry.
  std::vector<QuantumChannel> imported1;
  std::vector<QuantumChannel> imported2;
};

struct ExperimentConfig {
  std::uint64_t seed = 42;
  int trials = 10000;
  int d1 = 2;
  int d2 = 2;
  double p = 2.0;
  double epsilon = 0.01;
  ChannelSpec channel;
};

struct SweepSummary {
  int trials = 0;
  int separable_violations = 0;
  int entangled_violations = 0;
  double max_distance = 0.0;
  /// Largest measured/bound ratios; how close the sweep came to each bound.
  double max_separable_ratio = 0.0;
  double max_entangled_ratio = 0.0;
};

SweepSummary summarize(const std::vector<BoundReport>& reports);

/// The channel pools a sweep with this config will use, with their
/// certified epsilon per channel; lets callers export or inspect them.
struct CertifiedChannels {
  std::vector<QuantumChannel> side1;
  std::vector<QuantumChannel> side2;
  std::vector<double> eps1;
  std::vector<double> eps2;
};
CertifiedChannels certified_channels(const ExperimentConfig& cfg);

/// One report per trial: a random separable (or product, when a single term
/// is drawn) state is pushed through the configured epsilon-bounded channel
/// pair and the measured p-distance is classified. A proven-bound violation
/// in the output indicates a software defect.
std::vector<BoundReport> separable_sweep(const ExperimentConfig& cfg);

/// One report per trial over arbitrary inputs: trials alternate Haar-random
/// joint pure states and full-rank random mixtures, pushed through certified
/// channel pairs. At p=2 no report may violate the universal bound.
std::vector<BoundReport> universal_sweep(const ExperimentConfig& cfg);

struct BellExampleResult {
  BoundReport report;
  double exact_closed_form = 0.0;  ///< (k + k' - k k') sqrt(3)/2
  double first_order = 0.0;        ///< sqrt(6) * epsilon
};

/// Both contractions calibrated to be epsilon-bounded in Hilbert-Schmidt
/// distance (k = sqrt(2) epsilon) acting on the singlet. The measured
/// distance exceeds the separable bound, witnessing entanglement, while
/// staying under the universal bound. Requires epsilon <= 0.1.
BellExampleResult bell_example(double epsilon);

struct GhzDecayResult {
  double exact = 0.0;        ///< simulated Hilbert-Schmidt distance
  double closed_form = 0.0;  ///< sqrt((1 + (1-k)^{2N} - 2(1-k)^N)/2)
  double first_order = 0.0;  ///< N * epsilon
};

/// N-qubit GHZ state through one calibrated dephasing map per qubit
/// (k = sqrt(2) epsilon). 1 <= n <= 12.
GhzDecayResult ghz_decay(int n, double epsilon);

struct SaturationResult {
  BoundReport report;
  double predicted = 0.0;  ///< first-order value from saturation_distance
};

/// The contraction pair calibrated for p-distance epsilon-boundedness acting
/// on |00><00|; measured distance matches the first-order prediction to
/// O(epsilon^2) and saturates the separable bounds at p=1 and p=2.
/// Requires epsilon <= 0.01 so the first-order comparison is meaningful.
SaturationResult saturation_experiment(int d1, int d2, double p, double epsilon);

enum class SearchSpace { entangled_pure, separable_pure };

struct SearchResult {
  BoundReport best;
  ComplexVector best_state;
  int schmidt_rank = 0;
  double concurrence_value = -1.0;  ///< two-qubit inputs only, else -1
  bool budget_exhausted = false;    ///< still improving near the restart cap
};

/// Multi-start maximization of the measured distance over pure joint states
/// for the configured channel pair (cfg.trials restarts). The default space
/// searches all pure states (the maximum is entangled whenever the channels
/// can witness entanglement); separable_pure restricts to product states.
SearchResult violation_search(const ExperimentConfig& cfg,
                              SearchSpace space = SearchSpace::entangled_pure);

struct BellArrayResult {
  int pairs = 0;
  int channels = 0;  ///< N = 2 * pairs
  double measured = 0.0;
  double separable_bound = 0.0;  ///< N * epsilon
  double universal_bound = 0.0;  ///< N * sqrt(2 - 1/2) * epsilon
  bool violates_separable = false;
};

/// `pairs` singlets (2*pairs qubits), every qubit through the calibrated
/// contraction: the measured distance beats the N-channel separable bound,
/// never the universal one. pairs in [1, 5].
BellArrayResult bell_array_example(int pairs, double epsilon);

}  // namespace localchan

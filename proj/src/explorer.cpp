#include "localchan/explorer.hpp"

#include <cmath>
#include <stdexcept>

#include "localchan/metrics.hpp"
#include "localchan/parallel.hpp"
#include "localchan/states.hpp"
#include "localchan/witness.hpp"

namespace localchan {

namespace {

// Stream tags keeping every sampler of an experiment on its own sub-stream.
constexpr std::uint64_t kStreamState = 1;
constexpr std::uint64_t kStreamChoice = 2;
constexpr std::uint64_t kStreamPoolA = 3;
constexpr std::uint64_t kStreamPoolB = 4;
constexpr std::uint64_t kStreamSearch = 5;

struct SideChannels {
  std::vector<QuantumChannel> chs;
  std::vector<double> eps;
};

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
  if (!(cfg.epsilon > 0.0))
    throw std::invalid_argument("ExperimentConfig: epsilon must be positive");
  if (cfg.d1 < 2 || cfg.d2 < 2)
    throw std::invalid_argument("ExperimentConfig: dimensions must be >= 2");
  if (!(cfg.p >= 1.0)) throw std::invalid_argument("ExperimentConfig: p must be >= 1");
}

QuantumChannel calibrated_contraction(int d, double epsilon, double p) {
  const double k = contraction_k_for_epsilon(d, epsilon, p);
  if (k > 1.0)
    throw std::invalid_argument("epsilon too large: contraction calibration needs k <= 1");
  return depolarizing_contraction(d, k);
}

QuantumChannel calibrated_dephasing(double epsilon, double p) {
  const double k = dephasing_k_for_epsilon(epsilon, p);
  if (k > 1.0)
    throw std::invalid_argument("epsilon too large: dephasing calibration needs k <= 1");
  return dephasing(k);
}

SideChannels make_side(const ExperimentConfig& cfg, int d, std::uint64_t stream) {
  SideChannels side;
  switch (cfg.channel.kind) {
    case ChannelKind::contraction:
      side.chs.push_back(calibrated_contraction(d, cfg.epsilon, cfg.p));
      side.eps.push_back(cfg.epsilon);
      break;
    case ChannelKind::dephasing:
      if (d != 2)
        throw std::invalid_argument("dephasing channels require qubit subsystems");
      side.chs.push_back(calibrated_dephasing(cfg.epsilon, cfg.p));
      side.eps.push_back(cfg.epsilon);
      break;
    case ChannelKind::random: {
      const int pool = std::max(1, cfg.channel.pool_size);
      for (int i = 0; i < pool; ++i) {
        QuantumChannel ch =
            random_channel(d, cfg.channel.env_dim, derive_seed(cfg.seed, stream, i));
        side.eps.push_back(epsilon_of_channel(ch, cfg.p, 32).epsilon);
        side.chs.push_back(std::move(ch));
      }
      break;
    }
    case ChannelKind::imported: {
      const auto& given =
          stream == kStreamPoolA ? cfg.channel.imported1 : cfg.channel.imported2;
      if (given.empty())
        throw std::invalid_argument("imported channel list must be nonempty");
      for (const auto& ch : given) {
        if (ch.dim() != d)
          throw std::invalid_argument("imported channel dimension does not match");
        side.eps.push_back(epsilon_of_channel(ch, cfg.p, 32).epsilon);
        side.chs.push_back(ch);
      }
      break;
    }
  }
  return side;
}

ComplexMatrix random_mixture_matrix(int dim, Rng& rng) {
  const int terms = dim;
  RealVector w(terms);
  for (int i = 0; i < terms; ++i) w(i) = -std::log(1.0 - rng.uniform());
  if (w.sum() <= 0.0) w.setOnes();
  w /= w.sum();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < terms; ++i) {
    const ComplexVector psi = random_pure_vector(dim, rng);
    m += w(i) * (psi * psi.adjoint());
  }
  return m;
}

double pair_distance(const QuantumChannel& ch1, const QuantumChannel& ch2,
                     const ComplexMatrix& rho, int d1, int d2, double p) {
  const std::vector<int> dims{d1, d2};
  ComplexMatrix out = apply_local(ch1, rho, dims, 0);
  out = apply_local(ch2, out, dims, 1);
  return schatten_norm(out - rho, p);
}

}  // namespace

CertifiedChannels certified_channels(const ExperimentConfig& cfg) {
  validate_config(cfg);
  SideChannels s1 = make_side(cfg, cfg.d1, kStreamPoolA);
  SideChannels s2 = make_side(cfg, cfg.d2, kStreamPoolB);
  return CertifiedChannels{std::move(s1.chs), std::move(s2.chs), std::move(s1.eps),
                           std::move(s2.eps)};
}

SweepSummary summarize(const std::vector<BoundReport>& reports) {
  SweepSummary s;
  s.trials = static_cast<int>(reports.size());
  for (const auto& r : reports) {
    if (r.violates_separable) ++s.separable_violations;
    if (r.violates_entangled) ++s.entangled_violations;
    s.max_distance = std::max(s.max_distance, r.measured_distance);
    if (r.separable_bound > 0.0)
      s.max_separable_ratio =
          std::max(s.max_separable_ratio, r.measured_distance / r.separable_bound);
    if (std::isfinite(r.entangled_bound) && r.entangled_bound > 0.0)
      s.max_entangled_ratio =
          std::max(s.max_entangled_ratio, r.measured_distance / r.entangled_bound);
  }
  return s;
}

std::vector<BoundReport> separable_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const SideChannels side1 = make_side(cfg, cfg.d1, kStreamPoolA);
  const SideChannels side2 = make_side(cfg, cfg.d2, kStreamPoolB);

  std::vector<BoundReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, [&](int t) {
    Rng choice(derive_seed(cfg.seed, kStreamChoice, static_cast<std::uint64_t>(t)));
    const int terms = 1 + static_cast<int>(choice.raw() % 4);
    const std::size_t i1 = choice.raw() % side1.chs.size();
    const std::size_t i2 = choice.raw() % side2.chs.size();
    const DensityOperator rho = random_separable(
        cfg.d1, cfg.d2, terms, derive_seed(cfg.seed, kStreamState, static_cast<std::uint64_t>(t)));
    const double measured =
        pair_distance(side1.chs[i1], side2.chs[i2], rho.matrix(), cfg.d1, cfg.d2, cfg.p);
    const double eps = std::max(side1.eps[i1], side2.eps[i2]);
    reports[static_cast<std::size_t>(t)] =
        classify(measured, cfg.d1, cfg.d2, cfg.p, eps,
                 terms == 1 ? StateClass::product : StateClass::separable);
  });
  return reports;
}

std::vector<BoundReport> universal_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const SideChannels side1 = make_side(cfg, cfg.d1, kStreamPoolA);
  const SideChannels side2 = make_side(cfg, cfg.d2, kStreamPoolB);
  const int dim = cfg.d1 * cfg.d2;

  std::vector<BoundReport> reports(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, [&](int t) {
    Rng choice(derive_seed(cfg.seed, kStreamChoice, static_cast<std::uint64_t>(t)));
    const std::size_t i1 = choice.raw() % side1.chs.size();
    const std::size_t i2 = choice.raw() % side2.chs.size();
    Rng srng(derive_seed(cfg.seed, kStreamState, static_cast<std::uint64_t>(t)));
    ComplexMatrix rho;
    if (t % 2 == 0) {
      const ComplexVector psi = random_pure_vector(dim, srng);
      rho = psi * psi.adjoint();
    } else {
      rho = random_mixture_matrix(dim, srng);
    }
    const double measured =
        pair_distance(side1.chs[i1], side2.chs[i2], rho, cfg.d1, cfg.d2, cfg.p);
    const double eps = std::max(side1.eps[i1], side2.eps[i2]);
    reports[static_cast<std::size_t>(t)] =
        classify(measured, cfg.d1, cfg.d2, cfg.p, eps, StateClass::unknown);
  });
  return reports;
}

BellExampleResult bell_example(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 0.1)
    throw std::invalid_argument("bell_example: epsilon must be in (0, 0.1]");
  const double k = std::sqrt(2.0) * epsilon;
  const QuantumChannel ch = depolarizing_contraction(2, k);
  const DensityOperator rho = bell_state();
  const double measured = pair_distance(ch, ch, rho.matrix(), 2, 2, 2.0);

  BellExampleResult res;
  res.exact_closed_form = (2.0 * k - k * k) * std::sqrt(3.0) / 2.0;
  res.first_order = std::sqrt(6.0) * epsilon;
  res.report = classify(measured, 2, 2, 2.0, epsilon, StateClass::entangled);
  return res;
}

GhzDecayResult ghz_decay(int n, double epsilon) {
  if (n < 1 || n > 12)
    throw std::invalid_argument("ghz_decay: qubit count must be in [1, 12]");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ghz_decay: epsilon must be positive");
  const double k = std::sqrt(2.0) * epsilon;
  if (k > 1.0)
    throw std::invalid_argument("ghz_decay: epsilon too large, calibration needs k <= 1");

  const QuantumChannel ch = dephasing(k);
  const DensityOperator ghz = ghz_state(n);
  const ComplexMatrix& in = ghz.matrix();
  const std::vector<int> dims(static_cast<std::size_t>(n), 2);
  ComplexMatrix out = in;
  for (int site = 0; site < n; ++site) out = apply_local(ch, out, dims, site);

  GhzDecayResult res;
  res.exact = (out - in).norm();
  const double decay = std::pow(1.0 - k, n);
  res.closed_form = std::sqrt(0.5 * (1.0 + decay * decay - 2.0 * decay));
  res.first_order = n * epsilon;
  return res;
}

SaturationResult saturation_experiment(int d1, int d2, double p, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 0.01)
    throw std::invalid_argument("saturation_experiment: epsilon must be in (0, 0.01]");
  const QuantumChannel ch1 = calibrated_contraction(d1, epsilon, p);
  const QuantumChannel ch2 = calibrated_contraction(d2, epsilon, p);

  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(d1) * d2);
  psi(0) = 1.0;  // |00>
  const DensityOperator rho = DensityOperator::pure(psi);
  const double measured = pair_distance(ch1, ch2, rho.matrix(), d1, d2, p);

  SaturationResult res;
  res.predicted = saturation_distance(d1, d2, p, epsilon);
  res.report = classify(measured, d1, d2, p, epsilon, StateClass::product);
  return res;
}

namespace {

double product_deviation(const QuantumChannel& ch1, const QuantumChannel& ch2,
                         const ComplexVector& psi1, const ComplexVector& psi2,
                         double p) {
  const ComplexMatrix rho =
      tensor_product(psi1 * psi1.adjoint(), psi2 * psi2.adjoint());
  return pair_distance(ch1, ch2, rho, static_cast<int>(psi1.size()),
                       static_cast<int>(psi2.size()), p);
}

}  // namespace

SearchResult violation_search(const ExperimentConfig& cfg, SearchSpace space) {
  validate_config(cfg);
  ExperimentConfig one = cfg;
  one.channel.pool_size = 1;
  const SideChannels side1 = make_side(one, cfg.d1, kStreamPoolA);
  const SideChannels side2 = make_side(one, cfg.d2, kStreamPoolB);
  const QuantumChannel& ch1 = side1.chs.front();
  const QuantumChannel& ch2 = side2.chs.front();
  const double eps = std::max(side1.eps.front(), side2.eps.front());
  const int dmin = std::min(cfg.d1, cfg.d2);

  SearchResult res;
  double best = -1.0;
  int last_improvement = 0;

  if (space == SearchSpace::entangled_pure) {
    const QuantumChannel joint = tensor_channels({ch1, ch2});
    ComplexVector maxent = ComplexVector::Zero(static_cast<Eigen::Index>(cfg.d1) * cfg.d2);
    for (int i = 0; i < dmin; ++i)
      maxent(static_cast<Eigen::Index>(i) * cfg.d2 + i) = 1.0 / std::sqrt(double(dmin));

    for (int r = 0; r < cfg.trials; ++r) {
      ComplexVector psi;
      if (r == 0) {
        psi = maxent;
      } else {
        Rng rng(derive_seed(cfg.seed, kStreamSearch, static_cast<std::uint64_t>(r)));
        psi = random_pure_vector(cfg.d1 * cfg.d2, rng);
      }
      const double val = maximize_deviation_from(joint, cfg.p, psi);
      if (val > best + 1e-15) {
        best = val;
        res.best_state = psi;
        last_improvement = r;
      }
    }
    best = refine_deviation(joint, cfg.p, res.best_state);
  } else {
    double step0 = 0.25;
    for (int r = 0; r < cfg.trials; ++r) {
      Rng rng(derive_seed(cfg.seed, kStreamSearch, static_cast<std::uint64_t>(r)));
      ComplexVector a = random_pure_vector(cfg.d1, rng);
      ComplexVector b = random_pure_vector(cfg.d2, rng);
      double val = product_deviation(ch1, ch2, a, b, cfg.p);
      double step = step0;
      for (int sweep = 0; sweep < 200 && step > 1e-9; ++sweep) {
        bool improved = false;
        for (int which = 0; which < 2; ++which) {
          ComplexVector& v = which == 0 ? a : b;
          for (Eigen::Index c = 0; c < 2 * v.size(); ++c)
            for (int sign = -1; sign <= 1; sign += 2) {
              ComplexVector cand = v;
              cand(c / 2) += (c % 2 == 0) ? Complex(sign * step, 0.0)
                                          : Complex(0.0, sign * step);
              const double norm = cand.norm();
              if (norm < 1e-12) continue;
              cand /= norm;
              const double cval = which == 0 ? product_deviation(ch1, ch2, cand, b, cfg.p)
                                             : product_deviation(ch1, ch2, a, cand, cfg.p);
              if (cval > val + 1e-18) {
                val = cval;
                v = cand;
                improved = true;
              }
            }
        }
        if (!improved) step *= 0.5;
      }
      if (val > best + 1e-15) {
        best = val;
        ComplexVector joint_state(static_cast<Eigen::Index>(cfg.d1) * cfg.d2);
        for (int i = 0; i < cfg.d1; ++i)
          for (int j = 0; j < cfg.d2; ++j)
            joint_state(static_cast<Eigen::Index>(i) * cfg.d2 + j) = a(i) * b(j);
        res.best_state = joint_state;
        last_improvement = r;
      }
    }
  }

  const SchmidtDecomposition sd = schmidt_decompose(res.best_state, cfg.d1, cfg.d2);
  res.schmidt_rank = sd.rank();
  if (cfg.d1 == 2 && cfg.d2 == 2)
    res.concurrence_value = concurrence(DensityOperator::pure(res.best_state));
  res.budget_exhausted = cfg.trials >= 8 && last_improvement >= (3 * cfg.trials) / 4;
  res.best = classify(best, cfg.d1, cfg.d2, cfg.p, eps,
                      res.schmidt_rank > 1 ? StateClass::entangled : StateClass::product);
  return res;
}

BellArrayResult bell_array_example(int pairs, double epsilon) {
  if (pairs < 1 || pairs > 5)
    throw std::invalid_argument("bell_array_example: pairs must be in [1, 5]");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("bell_array_example: epsilon must be positive");
  const double k = std::sqrt(2.0) * epsilon;
  if (k > 1.0)
    throw std::invalid_argument("bell_array_example: epsilon too large, needs k <= 1");

  const DensityOperator bell = bell_state();
  ComplexMatrix state = bell.matrix();
  for (int i = 1; i < pairs; ++i) state = tensor_product(state, bell.matrix());

  const int n = 2 * pairs;
  const QuantumChannel ch = depolarizing_contraction(2, k);
  const std::vector<int> dims(static_cast<std::size_t>(n), 2);
  ComplexMatrix out = state;
  for (int site = 0; site < n; ++site) out = apply_local(ch, out, dims, site);

  BellArrayResult res;
  res.pairs = pairs;
  res.channels = n;
  res.measured = (out - state).norm();
  res.separable_bound = multi_channel_separable_bound(n, epsilon);
  res.universal_bound = multi_channel_bound(n, 2, epsilon);
  res.violates_separable = res.measured > res.separable_bound + kViolationSlack;
  return res;
}

}  // namespace localchan

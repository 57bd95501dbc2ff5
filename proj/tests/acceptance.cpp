// Acceptance suite: end-to-end checks of every guaranteed numerical result
// at full trial counts and stated tolerances. Prints one line per criterion
// and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "localchan/bounds.hpp"
#include "localchan/channels.hpp"
#include "localchan/explorer.hpp"
#include "localchan/metrics.hpp"
#include "localchan/parallel.hpp"
#include "localchan/states.hpp"
#include "localchan/witness.hpp"
#include "testutil.hpp"

using namespace localchan;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      detail = msg;
    }
  }
  void note(const std::string& msg) {
    if (ok && detail.empty()) detail = msg;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

int failures = 0;

void run(int index, int total, const char* name, double budget_seconds,
         const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.ok && elapsed > budget_seconds) {
    c.ok = false;
    c.detail = "exceeded runtime budget of " + fmt(budget_seconds) + " s";
  }
  std::printf("[%d/%d] %s %-22s (%.2f s)%s%s\n", index, total, c.ok ? "PASS" : "FAIL",
              name, elapsed, c.detail.empty() ? "" : " : ", c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

}  // namespace

int main() {
  constexpr int kTotal = 9;

  run(1, kTotal, "bell-example", 1.0, [](Check& c) {
    const double eps = 0.01;
    const BellExampleResult res = bell_example(eps);
    const double k = std::sqrt(2.0) * eps;
    const double exact = (2.0 * k - k * k) * std::sqrt(3.0) / 2.0;
    c.expect(std::abs(res.report.measured_distance - exact) <= 1e-12,
             "measured distance deviates from the exact closed form");
    c.expect(std::abs(res.report.measured_distance - std::sqrt(6.0) * eps) <= 1e-3,
             "measured distance deviates from the first-order value");
    c.expect(res.report.violates_separable && !res.report.violates_entangled,
             "unexpected violation flags");
    c.note("|measured-exact| = " + fmt(std::abs(res.report.measured_distance - exact)));
  });

  const std::vector<std::pair<int, int>> grid{{2, 2}, {2, 3}, {3, 3}, {4, 4}};

  run(2, kTotal, "saturation-trace", 5.0, [&](Check& c) {
    const double eps = 0.001;
    double worst = 0.0;
    for (const auto& [d1, d2] : grid) {
      const SaturationResult res = saturation_experiment(d1, d2, 1.0, eps);
      worst = std::max(worst, std::abs(res.report.measured_distance - 2.0 * eps));
      c.expect(std::abs(res.report.measured_distance - 2.0 * eps) <= 10.0 * eps * eps,
               "p=1 distance missed 2*epsilon on (" + std::to_string(d1) + "," +
                   std::to_string(d2) + ")");
    }
    c.note("max |measured-2eps| = " + fmt(worst));
  });

  run(3, kTotal, "saturation-hs", 5.0, [&](Check& c) {
    const double eps = 0.001;
    double worst = 0.0;
    for (const auto& [d1, d2] : grid) {
      const SaturationResult res = saturation_experiment(d1, d2, 2.0, eps);
      const double target = separable_bound_hs(d1, d2, eps);
      worst = std::max(worst, std::abs(res.report.measured_distance - target));
      c.expect(std::abs(res.report.measured_distance - target) <= 10.0 * eps * eps,
               "p=2 distance missed the separable bound value on (" + std::to_string(d1) +
                   "," + std::to_string(d2) + ")");
    }
    c.note("max |measured-bound| = " + fmt(worst));
  });

  run(4, kTotal, "separable-sweep", 60.0, [](Check& c) {
    ExperimentConfig cfg;  // d1=d2=2, p=2, eps=0.01, contraction, 10^4 trials
    const auto reports = separable_sweep(cfg);
    const SweepSummary s = summarize(reports);
    c.expect(s.trials == 10000, "wrong trial count");
    c.expect(s.separable_violations == 0,
             std::to_string(s.separable_violations) + " separable-bound violations");
    c.expect(s.entangled_violations == 0, "universal-bound violation on separable input");
    c.note("max measured/bound = " + fmt(s.max_separable_ratio));
  });

  run(5, kTotal, "universal-bound", 300.0, [](Check& c) {
    double worst_ratio = 0.0;
    for (int d : {2, 3}) {
      ExperimentConfig cfg;
      cfg.trials = 5000;
      cfg.d1 = cfg.d2 = d;
      cfg.channel.kind = ChannelKind::random;
      cfg.channel.env_dim = 2;
      cfg.seed = 42 + d;
      const SweepSummary s = summarize(universal_sweep(cfg));
      worst_ratio = std::max(worst_ratio, s.max_entangled_ratio);
      c.expect(s.entangled_violations == 0,
               std::to_string(s.entangled_violations) +
                   " universal-bound violations at d=" + std::to_string(d));
    }
    c.note("max measured/bound = " + fmt(worst_ratio));
  });

  run(6, kTotal, "ghz-decay", 30.0, [](Check& c) {
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
      const GhzDecayResult res = ghz_decay(n, 0.01);
      worst = std::max(worst, std::abs(res.exact - res.closed_form));
      c.expect(std::abs(res.exact - res.closed_form) <= 1e-12,
               "simulated distance missed the closed form at n=" + std::to_string(n));
    }
    for (int n = 1; n <= 10; ++n) {
      const GhzDecayResult res = ghz_decay(n, 0.001);
      c.expect(std::abs(res.exact - res.first_order) <= 0.02 * res.first_order,
               "first-order mismatch beyond 2% at n=" + std::to_string(n));
    }
    c.note("max |exact-closed| = " + fmt(worst));
  });

  run(7, kTotal, "witness-properties", 120.0, [](Check& c) {
    double worst_sep = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const DensityOperator rho =
          random_separable(2, 2, 1 + static_cast<int>(i % 4), derive_seed(7100, i));
      worst_sep = std::max(worst_sep, std::abs(witness_value(rho)));
    }
    c.expect(worst_sep <= 1e-9, "witness value nonzero on a separable state");

    double worst_pure = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const DensityOperator rho = random_pure(4, derive_seed(7200, i));
      worst_pure = std::max(worst_pure, std::abs(witness_value(rho) - concurrence(rho)));
    }
    c.expect(worst_pure <= 1e-9, "witness value differs from concurrence on a pure state");

    for (int i = 0; i <= 100; ++i) {
      const double w = i / 100.0;
      const DensityOperator rho = werner_state(w);
      const double expected = std::max(0.0, (3.0 * w - 1.0) / 2.0);
      c.expect(std::abs(witness_value(rho) - expected) <= 1e-10,
               "witness value off the closed form at w=" + fmt(w));
      c.expect(std::abs(witness_value(rho) - concurrence(rho)) <= 1e-9,
               "witness value differs from concurrence at w=" + fmt(w));
    }

    Rng rng(7300);
    for (int rep = 0; rep < 200; ++rep) {  // convexity
      const DensityOperator a = DensityOperator::from_matrix(
          testutil::random_density_matrix(4, 3, rng));
      const DensityOperator b = DensityOperator::from_matrix(
          testutil::random_density_matrix(4, 3, rng));
      const double lam = rng.uniform();
      const DensityOperator mix =
          DensityOperator::from_matrix(lam * a.matrix() + (1.0 - lam) * b.matrix());
      c.expect(witness_value(mix) <=
                   lam * witness_value(a) + (1.0 - lam) * witness_value(b) + 1e-9,
               "convexity failed");
    }

    for (std::uint64_t rep = 0; rep < 200; ++rep) {  // local unitary invariance
      Rng srng(derive_seed(7400, rep));
      const DensityOperator rho =
          DensityOperator::from_matrix(testutil::random_density_matrix(4, 4, srng));
      const ComplexMatrix u =
          tensor_product(random_channel(2, 1, derive_seed(7500, rep)).kraus().front(),
                         random_channel(2, 1, derive_seed(7600, rep)).kraus().front());
      const DensityOperator rot =
          DensityOperator::from_matrix(u * rho.matrix() * u.adjoint());
      c.expect(std::abs(witness_value(rho) - witness_value(rot)) <= 1e-10,
               "local unitary invariance failed");
    }

    double min_f = 0.0;
    for (std::uint64_t rep = 0; rep < 10000; ++rep) {  // non-negativity
      Rng srng(derive_seed(7700, rep));
      min_f = std::min(
          min_f, witness_value(DensityOperator::from_matrix(
                     testutil::random_density_matrix(4, 1 + static_cast<int>(rep % 4), srng))));
    }
    c.expect(min_f >= -1e-10, "witness value went negative");

    // the witness is not faithful: an entangled state it misses
    const double t = std::acos(-1.0) / 8.0;
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = std::cos(t);
    psi(3) = std::sin(t);
    ComplexVector e01 = ComplexVector::Zero(4);
    e01(1) = 1.0;
    const DensityOperator miss = DensityOperator::from_matrix(
        0.5 * (psi * psi.adjoint()) + 0.5 * (e01 * e01.adjoint()));
    c.expect(std::abs(witness_value(miss)) <= 1e-9 && concurrence(miss) > 1e-3,
             "missed-entanglement example failed");

    c.note("max |F| on separable = " + fmt(worst_sep) +
           ", max |F-C| on pure = " + fmt(worst_pure));
  });

  run(8, kTotal, "deviation-identities", 120.0, [](Check& c) {
    const int channels = 1000;
    double worst_identity = 0.0;
    std::vector<double> worst(static_cast<std::size_t>(channels), 0.0);
    std::vector<int> bad(static_cast<std::size_t>(channels), 0);

    parallel_for(channels, [&](int i) {
      const int d = 2 + i % 3;
      const int env = 1 + (i / 3) % 3;
      const QuantumChannel ch =
          random_channel(d, env, derive_seed(8100, static_cast<std::uint64_t>(i)));
      const double eps = epsilon_of_channel(ch, 2.0, 8).epsilon;
      double w = 0.0;
      int fail = 0;
      for (int k = 0; k < d; ++k) {
        const ComplexMatrix vkk = channel_deviation_on_dyad(ch, k, k);
        if ((vkk * vkk.adjoint()).trace().real() > eps * eps + 1e-9) fail = 1;
        for (int l = k + 1; l < d; ++l) {
          ComplexMatrix ekl = ComplexMatrix::Zero(d, d);
          ekl(k, l) = 1.0;
          const ComplexMatrix xp = ekl + ekl.adjoint().eval();
          const ComplexMatrix xm = ekl - ekl.adjoint().eval();
          const double np = schatten_norm(ch.apply_to_operator(xp) - xp, 2.0);
          const double nm = schatten_norm(ch.apply_to_operator(xm) - xm, 2.0);
          const double vkl2 =
              std::pow(schatten_norm(channel_deviation_on_dyad(ch, k, l), 2.0), 2);
          w = std::max(w, std::abs(vkl2 - 0.25 * (np * np + nm * nm)));
          if (np > 2.0 * eps + 1e-9 || nm > 2.0 * eps + 1e-9) fail = 2;
          if (vkl2 > 2.0 * eps * eps + 1e-9) fail = 3;
        }
      }
      worst[static_cast<std::size_t>(i)] = w;
      bad[static_cast<std::size_t>(i)] = fail;
    });
    for (int i = 0; i < channels; ++i) {
      worst_identity = std::max(worst_identity, worst[static_cast<std::size_t>(i)]);
      c.expect(bad[static_cast<std::size_t>(i)] == 0,
               "deviation bound failed on channel " + std::to_string(i) + " (code " +
                   std::to_string(bad[static_cast<std::size_t>(i)]) + ")");
    }
    c.expect(worst_identity <= 1e-10, "dyad norm identity off by " + fmt(worst_identity));

    // one-sided deviation decomposes over the Schmidt spectrum
    const std::vector<std::pair<int, int>> dims{{2, 2}, {2, 3}, {3, 4}};
    std::vector<double> devs(1000, 0.0);
    parallel_for(1000, [&](int i) {
      const auto [d1, d2] = dims[static_cast<std::size_t>(i) % dims.size()];
      Rng rng(derive_seed(8200, static_cast<std::uint64_t>(i)));
      const ComplexVector psi = random_pure_vector(d1 * d2, rng);
      const QuantumChannel ch =
          random_channel(d1, 2, derive_seed(8300, static_cast<std::uint64_t>(i)));
      const SchmidtDecomposition sd = schmidt_decompose(psi, d1, d2);
      const ComplexMatrix rho = psi * psi.adjoint();
      const ComplexMatrix out = apply_local(ch, rho, {d1, d2}, 0);
      const double lhs = std::pow(schatten_norm(out - rho, 2.0), 2);
      double rhs = 0.0;
      for (Eigen::Index k = 0; k < sd.coefficients.size(); ++k)
        for (Eigen::Index l = 0; l < sd.coefficients.size(); ++l) {
          const ComplexMatrix dyad =
              sd.left_vectors.col(k) * sd.left_vectors.col(l).adjoint();
          const ComplexMatrix v = ch.apply_to_operator(dyad) - dyad;
          rhs += std::pow(sd.coefficients(k) * sd.coefficients(l), 2) *
                 (v * v.adjoint()).trace().real();
        }
      devs[static_cast<std::size_t>(i)] = std::abs(lhs - rhs);
    });
    double worst_decomp = 0.0;
    for (double d : devs) worst_decomp = std::max(worst_decomp, d);
    c.expect(worst_decomp <= 1e-9, "Schmidt decomposition identity off by " + fmt(worst_decomp));
    c.note("max identity residual = " + fmt(worst_identity) +
           ", max decomposition residual = " + fmt(worst_decomp));
  });

  run(9, kTotal, "metric-axioms", 60.0, [](Check& c) {
    for (std::uint64_t i = 0; i < 1000; ++i) {
      Rng rng(derive_seed(9100, i));
      const int d = 2 + static_cast<int>(i % 3);
      const ComplexMatrix x = testutil::random_density_matrix(d, d, rng);
      const ComplexMatrix y = testutil::random_density_matrix(d, d, rng);
      const ComplexMatrix z = testutil::random_density_matrix(d, d, rng);
      for (double p : {1.0, 2.0, 3.0}) {
        const double dxy = p_distance(x, y, p);
        c.expect(dxy >= 0.0 && std::abs(dxy - p_distance(y, x, p)) < 1e-14,
                 "symmetry/nonnegativity failed");
        c.expect(p_distance(x, x, p) < 1e-14, "identity of indiscernibles failed");
        c.expect(dxy <= p_distance(x, z, p) + p_distance(z, y, p) + 1e-12,
                 "triangle inequality failed");

        // tensoring with a fixed state cannot increase the distance
        const ComplexMatrix w = testutil::random_density_matrix(2, 2, rng);
        const double joint =
            schatten_norm(tensor_product(x, w) - tensor_product(y, w), p);
        c.expect(joint <= dxy + 1e-12, "tensor contraction property failed");

        // joint convexity on a two-term mixture
        const double lam = 0.5 + 0.3 * std::sin(static_cast<double>(i));
        const ComplexMatrix xm = lam * x + (1.0 - lam) * z;
        const ComplexMatrix ym = lam * y + (1.0 - lam) * z;
        c.expect(p_distance(xm, ym, p) <= lam * dxy + 1e-10,
                 "joint convexity failed");
      }
    }
  });

  std::printf("%s: %d/%d criteria passed\n", failures == 0 ? "SUCCESS" : "FAILURE",
              kTotal - failures, kTotal);
  return failures == 0 ? 0 : 1;
}

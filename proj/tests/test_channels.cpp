#include <doctest.h>

#include "localchan/channels.hpp"
#include "localchan/metrics.hpp"
#include "localchan/states.hpp"
#include "localchan/witness.hpp"
#include "testutil.hpp"

using namespace localchan;
using testutil::max_abs_diff;

TEST_SUITE_BEGIN("channels");

TEST_CASE("kraus sets must be trace preserving") {
  std::vector<ComplexMatrix> bad{0.5 * ComplexMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(QuantumChannel(2, bad), std::invalid_argument);
  std::vector<ComplexMatrix> wrong{ComplexMatrix::Identity(3, 3)};
  CHECK_THROWS_AS(QuantumChannel(2, wrong), std::invalid_argument);
  CHECK_THROWS_AS(QuantumChannel(2, {}), std::invalid_argument);
}

TEST_CASE("identity channel leaves states untouched") {
  Rng rng(3);
  const QuantumChannel id = identity_channel(3);
  const DensityOperator rho =
      DensityOperator::from_matrix(testutil::random_density_matrix(3, 3, rng));
  CHECK(max_abs_diff(id.apply(rho).matrix(), rho.matrix()) < 1e-15);
}

TEST_CASE("full contraction sends everything to the maximally mixed state") {
  Rng rng(4);
  const QuantumChannel ch = depolarizing_contraction(2, 1.0);
  const DensityOperator rho =
      DensityOperator::from_matrix(testutil::random_density_matrix(2, 3, rng));
  CHECK(max_abs_diff(ch.apply(rho).matrix(),
                     ComplexMatrix(0.5 * ComplexMatrix::Identity(2, 2))) < 1e-12);
}

TEST_CASE("contraction scales generalized Bloch vectors by 1-k") {
  Rng rng(5);
  for (int d : {2, 3}) {
    const GeneratorBasis basis = GeneratorBasis::gellmann(d);
    const double k = 0.37;
    const QuantumChannel ch = depolarizing_contraction(d, k);
    const DensityOperator rho =
        DensityOperator::from_matrix(testutil::random_density_matrix(d, d, rng));
    const RealVector before = to_bloch(rho, basis).coeffs();
    const RealVector after = to_bloch(ch.apply(rho), basis).coeffs();
    CHECK((after - (1.0 - k) * before).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(depolarizing_contraction(2, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(depolarizing_contraction(2, 1.1), std::invalid_argument);
}

TEST_CASE("contraction fixed point is the maximally mixed state") {
  for (int d : {2, 3, 4}) {
    const QuantumChannel ch = depolarizing_contraction(d, 0.42);
    const DensityOperator mixed = DensityOperator::from_matrix(
        ComplexMatrix::Identity(d, d) / static_cast<double>(d));
    CHECK(max_abs_diff(ch.apply(mixed).matrix(), mixed.matrix()) < 1e-12);
  }
}

TEST_CASE("tensor of identities acts as the joint identity") {
  Rng rng(6);
  const QuantumChannel joint = tensor_channels({identity_channel(2), identity_channel(3)});
  const ComplexMatrix rho = testutil::random_density_matrix(6, 6, rng);
  CHECK(max_abs_diff(joint.apply_to_operator(rho), rho) < 1e-14);
}

TEST_CASE("product channels factorize on product states") {
  Rng rng(7);
  const QuantumChannel ch1 = depolarizing_contraction(2, 0.3);
  const QuantumChannel ch2 = random_channel(3, 2, 71);
  const QuantumChannel joint = tensor_channels({ch1, ch2});

  const ComplexMatrix rho1 = testutil::random_density_matrix(2, 2, rng);
  const ComplexMatrix rho2 = testutil::random_density_matrix(3, 3, rng);
  const ComplexMatrix lhs = joint.apply_to_operator(tensor_product(rho1, rho2));
  const ComplexMatrix rhs =
      tensor_product(ch1.apply_to_operator(rho1), ch2.apply_to_operator(rho2));
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("contraction pair scales the singlet correlation matrix") {
  const double k = 0.2, kp = 0.35;
  const QuantumChannel joint =
      tensor_channels({depolarizing_contraction(2, k), depolarizing_contraction(2, kp)});
  const DensityOperator rho = bell_state();
  const DensityOperator out = DensityOperator::from_matrix(joint.apply_to_operator(rho.matrix()));
  const Eigen::Matrix3d before = pauli_coefficients(rho).gamma;
  const Eigen::Matrix3d after = pauli_coefficients(out).gamma;
  CHECK((after - (1.0 - k) * (1.0 - kp) * before).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("channel products respect the dimension cap") {
  const QuantumChannel big = identity_channel(70);
  CHECK_THROWS_AS(tensor_channels({big, big}), std::invalid_argument);
}

TEST_CASE("apply_local matches the materialized product channel") {
  Rng rng(8);
  const QuantumChannel ch1 = random_channel(2, 2, 81);
  const QuantumChannel ch2 = random_channel(3, 2, 82);
  const QuantumChannel joint = tensor_channels({ch1, ch2});
  const ComplexMatrix rho = testutil::random_density_matrix(6, 4, rng);

  ComplexMatrix local = apply_local(ch1, rho, {2, 3}, 0);
  local = apply_local(ch2, local, {2, 3}, 1);
  CHECK(max_abs_diff(local, joint.apply_to_operator(rho)) < 1e-13);
}

TEST_CASE("dephasing keeps populations and damps coherences") {
  const double k = 0.6;
  const QuantumChannel ch = dephasing(k);

  ComplexMatrix diag(2, 2);
  diag << 0.7, 0, 0, 0.3;
  CHECK(max_abs_diff(ch.apply_to_operator(diag), diag) < 1e-15);

  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const ComplexMatrix out = ch.apply_to_operator(plus);
  CHECK(out(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(out(0, 1).real() == doctest::Approx(0.5 * (1.0 - k)).epsilon(1e-14));
  CHECK_THROWS_AS(dephasing(-0.01), std::invalid_argument);
}

TEST_CASE("epsilon certificates: identity and contraction closed forms") {
  const EpsilonCertificate id_cert = epsilon_of_channel(identity_channel(3), 2.0, 4);
  CHECK(id_cert.epsilon == 0.0);
  CHECK(id_cert.method == CertMethod::closed_form);

  for (int d : {2, 3, 4})
    for (double p : {1.0, 2.0, 3.0}) {
      const double k = 0.25;
      const EpsilonCertificate cert =
          epsilon_of_channel(depolarizing_contraction(d, k), p, 4);
      CHECK(cert.method == CertMethod::closed_form);
      const double factor =
          std::pow(std::pow(1.0 - 1.0 / d, p) + (d - 1) * std::pow(1.0 / d, p), 1.0 / p);
      CHECK(cert.epsilon == doctest::Approx(k * factor).epsilon(1e-14));
    }

  // qubit Hilbert-Schmidt calibration: epsilon = k / sqrt(2)
  const double k = 0.31;
  const EpsilonCertificate hs = epsilon_of_channel(depolarizing_contraction(2, k), 2.0, 4);
  CHECK(hs.epsilon == doctest::Approx(k / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(contraction_k_for_epsilon(2, hs.epsilon, 2.0) == doctest::Approx(k).epsilon(1e-12));
}

TEST_CASE("epsilon certificate of the dephasing map is found by optimization") {
  const double epsilon = 0.01;
  const double k = dephasing_k_for_epsilon(epsilon, 2.0);
  CHECK(k == doctest::Approx(std::sqrt(2.0) * epsilon).epsilon(1e-14));
  const QuantumChannel ch = dephasing(k);
  CHECK(!contraction_parameter(ch).has_value());
  const EpsilonCertificate cert = epsilon_of_channel(ch, 2.0, 8);
  CHECK(cert.method == CertMethod::optimized);
  CHECK(std::abs(cert.epsilon - epsilon) < 1e-10);
  CHECK(std::abs(cert.reevaluate(ch) - cert.epsilon) < 1e-8);
}

TEST_CASE("optimized certificates reproduce at the achieving state") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const QuantumChannel ch = random_channel(3, 2, seed);
    const EpsilonCertificate cert = epsilon_of_channel(ch, 2.0, 8);
    CHECK(cert.method == CertMethod::optimized);
    CHECK(std::abs(cert.reevaluate(ch) - cert.epsilon) < 1e-8);
    CHECK(cert.epsilon > 0.0);
  }
  CHECK_THROWS_AS(epsilon_of_channel(identity_channel(2), 2.0, 0), std::invalid_argument);
}

TEST_CASE("dyad deviations of simple channels") {
  const QuantumChannel id = identity_channel(3);
  CHECK(channel_deviation_on_dyad(id, 0, 2).cwiseAbs().maxCoeff() < 1e-15);

  const double k = 0.4;
  const QuantumChannel ch = depolarizing_contraction(2, k);
  ComplexMatrix expected(2, 2);  // -k(|0><0| - I/2)
  expected << -0.5 * k, 0, 0, 0.5 * k;
  CHECK(max_abs_diff(channel_deviation_on_dyad(ch, 0, 0), expected) < 1e-13);
  CHECK_THROWS_AS(channel_deviation_on_dyad(ch, 2, 0), std::invalid_argument);
}

TEST_CASE("dyad deviations are adjoint-symmetric") {
  for (std::uint64_t seed : {21u, 22u}) {
    const QuantumChannel ch = random_channel(3, 2, seed);
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        const ComplexMatrix vkl = channel_deviation_on_dyad(ch, k, l);
        const ComplexMatrix vlk = channel_deviation_on_dyad(ch, l, k);
        CHECK(max_abs_diff(vlk, vkl.adjoint()) < 1e-13);
      }
  }
}

TEST_CASE("random channels are trace preserving and reproducible") {
  const QuantumChannel unitary = random_channel(4, 1, 5);
  REQUIRE(unitary.kraus().size() == 1);
  CHECK(max_abs_diff(unitary.kraus()[0].adjoint() * unitary.kraus()[0],
                     ComplexMatrix::Identity(4, 4)) < 1e-12);

  const QuantumChannel a = random_channel(3, 3, 6);
  REQUIRE(a.kraus().size() == 3);
  ComplexMatrix acc = ComplexMatrix::Zero(3, 3);
  for (const auto& kop : a.kraus()) acc += kop.adjoint() * kop;
  CHECK(max_abs_diff(acc, ComplexMatrix::Identity(3, 3)) < 1e-10);

  const QuantumChannel b = random_channel(3, 3, 6);
  for (std::size_t i = 0; i < 3; ++i) CHECK(max_abs_diff(a.kraus()[i], b.kraus()[i]) == 0.0);
}

TEST_CASE("dyad deviation norm identity on random channels") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);
    const QuantumChannel ch = random_channel(d, 1 + static_cast<int>(seed % 3), 900 + seed);
    for (int k = 0; k < d; ++k)
      for (int l = k + 1; l < d; ++l) {
        ComplexMatrix ekl = ComplexMatrix::Zero(d, d);
        ekl(k, l) = 1.0;
        ComplexMatrix elk = ekl.adjoint();
        const ComplexMatrix xp = ekl + elk;
        const ComplexMatrix xm = ekl - elk;

        const double lhs1 = std::pow(schatten_norm(channel_deviation_on_dyad(ch, k, l), 2.0), 2);
        const double lhs2 = std::pow(schatten_norm(channel_deviation_on_dyad(ch, l, k), 2.0), 2);
        const double plus = std::pow(schatten_norm(ch.apply_to_operator(xp) - xp, 2.0), 2);
        const double minus = std::pow(schatten_norm(ch.apply_to_operator(xm) - xm, 2.0), 2);
        const double rhs = 0.25 * (plus + minus);
        CHECK(std::abs(lhs1 - rhs) < 1e-10);
        CHECK(std::abs(lhs2 - rhs) < 1e-10);
      }
  }
}

TEST_CASE("dyad combination deviations respect the certified epsilon") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);
    const QuantumChannel ch = random_channel(d, 2, 1700 + seed);
    const double eps = epsilon_of_channel(ch, 2.0, 8).epsilon;
    for (int k = 0; k < d; ++k) {
      const ComplexMatrix vkk = channel_deviation_on_dyad(ch, k, k);
      CHECK((vkk * vkk.adjoint()).trace().real() <= eps * eps + 1e-9);
      for (int l = k + 1; l < d; ++l) {
        ComplexMatrix ekl = ComplexMatrix::Zero(d, d);
        ekl(k, l) = 1.0;
        const ComplexMatrix xp = ekl + ekl.adjoint().eval();
        const ComplexMatrix xm = ekl - ekl.adjoint().eval();
        CHECK(schatten_norm(ch.apply_to_operator(xp) - xp, 2.0) <= 2.0 * eps + 1e-9);
        CHECK(schatten_norm(ch.apply_to_operator(xm) - xm, 2.0) <= 2.0 * eps + 1e-9);
        const ComplexMatrix vkl = channel_deviation_on_dyad(ch, k, l);
        CHECK((vkl * vkl.adjoint()).trace().real() <= 2.0 * eps * eps + 1e-9);
      }
    }
  }
}

TEST_CASE("one-sided deviation decomposes over the Schmidt spectrum") {
  Rng rng(47);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int d1 = 2 + static_cast<int>(seed % 2);
    const int d2 = 3;
    const QuantumChannel ch = random_channel(d1, 2, 2500 + seed);
    const ComplexVector psi = random_pure_vector(d1 * d2, rng);
    const SchmidtDecomposition sd = schmidt_decompose(psi, d1, d2);

    const ComplexMatrix rho = psi * psi.adjoint();
    const ComplexMatrix out = apply_local(ch, rho, {d1, d2}, 0);
    const double lhs = std::pow(schatten_norm(out - rho, 2.0), 2);

    double rhs = 0.0;
    const int r = static_cast<int>(sd.coefficients.size());
    for (int k = 0; k < r; ++k)
      for (int l = 0; l < r; ++l) {
        const ComplexMatrix dyad = sd.left_vectors.col(k) * sd.left_vectors.col(l).adjoint();
        const ComplexMatrix v = ch.apply_to_operator(dyad) - dyad;
        rhs += std::pow(sd.coefficients(k) * sd.coefficients(l), 2) *
               (v * v.adjoint()).trace().real();
      }
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("tensoring with a fixed state never increases the distance") {
  Rng rng(53);
  for (int rep = 0; rep < 10; ++rep) {
    const QuantumChannel ch = random_channel(2, 2, 3100 + static_cast<std::uint64_t>(rep));
    const ComplexMatrix rho1 = testutil::random_density_matrix(2, 2, rng);
    const ComplexMatrix rho2 = testutil::random_density_matrix(3, 2, rng);
    const ComplexMatrix out1 = ch.apply_to_operator(rho1);
    for (double p : {1.0, 2.0, 3.0}) {
      const double joint = schatten_norm(tensor_product(out1, rho2) - tensor_product(rho1, rho2), p);
      const double local = schatten_norm(out1 - rho1, p);
      CHECK(joint <= local + 1e-12);
    }
  }
}

TEST_SUITE_END();

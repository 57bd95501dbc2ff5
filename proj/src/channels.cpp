#include "localchan/channels.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>

namespace localchan {

namespace {

std::string default_id(const char* kind, int dim) {
  std::ostringstream os;
  os << kind << "(d=" << dim << ")";
  return os.str();
}

}  // namespace

QuantumChannel::QuantumChannel(int dim, std::vector<ComplexMatrix> kraus, std::string id)
    : dim_(dim), kraus_(std::move(kraus)), id_(std::move(id)) {
  if (dim_ < 1) throw std::invalid_argument("QuantumChannel: dimension must be positive");
  if (kraus_.empty())
    throw std::invalid_argument("QuantumChannel: Kraus list must be nonempty");
  ComplexMatrix acc = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_ || k.cols() != dim_)
      throw std::invalid_argument("QuantumChannel: Kraus operator has wrong shape");
    if (!is_finite(k))
      throw std::invalid_argument("QuantumChannel: Kraus entries must be finite");
    acc += k.adjoint() * k;
  }
  const double dev = (acc - ComplexMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
  if (dev > kKrausTol)
    throw std::invalid_argument("QuantumChannel: Kraus operators are not trace-preserving");
  if (id_.empty()) id_ = default_id("channel", dim_);
}

ComplexMatrix QuantumChannel::apply_to_operator(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw std::invalid_argument("QuantumChannel: operator dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

ComplexMatrix QuantumChannel::apply_adjoint(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw std::invalid_argument("QuantumChannel: operator dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) out += k.adjoint() * x * k;
  return out;
}

DensityOperator QuantumChannel::apply(const DensityOperator& rho) const {
  return DensityOperator::from_matrix(apply_to_operator(rho.matrix()));
}

QuantumChannel identity_channel(int d) {
  std::vector<ComplexMatrix> kraus{ComplexMatrix::Identity(d, d)};
  return QuantumChannel(d, std::move(kraus), default_id("identity", d));
}

QuantumChannel depolarizing_contraction(int d, double k) {
  if (d < 2)
    throw std::invalid_argument("depolarizing_contraction: dimension must be >= 2");
  if (k < 0.0 || k > 1.0)
    throw std::invalid_argument("depolarizing_contraction: k must be in [0, 1]");

  // Shift and clock unitaries.
  ComplexMatrix shift = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) shift((j + 1) % d, j) = 1.0;
  ComplexMatrix clock = ComplexMatrix::Zero(d, d);
  const double step = 2.0 * std::acos(-1.0) / d;
  for (int j = 0; j < d; ++j) clock(j, j) = Complex(std::cos(step * j), std::sin(step * j));

  const double dd = static_cast<double>(d) * d;
  const double w0 = std::sqrt(std::max(0.0, 1.0 - k * (dd - 1.0) / dd));
  const double w = std::sqrt(std::max(0.0, k)) / d;

  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(d) * d);
  kraus.push_back(w0 * ComplexMatrix::Identity(d, d));
  ComplexMatrix xa = ComplexMatrix::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    ComplexMatrix u = xa;
    for (int b = 0; b < d; ++b) {
      if (a != 0 || b != 0) kraus.push_back(w * u);
      u = u * clock;
    }
    xa = shift * xa;
  }
  std::ostringstream os;
  os << "contraction(d=" << d << ",k=" << k << ")";
  return QuantumChannel(d, std::move(kraus), os.str());
}

QuantumChannel dephasing(double k) {
  if (k < 0.0 || k > 1.0)
    throw std::invalid_argument("dephasing: k must be in [0, 1]");
  ComplexMatrix sz(2, 2);
  sz << 1.0, 0.0, 0.0, -1.0;
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(std::sqrt(1.0 - 0.5 * k) * ComplexMatrix::Identity(2, 2));
  kraus.push_back(std::sqrt(0.5 * k) * sz);
  std::ostringstream os;
  os << "dephasing(k=" << k << ")";
  return QuantumChannel(2, std::move(kraus), os.str());
}

QuantumChannel tensor_channels(const std::vector<QuantumChannel>& chs) {
  if (chs.empty())
    throw std::invalid_argument("tensor_channels: channel list must be nonempty");
  Eigen::Index dim = 1;
  for (const auto& ch : chs) {
    dim *= ch.dim();
    if (dim > kMaxDim)
      throw std::invalid_argument("tensor_channels: product exceeds maximum dimension");
  }
  std::vector<ComplexMatrix> kraus{ComplexMatrix::Identity(1, 1)};
  std::string id = "tensor[";
  for (std::size_t c = 0; c < chs.size(); ++c) {
    std::vector<ComplexMatrix> next;
    next.reserve(kraus.size() * chs[c].kraus().size());
    for (const auto& a : kraus)
      for (const auto& b : chs[c].kraus()) next.push_back(tensor_product(a, b));
    kraus = std::move(next);
    id += (c ? "," : "") + chs[c].id();
  }
  id += "]";
  return QuantumChannel(static_cast<int>(dim), std::move(kraus), std::move(id));
}

ComplexMatrix apply_local(const QuantumChannel& ch, const ComplexMatrix& m,
                          const std::vector<int>& dims, int site) {
  if (site < 0 || site >= static_cast<int>(dims.size()))
    throw std::invalid_argument("apply_local: site out of range");
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("apply_local: dimensions do not match operator");
  const int d = dims[site];
  if (ch.dim() != d)
    throw std::invalid_argument("apply_local: channel does not fit the site dimension");

  Eigen::Index pre = 1, post = 1;
  for (int s = 0; s < site; ++s) pre *= dims[s];
  for (int s = site + 1; s < static_cast<int>(dims.size()); ++s) post *= dims[s];

  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  ComplexMatrix tmp(total, total);
  for (const auto& kop : ch.kraus()) {
    // tmp = (I (x) K (x) I) m
    tmp.setZero();
    for (Eigen::Index a = 0; a < pre; ++a)
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) {
          const Complex kst = kop(s, t);
          if (kst == Complex(0.0, 0.0)) continue;
          const Eigen::Index row_s = (a * d + s) * post;
          const Eigen::Index row_t = (a * d + t) * post;
          for (Eigen::Index b = 0; b < post; ++b)
            tmp.row(row_s + b) += kst * m.row(row_t + b);
        }
    // out += tmp (I (x) K (x) I)^dagger
    for (Eigen::Index a = 0; a < pre; ++a)
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) {
          const Complex kst = std::conj(kop(s, t));
          if (kst == Complex(0.0, 0.0)) continue;
          const Eigen::Index col_s = (a * d + s) * post;
          const Eigen::Index col_t = (a * d + t) * post;
          for (Eigen::Index b = 0; b < post; ++b)
            out.col(col_s + b) += kst * tmp.col(col_t + b);
        }
  }
  return out;
}

namespace {

ComplexMatrix haar_unitary(int n, Rng& rng) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  // Fix the phase ambiguity so the distribution is exactly Haar.
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

}  // namespace

QuantumChannel random_channel(int d, int env_dim, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_channel: dimension must be >= 2");
  if (env_dim < 1)
    throw std::invalid_argument("random_channel: environment dimension must be >= 1");
  const int n = d * env_dim;
  if (n > kMaxDim)
    throw std::invalid_argument("random_channel: dilation exceeds maximum dimension");
  Rng rng(seed);
  const ComplexMatrix u = haar_unitary(n, rng);
  // Isometry = first d columns; row index is system-major (i * env_dim + e).
  std::vector<ComplexMatrix> kraus(env_dim, ComplexMatrix::Zero(d, d));
  for (int e = 0; e < env_dim; ++e)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        kraus[e](i, j) = u(static_cast<Eigen::Index>(i) * env_dim + e, j);
  std::ostringstream os;
  os << "random(d=" << d << ",env=" << env_dim << ",seed=" << seed << ")";
  return QuantumChannel(d, std::move(kraus), os.str());
}

ComplexMatrix channel_deviation_on_dyad(const QuantumChannel& ch, int k_index,
                                        int l_index) {
  const int d = ch.dim();
  if (k_index < 0 || k_index >= d || l_index < 0 || l_index >= d)
    throw std::invalid_argument("channel_deviation_on_dyad: index out of range");
  ComplexMatrix dyad = ComplexMatrix::Zero(d, d);
  dyad(k_index, l_index) = 1.0;
  if (k_index == l_index) return ch.apply_to_operator(dyad) - dyad;

  // |k><l| = (H+ - i H-)/2 with the two Hermitian combinations below, so the
  // extension only ever feeds Hermitian operators to the channel.
  ComplexMatrix hp = ComplexMatrix::Zero(d, d);
  hp(k_index, l_index) = 1.0;
  hp(l_index, k_index) = 1.0;
  ComplexMatrix hm = ComplexMatrix::Zero(d, d);
  hm(k_index, l_index) = Complex(0.0, 1.0);
  hm(l_index, k_index) = Complex(0.0, -1.0);
  const ComplexMatrix image =
      0.5 * (ch.apply_to_operator(hp) - Complex(0.0, 1.0) * ch.apply_to_operator(hm));
  return image - dyad;
}

std::optional<double> contraction_parameter(const QuantumChannel& ch) {
  const int d = ch.dim();
  if (d < 2 || d > 16) return std::nullopt;

  ComplexMatrix unit = ComplexMatrix::Zero(d, d);
  unit(0, 0) = 1.0;
  const ComplexMatrix probe = ch.apply_to_operator(unit);
  double k = d * probe(1, 1).real();
  if (k < -1e-12 || k > 1.0 + 1e-12) return std::nullopt;
  k = std::min(1.0, std::max(0.0, k));

  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, j) = 1.0;
      ComplexMatrix expected = (1.0 - k) * e;
      if (i == j) expected += (k / d) * eye;
      if ((ch.apply_to_operator(e) - expected).cwiseAbs().maxCoeff() > 1e-12)
        return std::nullopt;
    }
  return k;
}

double contraction_epsilon(int d, double k, double p) {
  if (d < 2) throw std::invalid_argument("contraction_epsilon: dimension must be >= 2");
  if (!(p >= 1.0)) throw std::invalid_argument("contraction_epsilon: p must be >= 1");
  const double big = 1.0 - 1.0 / d;
  if (std::isinf(p)) return k * big;
  return k * std::pow(std::pow(big, p) + (d - 1) * std::pow(1.0 / d, p), 1.0 / p);
}

double contraction_k_for_epsilon(int d, double epsilon, double p) {
  return epsilon / contraction_epsilon(d, 1.0, p);
}

double dephasing_k_for_epsilon(double epsilon, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("dephasing_k_for_epsilon: p must be >= 1");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return epsilon * std::pow(2.0, 1.0 - inv_p);
}

namespace {

double deviation_norm(const QuantumChannel& ch, const ComplexVector& psi, double p) {
  const ComplexMatrix rho = psi * psi.adjoint();
  return schatten_norm(ch.apply_to_operator(rho) - rho, p);
}

// Dual element W with <W, A> = ||A||_p and ||W||_q = 1 (a subgradient of the
// Schatten p-norm at Hermitian A).
ComplexMatrix norm_subgradient(const ComplexMatrix& a, double p) {
  const ComplexMatrix sym = 0.5 * (a + a.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const RealVector ev = solver.eigenvalues();
  const ComplexMatrix& vec = solver.eigenvectors();
  const Eigen::Index n = ev.size();

  RealVector w = RealVector::Zero(n);
  if (std::isinf(p)) {
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (std::abs(ev(i)) > std::abs(ev(arg))) arg = i;
    w(arg) = ev(arg) >= 0.0 ? 1.0 : -1.0;
  } else if (p == 1.0) {
    for (Eigen::Index i = 0; i < n; ++i) w(i) = ev(i) > 0.0 ? 1.0 : (ev(i) < 0.0 ? -1.0 : 0.0);
  } else {
    double norm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) norm += std::pow(std::abs(ev(i)), p);
    norm = std::pow(norm, 1.0 / p);
    if (norm > 0.0)
      for (Eigen::Index i = 0; i < n; ++i) {
        const double mag = std::abs(ev(i));
        if (mag > 0.0)
          w(i) = (ev(i) >= 0.0 ? 1.0 : -1.0) * std::pow(mag / norm, p - 1.0);
      }
  }
  return vec * w.asDiagonal() * vec.adjoint();
}

constexpr std::uint64_t kCertSeed = 0x10c41c4aULL;

}  // namespace

double maximize_deviation_from(const QuantumChannel& ch, double p, ComplexVector& psi,
                               int max_iters) {
  double best = deviation_norm(ch, psi, p);
  ComplexVector best_psi = psi;
  int stalled = 0;
  for (int it = 0; it < max_iters && stalled < 2; ++it) {
    const ComplexMatrix rho = psi * psi.adjoint();
    const ComplexMatrix a = ch.apply_to_operator(rho) - rho;
    if (a.cwiseAbs().maxCoeff() < 1e-300) break;
    const ComplexMatrix w = norm_subgradient(a, p);
    const ComplexMatrix g = ch.apply_adjoint(w) - w;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (g + g.adjoint().eval()));
    psi = solver.eigenvectors().col(ch.dim() - 1);
    const double val = deviation_norm(ch, psi, p);
    if (val > best + 1e-15 * std::max(1.0, best)) {
      best = val;
      best_psi = psi;
      stalled = 0;
    } else {
      ++stalled;
    }
  }
  psi = best_psi;
  return best;
}

double refine_deviation(const QuantumChannel& ch, double p, ComplexVector& psi,
                        int max_sweeps) {
  const int d = ch.dim();
  double best = deviation_norm(ch, psi, p);
  double step = 0.25;
  for (int sweep = 0; sweep < max_sweeps && step > 1e-9; ++sweep) {
    bool improved = false;
    for (int coord = 0; coord < 2 * d; ++coord)
      for (int sign = -1; sign <= 1; sign += 2) {
        ComplexVector cand = psi;
        const Complex delta = (coord % 2 == 0) ? Complex(sign * step, 0.0)
                                               : Complex(0.0, sign * step);
        cand(coord / 2) += delta;
        const double norm = cand.norm();
        if (norm < 1e-12) continue;
        cand /= norm;
        const double val = deviation_norm(ch, cand, p);
        if (val > best + 1e-18) {
          best = val;
          psi = cand;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return best;
}

double EpsilonCertificate::reevaluate(const QuantumChannel& ch) const {
  return deviation_norm(ch, achieving_state, p);
}

EpsilonCertificate epsilon_of_channel(const QuantumChannel& ch, double p, int budget) {
  if (!(p >= 1.0)) throw std::invalid_argument("epsilon_of_channel: p must be >= 1");
  if (budget < 1) throw std::invalid_argument("epsilon_of_channel: budget must be >= 1");
  const int d = ch.dim();

  if (auto k = contraction_parameter(ch)) {
    EpsilonCertificate cert;
    cert.channel_id = ch.id();
    cert.p = p;
    cert.epsilon = contraction_epsilon(d, *k, p);
    cert.method = CertMethod::closed_form;
    cert.achieving_state = ComplexVector::Zero(d);
    cert.achieving_state(0) = 1.0;
    return cert;
  }

  // Deterministic starts: every basis state and every pairwise superposition
  // (|k> + |l>)/sqrt(2), (|k> - |l>)/sqrt(2), (|k> +- i|l>)/sqrt(2). They
  // guarantee the certificate dominates the deviation of each of these
  // states, which the dyad-deviation bounds build on.
  std::vector<ComplexVector> starts;
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    ComplexVector e = ComplexVector::Zero(d);
    e(k) = 1.0;
    starts.push_back(e);
  }
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l)
      for (const Complex phase : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        ComplexVector e = ComplexVector::Zero(d);
        e(k) = s;
        e(l) = s * phase;
        starts.push_back(e);
      }
  Rng rng(derive_seed(kCertSeed, std::hash<std::string>{}(ch.id())));
  for (int r = 0; r < budget; ++r) starts.push_back(random_pure_vector(d, rng));

  double best = -1.0;
  ComplexVector best_psi;
  for (auto& psi : starts) {
    const double val = maximize_deviation_from(ch, p, psi, 120);
    if (val > best) {
      best = val;
      best_psi = psi;
    }
  }
  best = refine_deviation(ch, p, best_psi, 200);

  EpsilonCertificate cert;
  cert.channel_id = ch.id();
  cert.p = p;
  cert.epsilon = best;
  cert.method = CertMethod::optimized;
  cert.achieving_state = best_psi;
  return cert;
}

}  // namespace localchan

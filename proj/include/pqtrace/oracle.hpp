#pragma once
// Finite-dimensional ground truth. A model is a list of principal angles
// plus four intersection multiplicities; it determines a concrete pair of
// real symmetric projection matrices in block form: one 2x2 block per
// angle, then 1x1 blocks realizing the intersections ran/ker(P) with
// ran/ker(Q). Everything the symbolic engine claims can be checked here
// numerically.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqtrace/ncpoly.hpp"
#include "pqtrace/rational.hpp"
#include "pqtrace/rng.hpp"
#include "pqtrace/trace.hpp"
#include "pqtrace/word.hpp"

namespace pqtrace {

/// Principal angles in the open interval (0, pi/2) plus the dimensions of
/// the four intersections: [ran P n ran Q, ran P n ker Q, ker P n ran Q,
/// ker P n ker Q]. Angles 0 and pi/2 are expressed through the
/// multiplicities, never as angle entries.
struct ModelSpec {
  std::vector<double> angles;
  std::array<int, 4> mult{0, 0, 0, 0};  // m11, m10, m01, m00

  int dimension() const {
    return 2 * static_cast<int>(angles.size()) + mult[0] + mult[1] + mult[2] + mult[3];
  }

  void validate() const {
    for (double a : angles)
      if (!(a > 0.0 && a < 1.5707963267948966))
        throw std::invalid_argument(
            "principal angle outside (0, pi/2); use multiplicities for degenerate angles");
    for (int m : mult)
      if (m < 0) throw std::invalid_argument("negative intersection multiplicity");
    if (dimension() < 1) throw std::invalid_argument("model has dimension 0");
  }

  double p() const {
    return (static_cast<double>(angles.size()) + mult[0] + mult[1]) / dimension();
  }
  double q() const {
    return (static_cast<double>(angles.size()) + mult[0] + mult[2]) / dimension();
  }
  /// m_k = (sum_i cos^{2k} theta_i + m11) / d.
  double m(unsigned k) const {
    double s = 0.0;
    for (double a : angles) s += std::pow(std::cos(a), 2.0 * k);
    return (s + mult[0]) / dimension();
  }

  Assignment assignment(unsigned max_k) const {
    Assignment out;
    out.p = p();
    out.q = q();
    for (unsigned k = 1; k <= max_k; ++k) out.m[k] = m(k);
    return out;
  }
};

struct ProjectionPair {
  ModelSpec spec;
  int d = 0;
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
};

/// Block-diagonal realization of a model.
inline ProjectionPair build(const ModelSpec& spec) {
  spec.validate();
  const int d = spec.dimension();
  ProjectionPair pair;
  pair.spec = spec;
  pair.d = d;
  pair.P = Eigen::MatrixXd::Zero(d, d);
  pair.Q = Eigen::MatrixXd::Zero(d, d);

  int at = 0;
  for (double theta : spec.angles) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    pair.P(at, at) = 1.0;
    pair.Q(at, at) = c * c;
    pair.Q(at, at + 1) = c * s;
    pair.Q(at + 1, at) = c * s;
    pair.Q(at + 1, at + 1) = s * s;
    at += 2;
  }
  const std::array<std::pair<double, double>, 4> diag{{{1, 1}, {1, 0}, {0, 1}, {0, 0}}};
  for (int type = 0; type < 4; ++type)
    for (int i = 0; i < spec.mult[type]; ++i) {
      pair.P(at, at) = diag[type].first;
      pair.Q(at, at) = diag[type].second;
      ++at;
    }
  return pair;
}

/// Matrix image of a word; the empty word is the identity.
inline Eigen::MatrixXd word_matrix(const ProjectionPair& pair, const Word& w) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(pair.d, pair.d);
  Letter l = w.first();
  for (std::uint32_t i = 0; i < w.length(); ++i) {
    out = out * (l == Letter::P ? pair.P : pair.Q);
    l = other(l);
  }
  return out;
}

/// Normalized trace tr(.)/d of the matrix image of a word.
inline double word_trace(const ProjectionPair& pair, const Word& w) {
  if (w.empty()) return 1.0;
  return word_matrix(pair, w).trace() / pair.d;
}

/// Normalized trace of the matrix image of a polynomial.
inline double poly_trace(const ProjectionPair& pair, const NCPoly& x) {
  double out = 0.0;
  for (const auto& [w, c] : x) out += c.convert_to<double>() * word_trace(pair, w);
  return out;
}

/// | eval(trace(x), model moments) - numeric trace of x |: the symbolic
/// reduction and the matrix arithmetic must agree on every model.
inline double crosscheck(const ProjectionPair& pair, const NCPoly& x) {
  const MomentExpr e = trace(x);
  const double symbolic = eval(e, pair.spec.assignment(e.max_k()));
  return std::abs(symbolic - poly_trace(pair, x));
}

enum class SpectrumKind {
  sum,            // P + Q
  sum_shift_sq,   // (P + Q - 1)^2
  commutator_sq,  // -(PQ - QP)^2
  angle,          // PQP
  p_plus_qpq,     // P + QPQ
  kato_A,         // P - Q
  kato_B          // 1 - P - Q
};

inline const char* spectrum_kind_name(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::sum: return "sum";
    case SpectrumKind::sum_shift_sq: return "sum_shift_sq";
    case SpectrumKind::commutator_sq: return "commutator_sq";
    case SpectrumKind::angle: return "angle";
    case SpectrumKind::p_plus_qpq: return "p_plus_qpq";
    case SpectrumKind::kato_A: return "kato_A";
    case SpectrumKind::kato_B: return "kato_B";
  }
  return "?";
}

inline SpectrumKind spectrum_kind_from_name(const std::string& name) {
  for (SpectrumKind k :
       {SpectrumKind::sum, SpectrumKind::sum_shift_sq, SpectrumKind::commutator_sq,
        SpectrumKind::angle, SpectrumKind::p_plus_qpq, SpectrumKind::kato_A,
        SpectrumKind::kato_B})
    if (name == spectrum_kind_name(k)) return k;
  throw std::invalid_argument("unknown spectrum kind: " + name);
}

/// Ascending eigenvalues of the selected self-adjoint operator.
inline std::vector<double> spectrum(const ProjectionPair& pair, SpectrumKind kind) {
  const int d = pair.d;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd M;
  switch (kind) {
    case SpectrumKind::sum: M = pair.P + pair.Q; break;
    case SpectrumKind::sum_shift_sq: {
      const Eigen::MatrixXd s = pair.P + pair.Q - I;
      M = s * s;
      break;
    }
    case SpectrumKind::commutator_sq: {
      const Eigen::MatrixXd D = pair.P * pair.Q - pair.Q * pair.P;
      M = -(D * D);
      break;
    }
    case SpectrumKind::angle: M = pair.P * pair.Q * pair.P; break;
    case SpectrumKind::p_plus_qpq: M = pair.P + pair.Q * pair.P * pair.Q; break;
    case SpectrumKind::kato_A: M = pair.P - pair.Q; break;
    case SpectrumKind::kato_B: M = I - pair.P - pair.Q; break;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + d);
  return out;
}

/// The per-block eigenvalues the construction promises, for the kinds
/// tied to the angles by elementary functions. Sorted ascending.
inline std::vector<double> expected_spectrum(const ModelSpec& spec, SpectrumKind kind) {
  std::vector<double> out;
  switch (kind) {
    case SpectrumKind::sum:
      for (double a : spec.angles) {
        out.push_back(1.0 - std::cos(a));
        out.push_back(1.0 + std::cos(a));
      }
      out.insert(out.end(), spec.mult[0], 2.0);
      out.insert(out.end(), spec.mult[1] + spec.mult[2], 1.0);
      out.insert(out.end(), spec.mult[3], 0.0);
      break;
    case SpectrumKind::sum_shift_sq:
      for (double a : spec.angles) {
        const double c2 = std::cos(a) * std::cos(a);
        out.push_back(c2);
        out.push_back(c2);
      }
      out.insert(out.end(), spec.mult[0] + spec.mult[3], 1.0);
      out.insert(out.end(), spec.mult[1] + spec.mult[2], 0.0);
      break;
    case SpectrumKind::commutator_sq:
      for (double a : spec.angles) {
        const double v = std::pow(std::cos(a) * std::sin(a), 2);
        out.push_back(v);
        out.push_back(v);
      }
      out.insert(out.end(), spec.mult[0] + spec.mult[1] + spec.mult[2] + spec.mult[3],
                 0.0);
      break;
    default:
      throw std::invalid_argument("no closed-form spectrum registered for this kind");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Entrywise residuals of P^2 = P = P^T and Q^2 = Q = Q^T.
inline double idempotency_residual(const ProjectionPair& pair) {
  const double rp = (pair.P * pair.P - pair.P).cwiseAbs().maxCoeff();
  const double rq = (pair.Q * pair.Q - pair.Q).cwiseAbs().maxCoeff();
  const double sp = (pair.P - pair.P.transpose()).cwiseAbs().maxCoeff();
  const double sq = (pair.Q - pair.Q.transpose()).cwiseAbs().maxCoeff();
  return std::max(std::max(rp, rq), std::max(sp, sq));
}

/// Fixed seeded grid of models: 0-4 angles, multiplicities cycling
/// through {0,1,2}, commuting (angle-free) models included.
inline std::vector<ModelSpec> default_model_grid(std::size_t count = 24,
                                                 std::uint64_t seed = 20240915) {
  SplitMix64 rng(seed);
  std::vector<ModelSpec> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ModelSpec spec;
    const int n_angles = static_cast<int>(i % 5);
    for (int a = 0; a < n_angles; ++a) {
      // angles kept away from the degenerate endpoints
      spec.angles.push_back(0.05 + rng.uniform01() * (1.5707963267948966 - 0.10));
    }
    spec.mult = {static_cast<int>((i + 1) % 3), static_cast<int>(i % 3),
                 static_cast<int>((i / 3) % 3), static_cast<int>((i / 2) % 3)};
    if (spec.dimension() == 0) spec.mult[0] = 1;
    grid.push_back(std::move(spec));
  }
  return grid;
}

/// Random polynomial with small rational coefficients on words of bounded
/// length. Used by the oracle cross-checks.
inline NCPoly random_ncpoly(SplitMix64& rng, unsigned max_terms, unsigned max_len) {
  NCPoly out;
  const unsigned terms = 1 + static_cast<unsigned>(rng.below(max_terms));
  for (unsigned t = 0; t < terms; ++t) {
    const unsigned len = static_cast<unsigned>(rng.below(max_len + 1));
    const Letter first = rng.below(2) == 0 ? Letter::P : Letter::Q;
    const long num = static_cast<long>(rng.below(11)) - 5;
    const long den = 1 + static_cast<long>(rng.below(4));
    if (num == 0) continue;
    out += NCPoly(Word(first, len), Rational(num, den));
  }
  return out;
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// R-diagonal signs fixed.
inline Eigen::MatrixXd haar_orthogonal(int d, GaussianSource& gauss) {
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gauss.next();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd u = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) u.col(j) = -u.col(j);
  return u;
}

struct HaarConfig {
  int d = 64;
  int samples = 200;
  int max_j = 4;
  std::uint64_t seed = 42;
};

struct HaarMomentRow {
  int j = 0;
  double estimate = 0.0;
  double target = 0.0;  // C(2j,j) / 4^j
  double abs_error = 0.0;
};

struct HaarReport {
  HaarConfig config;
  std::vector<HaarMomentRow> moments;
  double max_thm_sum_residual = 0.0;
  double max_thm_comm_residual = 0.0;
};

/// Rotate one rank-d/2 projection by independent Haar orthogonals and
/// average tr[(P + Q' - 1)^{2j}]; the averages approach the arcsine
/// moments C(2j,j)/4^j. Two exact identities are also evaluated on every
/// sample: they hold for any pair, so their numeric residuals bound the
/// floating-point error of the whole pipeline.
inline HaarReport haar_demo(const HaarConfig& cfg) {
  if (cfg.d % 2 != 0) throw std::invalid_argument("haar model dimension must be even");
  if (cfg.d < 16) throw std::invalid_argument("haar model dimension must be >= 16");
  if (cfg.samples < 1) throw std::invalid_argument("need at least one sample");
  if (cfg.max_j < 1 || cfg.max_j > 12)
    throw std::invalid_argument("max_j out of range 1..12");

  const int d = cfg.d;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d / 2; ++i) P(i, i) = 1.0;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);

  GaussianSource gauss(cfg.seed);
  std::vector<double> sums(cfg.max_j + 1, 0.0);
  HaarReport rep;
  rep.config = cfg;

  for (int s = 0; s < cfg.samples; ++s) {
    const Eigen::MatrixXd U = haar_orthogonal(d, gauss);
    const Eigen::MatrixXd Q = U.leftCols(d / 2) * U.leftCols(d / 2).transpose();
    const Eigen::MatrixXd M = P + Q - I;
    const Eigen::MatrixXd M2 = M * M;
    const Eigen::MatrixXd angle = P * Q * P;
    const Eigen::MatrixXd comm = P * Q - Q * P;
    const Eigen::MatrixXd comm2 = comm * comm;
    const Eigen::MatrixXd angle_mix = angle * (P - angle);

    Eigen::MatrixXd m2pow = I, anglepow = I, comm2pow = I, mixpow = I;
    for (int j = 1; j <= cfg.max_j; ++j) {
      m2pow = m2pow * M2;
      anglepow = anglepow * angle;
      comm2pow = comm2pow * comm2;
      mixpow = mixpow * angle_mix;

      const double even_moment = m2pow.trace() / d;
      sums[j] += even_moment;

      // tau(P) = tau(Q) = 1/2 here, so alpha = beta = 0
      const double thm_sum_res = std::abs(2.0 * anglepow.trace() / d - even_moment);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const double thm_comm_res =
          std::abs(sign * comm2pow.trace() / d - 2.0 * mixpow.trace() / d);
      rep.max_thm_sum_residual = std::max(rep.max_thm_sum_residual, thm_sum_res);
      rep.max_thm_comm_residual = std::max(rep.max_thm_comm_residual, thm_comm_res);
    }
  }

  for (int j = 1; j <= cfg.max_j; ++j) {
    HaarMomentRow row;
    row.j = j;
    row.estimate = sums[j] / cfg.samples;
    row.target = binomial(2 * j, j).convert_to<double>() /
                 std::pow(4.0, static_cast<double>(j));
    row.abs_error = std::abs(row.estimate - row.target);
    rep.moments.push_back(row);
  }
  return rep;
}

}  // namespace pqtrace

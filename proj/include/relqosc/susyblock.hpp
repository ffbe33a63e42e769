#pragma once

// Discretized supercharges and the 2x2-block Dirac Hamiltonian
//
//   H = [[ mc^2,  c sqrt(delta) A^+ ],      = g (s^- A + s^+ A^+) + s_z mc^2,
//        [ c sqrt(delta) A,  -mc^2  ]]        g = c sqrt(delta),
//
// with A = D / sqrt(delta) and D the first-order operator d/dx + w~(x).
// The lower spinor component is rotated by -i so every matrix is real.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relqosc/error.hpp"
#include "relqosc/grid.hpp"
#include "relqosc/models.hpp"
#include "relqosc/tridiagonal.hpp"

namespace relqosc {

/// Square bidiagonal matrix. lower: entries (i,i) and (i+1,i);
/// upper: entries (i,i) and (i,i+1).
struct Bidiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  bool lower = true;

  int size() const { return static_cast<int>(diag.size()); }

  Bidiagonal transposed() const { return Bidiagonal{diag, off, !lower}; }

  double at(int i, int j) const {
    if (i == j) return diag[static_cast<std::size_t>(i)];
    if (lower && i == j + 1) return off[static_cast<std::size_t>(j)];
    if (!lower && j == i + 1) return off[static_cast<std::size_t>(i)];
    return 0.0;
  }

  std::vector<double> apply(std::span<const double> v) const {
    const std::size_t n = diag.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * v[i];
      if (lower && i > 0) s += off[i - 1] * v[i - 1];
      if (!lower && i + 1 < n) s += off[i] * v[i + 1];
      out[i] = s;
    }
    return out;
  }

  Eigen::MatrixXd dense() const {
    const int n = size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      m(i, i) = diag[static_cast<std::size_t>(i)];
      if (i + 1 < n) {
        if (lower) m(i + 1, i) = off[static_cast<std::size_t>(i)];
        else m(i, i + 1) = off[static_cast<std::size_t>(i)];
      }
    }
    return m;
  }
};

/// X^T X for a bidiagonal X, as a symmetric tridiagonal operator.
inline TridiagonalOperator normal_product(const Bidiagonal& x) {
  const std::size_t n = x.diag.size();
  TridiagonalOperator t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    double s = x.diag[i] * x.diag[i];
    if (x.lower && i + 1 < n) s += x.off[i] * x.off[i];
    if (!x.lower && i > 0) s += x.off[i - 1] * x.off[i - 1];
    t.diag[i] = s;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // lower: column i meets column i+1 in row i+1; upper: in row i
    t.offdiag[i] = x.lower ? x.off[i] * x.diag[i + 1] : x.diag[i] * x.off[i];
  }
  return t;
}

struct SupersymmetricPair {
  Grid grid;
  Bidiagonal D;   // realizes d/dx + w~ ; A = D / sqrt(delta)
  Bidiagonal Dt;  // exact transpose of D
  double delta = 1.0;
  double g = 1.0;  // c sqrt(delta)
  double c = 1.0;
  double ladder_scale = 1.0;  // 2 * linear superpotential strength; sets the kernel threshold

  TridiagonalOperator gram() const { return normal_product(D); }     // D^T D  (sector of psi_1)
  TridiagonalOperator cogram() const { return normal_product(Dt); }  // D D^T  (sector of psi_2)
};

/// delta = 4 m omega for harmonic families, 4 m a for isotonic ones.
inline double default_delta(const ModelSpec& spec) {
  return is_harmonic(spec.family) ? 4.0 * spec.params.m * spec.params.omega
                                  : 4.0 * spec.params.m * spec.params.a;
}

/// Backward-difference first-order operator for angular sector ml:
///   (D v)_j = (v_j - v_{j-1}) / h + w~(x_j) v_j,   v_{-1} = 0.
inline Bidiagonal supercharge_matrix(const ModelSpec& spec, const Grid& grid, int ml) {
  grid.validate();
  if (spec.family != Family::dirac_1d_harmonic && grid.x_min < 0.0) {
    throw domain_error("half-line family needs a grid with x_min >= 0");
  }
  const double inv_h = 1.0 / grid.h();
  Bidiagonal d;
  d.lower = true;
  d.diag.resize(static_cast<std::size_t>(grid.n_points));
  d.off.assign(static_cast<std::size_t>(grid.n_points - 1), -inv_h);
  for (int i = 0; i < grid.n_points; ++i) {
    const double w = supercharge_weight(spec, grid.node(i), ml);
    if (!std::isfinite(w)) {
      throw solver_error("superpotential is not finite at node " + std::to_string(i));
    }
    d.diag[static_cast<std::size_t>(i)] = inv_h + w;
  }
  return d;
}

inline SupersymmetricPair discretize_supercharge(const ModelSpec& spec, const Grid& grid,
                                                 std::optional<double> delta = std::nullopt) {
  spec.validate();
  const double dlt = delta.value_or(default_delta(spec));
  if (!(dlt > 0.0) || !std::isfinite(dlt)) throw config_error("delta must be > 0");
  SupersymmetricPair pair;
  pair.grid = grid;
  pair.D = supercharge_matrix(spec, grid, spec.ml.value_or(0));
  pair.Dt = pair.D.transposed();
  pair.delta = dlt;
  pair.c = spec.params.c;
  pair.g = spec.params.c * std::sqrt(dlt);
  pair.ladder_scale = 2.0 * spec.linear_strength();
  return pair;
}

/// Real symmetric 2N x 2N Dirac matrix in band storage. Unknowns are
/// interleaved, index 2j for psi_1 at node j and 2j+1 for the rotated psi_2;
/// bands[k][i] = H(i + k, i).
struct BlockHamiltonian {
  int size = 0;
  double mass_term = 0.0;
  std::array<std::vector<double>, 4> bands;

  double at(int i, int j) const {
    if (i < j) std::swap(i, j);
    const int k = i - j;
    if (k > 3) return 0.0;
    return bands[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
  }

  /// Dense matrix in the interleaved ordering.
  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd m(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) m(i, j) = at(i, j);
    return m;
  }

  /// Dense matrix in block ordering [psi_1 nodes..., psi_2 nodes...].
  Eigen::MatrixXd dense_blocks() const {
    const int n = size / 2;
    Eigen::MatrixXd m(size, size);
    auto perm = [n](int i) { return i < n ? 2 * i : 2 * (i - n) + 1; };
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) m(i, j) = at(perm(i), perm(j));
    return m;
  }

  /// Lower-left block c D read back from the bands.
  Bidiagonal coupling_block() const {
    const int n = size / 2;
    Bidiagonal b;
    b.lower = true;
    b.diag.resize(static_cast<std::size_t>(n));
    b.off.resize(static_cast<std::size_t>(n - 1));
    for (int j = 0; j < n; ++j) b.diag[static_cast<std::size_t>(j)] = at(2 * j + 1, 2 * j);
    for (int j = 0; j + 1 < n; ++j) b.off[static_cast<std::size_t>(j)] = at(2 * j + 3, 2 * j);
    return b;
  }
};

inline BlockHamiltonian build_block_hamiltonian(const SupersymmetricPair& pair, double mc2) {
  if (!(mc2 > 0.0)) throw config_error("rest energy mc^2 must be > 0");
  const int n = pair.D.size();
  BlockHamiltonian h;
  h.size = 2 * n;
  h.mass_term = mc2;
  for (auto& band : h.bands) band.assign(static_cast<std::size_t>(2 * n), 0.0);
  for (int j = 0; j < n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    h.bands[0][2 * uj] = mc2;
    h.bands[0][2 * uj + 1] = -mc2;
    h.bands[1][2 * uj] = pair.c * pair.D.diag[uj];            // H(2j+1, 2j)
    if (j + 1 < n) h.bands[3][2 * uj] = pair.c * pair.D.off[uj];  // H(2j+3, 2j)
  }
  return h;
}

/// g (s^- (x) A + s^+ (x) A^+) + s_z (x) mc^2 I assembled from Kronecker
/// products in block ordering; an independent construction of the same matrix.
inline Eigen::MatrixXd anti_jaynes_cummings_dense(const SupersymmetricPair& pair, double mc2) {
  const int n = pair.D.size();
  const Eigen::MatrixXd a = pair.D.dense() / std::sqrt(pair.delta);
  const Eigen::MatrixXd a_dag = a.transpose();
  Eigen::Matrix2d s_minus, s_plus, s_z;
  s_minus << 0, 0, 1, 0;
  s_plus << 0, 1, 0, 0;
  s_z << 1, 0, 0, -1;
  auto kron = [n](const Eigen::Matrix2d& s, const Eigen::MatrixXd& op) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        if (s(r, c) != 0.0) out.block(r * n, c * n, n, n) = s(r, c) * op;
    return out;
  };
  return pair.g * (kron(s_minus, a) + kron(s_plus, a_dag)) +
         kron(s_z, mc2 * Eigen::MatrixXd::Identity(n, n));
}

/// +-sqrt((mc^2)^2 + mu) for the k lowest eigenvalues mu of (cD)^T (cD),
/// using H^2 = diag((mc^2)^2 + (cD)^T(cD), (mc^2)^2 + (cD)(cD)^T).
/// Returned ascending: -E_{k-1} ... -E_0, E_0 ... E_{k-1}.
inline std::vector<double> block_spectrum(const BlockHamiltonian& h, int k) {
  const auto gram = normal_product(h.coupling_block());
  const auto states = eigen_lowest(gram, k);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * k));
  for (const auto& s : states) {
    const double e = std::sqrt(h.mass_term * h.mass_term + std::max(s.lambda, 0.0));
    out.push_back(e);
    out.push_back(-e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every eigenvalue of the full matrix by dense diagonalization, ascending.
inline std::vector<double> dense_block_spectrum(const BlockHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw solver_error("dense eigensolver failed");
  const auto& ev = es.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

/// k lowest eigenvalues of A^+ A = D^T D / delta.
inline std::vector<double> ata_eigenvalues(const SupersymmetricPair& pair, int k) {
  std::vector<double> out;
  for (const auto& s : eigen_lowest(pair.gram(), k)) out.push_back(s.lambda / pair.delta);
  return out;
}

struct IsospectralityReport {
  std::vector<std::pair<double, double>> pairs;  // (D^T D, D D^T) eigenvalues
  int kernel_dim = 0;                            // near-zero modes of D
  double kernel_tol = 0.0;
  double max_rel_diff = 0.0;                     // over the nonzero pairs
  bool passed = false;
};

/// Compare the k lowest eigenvalues of D^T D and D D^T. Their nonzero parts
/// must coincide; eigenvalues below kernel_tol count as kernel modes of D.
inline IsospectralityReport susy_isospectrality_check(const SupersymmetricPair& pair, int k,
                                                      double rel_tol = 1e-10) {
  if (k < 1 || k > pair.D.size() - 1) throw config_error("isospectrality check needs 1 <= k <= N-1");
  const auto lower = eigen_lowest(pair.gram(), k);
  const auto upper = eigen_lowest(pair.cogram(), k);
  IsospectralityReport rep;
  rep.kernel_tol = 1e-3 * pair.ladder_scale;
  for (int i = 0; i < k; ++i) {
    const double a = lower[static_cast<std::size_t>(i)].lambda;
    const double b = upper[static_cast<std::size_t>(i)].lambda;
    rep.pairs.emplace_back(a, b);
    if (a < rep.kernel_tol) {
      ++rep.kernel_dim;
      continue;
    }
    rep.max_rel_diff = std::max(rep.max_rel_diff, std::abs(a - b) / std::abs(a));
  }
  rep.passed = rep.max_rel_diff <= rel_tol;
  return rep;
}

/// <f, [A, A^+] f> / <f, f> with A = D / sqrt(delta). For planar families A
/// raises m_l, so A A^+ acts on sector m_l+1 through D_{m_l} D_{m_l}^T while
/// A^+ A on that sector is D_{m_l+1}^T D_{m_l+1}.
inline double commutator_expectation(const ModelSpec& spec, const Grid& grid, double delta,
                                     std::span<const double> f) {
  const int ml = spec.ml.value_or(0);
  const Bidiagonal d_here = supercharge_matrix(spec, grid, ml);
  const Bidiagonal d_next = is_planar(spec.family) ? supercharge_matrix(spec, grid, ml + 1) : d_here;
  const auto aat = normal_product(d_here.transposed()).apply(f);
  const auto ata = normal_product(d_next).apply(f);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += f[i] * (aat[i] - ata[i]);
    den += f[i] * f[i];
  }
  return num / (delta * den);
}

}  // namespace relqosc

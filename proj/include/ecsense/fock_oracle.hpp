#ifndef ECSENSE_FOCK_ORACLE_HPP
#define ECSENSE_FOCK_ORACLE_HPP

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ecsense/lossy_model.hpp"

/*
 * Numerical verification engine: states and density matrices are built from
 * first principles in a truncated two-mode Fock basis (flat index n1*d + n2)
 * and never reuse the closed forms they are meant to check.  Beam splitters
 * act exactly on coherent amplitudes, so truncation error only enters the
 * final moment and eigenvalue evaluations.
 */
namespace ecsense {

inline constexpr double tail_tol = 1e-12;

// Smallest per-mode dimension d whose Poisson tail beyond d-1 drops under
// tail_tol for the given branch intensity, clamped to [8, 64].
inline int tail_rule_cutoff(double intensity) {
  constexpr int lo = 8, hi = 64;
  if (!(intensity > 0.0)) return lo;
  double pmf = std::exp(-intensity);
  double cdf = pmf;
  int d = 1;
  while (1.0 - cdf >= tail_tol && d < 4 * hi) {
    pmf *= intensity / d;
    cdf += pmf;
    ++d;
  }
  return std::clamp(d, lo, hi);
}

// Fock expansion of |amp> up to cutoff, by the stable ratio recurrence.
struct mode_amplitudes {
  Eigen::VectorXcd amp;
  double tail = 0.0;  // probability weight lost to truncation
};

inline mode_amplitudes coherent_fock(std::complex<double> amp, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("coherent_fock: cutoff must be >= 1");
  mode_amplitudes out;
  out.amp.resize(cutoff);
  out.amp[0] = std::exp(-0.5 * std::norm(amp));
  double norm_sq = std::norm(out.amp[0]);
  for (int n = 1; n < cutoff; ++n) {
    out.amp[n] = out.amp[n - 1] * amp / std::sqrt(double(n));
    norm_sq += std::norm(out.amp[n]);
  }
  out.tail = std::max(0.0, 1.0 - norm_sq);
  return out;
}

// One coherent product branch |amp1>_1 |amp2>_2.
struct coherent_branch {
  std::complex<double> amp1;
  std::complex<double> amp2;
};

struct fock_vector {
  int cutoff = 0;
  Eigen::VectorXcd amp;  // (n1, n2) at flat index n1*cutoff + n2
  double tail = 0.0;
};

struct density_matrix {
  int cutoff = 0;
  Eigen::MatrixXcd rho;
  double tail = 0.0;  // worst single-mode truncation tail among the branches
  // branch decomposition the operator was materialized from; kept so later
  // transformations (the second beam splitter) can act exactly on amplitudes
  std::vector<coherent_branch> branches;
  Eigen::MatrixXcd weights;
};

namespace detail {

inline Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

inline double max_branch_intensity(const std::vector<coherent_branch>& branches) {
  double lam = 0.0;
  for (const auto& br : branches)
    lam = std::max({lam, std::norm(br.amp1), std::norm(br.amp2)});
  return lam;
}

}  // namespace detail

// Normalized ECS in the truncated basis (phase already accumulated on mode 2).
inline fock_vector ecs_fock_state(const ecs_params& p, double phi, int cutoff = 0) {
  const std::complex<double> a1 = p.alpha;
  const std::complex<double> a2 = p.k * p.alpha * std::exp(std::complex<double>(0.0, phi));
  if (cutoff == 0)
    cutoff = tail_rule_cutoff(std::max(std::norm(a1), std::norm(a2)));
  const mode_amplitudes m1 = coherent_fock(a1, cutoff);
  const mode_amplitudes m2 = coherent_fock(a2, cutoff);
  const mode_amplitudes m1n = coherent_fock(-a1, cutoff);
  const mode_amplitudes m2n = coherent_fock(-a2, cutoff);

  fock_vector v;
  v.cutoff = cutoff;
  v.amp = normalization(p) * (detail::kron(m1.amp, m2.amp) + detail::kron(m1n.amp, m2n.amp));
  v.tail = std::max({m1.tail, m2.tail, m1n.tail, m2n.tail});
  return v;
}

// rho = V W V^dag over the given coherent branches, W Hermitian.
inline density_matrix from_branches(const std::vector<coherent_branch>& branches,
                                    const Eigen::MatrixXcd& weights, int cutoff = 0) {
  if (branches.empty()) throw std::invalid_argument("from_branches: no branches");
  if (weights.rows() != Eigen::Index(branches.size()) || weights.rows() != weights.cols())
    throw std::invalid_argument("from_branches: weight matrix shape mismatch");
  if (cutoff == 0) cutoff = tail_rule_cutoff(detail::max_branch_intensity(branches));

  const int d = cutoff;
  density_matrix dm;
  dm.cutoff = d;
  dm.branches = branches;
  dm.weights = weights;

  Eigen::MatrixXcd v(d * d, branches.size());
  double tail = 0.0;
  for (std::size_t j = 0; j < branches.size(); ++j) {
    const mode_amplitudes m1 = coherent_fock(branches[j].amp1, d);
    const mode_amplitudes m2 = coherent_fock(branches[j].amp2, d);
    v.col(j) = detail::kron(m1.amp, m2.amp);
    tail = std::max({tail, m1.tail, m2.tail});
  }
  dm.tail = tail;
  dm.rho = v * weights * v.adjoint();
  return dm;
}

/*
 * Reduced sensor-mode operator after phase accumulation and loss.  The
 * two-branch four-mode superposition stays a sum of coherent products, so the
 * environment trace reduces exactly to the 2x2 branch Gram structure
 * N^2 [[1, c], [c, 1]]; only the sensor legs are materialized.
 */
inline density_matrix build_density_matrix(const ecs_params& p, const loss_channel& ch,
                                           double phi, int cutoff = 0) {
  const reduced_state st = apply_loss(p, ch, phi);
  const double n2 = st.norm * st.norm;
  Eigen::MatrixXcd w(2, 2);
  w << n2, n2 * st.coherence, n2 * st.coherence, n2;
  return from_branches({{st.amp1, st.amp2}, {-st.amp1, -st.amp2}}, w, cutoff);
}

// Dense Hermitian eigensolver contract: ascending eigenvalues, orthonormal
// column eigenvectors.
struct eig_result {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

inline eig_result hermitian_eig(Eigen::MatrixXcd a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  eig_result out;
  out.values.resize(n);
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                     reinterpret_cast<lapack_complex_double*>(a.data()), n,
                     out.values.data());
  if (info != 0) throw std::runtime_error("hermitian_eig: zheevd failed");
  out.vectors = std::move(a);
  return out;
}

/*
 * SLD quantum Fisher information of the materialized state.  The generator
 * n_2 is diagonal in the Fock basis, so d(rho)/d(phi) = i [n_2, rho] is exact
 * entrywise; the spectral sum runs over every eigenpair with lam_i + lam_j
 * above eps.
 */
inline double qfi_numeric(const density_matrix& dm, double eps = 1e-12) {
  const int d = dm.cutoff;
  const Eigen::Index dim = dm.rho.rows();

  Eigen::VectorXd n2(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) n2[idx] = double(idx % d);

  Eigen::MatrixXcd drho(dim, dim);
  const std::complex<double> iu(0.0, 1.0);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r)
      drho(r, c) = iu * (n2[r] - n2[c]) * dm.rho(r, c);

  const eig_result eig = hermitian_eig(dm.rho);

  // pairs with both eigenvalues below eps/2 can never clear eps, so matrix
  // elements are only needed against the handful of supported eigenvectors
  std::vector<Eigen::Index> support;
  std::vector<char> in_support(dim, 0);
  for (Eigen::Index i = 0; i < dim; ++i)
    if (eig.values[i] > 0.5 * eps) {
      support.push_back(i);
      in_support[i] = 1;
    }
  if (support.empty()) return 0.0;

  Eigen::MatrixXcd cols(dim, support.size());
  for (std::size_t t = 0; t < support.size(); ++t)
    cols.col(t) = drho * eig.vectors.col(support[t]);
  const Eigen::MatrixXcd mel = eig.vectors.adjoint() * cols;  // <j|drho|i_t>

  double f = 0.0;
  for (std::size_t t = 0; t < support.size(); ++t) {
    const double lam_i = eig.values[support[t]];
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double lam_sum = lam_i + eig.values[j];
      if (lam_sum <= eps) continue;
      const double contrib = 2.0 * std::norm(mel(j, t)) / lam_sum;
      f += contrib;
      if (!in_support[j]) f += contrib;  // the mirrored (j, i_t) ordering
    }
  }
  return f;
}

inline double qfi_numeric(const std::function<density_matrix(double)>& rho_builder,
                          double phi, double eps = 1e-12) {
  return qfi_numeric(rho_builder(phi), eps);
}

struct sz_moments {
  double mean = 0.0;
  double second_moment = 0.0;
  int cutoff = 0;
  double tail = 0.0;
};

// Applies the second 50:50 splitter exactly on the branch amplitudes of the
// pre-splitter state, then takes both S_z moments in the truncated basis.
inline sz_moments observable_moments_numeric(const density_matrix& pre, int cutoff = 0) {
  if (pre.branches.empty())
    throw std::invalid_argument("observable_moments_numeric: state has no branch decomposition");

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::complex<double> iu(0.0, 1.0);
  std::vector<coherent_branch> out_branches;
  out_branches.reserve(pre.branches.size());
  for (const auto& br : pre.branches)
    out_branches.push_back({(br.amp1 + iu * br.amp2) * inv_sqrt2,
                            (br.amp2 + iu * br.amp1) * inv_sqrt2});

  if (cutoff == 0)
    cutoff = tail_rule_cutoff(detail::max_branch_intensity(out_branches));
  const density_matrix post = from_branches(out_branches, pre.weights, cutoff);

  sz_moments out;
  out.cutoff = cutoff;
  out.tail = post.tail;
  const int d = cutoff;
  for (Eigen::Index idx = 0; idx < post.rho.rows(); ++idx) {
    const double sz = 0.5 * (double(idx / d) - double(idx % d));
    const double pop = post.rho(idx, idx).real();
    out.mean += pop * sz;
    out.second_moment += pop * sz * sz;
  }
  return out;
}

}  // namespace ecsense

#endif  // ECSENSE_FOCK_ORACLE_HPP

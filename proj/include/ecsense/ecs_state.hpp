#ifndef ECSENSE_ECS_STATE_HPP
#define ECSENSE_ECS_STATE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

namespace ecsense {

/*
 * Two-mode entangled coherent state N(|a>_1|ka>_2 + |-a>_1|-ka>_2) with
 * complex coherent amplitude a and nonzero real asymmetry ratio k.
 * All closed forms below depend on a only through |a|^2.
 */
struct ecs_params {
  std::complex<double> alpha;
  double k;

  ecs_params(std::complex<double> alpha_, double k_) : alpha(alpha_), k(k_) {
    if (k == 0.0 || !std::isfinite(k))
      throw std::invalid_argument("ecs_params: asymmetry ratio k must be nonzero and finite");
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
      throw std::invalid_argument("ecs_params: alpha must be finite");
  }

  double alpha_sq() const { return std::norm(alpha); }

  // combined intensity scale x = (1+k^2)|a|^2 that controls every overlap
  double intensity() const { return (1.0 + k * k) * std::norm(alpha); }
};

// First and second moments of the mode and total photon numbers.
struct photon_stats {
  double n1 = 0.0;
  double n2 = 0.0;
  double n_total = 0.0;
  double n1_sq = 0.0;
  double n2_sq = 0.0;
  double n_total_sq = 0.0;
  double var_total = 0.0;
};

// <beta|gamma> = exp(-(|beta|^2+|gamma|^2)/2 + conj(beta) gamma)
inline std::complex<double> coherent_overlap(std::complex<double> beta,
                                             std::complex<double> gamma) {
  return std::exp(-0.5 * (std::norm(beta) + std::norm(gamma)) + std::conj(beta) * gamma);
}

// N = [2 + 2 exp(-2(1+k^2)|a|^2)]^(-1/2), between 1/2 (vacuum) and 1/sqrt(2)
inline double normalization(const ecs_params& p) {
  return 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * p.intensity()));
}

inline photon_stats photon_statistics(const ecs_params& p) {
  const double a2 = p.alpha_sq();
  const double k2 = p.k * p.k;
  const double x = p.intensity();
  const double t = std::tanh(x);
  const double sech = 1.0 / std::cosh(x);

  photon_stats st;
  st.n1 = a2 * t;
  st.n2 = k2 * st.n1;            // mode-2 carries k^2 times the mode-1 intensity
  st.n_total = st.n1 + st.n2;
  st.n1_sq = st.n1 + a2 * a2;
  st.n2_sq = st.n2 + (k2 * a2) * (k2 * a2);
  st.n_total_sq = st.n_total + x * x;
  // x tanh(x) + x^2 sech^2(x); the factored form cannot go negative
  st.var_total = x * t + (x * sech) * (x * sech);
  return st;
}

/*
 * Inverts n_bar = x tanh(x), x = (1+k^2)|a|^2, by bracketed bisection.
 * The bracket [max(n_bar, sqrt(n_bar)) - 1, n_bar + 1] always contains the
 * root because x - 1 < x tanh(x) <= x^2.
 */
inline double amplitude_for_mean_photon(double n_bar, double k) {
  if (k == 0.0 || !std::isfinite(k))
    throw std::invalid_argument("amplitude_for_mean_photon: k must be nonzero and finite");
  if (!(n_bar >= 0.0))
    throw std::invalid_argument("amplitude_for_mean_photon: n_bar must be >= 0");
  if (n_bar == 0.0) return 0.0;

  double lo = std::max(std::max(n_bar, std::sqrt(n_bar)) - 1.0, 0.0);
  double hi = n_bar + 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mid * std::tanh(mid) < n_bar ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  return std::sqrt(x / (1.0 + k * k));
}

}  // namespace ecsense

#endif  // ECSENSE_ECS_STATE_HPP

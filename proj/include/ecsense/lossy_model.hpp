#ifndef ECSENSE_LOSSY_MODEL_HPP
#define ECSENSE_LOSSY_MODEL_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ecsense/ecs_state.hpp"
#include "ecsense/lossless_qfi.hpp"

namespace ecsense {

/*
 * Photon loss modeled by one fictitious beam splitter per arm, both sharing
 * the same transmission T = cos^2(gamma/2); the reflected legs go to vacuum
 * environment modes that are traced out.
 */
struct loss_channel {
  double transmission;  // T
  double loss;          // R = 1 - T
  double gamma;         // mixing angle with T = cos^2(gamma/2)

  static loss_channel from_loss(double r) {
    if (!(r >= 0.0 && r <= 1.0))
      throw std::invalid_argument("loss_channel: loss rate must lie in [0,1]");
    return make(1.0 - r, r);
  }

  static loss_channel from_transmission(double t) {
    if (!(t >= 0.0 && t <= 1.0))
      throw std::invalid_argument("loss_channel: transmission must lie in [0,1]");
    return make(t, 1.0 - t);
  }

 private:
  static loss_channel make(double t, double r) {
    return loss_channel{t, r, 2.0 * std::acos(std::sqrt(t))};
  }
};

/*
 * Sensor-mode reduced state after the loss splitters: an equal-weight rank-2
 * mixture of the branch products |amp1>|amp2> and |-amp1>|-amp2> with branch
 * overlap s and environment coherence factor c.  The cross-term coefficient
 * is c itself; anything larger breaks Tr rho = 1.
 */
struct reduced_state {
  std::complex<double> amp1;  // sqrt(T) alpha             (second branch negated)
  std::complex<double> amp2;  // sqrt(T) k alpha e^{i phi}
  double sensor_overlap;      // s = exp(-2 T (1+k^2)|alpha|^2)
  double coherence;           // c = exp(-2 R (1+k^2)|alpha|^2)
  double phi;
  double norm;                // input-state normalization N
};

// Closed-form spectrum of the reduced state.  The two eigenvectors are the
// symmetric/antisymmetric branch combinations (eta = +1/-1): the mixture is
// parity-even, so nothing else can mix.
struct spectral_data {
  double lambda_plus;
  double lambda_minus;
  double eta_plus;
  double eta_minus;
  double m_plus;   // eigenvector normalization [2(1+s)]^(-1/2)
  double m_minus;  // [2(1-s)]^(-1/2), +inf when the branches coincide (T=0)
  double gap;      // Lambda = lambda_plus - lambda_minus
};

inline reduced_state apply_loss(const ecs_params& p, const loss_channel& ch, double phi) {
  const double x = p.intensity();
  reduced_state st;
  st.amp1 = std::sqrt(ch.transmission) * p.alpha;
  st.amp2 = std::sqrt(ch.transmission) * p.k * p.alpha *
            std::exp(std::complex<double>(0.0, phi));
  st.sensor_overlap = std::exp(-2.0 * ch.transmission * x);
  st.coherence = std::exp(-2.0 * ch.loss * x);
  st.phi = phi;
  st.norm = normalization(p);
  return st;
}

namespace detail {

// 1 - exp(-y) without cancellation for small y >= 0
inline double one_minus_exp(double y) { return -std::expm1(-y); }

}  // namespace detail

inline spectral_data spectral_decomposition(const reduced_state& st) {
  const double s = st.sensor_overlap;
  const double c = st.coherence;
  const double n2 = st.norm * st.norm;

  spectral_data sd;
  sd.lambda_plus = n2 * (1.0 + s) * (1.0 + c);
  sd.lambda_minus = n2 * (1.0 - s) * (1.0 - c);
  sd.eta_plus = 1.0;
  sd.eta_minus = -1.0;
  sd.m_plus = 1.0 / std::sqrt(2.0 * (1.0 + s));
  sd.m_minus = 1.0 / std::sqrt(2.0 * (1.0 - s));
  sd.gap = sd.lambda_plus - sd.lambda_minus;
  return sd;
}

/*
 * Mixed-state QFI of the lossy ECS.  With phi-independent eigenvalues the
 * standard two-part sum applies, and the off-diagonal F3 contributions vanish
 * identically: n_2 preserves two-mode parity, so it cannot connect the even
 * and odd eigenvectors.  With s = exp(-2Tx), c = exp(-2Rx), m = T k^2 |a|^2:
 *
 *   lambda_{+,-} = N^2 (1 +- s)(1 +- c)
 *   <n_2>_{+,-}   = m (1 -+ s)/(1 +- s)
 *   <n_2^2>_{+,-} = m^2 + <n_2>_{+,-}
 *
 * and F = sum_{+,-} 4 lambda (<n_2^2> - <n_2>^2).
 */
inline qfi_report qfi_lossy(const ecs_params& p, const loss_channel& ch) {
  const double a2 = p.alpha_sq();
  const double x = p.intensity();
  const double n_bar_in = photon_statistics(p).n_total;

  qfi_report rep;
  rep.terms = qfi_terms{};
  if (ch.transmission == 0.0 || a2 == 0.0 || 2.0 * ch.transmission * x < 1e-300) {
    // all photons leak (vacuum projector) or vacuum input: no phase information
    rep.degenerate = true;
    detail::fill_reference(rep, n_bar_in);
    return rep;
  }

  // evaluate the spectrum at two distinct phases; it must not see phi at all
  const spectral_data sd_a = spectral_decomposition(apply_loss(p, ch, 0.3));
  const spectral_data sd_b = spectral_decomposition(apply_loss(p, ch, 1.1));
  if (std::abs(sd_a.lambda_plus - sd_b.lambda_plus) >
      1e-10 * std::max(sd_a.lambda_plus, 1e-280))
    throw std::logic_error("qfi_lossy: spectrum acquired a phase dependence");

  const double s = std::exp(-2.0 * ch.transmission * x);
  const double c = std::exp(-2.0 * ch.loss * x);
  const double one_m_s = detail::one_minus_exp(2.0 * ch.transmission * x);
  const double one_m_c = detail::one_minus_exp(2.0 * ch.loss * x);
  const double n2 = normalization(p) * normalization(p);
  const double m = ch.transmission * p.k * p.k * a2;

  const double lam_p = n2 * (1.0 + s) * (1.0 + c);
  const double lam_m = n2 * one_m_s * one_m_c;
  const double mean_p = m * one_m_s / (1.0 + s);
  const double mean_m = m * (1.0 + s) / one_m_s;

  qfi_terms& t = *rep.terms;
  t.f1_plus = 4.0 * lam_p * (m * m + mean_p);
  t.f2_plus = 4.0 * lam_p * mean_p * mean_p;
  t.f1_minus = 4.0 * lam_m * (m * m + mean_m);
  t.f2_minus = 4.0 * lam_m * mean_m * mean_m;
  // cross matrix element carries (1 + eta_+ eta_-) - s (eta_+ + eta_-) = 0
  t.f3_plus = 0.0;
  t.f3_minus = 0.0;

  rep.degenerate = (lam_m == 0.0);
  rep.qfi = (t.f1_plus - t.f2_plus) + (t.f1_minus - t.f2_minus) - (t.f3_plus + t.f3_minus);
  detail::fill_reference(rep, n_bar_in);
  return rep;
}

// Lossy QFI at a requested mean photon number of the lossless input state
// (figures and tables are plotted against the input n_bar).
inline qfi_report qfi_lossy_at_mean_photon(double n_bar, double k, double r) {
  const double amp = amplitude_for_mean_photon(n_bar, k);
  qfi_report rep = qfi_lossy(ecs_params(amp, k), loss_channel::from_loss(r));
  detail::fill_reference(rep, n_bar);
  return rep;
}

}  // namespace ecsense

#endif  // ECSENSE_LOSSY_MODEL_HPP

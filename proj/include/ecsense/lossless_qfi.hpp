#ifndef ECSENSE_LOSSLESS_QFI_HPP
#define ECSENSE_LOSSLESS_QFI_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "ecsense/ecs_state.hpp"

namespace ecsense {

// Per-eigenvector pieces of the mixed-state quantum Fisher information sum,
// exposed for inspection when the report comes from the lossy path.
struct qfi_terms {
  double f1_plus = 0.0;
  double f2_plus = 0.0;
  double f1_minus = 0.0;
  double f2_minus = 0.0;
  double f3_plus = 0.0;
  double f3_minus = 0.0;
};

struct qfi_report {
  double qfi = 0.0;
  double delta_phi_min = std::numeric_limits<double>::infinity();  // 1/sqrt(qfi)
  double n_bar = 0.0;
  double sql_qfi = 0.0;         // reference curve F = n_bar
  double heisenberg_qfi = 0.0;  // reference curve F = n_bar^2
  bool degenerate = false;      // lossy case collapsed to a single eigenvector
  std::optional<qfi_terms> terms;
};

namespace detail {

// Variance of the mode-2 photon number, factored so it stays nonnegative.
inline double mode2_variance(double a2, double k) {
  const double k2a2 = k * k * a2;
  const double x = (1.0 + k * k) * a2;
  const double sech = 1.0 / std::cosh(x);
  return k2a2 * std::tanh(x) + (k2a2 * sech) * (k2a2 * sech);
}

inline void fill_reference(qfi_report& rep, double n_bar) {
  rep.n_bar = n_bar;
  rep.sql_qfi = n_bar;
  rep.heisenberg_qfi = n_bar * n_bar;
  rep.delta_phi_min = rep.qfi > 0.0 ? 1.0 / std::sqrt(rep.qfi)
                                    : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/*
 * Pure-state QFI of the phase-encoded ECS, F = 4 Var(n_2).  The value is
 * computed along two independent routes (mode-2 moments, and total-photon
 * moments scaled by (2k/(1+k^2))^2) which must agree; the mode-2 route is
 * returned.
 */
inline qfi_report qfi_pure(const ecs_params& p) {
  const double a2 = p.alpha_sq();
  const double k2 = p.k * p.k;
  const photon_stats st = photon_statistics(p);

  const double route_a = 4.0 * detail::mode2_variance(a2, p.k);
  const double pref = 2.0 * p.k / (1.0 + k2);
  const double route_b = pref * pref * (st.n_total + k2 * st.var_total);
  if (std::isfinite(route_a) && std::isfinite(route_b) &&
      std::abs(route_a - route_b) >
          1e-12 * std::max({std::abs(route_a), std::abs(route_b), 1e-280}))
    throw std::logic_error("qfi_pure: moment routes disagree");

  qfi_report rep;
  rep.qfi = route_a;
  detail::fill_reference(rep, st.n_total);
  return rep;
}

// QFI at a requested total mean photon number; composes the amplitude
// inversion with qfi_pure and reports SQL/Heisenberg references against n_bar.
inline qfi_report qfi_at_mean_photon(double n_bar, double k) {
  const double amp = amplitude_for_mean_photon(n_bar, k);
  qfi_report rep = qfi_pure(ecs_params(amp, k));
  detail::fill_reference(rep, n_bar);
  return rep;
}

/*
 * Large-asymmetry sensitivity reference k / (2 sqrt(<n> + k^2 Var(n))).
 * Note delta_phi_min = (1 + 1/k^2) times this value identically, so the bound
 * is approached from above as k grows, never crossed.  Returns +inf when the
 * radicand vanishes (vacuum input).
 */
inline double asymptotic_bound(const ecs_params& p) {
  const photon_stats st = photon_statistics(p);
  const double radicand = st.n_total + p.k * p.k * st.var_total;
  if (radicand <= 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(p.k) / (2.0 * std::sqrt(radicand));
}

}  // namespace ecsense

#endif  // ECSENSE_LOSSLESS_QFI_HPP

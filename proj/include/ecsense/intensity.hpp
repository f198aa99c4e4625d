#ifndef ECSENSE_INTENSITY_HPP
#define ECSENSE_INTENSITY_HPP

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "ecsense/lossy_model.hpp"

namespace ecsense {

// Moments of the intensity-difference observable S_z = (n_a - n_b)/2 after
// the second 50:50 splitter (i-on-reflection convention).
struct sz_stats {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  double slope = 0.0;  // d<S_z>/d phi
  double phi = 0.0;
};

struct phase_sensitivity {
  double delta_phi = std::numeric_limits<double>::infinity();
  double phi = 0.0;
  double crb = 0.0;          // 1/sqrt(F_Q) for the same state and channel
  bool degenerate = false;   // slope vanished; no first-order phase signal
};

/*
 * The second splitter maps each coherent branch pair to another coherent
 * pair, so both moments reduce to branch-pair expectations.  Weighting the
 * four pairs by the eigen-decomposition collapses to a single factor
 * D = tanh((1+k^2)|a|^2) shared by mean and noise:
 *
 *   <S_z>   = -T k |a|^2 D sin(phi)
 *   <S_z^2> = (T k |a|^2 sin(phi))^2 + [T (1+k^2)|a|^2 / 4] D
 */
inline sz_stats sz_statistics(const ecs_params& p, const loss_channel& ch, double phi) {
  const double a2 = p.alpha_sq();
  const double x = p.intensity();
  const double d = std::tanh(x);
  const double kappa = ch.transmission * p.k * a2;  // fringe amplitude
  const double w = ch.transmission * x / 4.0;
  const double sp = std::sin(phi);

  sz_stats st;
  st.phi = phi;
  st.mean = -kappa * d * sp;
  st.second_moment = kappa * kappa * sp * sp + w * d;
  st.variance = st.second_moment - st.mean * st.mean;
  st.slope = -kappa * d * std::cos(phi);
  return st;
}

// Error-transfer estimate delta_phi = sqrt(Var S_z)/|d<S_z>/d phi|, flagged
// infinite where the slope vanishes (phi = pi/2 extremum of the fringe).
inline phase_sensitivity phase_error(const ecs_params& p, const loss_channel& ch,
                                     double phi) {
  const sz_stats st = sz_statistics(p, ch, phi);
  phase_sensitivity out;
  out.phi = phi;
  const double fq = qfi_lossy(p, ch).qfi;
  out.crb = fq > 0.0 ? 1.0 / std::sqrt(fq) : std::numeric_limits<double>::infinity();
  if (std::abs(st.slope) < 1e-14) {
    out.degenerate = true;
    return out;
  }
  out.delta_phi = std::sqrt(std::max(st.variance, 0.0)) / std::abs(st.slope);
  return out;
}

struct optimal_phase {
  double phi_star;
  double delta_phi_star;
};

// Grid minimizer of phase_error; degenerate points are skipped and exact ties
// resolve to the smallest phi.
inline optimal_phase optimal_phase_error(const ecs_params& p, const loss_channel& ch,
                                         std::span<const double> grid) {
  if (grid.empty())
    throw std::invalid_argument("optimal_phase_error: empty phi grid");

  bool found = false;
  optimal_phase best{0.0, std::numeric_limits<double>::infinity()};
  for (double phi : grid) {
    const sz_stats st = sz_statistics(p, ch, phi);
    if (std::abs(st.slope) < 1e-14) continue;
    const double dp = std::sqrt(std::max(st.variance, 0.0)) / std::abs(st.slope);
    if (!found || dp < best.delta_phi_star ||
        (dp == best.delta_phi_star && phi < best.phi_star)) {
      best = {phi, dp};
      found = true;
    }
  }
  if (!found)
    throw std::domain_error("optimal_phase_error: every grid point is degenerate");
  return best;
}

inline optimal_phase optimal_phase_error(const ecs_params& p, const loss_channel& ch,
                                         const std::vector<double>& grid) {
  return optimal_phase_error(p, ch, std::span<const double>(grid));
}

}  // namespace ecsense

#endif  // ECSENSE_INTENSITY_HPP

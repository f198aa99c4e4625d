#include "ecsense/intensity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ecsense/fock_oracle.hpp"

using namespace ecsense;
using std::numbers::pi;

TEST(SzStatistics, FringeVanishesAtZeroPhase) {
  for (double k : {1.0, 2.0, 5.0}) {
    for (double r : {0.0, 0.3}) {
      const sz_stats st =
          sz_statistics(ecs_params(1.0, k), loss_channel::from_loss(r), 0.0);
      EXPECT_EQ(st.mean, 0.0);
      EXPECT_LT(st.slope, 0.0);  // steepest response right at the dark fringe
    }
  }
}

TEST(SzStatistics, MatchesOracleLossless) {
  const ecs_params p(1.0, 1.0);
  const loss_channel none = loss_channel::from_loss(0.0);
  const sz_stats st = sz_statistics(p, none, pi / 2.0);
  EXPECT_NEAR(st.mean, -0.964027580075817, 1e-12);

  const sz_moments num =
      observable_moments_numeric(build_density_matrix(p, none, pi / 2.0));
  EXPECT_NEAR(st.mean, num.mean, 1e-9);
  EXPECT_NEAR(st.second_moment, num.second_moment, 1e-9);
}

TEST(SzStatistics, MatchesOracleLossy) {
  const ecs_params p(1.0, 2.0);
  const loss_channel ch = loss_channel::from_loss(0.3);
  const sz_stats st = sz_statistics(p, ch, 0.7);
  EXPECT_NEAR(st.mean, -0.901822873024821, 1e-12);
  EXPECT_NEAR(st.second_moment, 1.68835275368753, 1e-12);

  const sz_moments num = observable_moments_numeric(build_density_matrix(p, ch, 0.7));
  EXPECT_NEAR(st.mean, num.mean, 1e-8 * std::abs(st.mean));
  EXPECT_NEAR(st.second_moment, num.second_moment, 1e-8 * st.second_moment);
}

TEST(SzStatistics, OracleSweep) {
  // deterministic spread over the oracle-checkable region
  const struct {
    double a2, k, r, phi;
  } pts[] = {{0.5, 1.0, 0.0, 0.4},  {1.5, 1.5, 0.2, 1.1}, {2.0, 2.0, 0.5, 2.3},
             {0.8, 3.0, 0.6, 0.9},  {1.2, 4.5, 0.1, 2.9}, {0.3, 5.0, 0.4, 1.7}};
  for (const auto& pt : pts) {
    const ecs_params p(std::sqrt(pt.a2), pt.k);
    const loss_channel ch = loss_channel::from_loss(pt.r);
    const sz_stats st = sz_statistics(p, ch, pt.phi);
    const sz_moments num = observable_moments_numeric(build_density_matrix(p, ch, pt.phi));
    const double scale = std::max({std::abs(st.mean), st.second_moment, 1e-6});
    EXPECT_NEAR(st.mean, num.mean, 1e-7 * scale) << "a2=" << pt.a2 << " k=" << pt.k;
    EXPECT_NEAR(st.second_moment, num.second_moment, 1e-7 * scale)
        << "a2=" << pt.a2 << " k=" << pt.k;
  }
}

TEST(SzStatistics, PhiSymmetries) {
  const ecs_params p(1.1, 2.0);
  const loss_channel ch = loss_channel::from_loss(0.25);
  for (double phi : {0.3, 0.9, 1.7, 2.8}) {
    const sz_stats a = sz_statistics(p, ch, phi);
    const sz_stats b = sz_statistics(p, ch, -phi);
    EXPECT_DOUBLE_EQ(a.mean, -b.mean);
    EXPECT_DOUBLE_EQ(a.second_moment, b.second_moment);
    EXPECT_GE(a.variance, -1e-10);
  }
}

TEST(SzStatistics, SlopeMatchesFiniteDifference) {
  const ecs_params p(1.0, 2.0);
  const loss_channel ch = loss_channel::from_loss(0.3);
  for (double phi = 0.1; phi < pi; phi += 0.22) {
    const sz_stats st = sz_statistics(p, ch, phi);
    if (std::abs(st.slope) <= 1e-3) continue;
    const double h = 1e-5;
    const double fd =
        (sz_statistics(p, ch, phi + h).mean - sz_statistics(p, ch, phi - h).mean) /
        (2.0 * h);
    EXPECT_NEAR(st.slope, fd, 1e-6 * std::abs(st.slope)) << "phi=" << phi;
  }
}

TEST(PhaseError, DegenerateAtFringeExtremum) {
  const ecs_params p(1.0, 2.0);
  const loss_channel ch = loss_channel::from_loss(0.0);
  const phase_sensitivity ps = phase_error(p, ch, pi / 2.0);
  EXPECT_TRUE(ps.degenerate);
  EXPECT_TRUE(std::isinf(ps.delta_phi));
}

TEST(PhaseError, CramerRaoOrdering) {
  // swept minimum never undercuts the quantum bound
  const double amp = amplitude_for_mean_photon(2.0, 2.0);
  const ecs_params p(amp, 2.0);
  const loss_channel none = loss_channel::from_loss(0.0);
  double best = std::numeric_limits<double>::infinity();
  double crb = 0.0;
  for (int i = 0; i <= 360; ++i) {
    const double phi = pi * double(i) / 360.0;
    const phase_sensitivity ps = phase_error(p, none, phi);
    crb = ps.crb;
    EXPECT_GE(ps.delta_phi, ps.crb - 1e-9);
    if (!ps.degenerate) best = std::min(best, ps.delta_phi);
  }
  EXPECT_GE(best, crb);
}

TEST(PhaseError, CrbOrderingUnderLoss) {
  const struct {
    double a2, k, r;
  } pts[] = {{0.7, 1.0, 0.2}, {1.3, 2.5, 0.5}, {0.4, 4.0, 0.35}};
  for (const auto& pt : pts) {
    const ecs_params p(std::sqrt(pt.a2), pt.k);
    const loss_channel ch = loss_channel::from_loss(pt.r);
    for (double phi = 0.05; phi < pi; phi += 0.37) {
      const phase_sensitivity ps = phase_error(p, ch, phi);
      if (!ps.degenerate) EXPECT_GE(ps.delta_phi, ps.crb - 1e-9);
    }
  }
}

TEST(OptimalPhaseError, ErrorsAndTieBreak) {
  const ecs_params p(1.0, 2.0);
  const loss_channel ch = loss_channel::from_loss(0.0);

  const std::vector<double> degenerate_grid{pi / 2.0};
  EXPECT_THROW(optimal_phase_error(p, ch, degenerate_grid), std::domain_error);
  EXPECT_THROW(optimal_phase_error(p, ch, std::vector<double>{}), std::invalid_argument);

  // perfectly mirrored candidates: the lower phi wins the tie
  const std::vector<double> sym{-0.7, 0.7};
  const optimal_phase best = optimal_phase_error(p, ch, sym);
  EXPECT_DOUBLE_EQ(best.phi_star, -0.7);
}

TEST(OptimalPhaseError, BestPointOnDenseGrid) {
  // sensitivity improves monotonically toward the dark fringe, so the dense
  // grid bottoms out at its smallest |sin(phi)| point
  const double amp = amplitude_for_mean_photon(2.0, 5.0);
  const ecs_params p(amp, 5.0);
  const loss_channel none = loss_channel::from_loss(0.0);
  std::vector<double> grid(721);
  for (int i = 0; i < 721; ++i) grid[i] = pi * double(i) / 720.0;

  const optimal_phase best = optimal_phase_error(p, none, grid);
  EXPECT_DOUBLE_EQ(best.phi_star, 0.0);
  const double expected = (1.0 + 25.0) / (2.0 * 5.0 * std::sqrt(2.0));
  EXPECT_NEAR(best.delta_phi_star, expected, 1e-9);

  const double crb = phase_error(p, none, 0.3).crb;
  EXPECT_GE(best.delta_phi_star, crb);
}

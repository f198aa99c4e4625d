#include "ecsense/ecs_state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "ecsense/fock_oracle.hpp"

using namespace ecsense;
using cd = std::complex<double>;

TEST(EcsParams, RejectsBadInputs) {
  EXPECT_THROW(ecs_params(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(ecs_params(1.0, std::nan("")), std::invalid_argument);
  EXPECT_THROW(ecs_params(cd(std::nan(""), 0.0), 1.0), std::invalid_argument);
  EXPECT_NO_THROW(ecs_params(0.0, -2.5));
}

TEST(CoherentOverlap, KnownValues) {
  EXPECT_EQ(coherent_overlap(0.0, 0.0), cd(1.0, 0.0));

  // <a|-a> = exp(-2|a|^2)
  const cd sym = coherent_overlap(1.0, -1.0);
  EXPECT_NEAR(sym.real(), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(sym.imag(), 0.0, 1e-15);

  const cd v = coherent_overlap(1.0, cd(0.0, 1.0));
  EXPECT_NEAR(v.real(), 0.198766110346413, 1e-14);
  EXPECT_NEAR(v.imag(), 0.309559875653112, 1e-14);
}

// independent route: sum the truncated Fock series conj(c_n(beta)) c_n(gamma)
TEST(CoherentOverlap, MatchesFockSeries) {
  const cd betas[] = {cd(1.0, 0.0), cd(0.4, -0.9), cd(-1.3, 0.2)};
  const cd gammas[] = {cd(0.0, 1.0), cd(1.1, 0.3), cd(0.5, -0.5)};
  for (cd beta : betas)
    for (cd gamma : gammas) {
      const int d = 40;
      const auto cb = coherent_fock(beta, d);
      const auto cg = coherent_fock(gamma, d);
      cd series = 0.0;
      for (int n = 0; n < d; ++n) series += std::conj(cb.amp[n]) * cg.amp[n];
      const cd closed = coherent_overlap(beta, gamma);
      EXPECT_NEAR(std::abs(closed - series), 0.0, 1e-12);
    }
}

TEST(Normalization, KnownValues) {
  EXPECT_DOUBLE_EQ(normalization(ecs_params(0.0, 1.0)), 0.5);

  // vanishing overlap limit
  EXPECT_NEAR(normalization(ecs_params(std::sqrt(20.0), 1.0)), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(normalization(ecs_params(8.0, 1.0)), 1.0 / std::sqrt(2.0), 1e-12);

  EXPECT_NEAR(normalization(ecs_params(1.0, 1.0)), 0.700718841632615, 1e-14);
}

// N must normalize the explicitly constructed two-mode Fock vector
TEST(Normalization, MatchesFockVector) {
  for (double k : {1.0, 2.0, -1.5}) {
    for (double a2 : {0.3, 1.0, 2.0}) {
      const ecs_params p(std::sqrt(a2), k);
      const fock_vector v = ecs_fock_state(p, 0.0);
      EXPECT_NEAR(v.amp.norm(), 1.0, 1e-11) << "a2=" << a2 << " k=" << k;
    }
  }
}

TEST(Normalization, ConsistencyIdentity) {
  for (double k : {1.0, 0.5, 3.0, 10.0}) {
    for (double a2 = 0.0; a2 <= 4.0; a2 += 0.37) {
      const ecs_params p(std::sqrt(a2), k);
      const double n = normalization(p);
      EXPECT_NEAR(2.0 * n * n * (1.0 + std::exp(-2.0 * p.intensity())), 1.0, 1e-14);
    }
  }
}

TEST(PhotonStatistics, VacuumAndRatio) {
  const photon_stats vac = photon_statistics(ecs_params(0.0, 3.0));
  EXPECT_EQ(vac.n_total, 0.0);
  EXPECT_EQ(vac.n_total_sq, 0.0);
  EXPECT_EQ(vac.var_total, 0.0);

  const photon_stats st = photon_statistics(ecs_params(1.0, 1.0));
  EXPECT_NEAR(st.n1, std::tanh(2.0), 1e-15);
  EXPECT_NEAR(st.n2, 0.964027580075817, 1e-14);

  const photon_stats asym = photon_statistics(ecs_params(1.0, 2.0));
  EXPECT_DOUBLE_EQ(asym.n2 / asym.n1, 4.0);  // exact mode ratio k^2
  EXPECT_DOUBLE_EQ(asym.n_total, asym.n1 + asym.n2);
}

TEST(PhotonStatistics, MomentClosureAndVariance) {
  for (double k : {1.0, 2.0, 5.0}) {
    for (double a2 = 0.1; a2 <= 4.0; a2 += 0.3) {
      const ecs_params p(std::sqrt(a2), k);
      const photon_stats st = photon_statistics(p);
      const double x = p.intensity();
      EXPECT_NEAR(st.n_total_sq, st.n_total + x * x, 1e-12 * st.n_total_sq);
      EXPECT_GE(st.var_total, 0.0);
      EXPECT_NEAR(st.var_total, st.n_total_sq - st.n_total * st.n_total,
                  1e-12 * std::max(1.0, st.n_total_sq));
    }
  }
}

TEST(PhotonStatistics, PhaseInvarianceAndParity) {
  const double phases[] = {0.0, 0.7, 2.1, 4.4, 6.0};
  for (double th : phases) {
    const ecs_params p(std::polar(1.3, th), 2.0);
    const ecs_params ref(1.3, 2.0);
    const photon_stats a = photon_statistics(p);
    const photon_stats b = photon_statistics(ref);
    EXPECT_NEAR(a.n_total, b.n_total, 1e-13);
    EXPECT_NEAR(a.n2_sq, b.n2_sq, 1e-12);
  }
  const photon_stats pos = photon_statistics(ecs_params(0.9, 2.0));
  const photon_stats neg = photon_statistics(ecs_params(0.9, -2.0));
  EXPECT_DOUBLE_EQ(pos.n_total, neg.n_total);
  EXPECT_DOUBLE_EQ(pos.n2_sq, neg.n2_sq);
}

// every moment against the Fock-oracle expectation values
TEST(PhotonStatistics, MatchesFockOracle) {
  for (double k : {1.0, 1.5, 2.0}) {
    for (double a2 : {0.5, 2.0, 4.0}) {
      const ecs_params p(std::sqrt(a2), k);
      const fock_vector v = ecs_fock_state(p, 0.0);
      const int d = v.cutoff;
      double n1 = 0, n2 = 0, n1sq = 0, n2sq = 0, nt = 0, ntsq = 0;
      for (Eigen::Index idx = 0; idx < v.amp.size(); ++idx) {
        const double w = std::norm(v.amp[idx]);
        const double m1 = double(idx / d), m2 = double(idx % d);
        n1 += w * m1;
        n2 += w * m2;
        n1sq += w * m1 * m1;
        n2sq += w * m2 * m2;
        nt += w * (m1 + m2);
        ntsq += w * (m1 + m2) * (m1 + m2);
      }
      const photon_stats st = photon_statistics(p);
      const double tol = 1e-10;
      EXPECT_NEAR(n1, st.n1, tol * std::max(1.0, st.n1));
      EXPECT_NEAR(n2, st.n2, tol * std::max(1.0, st.n2));
      EXPECT_NEAR(n1sq, st.n1_sq, tol * std::max(1.0, st.n1_sq));
      EXPECT_NEAR(n2sq, st.n2_sq, tol * std::max(1.0, st.n2_sq));
      EXPECT_NEAR(nt, st.n_total, tol * std::max(1.0, st.n_total));
      EXPECT_NEAR(ntsq, st.n_total_sq, tol * std::max(1.0, st.n_total_sq));
    }
  }
}

TEST(AmplitudeInversion, KnownValues) {
  EXPECT_EQ(amplitude_for_mean_photon(0.0, 7.0), 0.0);
  EXPECT_THROW(amplitude_for_mean_photon(-1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(amplitude_for_mean_photon(1.0, 0.0), std::invalid_argument);

  // n_bar = 1, k = 10: x tanh x = 1 at x ~ 1.19968
  const double amp1 = amplitude_for_mean_photon(1.0, 10.0);
  EXPECT_NEAR(amp1 * amp1, 0.0118780063391855, 1e-12);
  const double x1 = 101.0 * amp1 * amp1;
  EXPECT_NEAR(x1, 1.19968, 1e-4);
  EXPECT_NEAR(x1 * std::tanh(x1), 1.0, 1e-12);

  // n_bar = 5, k = 1
  const double amp5 = amplitude_for_mean_photon(5.0, 1.0);
  const double x5 = 2.0 * amp5 * amp5;
  EXPECT_NEAR(x5, 5.00045360818391, 1e-10);
  EXPECT_NEAR(x5 * std::tanh(x5), 5.0, 1e-12);
}

TEST(AmplitudeInversion, RoundTripAndMonotone) {
  for (double k : {1.0, 2.0, 10.0}) {
    double prev = -1.0;
    for (double nb = 0.0; nb <= 6.0; nb += 0.25) {
      const double amp = amplitude_for_mean_photon(nb, k);
      EXPECT_NEAR(photon_statistics(ecs_params(amp, k)).n_total, nb, 1e-10);
      EXPECT_GT(amp, prev) << "not monotone at n_bar=" << nb << " k=" << k;
      prev = amp;
    }
  }
}

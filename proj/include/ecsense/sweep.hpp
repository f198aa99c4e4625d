#ifndef ECSENSE_SWEEP_HPP
#define ECSENSE_SWEEP_HPP

#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecsense/fock_oracle.hpp"
#include "ecsense/intensity.hpp"
#include "ecsense/numeric_format.hpp"
#include "ecsense/parallel.hpp"

namespace ecsense {

enum class sweep_kind { qfi_lossless, qfi_lossy, qfi_vs_loss, delta_phi };

inline sweep_kind sweep_kind_from(const std::string& name) {
  if (name == "qfi_lossless") return sweep_kind::qfi_lossless;
  if (name == "qfi_lossy") return sweep_kind::qfi_lossy;
  if (name == "qfi_vs_loss") return sweep_kind::qfi_vs_loss;
  if (name == "delta_phi") return sweep_kind::delta_phi;
  throw std::invalid_argument("unknown sweep kind: " + name);
}

struct sweep_config {
  std::vector<double> k_values{1.0, 2.0, 10.0};
  std::vector<double> r_values{0.0};
  double nbar_min = 0.0;
  double nbar_max = 5.0;
  int nbar_steps = 51;
  double phi_min = 0.0;
  double phi_max = std::numbers::pi;
  int phi_steps = 721;
  int cutoff = 0;  // 0 = tail rule
  int jobs = 1;
  std::string out;  // consumed by the CLI; empty means stdout

  void validate() const {
    if (k_values.empty() || r_values.empty())
      throw std::invalid_argument("sweep_config: k and loss lists must be non-empty");
    for (double k : k_values)
      if (k == 0.0) throw std::invalid_argument("sweep_config: k must be nonzero");
    for (double r : r_values)
      if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument("sweep_config: loss rates must lie in [0,1]");
    if (!(nbar_min >= 0.0) || nbar_min > nbar_max || nbar_steps < 1)
      throw std::invalid_argument("sweep_config: bad n_bar range");
    if (phi_min > phi_max || phi_steps < 1)
      throw std::invalid_argument("sweep_config: bad phi range");
    if (cutoff < 0 || jobs < 1)
      throw std::invalid_argument("sweep_config: cutoff/jobs must be nonnegative");
  }
};

// Grid CSV plus, for delta_phi sweeps, a companion table holding the best
// grid point of every (k, R, n_bar) group.
struct sweep_output {
  std::string grid_csv;
  std::string optimal_csv;
  double max_tail = 0.0;  // worst oracle truncation tail seen
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> v(steps);
  if (steps == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < steps; ++i) v[i] = lo + (hi - lo) * double(i) / double(steps - 1);
  return v;
}

}  // namespace detail

inline sweep_output run_sweep(sweep_kind kind, const sweep_config& cfg) {
  cfg.validate();
  const std::vector<double> nbars =
      detail::linspace(cfg.nbar_min, cfg.nbar_max, cfg.nbar_steps);
  sweep_output out;

  if (kind != sweep_kind::delta_phi) {
    struct point {
      double n_bar, k, r;
    };
    std::vector<point> pts;
    const std::vector<double> rs =
        kind == sweep_kind::qfi_lossless ? std::vector<double>{0.0} : cfg.r_values;
    if (kind == sweep_kind::qfi_vs_loss) {
      for (double k : cfg.k_values)
        for (double nb : nbars)
          for (double r : rs) pts.push_back({nb, k, r});
    } else {
      for (double k : cfg.k_values)
        for (double r : rs)
          for (double nb : nbars) pts.push_back({nb, k, r});
    }

    std::vector<std::string> lines(pts.size());
    std::vector<double> tails(pts.size(), 0.0);
    parallel_for(pts.size(), cfg.jobs, [&](std::size_t i) {
      const auto [nb, k, r] = pts[i];
      const ecs_params p(amplitude_for_mean_photon(nb, k), k);
      const loss_channel ch = loss_channel::from_loss(r);
      const double closed = qfi_lossy(p, ch).qfi;
      const density_matrix dm = build_density_matrix(p, ch, 0.4, cfg.cutoff);
      const double oracle = qfi_numeric(dm);
      tails[i] = dm.tail;
      std::ostringstream os;
      os << fmt12(nb) << ',' << fmt12(k) << ',' << fmt12(r) << ',' << fmt12(closed)
         << ',' << fmt12(oracle) << ',' << fmt12(nb) << ',' << fmt12(nb * nb) << '\n';
      lines[i] = os.str();
    });

    std::string csv = "n_bar,k,R,qfi_closed,qfi_oracle,sql,heisenberg\n";
    for (const auto& l : lines) csv += l;
    for (double t : tails) out.max_tail = std::max(out.max_tail, t);
    out.grid_csv = std::move(csv);
    return out;
  }

  // delta_phi: full (k, R, n_bar, phi) grid, all closed form
  const std::vector<double> phis =
      detail::linspace(cfg.phi_min, cfg.phi_max, cfg.phi_steps);
  const std::string header = "phi,n_bar,k,R,sz_mean,sz_var,slope,delta_phi,crb\n";
  std::string grid = header;
  std::string optimal = header;
  for (double k : cfg.k_values) {
    for (double r : cfg.r_values) {
      const loss_channel ch = loss_channel::from_loss(r);
      for (double nb : nbars) {
        const ecs_params p(amplitude_for_mean_photon(nb, k), k);
        const double fq = qfi_lossy(p, ch).qfi;
        const double crb =
            fq > 0.0 ? 1.0 / std::sqrt(fq) : std::numeric_limits<double>::infinity();
        bool found = false;
        double best_dp = 0.0, best_phi = 0.0;
        std::string best_line;
        for (double phi : phis) {
          const sz_stats st = sz_statistics(p, ch, phi);
          const bool degenerate = std::abs(st.slope) < 1e-14;
          const double dp = degenerate ? std::numeric_limits<double>::infinity()
                                       : std::sqrt(std::max(st.variance, 0.0)) /
                                             std::abs(st.slope);
          std::ostringstream os;
          os << fmt12(phi) << ',' << fmt12(nb) << ',' << fmt12(k) << ',' << fmt12(r)
             << ',' << fmt12(st.mean) << ',' << fmt12(st.variance) << ','
             << fmt12(st.slope) << ',' << fmt12(dp) << ',' << fmt12(crb) << '\n';
          grid += os.str();
          if (!degenerate &&
              (!found || dp < best_dp || (dp == best_dp && phi < best_phi))) {
            found = true;
            best_dp = dp;
            best_phi = phi;
            best_line = os.str();
          }
        }
        if (found) optimal += best_line;
      }
    }
  }
  out.grid_csv = std::move(grid);
  out.optimal_csv = std::move(optimal);
  return out;
}

}  // namespace ecsense

#endif  // ECSENSE_SWEEP_HPP

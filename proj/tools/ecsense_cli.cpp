// Command line front end: reproduces the published tables, emits figure data
// as CSV, and runs the closed-form-vs-oracle verification suite.
//
// Exit status: 0 success, 1 verification or I/O failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "ecsense/ecsense.hpp"
#include "ecsense/parallel.hpp"

namespace {

int write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream os(path, std::ios::binary);
  os << payload;
  if (!os) {
    std::cerr << "ecsense: cannot write " << path << '\n';
    return 1;
  }
  return 0;
}

// sweep JSON config mirrors the flags; flags win on conflict
void apply_config(const std::string& path, ecsense::sweep_config& cfg) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("--config: cannot read " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("--config: ") + e.what());
  }
  if (j.contains("k_list")) cfg.k_values = j["k_list"].get<std::vector<double>>();
  if (j.contains("r_list")) cfg.r_values = j["r_list"].get<std::vector<double>>();
  if (j.contains("nbar_min")) cfg.nbar_min = j["nbar_min"].get<double>();
  if (j.contains("nbar_max")) cfg.nbar_max = j["nbar_max"].get<double>();
  if (j.contains("nbar_steps")) cfg.nbar_steps = j["nbar_steps"].get<int>();
  if (j.contains("phi_min")) cfg.phi_min = j["phi_min"].get<double>();
  if (j.contains("phi_max")) cfg.phi_max = j["phi_max"].get<double>();
  if (j.contains("phi_steps")) cfg.phi_steps = j["phi_steps"].get<int>();
  if (j.contains("cutoff")) cfg.cutoff = j["cutoff"].get<int>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
}

std::string optimal_path(const std::string& grid_path) {
  const auto dot = grid_path.rfind('.');
  if (dot == std::string::npos) return grid_path + ".opt";
  return grid_path.substr(0, dot) + ".opt" + grid_path.substr(dot);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-estimation precision of two-mode entangled coherent states"};
  app.require_subcommand(1);

  // table
  std::string which;
  std::string table_out;
  int table_jobs = ecsense::default_jobs();
  int table_cutoff = 0;
  auto* table = app.add_subcommand("table", "reproduce a published QFI table");
  table->add_option("which", which, "table1 (k=10, lossless) or table2 (k=2, R=0.3)")
      ->required()
      ->check(CLI::IsMember({"table1", "table2"}));
  table->add_option("--out", table_out, "output CSV path (default stdout)");
  table->add_option("--jobs", table_jobs, "worker threads")->check(CLI::PositiveNumber);
  table->add_option("--cutoff", table_cutoff, "Fock cutoff override (0 = tail rule)")
      ->check(CLI::NonNegativeNumber);

  // sweep
  ecsense::sweep_config cfg;
  cfg.jobs = ecsense::default_jobs();
  std::string kind_name;
  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "emit figure data as CSV");
  sweep->add_option("--kind", kind_name, "qfi_lossless|qfi_lossy|qfi_vs_loss|delta_phi")
      ->required()
      ->check(CLI::IsMember({"qfi_lossless", "qfi_lossy", "qfi_vs_loss", "delta_phi"}));
  auto* k_opt = sweep->add_option("--k", cfg.k_values, "asymmetry ratios")->delimiter(',');
  auto* r_opt = sweep->add_option("--loss", cfg.r_values, "photon loss rates")->delimiter(',');
  auto* nmin = sweep->add_option("--nbar-min", cfg.nbar_min);
  auto* nmax = sweep->add_option("--nbar-max", cfg.nbar_max);
  auto* nst = sweep->add_option("--nbar-steps", cfg.nbar_steps)->check(CLI::PositiveNumber);
  auto* pmin = sweep->add_option("--phi-min", cfg.phi_min);
  auto* pmax = sweep->add_option("--phi-max", cfg.phi_max);
  auto* pst = sweep->add_option("--phi-steps", cfg.phi_steps)->check(CLI::PositiveNumber);
  auto* cut = sweep->add_option("--cutoff", cfg.cutoff)->check(CLI::NonNegativeNumber);
  auto* out_opt = sweep->add_option(
      "--out", cfg.out, "grid CSV path; delta_phi also writes a .opt companion CSV");
  sweep->add_option("--jobs", cfg.jobs)->check(CLI::PositiveNumber);
  sweep->add_option("--config", config_path, "JSON config mirroring the flags");

  // verify
  ecsense::verify_options vopts;
  auto* verify = app.add_subcommand("verify", "run the invariant and oracle suite");
  verify->add_option("--tol", vopts.tol, "tolerance for unpinned checks")
      ->check(CLI::PositiveNumber);
  verify->add_option("--samples", vopts.samples, "number of parameter draws")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", vopts.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*table) {
      const auto rows = ecsense::compute_table(which == "table2" ? 2 : 1, table_jobs,
                                               table_cutoff);
      for (const auto& r : rows)
        if (r.tail > ecsense::tail_tol)
          std::cerr << "warning: truncation tail " << ecsense::fmt12(r.tail)
                    << " above " << ecsense::fmt12(ecsense::tail_tol)
                    << " at n_bar=" << ecsense::fmt12(r.n_bar) << '\n';
      return write_output(table_out, ecsense::table_csv(rows));
    }

    if (*sweep) {
      if (!config_path.empty()) {
        ecsense::sweep_config from_file = cfg;
        apply_config(config_path, from_file);
        // command-line flags win over config file values
        if (!*k_opt) cfg.k_values = from_file.k_values;
        if (!*r_opt) cfg.r_values = from_file.r_values;
        if (!*nmin) cfg.nbar_min = from_file.nbar_min;
        if (!*nmax) cfg.nbar_max = from_file.nbar_max;
        if (!*nst) cfg.nbar_steps = from_file.nbar_steps;
        if (!*pmin) cfg.phi_min = from_file.phi_min;
        if (!*pmax) cfg.phi_max = from_file.phi_max;
        if (!*pst) cfg.phi_steps = from_file.phi_steps;
        if (!*cut) cfg.cutoff = from_file.cutoff;
        if (!*out_opt) cfg.out = from_file.out;
      }
      cfg.validate();
      const auto kind = ecsense::sweep_kind_from(kind_name);
      const auto result = ecsense::run_sweep(kind, cfg);
      if (result.max_tail > ecsense::tail_tol)
        std::cerr << "warning: truncation tail " << ecsense::fmt12(result.max_tail)
                  << " above " << ecsense::fmt12(ecsense::tail_tol) << '\n';
      int rc = write_output(cfg.out, result.grid_csv);
      if (rc == 0 && !result.optimal_csv.empty() && !cfg.out.empty())
        rc = write_output(optimal_path(cfg.out), result.optimal_csv);
      return rc;
    }

    // verify
    const ecsense::verify_report rep = ecsense::run_verify(vopts);
    std::cout << rep.text;
    return rep.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ecsense: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ecsense: " << e.what() << '\n';
    return 1;
  }
}

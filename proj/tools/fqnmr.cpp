#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fqnmr/config.hpp"
#include "fqnmr/csv.hpp"
#include "fqnmr/errors.hpp"
#include "fqnmr/figures.hpp"
#include "fqnmr/selfcheck.hpp"
#include "fqnmr/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> sets;
  std::vector<std::string> conventions;
  int threads = -1;
  double resolution = -1.0;
};

void add_common(CLI::App* app, CommonOpts& o) {
  app->add_option("--config", o.config_path,
                  "Config file (default: $FQNMR_CONFIG if set)");
  app->add_option("--out", o.out_dir, "Output directory");
  app->add_option("--set", o.sets, "Override section.key=value (repeatable)");
  app->add_option("--convention", o.conventions,
                  "Convention override key=value, e.g. polarization=paper");
  app->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  app->add_option("--resolution", o.resolution, "Voxel edge in meters");
}

fqnmr::RunConfig resolve_config(const CommonOpts& o) {
  fqnmr::RunConfig cfg;
  std::string path = o.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("FQNMR_CONFIG")) path = env;
  }
  if (!path.empty()) cfg.load_file(path);
  for (const auto& s : o.sets) cfg.set(s);
  for (const auto& c : o.conventions) cfg.set("conventions." + c);
  if (o.threads >= 0) cfg.set("run.threads=" + std::to_string(o.threads));
  if (o.resolution > 0.0) {
    std::ostringstream v;
    v << "run.resolution_m=" << fqnmr::format_number(o.resolution);
    cfg.set(v.str());
  }
  if (!o.out_dir.empty()) cfg.set("run.out_dir=" + o.out_dir);
  return cfg;
}

fs::path prepare_out_dir(const fqnmr::RunConfig& cfg) {
  fs::path dir = cfg.get("run.out_dir");
  fs::create_directories(dir);
  std::ofstream echo(dir / "resolved_config.ini");
  echo << "# fqnmr " << fqnmr::kVersion << "\n";
  echo << "# config_hash=0x" << std::hex << cfg.hash() << std::dec << "\n";
  echo << cfg.echo();
  return dir;
}

std::string hex_hash(const fqnmr::RunConfig& cfg) {
  std::ostringstream out;
  out << "0x" << std::hex << cfg.hash();
  return out.str();
}

void emit_plot_script(const fs::path& dir) {
  std::ofstream py(dir / "plot.py");
  py << R"(#!/usr/bin/env python3
"""Optional quick-look plots for fqnmr CSV output (never required)."""
import sys
import matplotlib.pyplot as plt
import pandas as pd

for path in sys.argv[1:]:
    df = pd.read_csv(path, comment="#")
    cols = list(df.columns)
    fig, ax = plt.subplots()
    if len(cols) >= 2:
        for c in cols[1:]:
            ax.plot(df[cols[0]], df[c], marker="o", label=c)
        ax.set_xlabel(cols[0])
        ax.legend()
        ax.set_xscale("log")
        ax.set_yscale("log")
    fig.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
    print("wrote", path.rsplit(".", 1)[0] + ".png")
)";
}

json result_json(const fqnmr::RunConfig& cfg, const fqnmr::SensitivityResult& r) {
  json j;
  j["version"] = fqnmr::kVersion;
  j["config_hash"] = hex_hash(cfg);
  j["scheme"] = r.scheme == fqnmr::Scheme::ramsey ? "ramsey" : "dd";
  j["rho_min_per_m3"] = r.rho_min;
  j["rho_min_per_cm3"] = r.rho_min_cm3;
  if (r.n_min) j["n_min"] = *r.n_min;
  j["signal_tesla"] = r.signal;
  j["uncertainty_tesla"] = r.uncertainty;
  j["snr_mismatch"] = r.snr_mismatch;
  j["tau_s"] = r.tau;
  if (r.drive) {
    j["drive_current_a"] = r.drive->current;
    j["drive_normalized"] = r.drive->normalized;
  }
  if (r.n_pulses > 0) j["n_pulses"] = r.n_pulses;
  j["bisection_iterations"] = r.bisection_iterations;
  j["bracket_log10"] = r.bracket_log10;
  j["voxel_edge_m"] = r.voxel_edge;
  return j;
}

fqnmr::Table result_table(const fqnmr::RunConfig& cfg,
                          const fqnmr::SensitivityResult& r) {
  fqnmr::Table t;
  t.comments.push_back("fqnmr " + std::string(fqnmr::kVersion));
  t.comments.push_back("config_hash=" + hex_hash(cfg));
  t.header = {"rho_min_per_m3", "rho_min_per_cm3", "n_min",
              "signal_tesla",   "uncertainty_tesla", "snr_mismatch",
              "tau_s",          "drive_current_a",   "n_pulses",
              "bisection_iterations", "bracket_log10", "voxel_edge_m"};
  const double nan = std::nan("");
  t.rows.push_back({r.rho_min, r.rho_min_cm3, r.n_min ? *r.n_min : nan,
                    r.signal, r.uncertainty, r.snr_mismatch, r.tau,
                    r.drive ? r.drive->current : nan,
                    static_cast<double>(r.n_pulses),
                    static_cast<double>(r.bisection_iterations),
                    r.bracket_log10, r.voxel_edge});
  return t;
}

int run_figure(const CommonOpts& opts, const std::string& name) {
  fqnmr::RunConfig cfg = resolve_config(opts);
  const fqnmr::Table table = fqnmr::sweep(cfg, name);
  const fs::path dir = prepare_out_dir(cfg);
  fqnmr::write_csv((dir / (name + ".csv")).string(), table);
  emit_plot_script(dir);
  std::cout << (dir / (name + ".csv")).string() << "\n";
  return 0;
}

int run_query(const CommonOpts& opts, const std::string& kind,
              std::string scheme, int n_pulses, std::string placement,
              double width) {
  fqnmr::RunConfig cfg = resolve_config(opts);
  // command-line flags take precedence over the protocol/sample sections
  if (scheme.empty()) scheme = cfg.get("protocol.scheme");
  if (n_pulses <= 0)
    n_pulses = static_cast<int>(cfg.get_number("protocol.n_pulses"));
  if (placement.empty()) placement = cfg.get("sample.placement");
  if (!(width > 0.0)) width = cfg.get_number("sample.width_m");
  const fqnmr::Scenario sc = cfg.scenario();
  if (scheme == "echo") {
    scheme = "dd";
    n_pulses = 1;
  }
  if (scheme != "ramsey" && scheme != "dd")
    throw fqnmr::ConfigError("scheme must be ramsey, dd or echo");

  fqnmr::SensitivityResult r;
  if (kind == "min-density") {
    const fqnmr::SpinEnsemble ens = fqnmr::bulk_ensemble(sc);
    r = scheme == "ramsey" ? fqnmr::min_density_ramsey(sc, ens)
                           : fqnmr::min_density_dd(sc, ens, n_pulses);
  } else {
    fqnmr::Placement p;
    if (placement == "a") p = fqnmr::Placement::near_edge;
    else if (placement == "b") p = fqnmr::Placement::loop_center;
    else if (placement == "c") p = fqnmr::Placement::side_edge;
    else throw fqnmr::ConfigError("placement must be a, b or c");
    if (!(width > 0.0))
      throw fqnmr::ConfigError("min-number requires a positive width");
    r = fqnmr::min_spin_number(
        sc, p, width,
        scheme == "ramsey" ? fqnmr::Scheme::ramsey : fqnmr::Scheme::dd,
        n_pulses);
  }

  const fs::path dir = prepare_out_dir(cfg);
  const std::string stem = kind == "min-density" ? "min_density" : "min_number";
  fqnmr::write_csv((dir / (stem + ".csv")).string(), result_table(cfg, r));
  std::ofstream js(dir / (stem + ".json"));
  js << result_json(cfg, r).dump(2) << "\n";
  std::cout << result_json(cfg, r).dump(2) << "\n";
  return 0;
}

int run_selfcheck_cmd() {
  bool all_pass = true;
  for (const auto& s : fqnmr::run_selfcheck()) {
    all_pass = all_pass && s.pass;
    std::cout << (s.pass ? "PASS" : "FAIL") << "  " << s.name << "  cases="
              << s.cases << "  max_dev=" << fqnmr::format_number(s.max_dev)
              << "  tol=" << fqnmr::format_number(s.tolerance) << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fqnmr: NMR signal and sensitivity simulator for a "
               "flux-qubit magnetometer"};
  app.set_version_flag("--version", fqnmr::kVersion);
  app.require_subcommand(1);

  CommonOpts opts;

  auto* fig = app.add_subcommand("figure", "Run a built-in sweep plan");
  std::string fig_name;
  fig->add_option("name", fig_name, "One of: fig4 fig5 fig6 fig7 fig8 fig10")
      ->required();
  add_common(fig, opts);

  auto* query = app.add_subcommand("query", "Single sensitivity query");
  std::string kind, scheme, placement;
  int n_pulses = 0;
  double width = 0.0;
  query->add_option("kind", kind, "min-density | min-number")
      ->required()
      ->check(CLI::IsMember({"min-density", "min-number"}));
  query->add_option("--scheme", scheme,
                    "ramsey | echo | dd (default: protocol.scheme)");
  query->add_option("--n", n_pulses, "Pulse blocks for dd");
  query->add_option("--placement", placement, "a | b | c (min-number)");
  query->add_option("--width", width, "Sample width in meters (min-number)");
  add_common(query, opts);

  auto* check = app.add_subcommand("selfcheck",
                                   "Oracle vs closed-form equivalence suites");
  (void)check;

  CLI11_PARSE(app, argc, argv);

  try {
    if (fig->parsed()) return run_figure(opts, fig_name);
    if (query->parsed())
      return run_query(opts, kind, scheme, n_pulses, placement, width);
    return run_selfcheck_cmd();
  } catch (const fqnmr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fqnmr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

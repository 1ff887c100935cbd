#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "triqed/errors.hpp"
#include "triqed/scenario.hpp"
#include "triqed/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"triqed: atom-photon-mirror triple-coupling simulator"};
  app.set_version_flag("--version", std::string(triqed::kVersion));

  std::string config_path, preset_name, out_dir;
  int cutoff_a = 0, cutoff_b = 0;
  double validate_tol = 0;
  bool list_presets = false, no_plots = false;

  app.add_option("--config", config_path, "scenario JSON file");
  app.add_option("--preset", preset_name, "built-in scenario name");
  app.add_option("--out", out_dir, "output directory (overrides scenario)");
  app.add_option("--cutoff-a", cutoff_a, "photon Fock cutoff override");
  app.add_option("--cutoff-b", cutoff_b, "phonon Fock cutoff override");
  app.add_option("--validate-tol", validate_tol,
                 "spectrum-match relative tolerance override");
  app.add_flag("--list-presets", list_presets, "print preset names and exit");
  app.add_flag("--no-plot-scripts", no_plots, "skip gnuplot companion files");

  CLI11_PARSE(app, argc, argv);

  if (list_presets) {
    for (const std::string& name : triqed::preset_names())
      std::cout << name << "\n";
    return triqed::kExitOk;
  }

  try {
    if (config_path.empty() == preset_name.empty())
      throw triqed::ConfigError("pass exactly one of --config or --preset");

    triqed::ScenarioConfig cfg = config_path.empty()
                                     ? triqed::preset(preset_name)
                                     : triqed::load_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cutoff_a > 0) cfg.photon_cutoff = cutoff_a;
    if (cutoff_b > 0) cfg.phonon_cutoff = cutoff_b;
    if (validate_tol > 0) cfg.validate_tol = validate_tol;
    if (no_plots) cfg.emit_plot_scripts = false;

    const triqed::RunResult result = triqed::run_scenario(cfg);
    std::cout << result.message << "\n";
    for (const auto& path : result.outputs) std::cout << "  " << path.string() << "\n";
    return result.exit_code;
  } catch (const triqed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return triqed::kExitConfig;
  } catch (const triqed::PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return triqed::kExitPhysics;
  }
}

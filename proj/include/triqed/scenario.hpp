#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "triqed/dynamics.hpp"
#include "triqed/model.hpp"

namespace triqed {

enum class Mode { spectrum, echo, inversion, photon_dist, validate };
std::string mode_name(Mode m);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;      // malformed configuration
inline constexpr int kExitPhysics = 3;     // physics precondition violated
inline constexpr int kExitValidation = 4;  // acceptance check failed

struct TimeGridSpec {
  double t0 = 0, t1 = 0;
  int points = 0;  // 0 = mode default (echo: 1000 per mirror period; else 2001)
};

// One Loschmidt-echo curve: two branches (j1, na) and (j2, ma) sharing the
// mirror coherent state |beta>.
struct EchoPair {
  int j1 = 1, na = 0;
  int j2 = 2, ma = 0;
  Complex beta = 0.0;
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::thermal;
  double temperature = 0;  // mirror (and thermal-field) temperature
  int n0 = 0;              // fock field occupation
  Complex alpha = 0.0;     // coherent field amplitude
  // custom: explicit (i, j) -> weight map, normalized on load
  std::map<std::pair<int, int>, double> custom;
};

// Closed-form level table export plus its dense cross-check.
struct ExactLevelsSpec {
  bool enabled = false;
  int na_max = 2;
  int nb_max = 3;
};

struct ScenarioConfig {
  Mode mode = Mode::validate;
  std::string preset;  // provenance note for the manifest; empty for files
  CouplingSet couplings;
  int photon_cutoff = 8;
  int phonon_cutoff = 60;

  TimeGridSpec time_grid;                // echo / inversion / photon-dist
  std::vector<double> l_values;          // spectrum: excitation manifolds
  std::vector<double> omega_e_grid;      // spectrum: sweep values
  ExactLevelsSpec exact_levels;          // spectrum: closed-form table
  std::vector<EchoPair> echo_pairs;      // echo
  EnsembleSpec ensemble;                 // inversion / photon-dist
  int n_max = 8;                         // photon-dist rows

  std::filesystem::path out_dir = "out";
  bool emit_plot_scripts = true;
  double validate_tol = 1e-6;  // spectrum-match tolerance in validate mode
};

// Parses the JSON scenario format. Unknown keys, wrong types, and missing
// required fields throw ConfigError with a line-anchored message; `origin` is
// the file name used in those messages.
ScenarioConfig parse_config_text(const std::string& text, const std::string& origin);
ScenarioConfig load_config_file(const std::filesystem::path& path);

std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> outputs;  // files written, manifest last
  std::string message;                         // one-line outcome summary
};

// Executes the scenario and writes CSV outputs, optional plot scripts, and a
// manifest echoing every input needed to reproduce the numbers. Throws
// ConfigError / PhysicsError for the corresponding exit classes; validation
// failures are reported through exit_code instead.
RunResult run_scenario(const ScenarioConfig& cfg);

}  // namespace triqed

#include "triqed/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "triqed/decoherence.hpp"
#include "triqed/errors.hpp"
#include "triqed/exact.hpp"
#include "triqed/io_util.hpp"
#include "triqed/oracle.hpp"
#include "triqed/spinorbit.hpp"
#include "triqed/validate.hpp"
#include "triqed/version.hpp"

namespace triqed {

using nlohmann::json;

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::spectrum: return "spectrum";
    case Mode::echo: return "echo";
    case Mode::inversion: return "inversion";
    case Mode::photon_dist: return "photon-dist";
    case Mode::validate: return "validate";
  }
  return "?";
}

namespace {

// ----------------------------------------------------------------- parsing

struct Ctx {
  const std::string& text;
  const std::string& origin;
};

int line_of_byte(const std::string& text, size_t byte) {
  int line = 1;
  for (size_t k = 0; k < byte && k < text.size(); ++k)
    if (text[k] == '\n') ++line;
  return line;
}

// Best-effort anchor: line of the first occurrence of the quoted key.
int line_of_key(const Ctx& ctx, const std::string& key) {
  const size_t pos = ctx.text.find("\"" + key + "\"");
  return pos == std::string::npos ? 1 : line_of_byte(ctx.text, pos);
}

[[noreturn]] void fail_at(const Ctx& ctx, int line, const std::string& msg) {
  throw ConfigError(ctx.origin + ":" + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail_key(const Ctx& ctx, const std::string& key,
                           const std::string& msg) {
  fail_at(ctx, line_of_key(ctx, key), msg);
}

void reject_unknown(const Ctx& ctx, const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      fail_key(ctx, item.key(),
               "unknown key \"" + item.key() + "\" in " + where);
}

double get_num(const Ctx& ctx, const json& obj, const std::string& key) {
  if (!obj.contains(key)) fail_at(ctx, 1, "missing required key \"" + key + "\"");
  if (!obj[key].is_number())
    fail_key(ctx, key, "\"" + key + "\" must be a number");
  return obj[key].get<double>();
}

double get_num_or(const Ctx& ctx, const json& obj, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    fail_key(ctx, key, "\"" + key + "\" must be a number");
  return obj[key].get<double>();
}

int get_int(const Ctx& ctx, const json& obj, const std::string& key,
            int fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail_at(ctx, 1, "missing required key \"" + key + "\"");
    return fallback;
  }
  if (!obj[key].is_number_integer())
    fail_key(ctx, key, "\"" + key + "\" must be an integer");
  return obj[key].get<int>();
}

std::string get_str(const Ctx& ctx, const json& obj, const std::string& key,
                    bool required, const std::string& fallback = "") {
  if (!obj.contains(key)) {
    if (required) fail_at(ctx, 1, "missing required key \"" + key + "\"");
    return fallback;
  }
  if (!obj[key].is_string())
    fail_key(ctx, key, "\"" + key + "\" must be a string");
  return obj[key].get<std::string>();
}

Mode parse_mode(const Ctx& ctx, const std::string& s) {
  if (s == "spectrum") return Mode::spectrum;
  if (s == "echo") return Mode::echo;
  if (s == "inversion") return Mode::inversion;
  if (s == "photon-dist") return Mode::photon_dist;
  if (s == "validate") return Mode::validate;
  fail_key(ctx, "mode",
           "unknown mode \"" + s +
               "\" (expected spectrum, echo, inversion, photon-dist, or "
               "validate)");
}

CouplingSet parse_couplings(const Ctx& ctx, const json& root) {
  const bool has_c = root.contains("couplings");
  const bool has_raw = root.contains("raw");
  if (has_c && has_raw)
    fail_key(ctx, "raw", "\"couplings\" and \"raw\" are mutually exclusive");
  if (has_raw) {
    const json& r = root["raw"];
    if (!r.is_object()) fail_key(ctx, "raw", "\"raw\" must be an object");
    reject_unknown(ctx, r, "\"raw\"",
                   {"omega0", "omegaM", "omega_e", "mirror_mass",
                    "cavity_length", "atom_position", "dipole_moment",
                    "mode_volume", "temperature"});
    RawPhysicalParams p;
    p.omega0 = get_num(ctx, r, "omega0");
    p.omegaM = get_num(ctx, r, "omegaM");
    p.omega_e = get_num(ctx, r, "omega_e");
    p.mirror_mass = get_num(ctx, r, "mirror_mass");
    p.cavity_length = get_num(ctx, r, "cavity_length");
    p.atom_position = get_num(ctx, r, "atom_position");
    p.dipole_moment = get_num(ctx, r, "dipole_moment");
    p.mode_volume = get_num(ctx, r, "mode_volume");
    p.temperature = get_num_or(ctx, r, "temperature", 0.0);
    return derive_couplings(p);
  }
  if (!has_c)
    fail_at(ctx, 1, "a \"couplings\" or \"raw\" block is required for this mode");
  const json& cj = root["couplings"];
  if (!cj.is_object())
    fail_key(ctx, "couplings", "\"couplings\" must be an object");
  reject_unknown(ctx, cj, "\"couplings\"",
                 {"omega0", "omegaM", "omega_e", "g", "xi", "eta"});
  const std::string units = get_str(ctx, root, "units", true);
  if (units != "SI" && units != "omegaM=1")
    fail_key(ctx, "units", "\"units\" must be \"SI\" or \"omegaM=1\"");
  const UnitSystem us =
      units == "SI" ? UnitSystem::si : UnitSystem::dimensionless;
  const double omegaM =
      us == UnitSystem::si ? get_num(ctx, cj, "omegaM")
                           : get_num_or(ctx, cj, "omegaM", 1.0);
  return CouplingSet::with_frequencies(
      us, get_num(ctx, cj, "omega0"), omegaM, get_num(ctx, cj, "omega_e"),
      get_num_or(ctx, cj, "g", 0.0), get_num_or(ctx, cj, "xi", 0.0),
      get_num_or(ctx, cj, "eta", 0.0));
}

std::vector<double> parse_number_array(const Ctx& ctx, const json& arr,
                                       const std::string& key) {
  std::vector<double> out;
  for (const json& v : arr) {
    if (!v.is_number())
      fail_key(ctx, key, "\"" + key + "\" must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<double> parse_grid(const Ctx& ctx, const json& g,
                               const std::string& key) {
  if (g.is_array()) return parse_number_array(ctx, g, key);
  if (!g.is_object())
    fail_key(ctx, key, "\"" + key + "\" must be an array or {start, stop, points}");
  reject_unknown(ctx, g, "\"" + key + "\"", {"start", "stop", "points"});
  const double start = get_num(ctx, g, "start");
  const double stop = get_num(ctx, g, "stop");
  const int points = get_int(ctx, g, "points", 0, true);
  if (points < 2) fail_key(ctx, key, "grid needs at least 2 points");
  std::vector<double> out(static_cast<size_t>(points));
  for (int k = 0; k < points; ++k)
    out[size_t(k)] = start + (stop - start) * k / (points - 1);
  return out;
}

EnsembleSpec parse_ensemble(const Ctx& ctx, const json& e) {
  if (!e.is_object())
    fail_key(ctx, "ensemble", "\"ensemble\" must be an object");
  reject_unknown(ctx, e, "\"ensemble\"",
                 {"kind", "temperature", "n0", "alpha_re", "alpha_im",
                  "weights"});
  EnsembleSpec spec;
  const std::string kind = get_str(ctx, e, "kind", true);
  if (kind == "thermal") {
    spec.kind = EnsembleKind::thermal;
    spec.temperature = get_num(ctx, e, "temperature");
  } else if (kind == "fock") {
    spec.kind = EnsembleKind::fock;
    spec.n0 = get_int(ctx, e, "n0", 0, true);
    spec.temperature = get_num(ctx, e, "temperature");
  } else if (kind == "coherent") {
    spec.kind = EnsembleKind::coherent;
    spec.alpha = Complex(get_num(ctx, e, "alpha_re"),
                         get_num_or(ctx, e, "alpha_im", 0.0));
    spec.temperature = get_num(ctx, e, "temperature");
  } else if (kind == "custom") {
    spec.kind = EnsembleKind::custom;
    if (!e.contains("weights") || !e["weights"].is_object())
      fail_key(ctx, "weights",
               "custom ensemble needs a \"weights\" object {\"i,j\": w}");
    for (const auto& item : e["weights"].items()) {
      const std::string& k = item.key();
      const size_t comma = k.find(',');
      int i = -1, j = -1;
      try {
        if (comma != std::string::npos) {
          i = std::stoi(k.substr(0, comma));
          j = std::stoi(k.substr(comma + 1));
        }
      } catch (const std::exception&) {
      }
      if (i < 0 || j < 0)
        fail_key(ctx, "weights",
                 "weight key \"" + k + "\" is not of the form \"i,j\"");
      if (!item.value().is_number())
        fail_key(ctx, "weights", "weight values must be numbers");
      spec.custom[{i, j}] = item.value().get<double>();
    }
    if (spec.custom.empty())
      fail_key(ctx, "weights", "custom ensemble weights are empty");
  } else {
    fail_key(ctx, "kind",
             "unknown ensemble kind \"" + kind +
                 "\" (expected thermal, fock, coherent, or custom)");
  }
  return spec;
}

// ----------------------------------------------------------------- running

double period_2pi(const CouplingSet& c) { return 2.0 * M_PI / c.omegaM; }

RealVector resolve_times(const ScenarioConfig& cfg, Mode mode) {
  TimeGridSpec g = cfg.time_grid;
  if (!(g.t1 > g.t0)) {
    if (mode == Mode::echo) {
      g.t0 = 0;
      g.t1 = 2.0 * period_2pi(cfg.couplings);
    } else {
      throw ConfigError("time_grid with t1 > t0 is required for mode " +
                        mode_name(mode));
    }
  }
  int points = g.points;
  if (points == 0)
    points = mode == Mode::echo
                 ? int(std::lround((g.t1 - g.t0) / period_2pi(cfg.couplings) *
                                   1000.0)) +
                       1
                 : 2001;
  if (points < 2) throw ConfigError("time_grid needs at least 2 points");
  return time_grid(g.t0, g.t1, points);
}

json couplings_json(const CouplingSet& c) {
  json j;
  j["units"] = c.units == UnitSystem::si ? "SI" : "omegaM=1";
  j["omega0"] = c.omega0;
  j["omegaM"] = c.omegaM;
  j["omega_e"] = c.omega_e;
  j["g"] = c.g;
  j["xi"] = c.xi;
  j["eta"] = c.eta;
  j["Delta"] = c.Delta;
  j["kappa"] = c.kappa;
  j["delta_so"] = c.delta_so;
  j["Omega_half"] = c.Omega_half;
  if (c.eta_prime != 0) j["eta_prime"] = c.eta_prime;
  if (c.epsilon_field != 0) j["epsilon_field"] = c.epsilon_field;
  return j;
}

json time_grid_json(const RealVector& times) {
  json j;
  j["t0"] = times(0);
  j["t1"] = times(times.size() - 1);
  j["points"] = int(times.size());
  return j;
}

InitialEnsemble build_ensemble(const CouplingSet& c, const EnsembleSpec& spec) {
  switch (spec.kind) {
    case EnsembleKind::thermal:
      return ensemble_thermal(c, spec.temperature);
    case EnsembleKind::fock:
      return ensemble_fock(c, spec.n0, spec.temperature);
    case EnsembleKind::coherent:
      return ensemble_coherent(c, spec.alpha, spec.temperature);
    case EnsembleKind::custom: {
      int rows = 0, cols = 0;
      for (const auto& [ij, w] : spec.custom) {
        rows = std::max(rows, ij.first + 1);
        cols = std::max(cols, ij.second + 1);
        if (!(w >= 0)) throw ConfigError("ensemble weights must be >= 0");
      }
      Eigen::MatrixXd w = Eigen::MatrixXd::Zero(rows, cols);
      for (const auto& [ij, wv] : spec.custom) w(ij.first, ij.second) = wv;
      return ensemble_custom(w);
    }
  }
  throw ConfigError("unreachable ensemble kind");
}

json ensemble_json(const EnsembleSpec& spec, const InitialEnsemble& ens) {
  json j;
  switch (spec.kind) {
    case EnsembleKind::thermal: j["kind"] = "thermal"; break;
    case EnsembleKind::fock: j["kind"] = "fock"; break;
    case EnsembleKind::coherent: j["kind"] = "coherent"; break;
    case EnsembleKind::custom: j["kind"] = "custom"; break;
  }
  if (spec.kind != EnsembleKind::custom) j["temperature"] = spec.temperature;
  if (spec.kind == EnsembleKind::fock) j["n0"] = spec.n0;
  if (spec.kind == EnsembleKind::coherent) {
    j["alpha_re"] = spec.alpha.real();
    j["alpha_im"] = spec.alpha.imag();
  }
  j["tail_mass"] = ens.tail_mass;
  j["field_states"] = int(ens.weights.rows());
  j["mirror_states"] = int(ens.weights.cols());
  if (spec.kind == EnsembleKind::custom) {
    json w = json::object();
    for (int i = 0; i < ens.weights.rows(); ++i)
      for (int jj = 0; jj < ens.weights.cols(); ++jj)
        if (ens.weights(i, jj) != 0)
          w[std::to_string(i) + "," + std::to_string(jj)] = ens.weights(i, jj);
    j["weights"] = w;
  }
  return j;
}

std::string plot_preamble(const std::string& title) {
  return "set datafile separator ','\nset key outside\nset grid\nset title '" +
         title + "'\n";
}

struct ModeOutput {
  std::vector<std::string> files;  // relative to out_dir
  json manifest_extra;
  std::string message;
  int exit_code = kExitOk;
};

ModeOutput run_spectrum_mode(const ScenarioConfig& cfg) {
  ModeOutput out;
  const CouplingSet& c = cfg.couplings;
  if (!cfg.exact_levels.enabled && cfg.l_values.empty())
    throw ConfigError(
        "spectrum mode needs \"exact_levels\" and/or \"l_values\"");

  if (cfg.exact_levels.enabled) {
    std::vector<std::vector<std::string>> rows;
    std::vector<double> closed;
    for (int j = 1; j <= 2; ++j)
      for (int na = 0; na <= cfg.exact_levels.na_max; ++na)
        for (int nb = 0; nb <= cfg.exact_levels.nb_max; ++nb) {
          const DressedLevel lvl = dressed_level(c, j, na, nb);
          closed.push_back(lvl.energy);
          rows.push_back({std::to_string(j), std::to_string(na),
                          std::to_string(nb), format_g17(lvl.energy),
                          format_g17(lvl.alpha), format_g17(lvl.theta),
                          format_g17(lvl.r_na)});
        }
    write_csv(cfg.out_dir / "exact_levels.csv",
              {"j", "na", "nb", "energy", "alpha", "theta", "R_na"}, rows);
    out.files.push_back("exact_levels.csv");

    const HilbertDims dims(cfg.photon_cutoff, cfg.phonon_cutoff);
    const EigenSystem es = dense_eigensystem(build_full_hamiltonian(c, dims));
    const std::vector<bool> interior = interior_levels(es, dims);
    std::vector<double> numeric;
    for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k)
      if (interior[size_t(k)]) numeric.push_back(es.eigenvalues(k));
    const MatchReport rep = spectrum_match(closed, numeric, cfg.validate_tol);
    json check;
    check["levels"] = int(closed.size());
    check["matched"] = rep.matched;
    check["unmatched_closed"] = int(rep.unmatched_closed.size());
    check["max_rel_err"] = rep.max_rel_err;
    check["rel_tol"] = cfg.validate_tol;
    out.manifest_extra["exact_levels"] = {
        {"na_max", cfg.exact_levels.na_max},
        {"nb_max", cfg.exact_levels.nb_max},
        {"dense_check", check}};
    if (!rep.unmatched_closed.empty())
      throw PhysicsError(
          "closed-form levels failed the dense cross-check (" +
              std::to_string(rep.unmatched_closed.size()) +
              " unmatched); raise the cutoffs or shrink na_max/nb_max",
          rep.max_rel_err);
    if (cfg.emit_plot_scripts) {
      write_text_file(cfg.out_dir / "exact_levels.gp",
                      plot_preamble("dressed levels") +
                          "set xlabel 'nb'\nset ylabel 'energy'\n"
                          "plot 'exact_levels.csv' every ::1 using 3:4 with "
                          "points pt 7 title 'E(j,na,nb)'\n");
      out.files.push_back("exact_levels.gp");
    }
  }

  if (!cfg.l_values.empty()) {
    std::vector<double> grid = cfg.omega_e_grid;
    if (grid.empty()) grid.push_back(c.omega_e);
    RealVector gv(Eigen::Index(grid.size()));
    for (size_t k = 0; k < grid.size(); ++k) gv(Eigen::Index(k)) = grid[k];
    std::vector<std::string> plot_lines;
    for (double l : cfg.l_values) {
      const std::vector<ScanRow> scan = spectrum_scan(c, l, gv);
      std::vector<std::vector<std::string>> rows;
      for (const ScanRow& r : scan)
        rows.push_back({format_g17(r.l), format_g17(r.m),
                        format_g17(r.omega_e), format_g17(r.e_plus),
                        r.singleton ? "" : format_g17(r.e_minus),
                        format_g17(r.g_lm),
                        r.singleton ? "" : format_g17(r.theta),
                        r.singleton ? "1" : "0"});
      const std::string name = "blocks_l" + format_g17(l) + ".csv";
      write_csv(cfg.out_dir / name,
                {"l", "m", "omega_e", "E_plus", "E_minus", "g_lm", "theta",
                 "singleton"},
                rows);
      out.files.push_back(name);
      plot_lines.push_back("'" + name +
                           "' every ::1 using 3:4 with points pt 6 title 'l=" +
                           format_g17(l) + " E+'");
      plot_lines.push_back("'" + name +
                           "' every ::1 using 3:5 with points pt 4 title 'l=" +
                           format_g17(l) + " E-'");
    }
    out.manifest_extra["l_values"] = cfg.l_values;
    out.manifest_extra["omega_e_grid"] = grid;
    if (cfg.emit_plot_scripts) {
      std::string gp = plot_preamble("block spectrum") +
                       "set xlabel 'omega_e'\nset ylabel 'energy'\nplot ";
      for (size_t k = 0; k < plot_lines.size(); ++k)
        gp += (k ? ", \\\n     " : "") + plot_lines[k];
      gp += "\n";
      write_text_file(cfg.out_dir / "blocks.gp", gp);
      out.files.push_back("blocks.gp");
    }
  }

  out.message = "spectrum tables written (" + std::to_string(out.files.size()) +
                " files)";
  return out;
}

ModeOutput run_echo_mode(const ScenarioConfig& cfg) {
  ModeOutput out;
  const CouplingSet& c = cfg.couplings;
  if (cfg.echo_pairs.empty())
    throw ConfigError("echo mode needs a non-empty \"echo_pairs\" array");
  const RealVector times = resolve_times(cfg, Mode::echo);

  std::vector<EchoSpec> specs;
  for (const EchoPair& p : cfg.echo_pairs)
    specs.push_back(make_echo_spec(c, p.j1, p.na, p.j2, p.ma, p.beta));
  const std::vector<TimeSeries> series = echo_series(c, specs, times);

  json pairs = json::array();
  for (size_t k = 0; k < specs.size(); ++k) {
    const EchoSpec& s = specs[k];
    const std::string name = "echo_b" + std::to_string(s.j1) + "n" +
                             std::to_string(s.na) + "_b" +
                             std::to_string(s.j2) + "m" + std::to_string(s.ma) +
                             ".csv";
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index t = 0; t < times.size(); ++t)
      rows.push_back(
          {format_g17(series[k].times(t)), format_g17(series[k].values(t))});
    write_csv(cfg.out_dir / name, {"t", "LE"}, rows);
    out.files.push_back(name);
    json pj;
    pj["j1"] = s.j1;
    pj["na"] = s.na;
    pj["j2"] = s.j2;
    pj["ma"] = s.ma;
    pj["beta_re"] = s.beta.real();
    pj["beta_im"] = s.beta.imag();
    pj["delta_echo"] = s.delta_echo;
    pj["file"] = name;
    pairs.push_back(pj);
  }
  out.manifest_extra["echo_pairs"] = pairs;
  out.manifest_extra["time_grid"] = time_grid_json(times);

  if (cfg.emit_plot_scripts) {
    std::string gp = plot_preamble("Loschmidt echo") +
                     "set xlabel 't'\nset ylabel 'LE(t)'\nset yrange [0:1.05]\nplot ";
    for (size_t k = 0; k < out.files.size(); ++k)
      gp += (k ? ", \\\n     " : "") + ("'" + out.files[k] +
            "' every ::1 using 1:2 with lines title '" + series[k].label + "'");
    gp += "\n";
    write_text_file(cfg.out_dir / "echo.gp", gp);
    out.files.push_back("echo.gp");
  }
  out.message =
      "wrote " + std::to_string(specs.size()) + " echo series, period " +
      format_g17(period_2pi(c));
  return out;
}

ModeOutput run_inversion_mode(const ScenarioConfig& cfg) {
  ModeOutput out;
  const CouplingSet& c = cfg.couplings;
  const RealVector times = resolve_times(cfg, Mode::inversion);
  const InitialEnsemble ens = build_ensemble(c, cfg.ensemble);
  const TimeSeries w = inversion_series(c, ens, times);

  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index t = 0; t < times.size(); ++t)
    rows.push_back({format_g17(w.times(t)), format_g17(w.values(t))});
  write_csv(cfg.out_dir / "inversion.csv", {"t", "W"}, rows);
  out.files.push_back("inversion.csv");
  out.manifest_extra["ensemble"] = ensemble_json(cfg.ensemble, ens);
  out.manifest_extra["time_grid"] = time_grid_json(times);
  if (const auto adv = rwa_advisory(c)) out.manifest_extra["advisory"] = *adv;

  if (cfg.emit_plot_scripts) {
    write_text_file(cfg.out_dir / "inversion.gp",
                    plot_preamble("population inversion") +
                        "set xlabel 't'\nset ylabel 'W(t)'\nset yrange "
                        "[-1.05:1.05]\nplot 'inversion.csv' every ::1 using "
                        "1:2 with lines title 'W'\n");
    out.files.push_back("inversion.gp");
  }
  out.message = "wrote inversion series (" + std::to_string(times.size()) +
                " points, ensemble tail " + format_g17(ens.tail_mass) + ")";
  return out;
}

ModeOutput run_photon_mode(const ScenarioConfig& cfg) {
  ModeOutput out;
  const CouplingSet& c = cfg.couplings;
  if (cfg.n_max < 0) throw ConfigError("n_max must be >= 0");
  const RealVector times = resolve_times(cfg, Mode::photon_dist);
  const InitialEnsemble ens = build_ensemble(c, cfg.ensemble);
  const Eigen::MatrixXd p = photon_distribution_series(c, ens, cfg.n_max, times);

  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index t = 0; t < times.size(); ++t)
    for (int n = 0; n <= cfg.n_max; ++n)
      rows.push_back({format_g17(times(t)), std::to_string(n),
                      format_g17(p(n, t))});
  write_csv(cfg.out_dir / "photon_dist.csv", {"t", "n", "p_n"}, rows);
  out.files.push_back("photon_dist.csv");
  out.manifest_extra["ensemble"] = ensemble_json(cfg.ensemble, ens);
  out.manifest_extra["time_grid"] = time_grid_json(times);
  out.manifest_extra["n_max"] = cfg.n_max;
  if (const auto adv = rwa_advisory(c)) out.manifest_extra["advisory"] = *adv;

  if (cfg.emit_plot_scripts) {
    write_text_file(
        cfg.out_dir / "photon_dist.gp",
        plot_preamble("photon number distribution") +
            "set xlabel 't'\nset ylabel 'p_n(t)'\n"
            "nmax = " + std::to_string(cfg.n_max) + "\n"
            "plot for [k=0:nmax] 'photon_dist.csv' every ::1 using "
            "(column(2)==k?column(1):NaN):3 with lines title sprintf('n=%d', "
            "k)\n");
    out.files.push_back("photon_dist.gp");
  }
  out.message = "wrote photon distribution (n <= " + std::to_string(cfg.n_max) +
                ", " + std::to_string(times.size()) + " points)";
  return out;
}

ModeOutput run_validate_mode(const ScenarioConfig& cfg) {
  ModeOutput out;
  ValidationOptions opts;
  opts.spectrum_rel_tol = cfg.validate_tol;
  const std::vector<CheckResult> results = run_acceptance_suite(opts);

  json arr = json::array();
  int passed = 0;
  for (const CheckResult& r : results) {
    json j;
    j["name"] = r.name;
    j["tolerance"] = r.tolerance;
    j["achieved"] = r.achieved;
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    arr.push_back(j);
    passed += r.pass ? 1 : 0;
  }
  write_text_file(cfg.out_dir / "validation.json", arr.dump(2) + "\n");
  out.files.push_back("validation.json");
  out.manifest_extra["checks_passed"] = passed;
  out.manifest_extra["checks_total"] = int(results.size());
  out.manifest_extra["spectrum_rel_tol"] = cfg.validate_tol;
  out.exit_code = all_passed(results) ? kExitOk : kExitValidation;
  out.message = std::to_string(passed) + "/" +
                std::to_string(results.size()) + " acceptance checks passed";
  return out;
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin) {
  Ctx ctx{text, origin};
  json root;
  try {
    root = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ":" +
                      std::to_string(line_of_byte(text, e.byte)) + ": " +
                      e.what());
  }
  if (!root.is_object()) fail_at(ctx, 1, "top-level JSON object expected");
  reject_unknown(ctx, root, "the scenario",
                 {"mode", "units", "couplings", "raw", "photon_cutoff",
                  "phonon_cutoff", "time_grid", "l_values", "omega_e_grid",
                  "exact_levels", "echo_pairs", "ensemble", "n_max", "out",
                  "plot_scripts", "validate_tol"});

  ScenarioConfig cfg;
  cfg.mode = parse_mode(ctx, get_str(ctx, root, "mode", true));
  if (cfg.mode != Mode::validate ||
      root.contains("couplings") || root.contains("raw"))
    cfg.couplings = parse_couplings(ctx, root);

  cfg.photon_cutoff = get_int(ctx, root, "photon_cutoff", cfg.photon_cutoff);
  cfg.phonon_cutoff = get_int(ctx, root, "phonon_cutoff", cfg.phonon_cutoff);
  if (cfg.photon_cutoff < 2 || cfg.phonon_cutoff < 2)
    fail_key(ctx, "photon_cutoff", "cutoffs must be at least 2");

  if (root.contains("time_grid")) {
    const json& t = root["time_grid"];
    if (!t.is_object())
      fail_key(ctx, "time_grid", "\"time_grid\" must be an object");
    reject_unknown(ctx, t, "\"time_grid\"", {"t0", "t1", "points"});
    cfg.time_grid.t0 = get_num_or(ctx, t, "t0", 0.0);
    cfg.time_grid.t1 = get_num(ctx, t, "t1");
    cfg.time_grid.points = get_int(ctx, t, "points", 0);
    if (!(cfg.time_grid.t1 > cfg.time_grid.t0))
      fail_key(ctx, "time_grid", "t1 must exceed t0");
    if (cfg.time_grid.points < 0 || cfg.time_grid.points == 1)
      fail_key(ctx, "points", "points must be 0 (default) or >= 2");
  }

  if (root.contains("l_values")) {
    if (!root["l_values"].is_array())
      fail_key(ctx, "l_values", "\"l_values\" must be an array");
    cfg.l_values = parse_number_array(ctx, root["l_values"], "l_values");
    for (double l : cfg.l_values)
      if (!valid_angular(l, l))
        fail_key(ctx, "l_values",
                 "l = " + format_g17(l) + " is not a half-integer >= 0");
  }
  if (root.contains("omega_e_grid"))
    cfg.omega_e_grid = parse_grid(ctx, root["omega_e_grid"], "omega_e_grid");

  if (root.contains("exact_levels")) {
    const json& x = root["exact_levels"];
    if (!x.is_object())
      fail_key(ctx, "exact_levels", "\"exact_levels\" must be an object");
    reject_unknown(ctx, x, "\"exact_levels\"", {"na_max", "nb_max"});
    cfg.exact_levels.enabled = true;
    cfg.exact_levels.na_max = get_int(ctx, x, "na_max", cfg.exact_levels.na_max);
    cfg.exact_levels.nb_max = get_int(ctx, x, "nb_max", cfg.exact_levels.nb_max);
    if (cfg.exact_levels.na_max < 0 || cfg.exact_levels.nb_max < 0)
      fail_key(ctx, "exact_levels", "na_max and nb_max must be >= 0");
  }

  if (root.contains("echo_pairs")) {
    if (!root["echo_pairs"].is_array())
      fail_key(ctx, "echo_pairs", "\"echo_pairs\" must be an array");
    for (const json& p : root["echo_pairs"]) {
      if (!p.is_object())
        fail_key(ctx, "echo_pairs", "echo pairs must be objects");
      reject_unknown(ctx, p, "\"echo_pairs\"",
                     {"j1", "na", "j2", "ma", "beta_re", "beta_im"});
      EchoPair pair;
      pair.j1 = get_int(ctx, p, "j1", 1, true);
      pair.na = get_int(ctx, p, "na", 0, true);
      pair.j2 = get_int(ctx, p, "j2", 2, true);
      pair.ma = get_int(ctx, p, "ma", 0, true);
      pair.beta = Complex(get_num_or(ctx, p, "beta_re", 0.0),
                          get_num_or(ctx, p, "beta_im", 0.0));
      cfg.echo_pairs.push_back(pair);
    }
  }

  if (root.contains("ensemble"))
    cfg.ensemble = parse_ensemble(ctx, root["ensemble"]);
  else if (cfg.mode == Mode::inversion || cfg.mode == Mode::photon_dist)
    fail_at(ctx, 1,
            "an \"ensemble\" block is required for mode " +
                mode_name(cfg.mode));

  cfg.n_max = get_int(ctx, root, "n_max", cfg.n_max);
  cfg.out_dir = get_str(ctx, root, "out", false, cfg.out_dir.string());
  if (root.contains("plot_scripts")) {
    if (!root["plot_scripts"].is_boolean())
      fail_key(ctx, "plot_scripts", "\"plot_scripts\" must be a boolean");
    cfg.emit_plot_scripts = root["plot_scripts"].get<bool>();
  }
  cfg.validate_tol = get_num_or(ctx, root, "validate_tol", cfg.validate_tol);
  if (!(cfg.validate_tol > 0))
    fail_key(ctx, "validate_tol", "validate_tol must be positive");
  return cfg;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
  return parse_config_text(read_text_file(path), path.string());
}

std::vector<std::string> preset_names() {
  return {"fig3",         "fig45",         "fig678-thermal",
          "fig678-fock",  "fig678-coherent", "desk-dimensionless"};
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig cfg;
  cfg.preset = name;
  // Mirror-period temperature yielding mean occupation 20 (1 / ln(21/20)).
  const double hot_mirror = 20.49593431428785;
  if (name == "fig3") {
    cfg.mode = Mode::echo;
    cfg.couplings = CouplingSet::with_frequencies(
        UnitSystem::si, 1e15, 1e9, 1e15, 0.0, 2.2963e4, 2.2963e5);
    cfg.echo_pairs = {{1, 1, 1, 2, 0.0},
                      {1, 1, 1, 3, 0.0},
                      {1, 1, 1, 4, 0.0},
                      {1, 0, 2, 0, 0.0}};
  } else if (name == "fig45") {
    cfg.mode = Mode::spectrum;
    cfg.couplings = CouplingSet::with_frequencies(
        UnitSystem::si, 1.9e15, 1e9, 1.9e15 - 1e9, 0.0, 4.363e4, 4.363e4);
    cfg.l_values = {1.0, 1000.0};
    const double kappa = cfg.couplings.kappa;
    const int points = 241;
    cfg.omega_e_grid.resize(size_t(points));
    for (int k = 0; k < points; ++k)
      cfg.omega_e_grid[size_t(k)] =
          kappa - 3e9 + 6e9 * double(k) / (points - 1);
  } else if (name == "fig678-thermal" || name == "fig678-fock" ||
             name == "fig678-coherent") {
    cfg.mode = Mode::inversion;
    cfg.couplings = CouplingSet::dimensionless(200.0, 199.001, 0.0, 0.0, 0.05);
    cfg.time_grid = {0.0, 600.0, 2401};
    cfg.ensemble.temperature = hot_mirror;
    if (name == "fig678-thermal") {
      cfg.ensemble.kind = EnsembleKind::thermal;
    } else if (name == "fig678-fock") {
      cfg.ensemble.kind = EnsembleKind::fock;
      cfg.ensemble.n0 = 10;
    } else {
      cfg.ensemble.kind = EnsembleKind::coherent;
      cfg.ensemble.alpha = 10.0;
    }
  } else if (name == "desk-dimensionless") {
    cfg.mode = Mode::spectrum;
    cfg.couplings = CouplingSet::dimensionless(5.0, 4.8, 0.6, 0.1, 0.3);
    cfg.exact_levels.enabled = true;
    cfg.exact_levels.na_max = 2;
    cfg.exact_levels.nb_max = 3;
  } else {
    std::string all;
    for (const std::string& n : preset_names()) all += " " + n;
    throw ConfigError("unknown preset \"" + name + "\"; available:" + all);
  }
  return cfg;
}

RunResult run_scenario(const ScenarioConfig& cfg) {
  if (cfg.photon_cutoff < 2 || cfg.phonon_cutoff < 2)
    throw ConfigError("cutoffs must be at least 2");
  if (cfg.mode != Mode::validate && !(cfg.couplings.omegaM > 0))
    throw ConfigError("couplings are required for mode " + mode_name(cfg.mode));

  ModeOutput mo;
  switch (cfg.mode) {
    case Mode::spectrum: mo = run_spectrum_mode(cfg); break;
    case Mode::echo: mo = run_echo_mode(cfg); break;
    case Mode::inversion: mo = run_inversion_mode(cfg); break;
    case Mode::photon_dist: mo = run_photon_mode(cfg); break;
    case Mode::validate: mo = run_validate_mode(cfg); break;
  }

  json manifest;
  manifest["version"] = std::string(kVersion);
  manifest["mode"] = mode_name(cfg.mode);
  if (!cfg.preset.empty()) manifest["preset"] = cfg.preset;
  if (cfg.mode != Mode::validate) {
    manifest["couplings"] = couplings_json(cfg.couplings);
    manifest["photon_cutoff"] = cfg.photon_cutoff;
    manifest["phonon_cutoff"] = cfg.phonon_cutoff;
  }
  for (const auto& item : mo.manifest_extra.items())
    manifest[item.key()] = item.value();
  manifest["outputs"] = mo.files;
  write_text_file(cfg.out_dir / "manifest.json", manifest.dump(2) + "\n");

  RunResult result;
  result.exit_code = mo.exit_code;
  for (const std::string& f : mo.files) result.outputs.push_back(cfg.out_dir / f);
  result.outputs.push_back(cfg.out_dir / "manifest.json");
  result.message = mo.message;
  return result;
}

}  // namespace triqed

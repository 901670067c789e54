#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hofloq/errors.hpp"
#include "json.hpp"

namespace hofloq::cli {

namespace {

using json = nlohmann::ordered_json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model.protocol", "model.theta",     "model.phi",          "model.jx0",
      "model.jx1",      "model.jy0",       "model.jy1",          "model.jx1p",
      "lattice.L",      "lattice.bc",      "spectral.eps_tol",
      "spectral.ipr_min", "spectral.target", "output.dir",       "output.modes",
      "scan.axes",      "scan.a",          "scan.b",             "scan.gaps",
      "trajectory.samples", "trajectory.bc_combos", "disorder.lambda", "disorder.realizations",
      "disorder.seed",  "disorder.deltas", "bcc.points"};
  return keys;
}

const std::set<std::string>& commands() {
  static const std::set<std::string> c = {"spectrum",     "phase-diagram",  "invariants",
                                          "corner-modes", "verify-bcc",     "trajectory",
                                          "disorder-sweep", "analytic-modes"};
  return c;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("boolean expected, got '" + s + "'");
}

/// Resolved run: the validated configuration plus the typed values derived from it.
struct Run {
  std::string command;
  RunConfig config;  // fully resolved (defaults filled)

  void fill(const std::string& key, const std::string& value) {
    if (!config.has(key)) config.set(key, value);
  }
};

std::map<std::string, std::string> model_keys(const RunConfig& c) {
  std::map<std::string, std::string> kv;
  for (const auto& [k, v] : c.values())
    if (k.rfind("model.", 0) == 0) kv[k] = v;
  return kv;
}

Lattice2D lattice_of(const RunConfig& c) {
  const auto sizes = split(c.get("lattice.L"), ',');
  const auto bcs = split(c.get("lattice.bc"), ',');
  if (sizes.empty() || sizes.size() > 2) throw std::invalid_argument("lattice.L is L or Lx,Ly");
  if (bcs.size() != 2) throw std::invalid_argument("lattice.bc is bc_x,bc_y");
  Lattice2D l;
  auto cells = [](const std::string& s) {
    const double v = parse_real(s);
    if (v != std::floor(v) || v < 2 || v > 1e6)
      throw std::invalid_argument("lattice length must be an integer >= 2, got '" + s + "'");
    return static_cast<int>(v);
  };
  l.lx = cells(sizes[0]);
  l.ly = cells(sizes.size() == 2 ? sizes[1] : sizes[0]);
  l.bc_x = parse_boundary(bcs[0]);
  l.bc_y = parse_boundary(bcs[1]);
  return l;
}

std::vector<double> targets_of(const RunConfig& c) {
  const std::string t = c.get("spectral.target");
  if (t == "both") return {0.0, kPi};
  const double v = parse_real(t);
  if (circle_distance(v, 0.0) > 1e-12 && circle_distance(v, kPi) > 1e-12)
    throw std::invalid_argument("spectral.target must be 0, pi or both");
  return {v};
}

double ipr_min_of(const RunConfig& c, const QuasienergySpectrum& s) {
  const std::string v = c.get("spectral.ipr_min");
  return v == "auto" ? default_ipr_min(s) : parse_real(v);
}

Axis axis_of(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw std::invalid_argument("scan axis is min,max,points");
  Axis a{parse_real(parts[0]), parse_real(parts[1]), static_cast<int>(parse_real(parts[2]))};
  if (a.points < 1 || a.points > 100000) throw std::invalid_argument("scan axis needs 1..100000 points");
  return a;
}

std::optional<Perturbation> deltas_of(const RunConfig& c) {
  if (!c.has("disorder.deltas")) return std::nullopt;
  const auto parts = split(c.get("disorder.deltas"), ',');
  if (parts.size() != 4) throw std::invalid_argument("disorder.deltas is dx,dy,d1,d2");
  return Perturbation{parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]),
                      parse_real(parts[3])};
}

void add_resolved(RunConfig& c, const ModelParams& p) {
  c.set("resolved.jx0", format_real(p.jx0));
  c.set("resolved.jx1", format_real(p.jx1));
  c.set("resolved.jy0", format_real(p.jy0));
  c.set("resolved.jy1", format_real(p.jy1));
  if (p.protocol == Protocol::kicked_v2) c.set("resolved.jx1p", format_real(p.jx1p));
}

// --- Commands --------------------------------------------------------------------------

int cmd_spectrum(Run& run, OutputTransaction& tx, std::ostream& log) {
  RunConfig& c = run.config;
  run.fill("lattice.L", "40");
  run.fill("lattice.bc", "open,open");
  run.fill("spectral.eps_tol", "1e-8");
  run.fill("spectral.ipr_min", "auto");
  run.fill("spectral.target", "both");
  run.fill("output.modes", "false");
  const ModelParams p = parse_params(model_keys(c));
  add_resolved(c, p);
  const Lattice2D l = lattice_of(c);
  const auto deltas = deltas_of(c);
  const double lambda = c.real_or("disorder.lambda", 0.0);
  QuasienergySpectrum s;
  std::optional<Basis> basis;
  if (deltas || c.has("disorder.lambda")) {
    run.fill("disorder.seed", "1");
    LatticeOperator u = deltas ? perturbed_floquet_2d(p, *deltas, l)
                               : disordered_floquet_2d(p, lambda, c.integer_or("disorder.seed", 1), l);
    s = eig_unitary(u);
    basis = u.basis();
  } else {
    s = clean_spectrum(p, l);
    if (s.has_vectors())
      basis = Basis::product(Basis::chain(Chain::creutz, l.lx), Basis::chain(Chain::ssh, l.ly));
  }
  write_spectrum_csv(tx.file("spectrum.csv"), s);
  const double eps = c.real_or("spectral.eps_tol", 1e-8);
  const double ipr_min = ipr_min_of(c, s);
  std::vector<Vec> modes;
  for (double t : targets_of(c)) {
    const auto sel = select_modes(s, t, eps, ipr_min);
    log << "modes at " << format_real(t) << ": " << sel.size() << "\n";
    if (parse_bool(c.get("output.modes")))
      for (std::size_t i : sel) modes.push_back(s.vector(i));
  }
  if (parse_bool(c.get("output.modes"))) {
    if (!basis) throw std::invalid_argument("eigenvectors are not available for mixed boundaries");
    write_modes_csv(tx.file("modes.csv"), *basis, modes);
  }
  return kExitOk;
}

int cmd_invariants(Run& run, OutputTransaction& tx, std::ostream& log) {
  const ModelParams p = parse_params(model_keys(run.config));
  add_resolved(run.config, p);
  const InvariantReport r = composite_invariants(p);
  write_text(tx.file("invariants.json"), invariant_json(r));
  log << "omega = (" << r.omega_pair[0] << ", " << r.omega_pair[1] << ")\n";
  return kExitOk;
}

int cmd_corner_modes(Run& run, OutputTransaction& tx, std::ostream& log) {
  RunConfig& c = run.config;
  run.fill("lattice.L", "40");
  run.fill("lattice.bc", "open,open");
  run.fill("spectral.eps_tol", "1e-8");
  run.fill("spectral.ipr_min", "auto");
  run.fill("spectral.target", "both");
  const ModelParams p = parse_params(model_keys(c));
  add_resolved(c, p);
  const Lattice2D l = lattice_of(c);
  if (l.bc_x != Boundary::open || l.bc_y != Boundary::open)
    throw std::invalid_argument("corner modes need open boundaries in both directions");
  const QuasienergySpectrum s = clean_spectrum(p, l);
  const double eps = c.real_or("spectral.eps_tol", 1e-8);
  const double ipr_min = ipr_min_of(c, s);
  std::vector<Vec> modes;
  BccVerdict v;
  v.params = p;
  const InvariantReport r = composite_invariants(p);
  v.omega = r.omega_pair;
  v.predicted = r.predicted_n;
  v.closing = r.closing_flag;
  for (double t : targets_of(c)) {
    const auto sel = select_modes(s, t, eps, ipr_min);
    v.observed[circle_distance(t, 0.0) < 1e-12 ? 0 : 1] = static_cast<int>(sel.size());
    for (std::size_t i : sel) modes.push_back(s.vector(i));
  }
  if (c.get("spectral.target") == "both") {
    v.pass = v.predicted == v.observed;
  } else {
    const int g = circle_distance(targets_of(c)[0], 0.0) < 1e-12 ? 0 : 1;
    v.pass = v.predicted[g] == v.observed[g];
  }
  write_spectrum_csv(tx.file("spectrum.csv"), s);
  write_modes_csv(tx.file("modes.csv"),
                  Basis::product(Basis::chain(Chain::creutz, l.lx), Basis::chain(Chain::ssh, l.ly)),
                  modes);
  write_text(tx.file("invariants.json"), invariant_json(r, v));
  log << "observed (" << v.observed[0] << ", " << v.observed[1] << "), predicted ("
      << v.predicted[0] << ", " << v.predicted[1] << ")\n";
  return v.pass ? kExitOk : kExitConsistency;
}

int cmd_verify_bcc(Run& run, OutputTransaction& tx, std::ostream& log) {
  RunConfig& c = run.config;
  run.fill("lattice.L", "40");
  run.fill("spectral.eps_tol", "1e-8");
  run.fill("spectral.ipr_min", "auto");
  run.fill("model.protocol", "kicked_v1");
  std::vector<ModelParams> points;
  if (c.has("bcc.points")) {
    for (const auto& item : split(c.get("bcc.points"), ';')) {
      const auto tp = split(item, ',');
      if (tp.size() != 2) throw std::invalid_argument("bcc.points is theta,phi;theta,phi;...");
      std::map<std::string, std::string> kv = model_keys(c);
      kv.erase("model.theta");
      kv.erase("model.phi");
      kv["model.theta"] = tp[0];
      kv["model.phi"] = tp[1];
      points.push_back(parse_params(kv));
    }
  } else if (c.has("model.theta") || c.has("model.jx0")) {
    points.push_back(parse_params(model_keys(c)));
  } else {
    points = table_sample_points();
    const Protocol proto = parse_protocol(c.get("model.protocol"));
    if (proto != Protocol::kicked_v1)
      throw std::invalid_argument("the default sample points belong to the first protocol");
  }
  run.fill("lattice.bc", "open,open");
  const Lattice2D l = lattice_of(c);
  if (l.bc_x != Boundary::open || l.bc_y != Boundary::open)
    throw std::invalid_argument("bulk-corner verification uses open boundaries");
  CountTolerances tol;
  tol.eps_tol = c.real_or("spectral.eps_tol", 1e-8);
  if (c.get("spectral.ipr_min") != "auto") tol.ipr_min = parse_real(c.get("spectral.ipr_min"));
  const auto verdicts = verify_bcc(points, l.lx, l.ly, tol);
  write_text(tx.file("invariants.json"), verdicts_json(verdicts));
  bool all = true;
  for (const auto& v : verdicts) all = all && v.pass;
  log << (all ? "all verdicts pass\n" : "bulk-corner correspondence violated\n");
  return all ? kExitOk : kExitConsistency;
}

int cmd_phase_diagram(Run& run, OutputTransaction& tx, std::ostream& log) {
  RunConfig& c = run.config;
  run.fill("model.protocol", "kicked_v1");
  run.fill("scan.axes", "theta_phi");
  run.fill("scan.gaps", "true");
  const Protocol proto = parse_protocol(c.get("model.protocol"));
  const ScanAxes axes = parse_axes(c.get("scan.axes"));
  if (axes == ScanAxes::jx1_phi) {
    run.fill("scan.a", "0.01,3pi,151");
    run.fill("scan.b", "0,2pi,101");
  } else {
    run.fill("scan.a", "0,2pi,101");
    run.fill("scan.b", "0,2pi,101");
  }
  if (proto == Protocol::kicked_v2) {
    run.fill("model.jx0", "pi/2");
    run.fill("model.jx1p", "pi/2");
  }
  ScanSpec spec;
  spec.axes = axes;
  spec.first = axis_of(c.get("scan.a"));
  spec.second = axis_of(c.get("scan.b"));
  spec.with_gaps = parse_bool(c.get("scan.gaps"));
  spec.base.protocol = proto;
  auto opt = [&](const char* key, double& out) {
    if (c.has(key)) out = parse_real(c.get(key));
  };
  opt("model.jx0", spec.base.jx0);
  opt("model.jx1", spec.base.jx1);
  opt("model.jy0", spec.base.jy0);
  opt("model.jy1", spec.base.jy1);
  opt("model.jx1p", spec.base.jx1p);
  if (c.has("model.theta") || c.has("model.phi"))
    throw std::invalid_argument("theta/phi are scan axes, not base parameters");
  const ScanGrid grid = scan_phase_diagram(spec);
  write_scan_csv(tx.file("scan.csv"), grid);
  log << grid.labels().size() << " phase labels over " << grid.points.size() << " points\n";
  return kExitOk;
}

int cmd_trajectory(Run& run, OutputTransaction& tx, std::ostream& log) {
  RunConfig& c = run.config;
  run.fill("lattice.L", "40");
  run.fill("trajectory.samples", "10");
  run.fill("trajectory.bc_combos", "periodic,periodic;periodic,open;open,periodic;open,open");
  run.fill("model.protocol", "kicked_v1");
  const Protocol proto = parse_protocol(c.get("model.protocol"));
  if (proto != Protocol::kicked_v1) throw std::invalid_argument("trajectory follows the first protocol");
  const auto sizes = split(c.get("lattice.L"), ',');
  RunConfig probe = c;
  probe.set("lattice.bc", "open,open");
  const Lattice2D l = lattice_of(probe);
  std::vector<BoundaryCombo> combos;
  for (const auto& item : split(c.get("trajectory.bc_combos"), ';')) {
    const auto bc = split(item, ',');
    if (bc.size() != 2) throw std::invalid_argument("trajectory.bc_combos is bx,by;bx,by;...");
    combos.push_back({parse_boundary(bc[0]), parse_boundary(bc[1])});
  }
  const auto t = TrajectorySpec::default_path(static_cast<int>(c.integer_or("trajectory.samples", 10)));
  const auto pts = trajectory_spectra(t, combos, l.lx, l.ly, proto);
  std::string spectra = "point,theta,phi,bc_x,bc_y,index,quasienergy,ipr\n";
  std::string summary = "point,theta,phi,bc_x,bc_y,max_ipr,n_0,n_pi,gap0,gap_pi\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& r = pts[i];
    const std::string head = std::to_string(i / combos.size()) + "," + format_real(r.theta) + "," +
                             format_real(r.phi) + "," + std::string(to_string(r.bc.x)) + "," +
                             std::string(to_string(r.bc.y));
    for (std::size_t j = 0; j < r.spectrum.size(); ++j)
      spectra += head + "," + std::to_string(j) + "," + format_real(r.spectrum.phases[j]) + "," +
                 format_real(r.spectrum.iprs[j]) + "\n";
    summary += head + "," + format_real(r.max_ipr) + "," + std::to_string(r.n0) + "," +
               std::to_string(r.npi) + "," + format_real(r.gaps.gap0) + "," +
               format_real(r.gaps.gap_pi) + "\n";
  }
  write_text(tx.file("trajectory.csv"), spectra);
  write_text(tx.file("trajectory_summary.csv"), summary);
  log << pts.size() << " trajectory spectra\n";
  return kExitOk;
}

int cmd_disorder_sweep(Run& run, OutputTransaction& tx, std::ostream& log) {
  RunConfig& c = run.config;
  run.fill("lattice.L", "20");
  run.fill("lattice.bc", "open,open");
  run.fill("spectral.eps_tol", "1e-2");
  if (!c.has("disorder.deltas")) {
    run.fill("disorder.lambda", "0.2");
    run.fill("disorder.realizations", "10");
  } else {
    run.fill("disorder.realizations", "1");
  }
  run.fill("disorder.seed", "1");
  RobustnessSpec spec;
  spec.base = parse_params(model_keys(c));
  add_resolved(c, spec.base);
  spec.deltas = deltas_of(c);
  spec.lambda = c.real_or("disorder.lambda", 0.0);
  spec.realizations = static_cast<int>(c.integer_or("disorder.realizations", 10));
  const long seed = c.integer_or("disorder.seed", 1);
  if (seed < 0) throw std::invalid_argument("disorder.seed must be >= 0");
  spec.seed = static_cast<std::uint64_t>(seed);
  spec.lattice = lattice_of(c);
  spec.eps_tol = c.real_or("spectral.eps_tol", 1e-2);
  const RobustnessStats st = robustness_experiment(spec);
  std::string csv =
      "realization,seed,n_0,n_pi,ipr_min,max_mode_ipr,min_corner_fraction,peak_cell_x,peak_cell_y\n";
  for (std::size_t i = 0; i < st.realizations.size(); ++i) {
    const auto& r = st.realizations[i];
    csv += std::to_string(i) + "," + std::to_string(r.seed) + "," + std::to_string(r.n0) + "," +
           std::to_string(r.npi) + "," + format_real(r.ipr_min) + "," + format_real(r.max_mode_ipr) +
           "," + format_real(r.min_corner_fraction) + "," + std::to_string(r.peak_site.x.cell) + "," +
           std::to_string(r.peak_site.y ? r.peak_site.y->cell : 0) + "\n";
  }
  write_text(tx.file("disorder.csv"), csv);
  json j;
  j["expected_N"] = {st.expected[0], st.expected[1]};
  j["retained_fraction"] = st.retained_fraction;
  j["pass"] = st.retained_fraction == 1.0;
  write_text(tx.file("invariants.json"), j.dump(2) + "\n");
  log << "retained fraction " << st.retained_fraction << "\n";
  return kExitOk;
}

int cmd_analytic_modes(Run& run, OutputTransaction& tx, std::ostream& log) {
  RunConfig& c = run.config;
  run.fill("lattice.L", "40");
  run.fill("spectral.target", "0");
  const ModelParams p = parse_params(model_keys(c));
  add_resolved(c, p);
  RunConfig probe = c;
  probe.set("lattice.bc", "open,open");
  const Lattice2D l = lattice_of(probe);
  const auto targets = targets_of(c);
  std::vector<Vec> vectors;
  json modes = json::array();
  std::optional<Basis> basis;
  for (double t : targets) {
    for (const auto& m : corner_modes(t, p, l.lx, l.ly)) {
      vectors.push_back(m.vector);
      basis = m.basis;
      modes.push_back({{"corner", std::string(to_string(m.side))},
                       {"target", m.target},
                       {"decay_x", m.decay_x},
                       {"decay_y", m.decay_y},
                       {"normalizable", m.normalizable}});
    }
  }
  write_modes_csv(tx.file("modes.csv"), *basis, vectors);
  write_text(tx.file("analytic.json"), json{{"modes", modes}}.dump(2) + "\n");
  log << vectors.size() << " analytic corner modes\n";
  return kExitOk;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config, std::ostream& log) {
  try {
    if (!commands().count(command)) throw std::invalid_argument("unknown command '" + command + "'");
    Run run{command, {}};
    for (const auto& [k, v] : config.values()) {
      if (k.rfind("run.", 0) == 0 || k.rfind("resolved.", 0) == 0) continue;
      if (!known_keys().count(k)) throw std::invalid_argument("unknown config key '" + k + "'");
      run.config.set(k, v);
    }
    run.fill("output.dir", ".");
    run.fill("model.protocol", "kicked_v1");
    OutputTransaction tx(run.config.get("output.dir"));
    int status = kExitOk;
    if (command == "spectrum") status = cmd_spectrum(run, tx, log);
    else if (command == "invariants") status = cmd_invariants(run, tx, log);
    else if (command == "corner-modes") status = cmd_corner_modes(run, tx, log);
    else if (command == "verify-bcc") status = cmd_verify_bcc(run, tx, log);
    else if (command == "phase-diagram") status = cmd_phase_diagram(run, tx, log);
    else if (command == "trajectory") status = cmd_trajectory(run, tx, log);
    else if (command == "disorder-sweep") status = cmd_disorder_sweep(run, tx, log);
    else if (command == "analytic-modes") status = cmd_analytic_modes(run, tx, log);
    RunConfig manifest = run.config;
    manifest.set("run.command", command);
    manifest.set("run.version", std::string(version()));
    write_text(tx.file("manifest.cfg"), manifest.to_text());
    tx.commit();
    return status;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConsistencyError& e) {
    log << "consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::exception& e) {
    log << "failure: " << e.what() << "\n";
    return kExitConsistency;
  }
}

int run(int argc, const char* const* argv, std::ostream& log) {
  CLI::App app{"Floquet higher-order topology lab: spectra, invariants and corner modes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  std::map<std::string, std::string> given;
  std::string config_path;
  bool modes_flag = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat namespace.key = value file");
    auto bind = [&](const std::string& flag, const std::string& key, const std::string& help) {
      sub->add_option_function<std::string>(flag, [&given, key](const std::string& v) { given[key] = v; }, help);
    };
    bind("--out", "output.dir", "output directory");
    bind("--protocol", "model.protocol", "static | kicked_v1 | kicked_v2");
    bind("--theta", "model.theta", "angle fixing jx0, jx1 (e.g. 0.75pi)");
    bind("--phi", "model.phi", "angle fixing jy0, jy1");
    bind("--jx0", "model.jx0", "ladder rung coupling");
    bind("--jx1", "model.jx1", "ladder leg / diagonal coupling");
    bind("--jy0", "model.jy0", "SSH intracell coupling");
    bind("--jy1", "model.jy1", "SSH intercell coupling");
    bind("--jx1p", "model.jx1p", "kick strength of the second protocol");
    bind("--L", "lattice.L", "cells per direction: L or Lx,Ly");
    bind("--bc", "lattice.bc", "bc_x,bc_y from open | periodic");
    bind("--eps-tol", "spectral.eps_tol", "quasienergy window for mode counting");
    bind("--ipr-min", "spectral.ipr_min", "IPR threshold or auto (10x median)");
    bind("--target", "spectral.target", "0, pi or both");
    bind("--axes", "scan.axes", "theta_phi | jx1_phi | jx0_jx1");
    bind("--a", "scan.a", "first axis min,max,points");
    bind("--b", "scan.b", "second axis min,max,points");
    bind("--samples", "trajectory.samples", "samples per trajectory segment");
    bind("--bc-combos", "trajectory.bc_combos", "bx,by;bx,by;...");
    bind("--lambda", "disorder.lambda", "hopping disorder strength");
    bind("--realizations", "disorder.realizations", "number of disorder realizations");
    bind("--seed", "disorder.seed", "first disorder seed");
    bind("--deltas", "disorder.deltas", "dx,dy,d1,d2 deterministic perturbation");
    bind("--points", "bcc.points", "theta,phi;theta,phi;...");
    sub->add_flag("--modes", modes_flag, "also write modes.csv");
  };

  for (const auto& name : commands()) add_common(app.add_subcommand(name, name));
  std::string manifest_path, replay_out;
  CLI::App* replay = app.add_subcommand("replay", "rerun from a manifest.cfg");
  replay->add_option("manifest", manifest_path, "manifest.cfg of an earlier run")->required();
  replay->add_option("--out", replay_out, "output directory override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, std::cout, std::cerr);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cout, std::cerr);
    return kExitValidation;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    std::string command = sub->get_name();
    RunConfig cfg;
    if (command == "replay") {
      cfg = RunConfig::load(manifest_path);
      command = cfg.get("run.command");
      if (!replay_out.empty()) cfg.set("output.dir", replay_out);
    } else {
      if (!config_path.empty()) cfg = RunConfig::load(config_path);
      for (const auto& [k, v] : given) cfg.set(k, v);
      if (modes_flag) cfg.set("output.modes", "true");
    }
    return run_command(command, cfg, log);
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace hofloq::cli

#include <kdvist/cli.hpp>
#include <kdvist/io.hpp>
#include <kdvist/pde_ref.hpp>
#include <kdvist/potential.hpp>
#include <kdvist/reconstruct.hpp>
#include <kdvist/scattering.hpp>
#include <kdvist/validate.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace kdvist {

namespace {

constexpr const char* k_version = "kdvist 0.1.0";

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  Real seconds() const {
    return std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count();
  }
};

struct CommonOpts {
  std::string preset = "square_well";
  std::vector<Real> params{1.0, 2.0};
  Real grid_step = 0.005;
  Real b_max = 20.0;
  int threads = 0;
  std::string out_dir = "out";
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config; flags override its values");
  cmd->add_option("--preset", o.preset, "potential family")
      ->check(CLI::IsMember({"zero", "square_well", "exp_decay", "truncated_sech2",
                             "gaussian_bump"}));
  cmd->add_option("--params", o.params, "preset parameters")->delimiter(',');
  cmd->add_option("--grid-step", o.grid_step, "cell width");
  cmd->add_option("--b-max", o.b_max, "support cutoff");
  cmd->add_option("--threads", o.threads, "0 = hardware default");
  cmd->add_option("--out", o.out_dir, "output directory");
}

// config file fills every value the command line left at its default
void apply_config(const CLI::App* cmd, CommonOpts& o, json& cfg) {
  if (o.config_path.empty()) return;
  cfg = read_json_file(o.config_path);
  const auto overridden = [&](const std::string& flag) {
    return cmd->count(flag) > 0;
  };
  if (cfg.contains("preset") && !overridden("--preset")) o.preset = cfg["preset"];
  if (cfg.contains("params") && !overridden("--params"))
    o.params = cfg["params"].get<std::vector<Real>>();
  if (cfg.contains("grid_step") && !overridden("--grid-step"))
    o.grid_step = cfg["grid_step"];
  if (cfg.contains("b_max") && !overridden("--b-max")) o.b_max = cfg["b_max"];
  if (cfg.contains("threads") && !overridden("--threads")) o.threads = cfg["threads"];
  if (cfg.contains("out") && !overridden("--out")) o.out_dir = cfg["out"];
}

Potential build_potential(const CommonOpts& o) {
  return make_preset(o.preset, o.params, o.grid_step, o.b_max);
}

json config_snapshot(const CommonOpts& o) {
  json j;
  j["preset"] = o.preset;
  j["params"] = o.params;
  j["grid_step"] = o.grid_step;
  j["b_max"] = o.b_max;
  return j;
}

void write_manifest(const std::string& out_dir, const json& config,
                    const std::vector<std::pair<std::string, Real>>& timings) {
  json m;
  m["version"] = k_version;
  m["config"] = config;
  m["config_hash"] = digest_string(config.dump());
  json t;
  for (const auto& [name, sec] : timings) t[name] = sec;
  m["timings_sec"] = t;
  write_json_file(out_dir + "/manifest.json", m);
}

void ensure_dir(const std::string& d) { std::filesystem::create_directories(d); }

int cmd_scatter(const CommonOpts& o, const SliceParams& sp) {
  ensure_dir(o.out_dir + "/cache");
  const Potential q = build_potential(o);

  std::ostringstream key;
  key << potential_digest(q) << "_" << sp.gap << "_" << sp.k_max << "_" << sp.dk;
  const std::string cache_path =
      o.out_dir + "/cache/slice_" + digest_string(key.str()) + ".json";

  Timer timer;
  ScatteringSlice slice;
  bool cache_hit = false;
  if (std::filesystem::exists(cache_path)) {
    slice = slice_from_json(read_json_file(cache_path));
    cache_hit = slice.source_potential_hash == potential_digest(q);
  }
  if (!cache_hit) {
    slice = compute_slice(q, sp, o.threads);
    write_json_file(cache_path, slice_to_json(slice));
  }
  const Real elapsed = timer.seconds();

  json cfg = config_snapshot(o);
  cfg["slice"] = {{"gap", sp.gap}, {"k_max", sp.k_max}, {"dk", sp.dk}};
  write_manifest(o.out_dir, cfg, {{"scatter", elapsed}});

  std::cout << (cache_hit ? "cache hit: " : "computed: ") << cache_path << "\n";
  std::cout << "bound states: " << slice.bound_states.size();
  for (const auto& s : slice.bound_states)
    std::cout << "  (kappa=" << s.kappa << ", c=" << s.c << ")";
  std::cout << "\n";
  return 0;
}

int cmd_validate(const CommonOpts& o, bool deep, bool battery) {
  ensure_dir(o.out_dir);
  std::vector<Potential> targets;
  if (battery) {
    targets.push_back(make_preset("zero", {}));
    targets.push_back(make_preset("square_well", {1.0, 2.0}));
    targets.push_back(make_preset("square_well", {0.3, 2.0}));
    targets.push_back(make_preset("exp_decay", {1.0, 1.0}));
    targets.push_back(make_preset("gaussian_bump", {0.4, 2.0, 0.6}));
  } else {
    targets.push_back(build_potential(o));
  }

  bool all_ok = true;
  json reports = json::array();
  Timer timer;
  for (const auto& q : targets) {
    const bool want_deep = deep && !battery ? true : (deep && q.preset_tag.find("exp_decay") == 0);
    const ValidationReport rep = run_validation(q, want_deep, o.threads);
    reports.push_back(rep.to_json());
    std::cout << "== " << rep.potential_tag << " ==\n";
    for (const auto& c : rep.checks) {
      std::cout << (c.pass ? "  [PASS] " : "  [FAIL] ") << c.name
                << "  residual=" << c.residual << "  tol=" << c.tolerance << "\n";
      if (!c.pass) std::cout << "         " << c.note << "\n";
    }
    all_ok = all_ok && rep.all_pass();
  }
  write_json_file(o.out_dir + "/validation.json", reports);
  write_manifest(o.out_dir, config_snapshot(o), {{"validate", timer.seconds()}});
  std::cout << (all_ok ? "all checks passed\n" : "CHECK FAILURES\n");
  return all_ok ? 0 : 1;
}

int cmd_reconstruct(const CommonOpts& o, const std::string& x_spec,
                    const std::vector<Real>& t_list, const std::string& path_str,
                    Index basis, Real k_cutoff, Real fine_dk) {
  ensure_dir(o.out_dir);
  const Potential q = build_potential(o);
  const Vec xs = parse_grid(x_spec);
  Vec ts(static_cast<Index>(t_list.size()));
  for (Index j = 0; j < ts.size(); ++j) ts[j] = t_list[j];

  ReconParams rp;
  rp.threads = o.threads;
  if (basis > 0) rp.basis_size = basis;
  if (k_cutoff > 0.0) rp.k_cutoff = k_cutoff;
  if (fine_dk > 0.0) rp.fine_dk = fine_dk;
  const ReconPath path =
      path_str == "contour" ? ReconPath::contour : ReconPath::proposition;

  Timer timer;
  Reconstructor rec(q, rp);
  const ReconstructionField field = rec.grid(xs, ts, path);
  const Real elapsed = timer.seconds();

  write_field_csv(field, o.out_dir + "/field.csv");
  write_json_file(o.out_dir + "/field.json", field_to_json(field));

  json cfg = config_snapshot(o);
  cfg["x"] = x_spec;
  cfg["t"] = t_list;
  cfg["path"] = path_name(path);
  cfg["basis"] = rp.basis_size;
  cfg["k_cutoff"] = rp.k_cutoff;
  cfg["fine_dk"] = rp.fine_dk;
  write_manifest(o.out_dir, cfg, {{"reconstruct", elapsed}});

  const std::string digest = digest_string(read_text_file(o.out_dir + "/field.csv"));
  std::cout << "field: " << xs.size() << " x " << ts.size() << " points, path "
            << path_name(path) << ", " << elapsed << " s\n";
  std::cout << "csv digest: " << digest << "\n";
  return 0;
}

int cmd_crosscheck(const CommonOpts& o, const std::string& x_spec,
                   const std::vector<Real>& t_list) {
  ensure_dir(o.out_dir);
  const Potential q = build_potential(o);
  const Vec xs = parse_grid(x_spec);
  Vec ts(static_cast<Index>(t_list.size()));
  for (Index j = 0; j < ts.size(); ++j) ts[j] = t_list[j];

  Timer timer;
  Reconstructor rec(q, [&] {
    ReconParams rp;
    rp.threads = o.threads;
    return rp;
  }());
  const ReconstructionField field = rec.grid(xs, ts, ReconPath::proposition);
  const Real t_recon = timer.seconds();

  Timer pde_timer;
  const PdeRun run = evolve_kdv(q, std::vector<Real>(t_list.begin(), t_list.end()), {});
  const Real t_pde = pde_timer.seconds();

  std::vector<std::vector<Real>> rows;
  Vec max_err = Vec::Zero(ts.size());
  for (Index jt = 0; jt < ts.size(); ++jt) {
    for (Index ix = 0; ix < xs.size(); ++ix) {
      const Real q_ref = sample_snapshot(run, jt, xs[ix]);
      const Real q_rec = field.q(ix, jt);
      max_err[jt] = std::max(max_err[jt], std::abs(q_rec - q_ref));
      rows.push_back({xs[ix], ts[jt], q_rec, q_ref, q_rec - q_ref});
    }
    std::cout << "t=" << ts[jt] << "  max |recon - pde| = " << max_err[jt] << "\n";
  }
  write_text_file(o.out_dir + "/crosscheck.csv",
                  csv_format({"x", "t", "q_recon", "q_pde", "diff"}, rows));

  json cfg = config_snapshot(o);
  cfg["x"] = x_spec;
  cfg["t"] = t_list;
  write_manifest(o.out_dir, cfg, {{"reconstruct", t_recon}, {"pde", t_pde}});
  return 0;
}

int cmd_sweep(const CommonOpts& o, Real x, Real t, const std::vector<Index>& basis_list) {
  ensure_dir(o.out_dir);
  const Potential q = build_potential(o);

  std::vector<std::vector<Real>> rows;
  Real prev = 0.0;
  bool have_prev = false;
  for (Index n : basis_list) {
    ReconParams rp;
    rp.threads = o.threads;
    rp.basis_size = n;
    Reconstructor rec(q, rp);
    PointDiagnostics diag;
    const Real val = rec.point(x, t, ReconPath::proposition, &diag);
    const Real delta = have_prev ? std::abs(val - prev) : 0.0;
    std::cout << "basis " << n << ": q = " << val
              << (have_prev ? "  delta = " : "") << (have_prev ? std::to_string(delta) : "")
              << "  min_eig = " << diag.min_eig << "\n";
    rows.push_back({static_cast<Real>(n), val, delta, diag.min_eig, diag.hankel_norm});
    prev = val;
    have_prev = true;
  }
  write_text_file(o.out_dir + "/sweep.csv",
                  csv_format({"basis", "q", "delta", "min_eig", "hankel_norm"}, rows));

  json cfg = config_snapshot(o);
  cfg["x"] = x;
  cfg["t"] = t;
  write_manifest(o.out_dir, cfg, {});
  return 0;
}

} // namespace

Vec parse_grid(const std::string& spec) {
  const auto colon1 = spec.find(':');
  if (colon1 == std::string::npos) {
    std::vector<Real> vals;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    Vec v(static_cast<Index>(vals.size()));
    for (Index j = 0; j < v.size(); ++j) v[j] = vals[j];
    return v;
  }
  const auto colon2 = spec.find(':', colon1 + 1);
  if (colon2 == std::string::npos)
    throw std::invalid_argument("grid spec needs start:step:end or a comma list");
  const Real start = std::stod(spec.substr(0, colon1));
  const Real step = std::stod(spec.substr(colon1 + 1, colon2 - colon1 - 1));
  const Real end = std::stod(spec.substr(colon2 + 1));
  if (step <= 0.0 || end < start)
    throw std::invalid_argument("grid spec needs step > 0 and end >= start");
  const Index n = static_cast<Index>(std::floor((end - start) / step + 0.5)) + 1;
  Vec v(n);
  for (Index j = 0; j < n; ++j) v[j] = start + step * j;
  return v;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"inverse scattering transform engine for the KdV equation"};
  app.set_version_flag("--version", k_version);
  app.require_subcommand(1);

  CommonOpts scatter_o, validate_o, recon_o, cross_o, sweep_o;

  auto* scatter = app.add_subcommand("scatter", "tabulate scattering data (cached)");
  add_common(scatter, scatter_o);
  SliceParams sp;
  scatter->add_option("--k-max", sp.k_max);
  scatter->add_option("--dk", sp.dk);
  scatter->add_option("--gap", sp.gap);

  auto* validate = app.add_subcommand("validate", "run the identity check battery");
  add_common(validate, validate_o);
  bool deep = false, battery = false;
  validate->add_flag("--deep", deep, "include operator-level checks");
  validate->add_flag("--battery", battery, "run the standard potential set");

  auto* recon = app.add_subcommand("reconstruct", "q(x,t) from scattering data");
  add_common(recon, recon_o);
  std::string x_spec = "-5:0.5:10";
  std::vector<Real> t_list{0.1};
  std::string path_str = "proposition";
  Index basis = 0;
  Real recon_k_cutoff = 0.0, recon_fine_dk = 0.0;
  recon->add_option("--x", x_spec, "x grid, start:step:end or comma list");
  recon->add_option("--t", t_list, "times, comma list")->delimiter(',');
  recon->add_option("--path", path_str, "integral representation")
      ->check(CLI::IsMember({"proposition", "contour"}));
  recon->add_option("--basis", basis, "quadrature nodes on (0, s_max)");
  recon->add_option("--k-cutoff", recon_k_cutoff, "reflection grid extent");
  recon->add_option("--fine-dk", recon_fine_dk, "reflection grid spacing");

  auto* cross = app.add_subcommand("crosscheck", "compare against direct PDE evolution");
  add_common(cross, cross_o);
  std::string cx_spec = "-5:0.5:15";
  std::vector<Real> ct_list{0.1, 0.5};
  cross->add_option("--x", cx_spec);
  cross->add_option("--t", ct_list)->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "basis refinement study at one point");
  add_common(sweep, sweep_o);
  Real sx = 0.0, st = 0.1;
  std::vector<Index> basis_list{120, 240, 480};
  sweep->add_option("--x", sx);
  sweep->add_option("--t", st);
  sweep->add_option("--basis-list", basis_list)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (scatter->parsed()) {
      json cfg;
      apply_config(scatter, scatter_o, cfg);
      return cmd_scatter(scatter_o, sp);
    }
    if (validate->parsed()) {
      json cfg;
      apply_config(validate, validate_o, cfg);
      return cmd_validate(validate_o, deep, battery);
    }
    if (recon->parsed()) {
      json cfg;
      apply_config(recon, recon_o, cfg);
      return cmd_reconstruct(recon_o, x_spec, t_list, path_str, basis,
                             recon_k_cutoff, recon_fine_dk);
    }
    if (cross->parsed()) {
      json cfg;
      apply_config(cross, cross_o, cfg);
      return cmd_crosscheck(cross_o, cx_spec, ct_list);
    }
    if (sweep->parsed()) {
      json cfg;
      apply_config(sweep, sweep_o, cfg);
      return cmd_sweep(sweep_o, sx, st, basis_list);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

} // namespace kdvist

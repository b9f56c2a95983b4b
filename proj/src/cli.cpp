#include "smallscat/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <Eigen/Core>

#include "smallscat/directions.hpp"
#include "smallscat/errors.hpp"

namespace smallscat::cli {

namespace {

namespace fs = std::filesystem;

std::string out_path(const ScenarioConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output_dir);
  return (fs::path(cfg.output_dir) / name).string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write output file: " + path);
  return out;
}

void write_farfield_csv(std::ofstream& out, const FarFieldPattern& pattern) {
  out << "x1,x2,x3,up1_re,up1_im,up2_re,up2_im,up3_re,up3_im,"
         "us1_re,us1_im,us2_re,us2_im,us3_re,us3_im\n";
  for (const auto& s : pattern) {
    out << fmt17(s.x_hat[0]) << ',' << fmt17(s.x_hat[1]) << ',' << fmt17(s.x_hat[2]);
    for (int i = 0; i < 3; ++i)
      out << ',' << fmt17(s.u_p[i].real()) << ',' << fmt17(s.u_p[i].imag());
    for (int i = 0; i < 3; ++i)
      out << ',' << fmt17(s.u_s[i].real()) << ',' << fmt17(s.u_s[i].imag());
    out << '\n';
  }
}

void write_charges_csv(std::ofstream& out, const std::vector<CVec3>& charges) {
  out << "m,q1_re,q1_im,q2_re,q2_im,q3_re,q3_im\n";
  for (std::size_t m = 0; m < charges.size(); ++m) {
    out << m;
    for (int i = 0; i < 3; ++i)
      out << ',' << fmt17(charges[m][i].real()) << ',' << fmt17(charges[m][i].imag());
    out << '\n';
  }
}

struct ForwardResult {
  ChargeSet charges;
  FarFieldPattern pattern;
};

ForwardResult forward_core(const Scene& scene, const std::vector<CapacitanceMatrix>& caps) {
  ForwardResult result;
  const FoldyLaxSystem sys = assemble(scene.obstacles, caps, scene.wave, scene.wn, scene.lame);
  result.charges = solve_charges(sys);
  result.pattern = farfield(result.charges, sys.centers, scene.directions, scene.wn, scene.lame);
  return result;
}

CompareMetrics compare_core(const Scene& scene) {
  const auto caps = shape_capacitances(scene, scene.lame);
  const ForwardResult fl = forward_core(scene, caps);
  const OracleSolution oracle = oracle_solve(scene.obstacles, scene.wave, scene.wn, scene.lame);
  const FarFieldPattern oracle_ff = oracle_farfield(oracle, scene.directions, scene.wn, scene.lame);
  return compare(fl.pattern, oracle_ff);
}

void write_compare_csv(std::ofstream& out, const CompareMetrics& m) {
  out << "metric,value\n";
  out << "p_max_abs," << fmt17(m.p_max_abs) << '\n';
  out << "p_rms_abs," << fmt17(m.p_rms_abs) << '\n';
  out << "s_max_abs," << fmt17(m.s_max_abs) << '\n';
  out << "s_rms_abs," << fmt17(m.s_rms_abs) << '\n';
  out << "p_max_rel," << fmt17(m.p_max_rel) << '\n';
  out << "p_rms_rel," << fmt17(m.p_rms_rel) << '\n';
  out << "s_max_rel," << fmt17(m.s_max_rel) << '\n';
  out << "s_rms_rel," << fmt17(m.s_rms_rel) << '\n';
  out << "combined_max_abs," << fmt17(m.combined_max_abs) << '\n';
  out << "combined_max_rel," << fmt17(m.combined_max_rel) << '\n';
}

std::vector<double> world_acoustic_caps(const Scene& scene,
                                        const std::vector<CapacitanceMatrix>& caps) {
  std::vector<double> out;
  out.reserve(scene.obstacles.size());
  for (std::size_t m = 0; m < scene.obstacles.size(); ++m)
    out.push_back(scene.obstacles[m].scale * caps[m].acoustic);
  return out;
}

double max_incident_norm(const Scene& scene) {
  double best = 0.0;
  for (const auto& ob : scene.obstacles)
    best = std::max(best, incident_field(scene.wave, ob.center, scene.wn).norm());
  return best;
}

int parse_threads(const std::string& value) {
  try {
    const int n = std::stoi(value);
    if (n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw ConfigError("--threads: expected a positive integer");
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> run_caps(const ScenarioConfig& cfg) {
  const Scene scene = build_scene(cfg);
  const std::string path = out_path(cfg, "caps.csv");
  auto out = open_out(path);
  out << "c11,c12,c13,c21,c22,c23,c31,c32,c33,acoustic,panels,shape_id,bounds\n";
  for (std::size_t s = 0; s < scene.shapes.size(); ++s) {
    const CapacitanceMatrix cap = capacitance_matrix(*scene.shapes[s], scene.lame);
    const auto bounds = verify_eigenvalue_bounds(cap, scene.lame);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out << fmt17(cap.matrix(i, j)) << ',';
    out << fmt17(cap.acoustic) << ',' << cap.mesh_panels << ',' << scene.shape_ids[s] << ','
        << (bounds.ok ? "ok" : "violated") << '\n';
  }
  return {path};
}

std::vector<std::string> run_forward(const ScenarioConfig& cfg) {
  const Scene scene = build_scene(cfg);
  const auto caps = shape_capacitances(scene, scene.lame);
  const ForwardResult result = forward_core(scene, caps);

  const std::string charges_path = out_path(cfg, "charges.csv");
  auto charges_out = open_out(charges_path);
  write_charges_csv(charges_out, result.charges.q);

  const std::string ff_path = out_path(cfg, "farfield.csv");
  auto ff_out = open_out(ff_path);
  write_farfield_csv(ff_out, result.pattern);
  return {charges_path, ff_path};
}

std::vector<std::string> run_oracle(const ScenarioConfig& cfg) {
  const Scene scene = build_scene(cfg);
  const OracleSolution sol = oracle_solve(scene.obstacles, scene.wave, scene.wn, scene.lame);
  const FarFieldPattern pattern = oracle_farfield(sol, scene.directions, scene.wn, scene.lame);

  const std::string charges_path = out_path(cfg, "oracle_charges.csv");
  auto charges_out = open_out(charges_path);
  write_charges_csv(charges_out, sol.charges);

  const std::string density_path = out_path(cfg, "oracle_density.csv");
  auto density_out = open_out(density_path);
  density_out << "panel,phi1_re,phi1_im,phi2_re,phi2_im,phi3_re,phi3_im\n";
  for (std::size_t p = 0; p < sol.density.size(); ++p) {
    density_out << p;
    for (int i = 0; i < 3; ++i)
      density_out << ',' << fmt17(sol.density[p][i].real()) << ','
                  << fmt17(sol.density[p][i].imag());
    density_out << '\n';
  }

  const std::string ff_path = out_path(cfg, "oracle_farfield.csv");
  auto ff_out = open_out(ff_path);
  write_farfield_csv(ff_out, pattern);
  return {charges_path, density_path, ff_path};
}

std::vector<std::string> run_compare(const ScenarioConfig& cfg, CompareMetrics* metrics) {
  const Scene scene = build_scene(cfg);
  const CompareMetrics m = compare_core(scene);
  if (metrics) *metrics = m;
  const std::string path = out_path(cfg, "compare.csv");
  auto out = open_out(path);
  write_compare_csv(out, m);
  return {path};
}

std::vector<std::string> run_check(const ScenarioConfig& cfg, std::ostream& text,
                                   CheckOutput* result) {
  const Scene scene = build_scene(cfg);
  const auto caps = shape_capacitances(scene, scene.lame);
  CheckOutput check;
  check.stats = compute_stats(scene.obstacles);
  check.report = validity_report(check.stats, scene.wn, scene.lame);
  if (check.report.t_positive) {
    check.corollary_applicable = true;
    const auto solv = solvability_check(world_acoustic_caps(scene, caps), check.stats.d,
                                        check.report, scene.lame, max_incident_norm(scene));
    check.certified = solv.certified;
    check.charge_sum_bound = solv.charge_sum_bound;
  }

  text << "M = " << check.stats.count << '\n';
  text << "a = " << fmt17(check.stats.a) << '\n';
  text << "d = " << fmt17(check.stats.d) << '\n';
  text << "diam_omega = " << fmt17(check.stats.diam_omega) << '\n';
  text << "N_omega = " << check.report.n_omega << '\n';
  text << "t = " << fmt17(check.report.t) << '\n';
  text << "sqrt(M-1)*a/d = " << fmt17(check.report.sqrt_m1_a_over_d) << '\n';
  text << "t_positive = " << (check.report.t_positive ? "yes" : "no") << '\n';
  text << "footnote_small_domain = " << (check.report.footnote_small_domain ? "yes" : "no")
       << '\n';
  if (check.report.footnote_small_domain && check.report.t_positive && check.report.n_omega == 1)
    text << "footnote regime: t>0, N_omega=1\n";
  if (!check.corollary_applicable)
    text << "corollary verdict = inapplicable (t <= 0)\n";
  else if (check.certified) {
    text << "corollary verdict = certified\n";
    text << "charge_sum_bound = " << fmt17(check.charge_sum_bound) << '\n';
  } else {
    text << "corollary verdict = not certified\n";
  }

  const std::string path = out_path(cfg, "check.csv");
  auto out = open_out(path);
  out << "key,value\n";
  out << "M," << check.stats.count << '\n';
  out << "a," << fmt17(check.stats.a) << '\n';
  out << "d," << fmt17(check.stats.d) << '\n';
  out << "diam_omega," << fmt17(check.stats.diam_omega) << '\n';
  out << "N_omega," << check.report.n_omega << '\n';
  out << "t," << fmt17(check.report.t) << '\n';
  out << "sqrtM1_a_over_d," << fmt17(check.report.sqrt_m1_a_over_d) << '\n';
  out << "t_positive," << (check.report.t_positive ? 1 : 0) << '\n';
  out << "footnote_small_domain," << (check.report.footnote_small_domain ? 1 : 0) << '\n';
  out << "corollary_certified," << (check.certified ? 1 : 0) << '\n';
  out << "charge_sum_bound," << fmt17(check.charge_sum_bound) << '\n';
  if (result) *result = check;
  return {path};
}

std::vector<std::string> run_sweep(const ScenarioConfig& cfg, std::ostream& text,
                                   double* slope_out) {
  if (cfg.sweep_parameter != "a" && cfg.sweep_parameter != "d" && cfg.sweep_parameter != "omega")
    throw ConfigError("sweep: parameter must be one of a, d, omega");
  if (cfg.sweep_values.size() < 3) throw ConfigError("sweep: need at least 3 values");

  const Scene base = build_scene(cfg);
  const GeometryStats base_stats = compute_stats(base.obstacles);
  Vec3 centroid = Vec3::Zero();
  for (const auto& ob : base.obstacles) centroid += ob.center;
  centroid /= static_cast<double>(base.obstacles.size());

  const std::string path = out_path(cfg, "sweep.csv");
  auto out = open_out(path);
  out << "parameter,value,actual_a,actual_d,omega,p_max_abs,s_max_abs,combined_max_abs,"
         "combined_max_rel\n";

  std::vector<double> values, errors;
  for (double value : cfg.sweep_values) {
    if (!(value > 0.0)) throw ConfigError("sweep: values must be positive");
    ScenarioConfig variant = cfg;
    if (cfg.sweep_parameter == "a") {
      const double factor = value / base_stats.a;
      for (auto& spec : variant.obstacles) spec.scale *= factor;
    } else if (cfg.sweep_parameter == "d") {
      if (base.obstacles.size() < 2) throw ConfigError("sweep: d sweep needs M >= 2");
      const double factor = value / base_stats.d;
      for (auto& spec : variant.obstacles)
        spec.center = centroid + factor * (spec.center - centroid);
    } else {
      variant.omega = value;
    }
    const Scene scene = build_scene(variant);
    const GeometryStats stats = compute_stats(scene.obstacles);
    const CompareMetrics m = compare_core(scene);
    values.push_back(value);
    errors.push_back(m.combined_max_abs);
    out << cfg.sweep_parameter << ',' << fmt17(value) << ',' << fmt17(stats.a) << ','
        << fmt17(stats.d) << ',' << fmt17(variant.omega) << ',' << fmt17(m.p_max_abs) << ','
        << fmt17(m.s_max_abs) << ',' << fmt17(m.combined_max_abs) << ','
        << fmt17(m.combined_max_rel) << '\n';
  }
  const double slope = fit_loglog_slope(values, errors);
  out << "slope," << fmt17(slope) << ",,,,,,,\n";
  text << "slope = " << fmt17(slope) << '\n';
  if (slope_out) *slope_out = slope;
  return {path};
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    std::string command, config_path, out_dir;
    int threads = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string& arg = args[i];
      auto next = [&](const char* flag) -> const std::string& {
        if (i + 1 >= args.size()) throw ConfigError(std::string("missing value for ") + flag);
        return args[++i];
      };
      if (arg == "--config") config_path = next("--config");
      else if (arg == "--out") out_dir = next("--out");
      else if (arg == "--threads") threads = parse_threads(next("--threads"));
      else if (!arg.empty() && arg[0] == '-') throw ConfigError("unknown flag: " + arg);
      else if (command.empty()) command = arg;
      else throw ConfigError("unexpected argument: " + arg);
    }
    if (command.empty())
      throw ConfigError("usage: smallscat <caps|forward|oracle|compare|check|sweep> "
                        "--config PATH [--out DIR] [--threads N]");
    if (config_path.empty()) throw ConfigError("missing --config PATH");

    if (threads > 0) {
#ifdef _OPENMP
      omp_set_num_threads(threads);
#endif
      Eigen::setNbThreads(threads);
    }

    ScenarioConfig cfg = load_scenario(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;

    std::vector<std::string> files;
    if (command == "caps") files = run_caps(cfg);
    else if (command == "forward") files = run_forward(cfg);
    else if (command == "oracle") files = run_oracle(cfg);
    else if (command == "compare") files = run_compare(cfg);
    else if (command == "check") files = run_check(cfg, out);
    else if (command == "sweep") files = run_sweep(cfg, out);
    else throw ConfigError("unknown command: " + command);

    for (const auto& f : files) out << f << '\n';
    return 0;
  } catch (const InvertibilityError& e) {
    err << "invertibility failure: " << e.what() << '\n';
    return 4;
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace smallscat::cli

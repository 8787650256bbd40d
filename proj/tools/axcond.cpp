#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "axcond/config.hpp"
#include "axcond/diagnostics.hpp"
#include "axcond/envelope.hpp"
#include "axcond/field.hpp"
#include "axcond/measures.hpp"
#include "axcond/runner.hpp"
#include "axcond/scaling.hpp"

using namespace axcond;

namespace {

// exit codes: 0 ok, 2 validation, 3 numerical failure, 4 empty result
struct EmptyResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint64_t> seed_list(const ExperimentConfig& cfg) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(cfg.n_real));
  for (std::int64_t i = 0; i < cfg.n_real; ++i)
    seeds[static_cast<std::size_t>(i)] = realization_seed(cfg.seed, i);
  return seeds;
}

std::string output_path(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.outdir);
  return (std::filesystem::path(cfg.outdir) / name).string();
}

void emit(const ExperimentConfig& cfg, const std::string& stem, const std::string& csv,
          const nlohmann::json& json, std::chrono::steady_clock::time_point t0) {
  const std::string csv_path = output_path(cfg, stem + ".csv");
  const std::string json_path = output_path(cfg, stem + ".json");
  write_text_file(csv_path, csv);
  write_text_file(json_path, json.dump(2) + "\n");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("wrote %s, %s (%.2f s)\n", csv_path.c_str(), json_path.c_str(), secs);
}

std::string measure_csv(const ExperimentConfig& cfg, const BinnedMeasure& m) {
  std::string out = csv_envelope_header(cfg);
  out += "bin_lo,bin_hi,mass_mean,mass_stderr,n\n";
  for (std::int64_t k = 0; k < m.bins(); ++k) {
    out += format_double(m.edges[static_cast<std::size_t>(k)]) + ",";
    out += format_double(m.edges[static_cast<std::size_t>(k) + 1]) + ",";
    out += format_double(m.mass_mean[static_cast<std::size_t>(k)]) + ",";
    out += csv_cell(m.mass_stderr[static_cast<std::size_t>(k)]) + ",";
    out += std::to_string(m.n_real) + "\n";
  }
  return out;
}

nlohmann::json measure_json(const ExperimentConfig& cfg, const BinnedMeasure& m,
                            const std::vector<std::string>& warnings) {
  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, seed_list(cfg), warnings);
  j["extension"] = m.extension == Extension::even ? "even" : "none";
  j["total_mass"] = m.total_mass;
  j["n_real"] = m.n_real;
  return j;
}

// ---- dos ----------------------------------------------------------------

int run_dos(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const TorusLattice lat = TorusLattice::build(cfg.d, cfg.l);
  const DisorderModel model = DisorderModel::uniform(cfg.w, cfg.seed);
  MeasureAccumulator acc(linspace_edges(cfg.e_lo, cfg.e_hi, cfg.e_bins), cfg.n_real);
  run_indexed(cfg.n_real, cfg.workers, [&](std::int64_t i) {
    const Realization r = sample_potential(model, lat, i);
    const EigenSystem eig = diagonalize(build_hamiltonian(lat, r));
    acc.set(i, dos_masses_single(eig, acc.edges));
  });
  const BinnedMeasure m = acc.finalize(Extension::none);
  nlohmann::json j = measure_json(cfg, m, {});
  j["rho_sup"] = model.rho_sup;
  emit(cfg, "dos", measure_csv(cfg, m), j, t0);
  return 0;
}

// ---- sigma --------------------------------------------------------------

int run_sigma(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const TorusLattice lat = TorusLattice::build(cfg.d, cfg.l);
  const DisorderModel model = DisorderModel::uniform(cfg.w, cfg.seed);
  const VelocityVariant variant = parse_velocity_variant(cfg.variant);
  MeasureAccumulator acc(linspace_edges(0.0, cfg.nu_max, cfg.nu_bins), cfg.n_real);
  std::vector<std::int64_t> degenerate(static_cast<std::size_t>(cfg.n_real), 0);
  run_indexed(cfg.n_real, cfg.workers, [&](std::int64_t i) {
    const Realization r = sample_potential(model, lat, i);
    const LatticeOperator h = build_hamiltonian(lat, r);
    const EigenSystem eig = diagonalize(h);
    SigmaSingle s =
        sigma_masses_single(eig, velocity_core(lat, h, variant), cfg.e_f, acc.edges);
    degenerate[static_cast<std::size_t>(i)] = s.degenerate_pairs;
    acc.set(i, std::move(s.masses));
  });
  std::int64_t degenerate_total = 0;
  for (std::int64_t d : degenerate) degenerate_total += d;
  const BinnedMeasure m = acc.finalize(Extension::even);
  if (degenerate_total > 0)
    throw std::runtime_error("degenerate straddling pairs encountered: " +
                             std::to_string(degenerate_total));
  nlohmann::json j = measure_json(cfg, m, {});
  j["degenerate_pairs"] = degenerate_total;
  emit(cfg, "sigma", measure_csv(cfg, m), j, t0);
  return 0;
}

// ---- psi ----------------------------------------------------------------

int run_psi(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const TorusLattice lat = TorusLattice::build(cfg.d, cfg.l);
  const DisorderModel model = DisorderModel::uniform(cfg.w, cfg.seed);
  const VelocityVariant variant = parse_velocity_variant(cfg.variant);
  const EnergyWindows w = EnergyWindows::at(cfg.e_f, cfg.nu);
  if (cfg.windows != "I" && cfg.windows != "J")
    throw std::invalid_argument("windows must be I or J, got " + cfg.windows);
  const Interval plus = cfg.windows == "I" ? w.i_plus : w.j_plus;
  const Interval minus = cfg.windows == "I" ? w.i_minus : w.j_minus;
  const std::vector<double> c1 = lat.centered_positions();

  std::vector<double> pos(static_cast<std::size_t>(cfg.n_real));
  std::vector<double> vel(static_cast<std::size_t>(cfg.n_real));
  std::vector<std::int64_t> degenerate(static_cast<std::size_t>(cfg.n_real), 0);
  run_indexed(cfg.n_real, cfg.workers, [&](std::int64_t i) {
    const Realization r = sample_potential(model, lat, i);
    const LatticeOperator h = build_hamiltonian(lat, r);
    const EigenSystem eig = diagonalize(h);
    pos[static_cast<std::size_t>(i)] = psi_position_single(eig, c1, plus, minus);
    const PsiVelocity pv =
        psi_velocity_single(eig, velocity_core(lat, h, variant), plus, minus);
    vel[static_cast<std::size_t>(i)] = pv.value;
    degenerate[static_cast<std::size_t>(i)] = pv.degenerate_pairs;
  });
  const ScalarStats sp = reduce_scalar(pos);
  const ScalarStats sv = reduce_scalar(vel);
  double max_rel = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i)
    if (pos[i] > 0.0) max_rel = std::max(max_rel, std::abs(pos[i] - vel[i]) / pos[i]);
  std::int64_t degenerate_total = 0;
  for (std::int64_t d : degenerate) degenerate_total += d;

  std::string csv = csv_envelope_header(cfg);
  csv += "quantity,mean,stderr,n\n";
  csv += "psi_position," + format_double(sp.mean) + "," + csv_cell(sp.stderr_) + "," +
         std::to_string(sp.n) + "\n";
  csv += "psi_velocity," + format_double(sv.mean) + "," + csv_cell(sv.stderr_) + "," +
         std::to_string(sv.n) + "\n";
  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, seed_list(cfg), {});
  j["psi_position"] = {{"mean", sp.mean}, {"stderr", sp.stderr_}, {"n", sp.n}};
  j["psi_velocity"] = {{"mean", sv.mean}, {"stderr", sv.stderr_}, {"n", sv.n}};
  j["max_form_mismatch"] = max_rel;
  j["degenerate_pairs"] = degenerate_total;
  j["windows"] = cfg.windows;
  emit(cfg, "psi", csv, j, t0);
  return 0;
}

// ---- respond ------------------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse number: '" + s + "'");
  }
}

std::vector<std::vector<double>> load_csv(const std::string& path,
                                          std::size_t expect_cols) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() < expect_cols)
      throw std::invalid_argument(path + ": expected " + std::to_string(expect_cols) +
                                  " columns, got " + std::to_string(cells.size()));
    std::vector<double> row(expect_cols);
    for (std::size_t c = 0; c < expect_cols; ++c) row[c] = parse_cell(cells[c]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument(path + ": no data rows");
  return rows;
}

struct RespondArgs {
  std::string measure_path, field_path;
  double t0 = 0.0, t1 = 10.0;
  std::int64_t t_n = 200;
};

int run_respond(const ExperimentConfig& cfg, const RespondArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto mrows = load_csv(args.measure_path, 3);
  BinnedMeasure m;
  m.extension = Extension::even;
  m.edges.push_back(mrows.front()[0]);
  for (const auto& r : mrows) {
    if (r[0] != m.edges.back())
      throw std::invalid_argument(args.measure_path + ": bins are not contiguous");
    m.edges.push_back(r[1]);
    m.mass_mean.push_back(r[2]);
    m.total_mass += r[2];
  }
  m.mass_stderr.assign(m.mass_mean.size(), std::numeric_limits<double>::quiet_NaN());
  validate_edges(m.edges);

  const auto frows = load_csv(args.field_path, 3);
  std::vector<double> fnu;
  std::vector<std::complex<double>> famp;
  for (const auto& r : frows) {
    fnu.push_back(r[0]);
    famp.emplace_back(r[1], r[2]);
  }
  const FieldProfile field = FieldProfile::make(std::move(fnu), std::move(famp));

  if (args.t_n < 1) throw std::invalid_argument("need at least one time sample");
  std::vector<double> ts(static_cast<std::size_t>(args.t_n));
  for (std::int64_t i = 0; i < args.t_n; ++i)
    ts[static_cast<std::size_t>(i)] =
        args.t_n == 1 ? args.t0
                      : args.t0 + (args.t1 - args.t0) * static_cast<double>(i) /
                            static_cast<double>(args.t_n - 1);

  const std::vector<double> j_in = in_phase_current(m, field, ts);
  const std::vector<double> j_out = out_phase_current(m, field, ts);

  std::string csv = csv_envelope_header(cfg);
  csv += "t,j_in,j_out\n";
  for (std::size_t i = 0; i < ts.size(); ++i)
    csv += format_double(ts[i]) + "," + format_double(j_in[i]) + "," +
           format_double(j_out[i]) + "\n";

  std::ifstream mf(args.measure_path, std::ios::binary);
  std::ifstream ff(args.field_path, std::ios::binary);
  std::stringstream mb, fb;
  mb << mf.rdbuf();
  fb << ff.rdbuf();
  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, {}, {});
  j["measure_file"] = args.measure_path;
  j["measure_file_hash"] = fnv1a64(mb.str());
  j["field_file"] = args.field_path;
  j["field_file_hash"] = fnv1a64(fb.str());
  j["t_grid"] = {{"lo", args.t0}, {"hi", args.t1}, {"n", args.t_n}};
  emit(cfg, "respond", csv, j, t0);
  return 0;
}

// ---- wegner / minami ----------------------------------------------------

McJob mc_job(const ExperimentConfig& cfg) {
  McJob job;
  job.d = cfg.d;
  job.l = cfg.l;
  job.model = DisorderModel::uniform(cfg.w, cfg.seed);
  job.n_real = cfg.n_real;
  job.workers = cfg.workers;
  return job;
}

int run_wegner(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.intervals.empty())
    throw std::invalid_argument("wegner needs at least one --interval lo:hi");
  const McJob job = mc_job(cfg);
  std::string csv = csv_envelope_header(cfg);
  csv += "lo,hi,lhs_mean,lhs_stderr,rhs,margin,pass\n";
  nlohmann::json cells = nlohmann::json::array();
  bool all_pass = true;
  for (const Interval& iv : cfg.intervals) {
    const BoundCheck b = wegner_check(job, iv);
    all_pass = all_pass && b.pass;
    csv += format_double(iv.lo) + "," + format_double(iv.hi) + "," +
           format_double(b.lhs_mean) + "," + csv_cell(b.lhs_stderr) + "," +
           format_double(b.rhs) + "," + format_double(b.margin) + "," +
           (b.pass ? "1" : "0") + "\n";
    cells.push_back({{"lo", iv.lo},
                     {"hi", iv.hi},
                     {"lhs_mean", b.lhs_mean},
                     {"lhs_stderr", b.lhs_stderr},
                     {"rhs", b.rhs},
                     {"margin", b.margin},
                     {"pass", b.pass}});
  }
  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, seed_list(cfg), {});
  j["cells"] = cells;
  j["all_pass"] = all_pass;
  emit(cfg, "wegner", csv, j, t0);
  return 0;
}

int run_minami(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.intervals.empty())
    throw std::invalid_argument("minami needs at least one --interval lo:hi");
  const McJob job = mc_job(cfg);
  std::string csv = csv_envelope_header(cfg);
  csv += "lo,hi,lhs_mean,lhs_stderr,rhs,margin,pass,normalized_lhs,mean_filling_sq\n";
  nlohmann::json cells = nlohmann::json::array();
  bool all_pass = true;
  for (const Interval& iv : cfg.intervals) {
    const MinamiCheck m = minami_check(job, iv);
    all_pass = all_pass && m.bound.pass;
    csv += format_double(iv.lo) + "," + format_double(iv.hi) + "," +
           format_double(m.bound.lhs_mean) + "," + csv_cell(m.bound.lhs_stderr) + "," +
           format_double(m.bound.rhs) + "," + format_double(m.bound.margin) + "," +
           (m.bound.pass ? "1" : "0") + "," + format_double(m.normalized_lhs) + "," +
           format_double(m.mean_filling_sq) + "\n";
    cells.push_back({{"lo", iv.lo},
                     {"hi", iv.hi},
                     {"lhs_mean", m.bound.lhs_mean},
                     {"lhs_stderr", m.bound.lhs_stderr},
                     {"rhs", m.bound.rhs},
                     {"margin", m.bound.margin},
                     {"pass", m.bound.pass},
                     {"normalized_lhs", m.normalized_lhs},
                     {"mean_filling_sq", m.mean_filling_sq}});
  }
  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, seed_list(cfg), {});
  j["cells"] = cells;
  j["all_pass"] = all_pass;
  emit(cfg, "minami", csv, j, t0);
  return 0;
}

// ---- chain ----------------------------------------------------------------

int run_chain(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const ChainCheck c = chain_check(mc_job(cfg), cfg.e_f, cfg.nu);
  std::string csv = csv_envelope_header(cfg);
  csv += "nu,n_real,violations,worst_margin,end_lhs_mean,end_lhs_stderr,end_rhs,end_pass\n";
  csv += format_double(cfg.nu) + "," + std::to_string(c.n) + "," +
         std::to_string(c.violations) + "," + format_double(c.worst_margin) + "," +
         format_double(c.end_to_end.lhs_mean) + "," + csv_cell(c.end_to_end.lhs_stderr) +
         "," + format_double(c.end_to_end.rhs) + "," + (c.end_to_end.pass ? "1" : "0") +
         "\n";
  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, seed_list(cfg), {});
  j["violations"] = c.violations;
  j["worst_margin"] = c.worst_margin;
  j["end_to_end"] = {{"lhs_mean", c.end_to_end.lhs_mean},
                     {"lhs_stderr", c.end_to_end.lhs_stderr},
                     {"rhs", c.end_to_end.rhs},
                     {"margin", c.end_to_end.margin},
                     {"pass", c.end_to_end.pass}};
  emit(cfg, "chain", csv, j, t0);
  return 0;
}

// ---- green / fermi-decay --------------------------------------------------

std::string curve_csv(const ExperimentConfig& cfg, const DecayCurve& c) {
  std::string csv = csv_envelope_header(cfg);
  csv += "dist,mean,stderr,n\n";
  for (std::size_t i = 0; i < c.dist.size(); ++i)
    csv += std::to_string(c.dist[i]) + "," + format_double(c.mean[i]) + "," +
           csv_cell(c.stderr_[i]) + "," + std::to_string(c.n_real) + "\n";
  return csv;
}

nlohmann::json fit_json(const DecayFit& f) {
  return {{"k_hat", f.k_hat},         {"ell_hat", f.ell_hat},
          {"slope", f.slope},         {"slope_stderr", f.slope_stderr},
          {"r2", f.r2},               {"points_used", f.points_used}};
}

int run_green(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  GreenJob job;
  job.mc = mc_job(cfg);
  job.e = cfg.green_e;
  job.eta = cfg.eta;
  job.s = cfg.s;
  const DecayCurve curve = green_decay_curve(job);
  const DecayFit fit =
      fit_exponential_decay(curve, cfg.fit_min_dist, cfg.mean_floor, cfg.s);
  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, seed_list(cfg), curve.warnings);
  j["fit"] = fit_json(fit);
  emit(cfg, "green", curve_csv(cfg, curve), j, t0);
  return 0;
}

int run_fermi(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  FermiJob job;
  job.mc = mc_job(cfg);
  job.e_f = cfg.e_f;
  job.p = cfg.p;
  const DecayCurve curve = fermi_decay_curve(job);
  const DecayFit fit =
      fit_exponential_decay(curve, cfg.fit_min_dist, cfg.mean_floor, cfg.p);
  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, seed_list(cfg), curve.warnings);
  j["fit"] = fit_json(fit);
  emit(cfg, "fermi-decay", curve_csv(cfg, curve), j, t0);
  return 0;
}

// ---- spacings ---------------------------------------------------------------

int run_spacings(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SpacingJob job;
  job.mc = mc_job(cfg);
  job.window = {cfg.spacing_lo, cfg.spacing_hi};
  const SpacingStats st = level_spacing_stats(job);
  if (st.n_spacings == 0) throw EmptyResult("no spacings fell inside the window");
  std::string csv = csv_envelope_header(cfg);
  csv += "bin_lo,bin_hi,mass\n";
  for (std::size_t k = 0; k + 1 < st.edges.size(); ++k)
    csv += format_double(st.edges[k]) + "," + format_double(st.edges[k + 1]) + "," +
           format_double(st.hist[k]) + "\n";
  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, seed_list(cfg), {});
  j["ks_exp"] = st.ks_exp;
  j["n_spacings"] = st.n_spacings;
  emit(cfg, "spacings", csv, j, t0);
  return 0;
}

// ---- mott -------------------------------------------------------------------

int run_mott(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.nu_grid.empty())
    throw std::invalid_argument("mott needs a frequency grid (--nu-grid a,b,c)");
  MottJob job;
  job.d = cfg.d;
  job.model = DisorderModel::uniform(cfg.w, cfg.seed);
  job.e_f = cfg.e_f;
  job.nu_grid = cfg.nu_grid;
  job.factor = cfg.factor;
  job.cap = cfg.cap;
  if (cfg.cap_mode == "clamp")
    job.clamp = true;
  else if (cfg.cap_mode != "drop")
    throw std::invalid_argument("cap mode must be drop or clamp, got " + cfg.cap_mode);
  job.ell_override = cfg.ell;
  job.ell_eta = cfg.eta;
  job.ell_s = cfg.s;
  job.n_real = cfg.n_real;
  job.workers = cfg.workers;
  job.observable = cfg.observable;
  job.variant = parse_velocity_variant(cfg.variant);

  const MottResult res = mott_sweep(job);
  for (const auto& w : res.warnings) std::printf("warning: %s\n", w.c_str());
  if (res.points.empty())
    throw EmptyResult("every frequency was dropped by the side cap");
  if (res.degenerate_pairs > 0)
    throw std::runtime_error("degenerate straddling pairs encountered: " +
                             std::to_string(res.degenerate_pairs));

  std::string csv = csv_envelope_header(cfg);
  csv += "nu,L,n_real,y_mean,y_stderr,ratio_205,ratio_36\n";
  for (const auto& p : res.points)
    csv += format_double(p.nu) + "," + std::to_string(p.side) + "," +
           std::to_string(p.n_real) + "," + format_double(p.y_mean) + "," +
           csv_cell(p.y_stderr) + "," + format_double(p.ratio_205) + "," +
           format_double(p.ratio_36) + "\n";

  nlohmann::json j;
  j["envelope"] = make_envelope(cfg, seed_list(cfg), res.warnings);
  j["observable"] = cfg.observable;
  j["ell_used"] = res.ell_used;
  j["bound_constant_205"] =
      scaling_bound_constant(205.0, cfg.d, job.model.rho_sup, res.ell_used);
  j["bound_constant_36"] =
      scaling_bound_constant(36.0, cfg.d, job.model.rho_sup, res.ell_used);
  j["exponent_reference"] = {{"heuristic", cfg.d + 1}, {"proven_bound", cfg.d + 2}};
  if (res.fit_valid) {
    j["fit"] = {{"c_hat", res.fit.c_hat},
                {"gamma_hat", res.fit.gamma_hat},
                {"gamma_stderr", res.fit.gamma_stderr},
                {"r2", res.fit.r2},
                {"weighted", res.fit.weighted},
                {"points_used", res.fit.points_used}};
  }
  emit(cfg, "mott", csv, j, t0);
  return 0;
}

// ---- wiring -------------------------------------------------------------

void add_common(CLI::App* sub, ExperimentConfig& cfg, std::vector<std::string>& raw_intervals,
                std::string& raw_grid) {
  sub->add_option("--d", cfg.d, "lattice dimension");
  sub->add_option("--l", cfg.l, "lattice side");
  sub->add_option("--w", cfg.w, "disorder width");
  sub->add_option("--seed", cfg.seed, "master seed");
  sub->add_option("--e-f", cfg.e_f, "Fermi energy");
  sub->add_option("--nu", cfg.nu, "frequency scale");
  sub->add_option("--variant", cfg.variant, "velocity variant: commutator or current");
  sub->add_option("--windows", cfg.windows, "rectangle windows: I or J");
  sub->add_option("--e-lo", cfg.e_lo, "energy grid lower edge");
  sub->add_option("--e-hi", cfg.e_hi, "energy grid upper edge");
  sub->add_option("--e-bins", cfg.e_bins, "energy grid bin count");
  sub->add_option("--nu-max", cfg.nu_max, "frequency grid upper edge");
  sub->add_option("--nu-bins", cfg.nu_bins, "frequency grid bin count");
  sub->add_option("--interval", raw_intervals, "interval lo:hi (repeatable)");
  sub->add_option("--green-e", cfg.green_e, "resolvent energy");
  sub->add_option("--eta", cfg.eta, "resolvent broadening");
  sub->add_option("--s", cfg.s, "fractional moment order");
  sub->add_option("--fit-min-dist", cfg.fit_min_dist, "decay fit: smallest distance");
  sub->add_option("--mean-floor", cfg.mean_floor, "decay fit: drop means at or below this");
  sub->add_option("--p", cfg.p, "projection moment order");
  sub->add_option("--spacing-lo", cfg.spacing_lo, "spacing window lower edge");
  sub->add_option("--spacing-hi", cfg.spacing_hi, "spacing window upper edge");
  sub->add_option("--nu-grid", raw_grid, "comma-separated frequency sweep");
  sub->add_option("--factor", cfg.factor, "side rule prefactor");
  sub->add_option("--cap", cfg.cap, "side cap");
  sub->add_option("--cap-mode", cfg.cap_mode, "side cap policy: drop or clamp");
  sub->add_option("--ell", cfg.ell, "localization length override (0 = estimate)");
  sub->add_option("--observable", cfg.observable, "sweep observable: psi or sigma_bar");
  sub->add_option("--n-real", cfg.n_real, "realization count");
  sub->add_option("--workers", cfg.workers, "worker threads");
  sub->add_option("--outdir", cfg.outdir, "output directory");
}

void parse_raw(ExperimentConfig& cfg, const std::vector<std::string>& raw_intervals,
               const std::string& raw_grid) {
  for (const std::string& s : raw_intervals) {
    const auto pos = s.find(':');
    if (pos == std::string::npos)
      throw std::invalid_argument("interval must be lo:hi, got '" + s + "'");
    Interval iv{parse_cell(s.substr(0, pos)), parse_cell(s.substr(pos + 1))};
    if (!(iv.lo < iv.hi))
      throw std::invalid_argument("interval must have lo < hi, got '" + s + "'");
    cfg.intervals.push_back(iv);
  }
  if (!raw_grid.empty()) {
    std::stringstream ss(raw_grid);
    std::string tok;
    while (std::getline(ss, tok, ',')) cfg.nu_grid.push_back(parse_cell(tok));
  }
}

void validate_common(const ExperimentConfig& cfg) {
  std::vector<std::string> bad;
  if (cfg.n_real < 1) bad.push_back("n-real (must be >= 1)");
  if (cfg.workers < 1) bad.push_back("workers (must be >= 1)");
  if (cfg.d < 1) bad.push_back("d (must be >= 1)");
  if (cfg.l < 3) bad.push_back("l (must be >= 3)");
  if (!(cfg.w > 0.0)) bad.push_back("w (must be > 0)");
  if (!bad.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& b : bad) msg += " " + b + ";";
    throw std::invalid_argument(msg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ac-conductivity estimators for the Anderson tight-binding model"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::vector<std::string> raw_intervals;
  std::string raw_grid;
  RespondArgs respond_args;

  CLI::App* dos = app.add_subcommand("dos", "density of states on an energy grid");
  CLI::App* sigma = app.add_subcommand("sigma", "conductivity measure on a frequency grid");
  CLI::App* psi = app.add_subcommand("psi", "localization rectangle sum at paired windows");
  CLI::App* respond = app.add_subcommand("respond", "linear-response currents from a stored measure");
  CLI::App* wegner = app.add_subcommand("wegner", "eigenvalue density bound check");
  CLI::App* minami = app.add_subcommand("minami", "eigenvalue pair bound check");
  CLI::App* chain = app.add_subcommand("chain", "projected position trace bound check");
  CLI::App* green = app.add_subcommand("green", "fractional resolvent moment decay");
  CLI::App* fermi = app.add_subcommand("fermi-decay", "Fermi projection kernel decay");
  CLI::App* spacings = app.add_subcommand("spacings", "unfolded level spacing statistics");
  CLI::App* mott = app.add_subcommand("mott", "low-frequency scaling sweep and exponent fit");

  for (CLI::App* sub : {dos, sigma, psi, respond, wegner, minami, chain, green, fermi,
                        spacings, mott})
    add_common(sub, cfg, raw_intervals, raw_grid);
  respond->add_option("--measure", respond_args.measure_path, "measure CSV path")->required();
  respond->add_option("--field", respond_args.field_path, "field CSV path")->required();
  respond->add_option("--t0", respond_args.t0, "time grid start");
  respond->add_option("--t1", respond_args.t1, "time grid end");
  respond->add_option("--t-n", respond_args.t_n, "time grid samples");

  // fermi: eigenvector components below solver noise would corrupt the fit
  fermi->parse_complete_callback([&] {
    if (fermi->count("--mean-floor") == 0) cfg.mean_floor = 1e-12;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    parse_raw(cfg, raw_intervals, raw_grid);
    validate_common(cfg);
    if (dos->parsed()) return run_dos(cfg);
    if (sigma->parsed()) return run_sigma(cfg);
    if (psi->parsed()) return run_psi(cfg);
    if (respond->parsed()) return run_respond(cfg, respond_args);
    if (wegner->parsed()) return run_wegner(cfg);
    if (minami->parsed()) return run_minami(cfg);
    if (chain->parsed()) return run_chain(cfg);
    if (green->parsed()) return run_green(cfg);
    if (fermi->parsed()) return run_fermi(cfg);
    if (spacings->parsed()) return run_spacings(cfg);
    if (mott->parsed()) return run_mott(cfg);
    std::fprintf(stderr, "no subcommand selected\n");
    return 2;
  } catch (const EmptyResult& e) {
    std::fprintf(stderr, "empty result: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
}

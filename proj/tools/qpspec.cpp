// Command-line front end: assembles the requested operator pencil, computes
// its spectrum or pseudospectrum, and writes CSV/JSON/SVG outputs.

#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qps/dirichlet.hpp"
#include "qps/errors.hpp"
#include "qps/experiment.hpp"
#include "qps/periodic.hpp"
#include "qps/pseudospectra.hpp"
#include "qps/spectrum_io.hpp"
#include "qps/version.hpp"

namespace {

using qps::cplx;

qps::periodic::Coefficient parse_coeff(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t colon = text.find(':', pos);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(pos));
      break;
    }
    parts.push_back(text.substr(pos, colon - pos));
    pos = colon + 1;
  }
  if (parts.empty()) throw qps::ConfigError("coeff: empty specification");
  if (parts[0] == "const") {
    if (parts.size() != 2)
      throw qps::ConfigError("coeff: expected const:VALUE, got '" + text + "'");
    return qps::periodic::Coefficient::constant(std::stod(parts[1]));
  }
  if (parts[0] == "sin") {
    double amp = 1.0, freq = 1.0;
    if (parts.size() > 1) amp = std::stod(parts[1]);
    if (parts.size() > 2) freq = std::stod(parts[2]);
    if (parts.size() > 3)
      throw qps::ConfigError("coeff: expected sin[:AMP[:FREQ]], got '" + text +
                             "'");
    return qps::periodic::Coefficient::sinusoid(amp, freq);
  }
  throw qps::ConfigError("coeff: unknown kind '" + parts[0] + "'");
}

cplx parse_shift(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw qps::ConfigError("shift: expected RE,IM, got '" + text + "'");
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

qps::ZGridSpec parse_zgrid(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) {
      parts.push_back(text.substr(pos));
      break;
    }
    parts.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  if (parts.size() != 6)
    throw qps::ConfigError("grid: expected re0,re1,im0,im1,nx,ny");
  qps::ZGridSpec g;
  g.re_min = std::stod(parts[0]);
  g.re_max = std::stod(parts[1]);
  g.im_min = std::stod(parts[2]);
  g.im_max = std::stod(parts[3]);
  g.nx = std::stoi(parts[4]);
  g.ny = std::stoi(parts[5]);
  g.validate();
  return g;
}

struct CommonFlags {
  int dim = 2;
  double extent = 1.0;
  int n = 12;
  double c = 1.0;
  bool c_set = false;
  std::vector<std::string> coeffs;
  double origin = 0.0;
  bool origin_set = false;
  std::string solver = "dense";
  std::vector<std::string> shifts;
  int want = 20;
  int subspace = 80;
  double tol = 1e-10;
  int restarts = 50;
  std::uint64_t seed = 0x5eed;
  bool force = false;
  std::string out_csv, out_json, out_svg;
  std::string export_h0, export_h1;
};

void add_common(CLI::App* sub, CommonFlags& f, bool dirichlet_fields,
                bool periodic_fields) {
  sub->add_option("--dim", f.dim, "spatial dimension (1, 2 or 3)")
      ->check(CLI::Range(1, 3));
  sub->add_option("--extent", f.extent,
                  dirichlet_fields && !periodic_fields
                      ? "box half-width L"
                      : "domain extent (half-width or period)");
  sub->add_option("--n", f.n, "grid points per axis");
  if (dirichlet_fields)
    sub->add_option("--c", f.c, "coupling coefficient of the linear term")
        ->each([&f](const std::string&) { f.c_set = true; });
  if (periodic_fields) {
    sub->add_option("--coeff", f.coeffs,
                    "advection coefficient, const:V or sin[:amp[:freq]]; "
                    "repeat once per dimension");
    sub->add_option("--origin", f.origin, "coordinate of the first grid node")
        ->each([&f](const std::string&) { f.origin_set = true; });
  }
  sub->add_option("--solver", f.solver, "dense or arnoldi")
      ->check(CLI::IsMember({"dense", "arnoldi"}));
  sub->add_option("--shift", f.shifts, "arnoldi target shift RE,IM (repeatable)");
  sub->add_option("--want", f.want, "arnoldi: eigenvalues per shift");
  sub->add_option("--subspace", f.subspace, "arnoldi: Krylov subspace size");
  sub->add_option("--tol", f.tol, "arnoldi: Ritz residual tolerance");
  sub->add_option("--restarts", f.restarts, "arnoldi: restart budget");
  sub->add_option("--seed", f.seed, "seed for start vectors");
  sub->add_flag("--force", f.force, "lift the dense-size guardrail");
  sub->add_option("--out-csv", f.out_csv, "eigenvalue CSV output path");
  sub->add_option("--out-json", f.out_json, "record JSON output path");
  sub->add_option("--out-svg", f.out_svg, "scatter SVG output path");
  sub->add_option("--export-h0", f.export_h0, "Matrix Market dump of h0");
  sub->add_option("--export-h1", f.export_h1, "Matrix Market dump of h1");
}

qps::ExperimentConfig to_config(const CommonFlags& f, bool dirichlet) {
  qps::ExperimentConfig cfg;
  cfg.problem =
      dirichlet ? qps::ProblemKind::dirichlet : qps::ProblemKind::periodic;
  cfg.dim = f.dim;
  cfg.extent = f.extent;
  cfg.n_points = f.n;
  if (dirichlet) {
    if (f.c_set) cfg.coupling = f.c;
  } else {
    if (!f.coeffs.empty()) {
      std::vector<qps::periodic::Coefficient> cs;
      for (const std::string& s : f.coeffs) cs.push_back(parse_coeff(s));
      cfg.coefficients = std::move(cs);
    }
    if (f.origin_set) cfg.origin = f.origin;
  }
  cfg.solver = f.solver == "dense" ? qps::SolverKind::dense
                                   : qps::SolverKind::arnoldi;
  for (const std::string& s : f.shifts) cfg.shifts.push_back(parse_shift(s));
  cfg.want = f.want;
  cfg.subspace = f.subspace;
  cfg.arnoldi_tol = f.tol;
  cfg.max_restarts = f.restarts;
  cfg.seed = f.seed;
  cfg.force = f.force;
  cfg.out_csv = f.out_csv;
  cfg.out_json = f.out_json;
  cfg.out_svg = f.out_svg;
  return cfg;
}

void export_matrices(const qps::ExperimentConfig& cfg, const CommonFlags& f) {
  if (f.export_h0.empty() && f.export_h1.empty()) return;
  if (cfg.problem == qps::ProblemKind::dirichlet) {
    const qps::GridSpec grid = qps::make_grid(
        cfg.dim, qps::GridKind::dirichlet_box, cfg.extent, cfg.n_points);
    const qps::RealPencil p = qps::dirichlet::assemble_pencil(
        {grid, cfg.coupling.value_or(1.0)});
    if (!f.export_h0.empty()) qps::write_matrix_market(p.h0, f.export_h0);
    if (!f.export_h1.empty()) qps::write_matrix_market(p.h1, f.export_h1);
  } else {
    const qps::GridSpec grid =
        qps::make_grid(cfg.dim, qps::GridKind::periodic_torus, cfg.extent,
                       cfg.n_points, cfg.origin);
    qps::periodic::PencilConfig pc;
    pc.grid = grid;
    if (cfg.coefficients.has_value())
      pc.coefficients = *cfg.coefficients;
    else
      pc.coefficients.assign(cfg.dim, qps::periodic::Coefficient::constant(1.0));
    const qps::ComplexPencil p = qps::periodic::assemble_pencil(pc);
    if (!f.export_h0.empty()) qps::write_matrix_market(p.h0, f.export_h0);
    if (!f.export_h1.empty()) qps::write_matrix_market(p.h1, f.export_h1);
  }
}

void print_summary(const qps::SpectrumRecord& rec) {
  std::printf("%s: %zu eigenvalues (%s, companion order %lld, %.2fs)\n",
              rec.tag.c_str(), rec.eigenvalues.size(), rec.stats.kind.c_str(),
              static_cast<long long>(rec.stats.companion_order),
              rec.stats.wall_seconds);
  double worst = 0.0;
  for (const auto& e : rec.eigenvalues) worst = std::max(worst, e.residual);
  std::printf("  worst residual: %.3e\n", worst);
  for (const auto& [k, v] : rec.oracle_deltas)
    std::printf("  %s: %.3e\n", k.c_str(), v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra and pseudospectra of quadratic operator pencils"};
  app.set_version_flag("--version", qps::kToolVersion);
  app.set_config("--config", "", "flat key=value configuration file");
  app.require_subcommand(1);

  CommonFlags fd, fp, fs, fw;

  CLI::App* dirichlet = app.add_subcommand(
      "dirichlet", "box domain with zero boundary data");
  add_common(dirichlet, fd, true, false);

  CLI::App* periodic =
      app.add_subcommand("periodic", "torus domain with advection term");
  add_common(periodic, fp, false, true);

  CLI::App* pseudo = app.add_subcommand(
      "pseudospectrum", "s_min(A - zI) over a rectangular z-grid");
  std::string problem_kind = "dirichlet", zgrid_text;
  int workers = 1;
  pseudo->add_option("--problem", problem_kind, "dirichlet or periodic")
      ->check(CLI::IsMember({"dirichlet", "periodic"}));
  pseudo->add_option("--grid", zgrid_text, "re0,re1,im0,im1,nx,ny")->required();
  pseudo->add_option("--workers", workers, "parallel grid workers");
  add_common(pseudo, fs, true, true);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the experiment matrix over parameter lists");
  std::string sweep_problem = "dirichlet", out_dir = ".";
  std::vector<double> c_list, extent_list;
  std::vector<int> n_list;
  int sweep_workers = 1;
  bool paper_scale = false, sweep_svg = false;
  sweep->add_option("--problem", sweep_problem, "dirichlet or periodic")
      ->check(CLI::IsMember({"dirichlet", "periodic"}));
  sweep->add_option("--c-list", c_list, "coupling values")->delimiter(',');
  sweep->add_option("--n-list", n_list, "grid resolutions")->delimiter(',');
  sweep->add_option("--extent-list", extent_list, "domain extents")
      ->delimiter(',');
  sweep->add_option("--out-dir", out_dir, "output directory");
  sweep->add_option("--workers", sweep_workers, "concurrent runs");
  sweep->add_flag("--paper-scale", paper_scale,
                  "attempt full-size grids via the arnoldi path instead of "
                  "substituting desk-scale resolutions");
  sweep->add_flag("--svg", sweep_svg, "also write scatter SVGs");
  add_common(sweep, fw, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (dirichlet->parsed()) {
      qps::ExperimentConfig cfg = to_config(fd, true);
      export_matrices(cfg, fd);
      print_summary(qps::run_experiment(cfg));
    } else if (periodic->parsed()) {
      qps::ExperimentConfig cfg = to_config(fp, false);
      export_matrices(cfg, fp);
      print_summary(qps::run_experiment(cfg));
    } else if (pseudo->parsed()) {
      qps::ExperimentConfig cfg = to_config(fs, problem_kind == "dirichlet");
      cfg.validate();
      const qps::ZGridSpec zg = parse_zgrid(zgrid_text);
      qps::PseudospectrumField field;
      if (cfg.problem == qps::ProblemKind::dirichlet) {
        const qps::GridSpec grid = qps::make_grid(
            cfg.dim, qps::GridKind::dirichlet_box, cfg.extent, cfg.n_points);
        const qps::RealPencil p = qps::dirichlet::assemble_pencil(
            {grid, cfg.coupling.value_or(1.0)});
        field = qps::scan(p, zg, cfg.seed, workers);
      } else {
        const qps::GridSpec grid =
            qps::make_grid(cfg.dim, qps::GridKind::periodic_torus, cfg.extent,
                           cfg.n_points, cfg.origin);
        qps::periodic::PencilConfig pc;
        pc.grid = grid;
        if (cfg.coefficients.has_value())
          pc.coefficients = *cfg.coefficients;
        else
          pc.coefficients.assign(cfg.dim,
                                 qps::periodic::Coefficient::constant(1.0));
        field = qps::scan(qps::periodic::assemble_pencil(pc), zg, cfg.seed,
                          workers);
      }
      if (!cfg.out_csv.empty()) qps::emit_field_csv(field, cfg.out_csv);
      if (!cfg.out_json.empty()) qps::emit_field_json(field, cfg.out_json);
      if (!cfg.out_svg.empty()) qps::emit_svg_field(field, cfg.out_svg);
      double vmin = field.values.empty() ? 0.0 : field.values[0], vmax = vmin;
      for (double v : field.values) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
      std::printf("pseudospectrum: %dx%d grid, smin range [%.3e, %.3e]\n",
                  zg.nx, zg.ny, vmin, vmax);
    } else if (sweep->parsed()) {
      qps::SweepConfig scfg;
      scfg.base = to_config(fw, sweep_problem == "dirichlet");
      scfg.c_list = c_list;
      scfg.n_list = n_list;
      scfg.extent_list = extent_list;
      scfg.out_dir = out_dir;
      scfg.workers = sweep_workers;
      scfg.paper_scale = paper_scale;
      scfg.emit_svg = sweep_svg;
      const qps::SweepOutcome outcome = qps::run_sweep(scfg);
      int failed = 0;
      for (const auto& r : outcome.records) failed += r.failed ? 1 : 0;
      std::printf("sweep: %zu runs, %d failed, index at %s\n",
                  outcome.records.size(), failed, outcome.index_path.c_str());
      if (failed > 0) return 2;
    }
  } catch (const qps::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const qps::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  }
  return 0;
}

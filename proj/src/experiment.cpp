#include "qps/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qps/dirichlet.hpp"
#include "qps/eig_arnoldi.hpp"
#include "qps/eig_dense.hpp"
#include "qps/oracles.hpp"
#include "qps/version.hpp"

namespace qps {

namespace {

std::string num_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string coeff_tag(const periodic::Coefficient& c) {
  if (c.is_constant()) return "const" + num_tag(c.value);
  return "sin" + num_tag(c.amplitude) + "x" + num_tag(c.frequency);
}

std::string coeff_echo(const periodic::Coefficient& c) {
  if (c.is_constant()) return "const:" + num_tag(c.value);
  return "sin:" + num_tag(c.amplitude) + ":" + num_tag(c.frequency);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dim < 1 || dim > 3) throw ConfigError("dim: must be 1, 2 or 3");
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw ConfigError("extent: must be positive and finite");
  if (n_points < 3) throw ConfigError("n: need at least 3 points per axis");
  if (problem == ProblemKind::dirichlet) {
    if (coefficients.has_value())
      throw ConfigError("coeff: only applies to the periodic problem");
    if (origin != 0.0)
      throw ConfigError("origin: only applies to the periodic problem");
  } else {
    if (coupling.has_value())
      throw ConfigError("c: only applies to the Dirichlet problem");
    if (coefficients.has_value() &&
        static_cast<int>(coefficients->size()) != dim)
      throw ConfigError("coeff: need exactly one coefficient per dimension");
  }
  if (solver == SolverKind::arnoldi) {
    if (shifts.empty())
      throw ConfigError("shift: the Arnoldi solver needs at least one shift");
    if (want < 1 || want >= subspace)
      throw ConfigError("want: need 1 <= want < subspace");
    if (!(arnoldi_tol > 0.0)) throw ConfigError("tol: must be positive");
    if (max_restarts < 0) throw ConfigError("restarts: must be nonnegative");
  } else if (!shifts.empty()) {
    throw ConfigError("shift: only applies to the Arnoldi solver");
  }
}

std::string ExperimentConfig::tag() const {
  std::string t = problem == ProblemKind::dirichlet ? "dirichlet" : "periodic";
  t += "_d" + std::to_string(dim);
  t += "_N" + std::to_string(n_points);
  t += "_L" + num_tag(extent);
  if (problem == ProblemKind::dirichlet) {
    t += "_c" + num_tag(coupling.value_or(1.0));
  } else {
    if (coefficients.has_value())
      for (const auto& c : *coefficients) t += "_" + coeff_tag(c);
    else
      for (int d = 0; d < dim; ++d) t += "_const1";
    if (origin != 0.0) t += "_o" + num_tag(origin);
  }
  if (solver == SolverKind::arnoldi) t += "_arnoldi";
  return t;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("problem",
                  problem == ProblemKind::dirichlet ? "dirichlet" : "periodic");
  kv.emplace_back("dim", std::to_string(dim));
  kv.emplace_back("extent", num_tag(extent));
  kv.emplace_back("n", std::to_string(n_points));
  if (problem == ProblemKind::dirichlet) {
    kv.emplace_back("c", num_tag(coupling.value_or(1.0)));
  } else {
    std::string cs;
    if (coefficients.has_value()) {
      for (std::size_t i = 0; i < coefficients->size(); ++i) {
        if (i) cs += ",";
        cs += coeff_echo((*coefficients)[i]);
      }
    } else {
      for (int d = 0; d < dim; ++d) cs += (d ? ",const:1" : "const:1");
    }
    kv.emplace_back("coeff", cs);
    if (origin != 0.0) kv.emplace_back("origin", num_tag(origin));
  }
  kv.emplace_back("solver",
                  solver == SolverKind::dense ? "dense" : "arnoldi");
  if (solver == SolverKind::arnoldi) {
    std::string ss;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      if (i) ss += ";";
      ss += num_tag(shifts[i].real()) + "," + num_tag(shifts[i].imag());
    }
    kv.emplace_back("shift", ss);
    kv.emplace_back("want", std::to_string(want));
    kv.emplace_back("subspace", std::to_string(subspace));
    kv.emplace_back("tol", num_tag(arnoldi_tol));
  }
  kv.emplace_back("seed", std::to_string(seed));
  return kv;
}

namespace {

struct SolveOutput {
  std::vector<cplx> eigenvalues;
  std::vector<std::vector<cplx>> vectors;  // arnoldi only: companion vectors
  SolverStats stats;
};

template <class T>
SolveOutput solve_pencil(const QuadraticPencil<T>& pencil,
                         const ExperimentConfig& cfg) {
  SolveOutput out;
  out.stats.companion_order = 2 * pencil.order;
  if (cfg.solver == SolverKind::dense) {
    out.stats.kind = "dense";
    if (2 * pencil.order > kDenseCompanionCap && !cfg.force)
      throw SolverError(
          "dense solve refused: companion order " +
          std::to_string(2 * pencil.order) + " exceeds " +
          std::to_string(kDenseCompanionCap) +
          "; use the arnoldi solver (or --force to override)");
    CompanionMatrix<T> comp(pencil);
    SpectrumResult sr =
        eigenvalues(comp.dense(cfg.force ? pencil.order : kDenseCompanionCap / 2));
    out.eigenvalues = std::move(sr.eigenvalues);
    out.stats.total_iterations = sr.total_iterations;
    out.stats.converged = 0;
    for (char c : sr.converged) out.stats.converged += c ? 1 : 0;
    if (!sr.all_converged())
      throw SolverError("dense QR iteration failed to converge");
  } else {
    out.stats.kind = "arnoldi";
    for (const cplx& shift : cfg.shifts) {
      ArnoldiConfig acfg;
      acfg.shift = shift;
      acfg.subspace = std::min<std::int64_t>(cfg.subspace, 2 * pencil.order);
      acfg.wanted = std::min<std::int64_t>(cfg.want, acfg.subspace - 1);
      acfg.tolerance = cfg.arnoldi_tol;
      acfg.max_restarts = cfg.max_restarts;
      acfg.seed = cfg.seed;
      ArnoldiResult ar = arnoldi_shift_invert(pencil, acfg);
      out.stats.restarts += ar.restarts;
      out.stats.op_applications += ar.op_applications;
      for (std::size_t i = 0; i < ar.eigenvalues.size(); ++i) {
        if (!ar.converged[i]) continue;
        // drop duplicates across shifts
        bool dup = false;
        for (const cplx& seen : out.eigenvalues)
          if (std::abs(seen - ar.eigenvalues[i]) <=
              1e-10 * (1.0 + std::abs(seen))) {
            dup = true;
            break;
          }
        if (dup) continue;
        out.eigenvalues.push_back(ar.eigenvalues[i]);
        out.vectors.push_back(std::move(ar.vectors[i]));
        ++out.stats.converged;
      }
    }
    if (out.eigenvalues.empty())
      throw SolverError("arnoldi produced no converged eigenvalues");
  }
  return out;
}

template <class T>
std::vector<EigenvalueEntry> certify_all(const QuadraticPencil<T>& pencil,
                                         const SolveOutput& so,
                                         std::uint64_t seed) {
  std::vector<EigenvalueEntry> entries(so.eigenvalues.size());
  for (std::size_t i = 0; i < so.eigenvalues.size(); ++i) {
    const cplx lambda = so.eigenvalues[i];
    double res;
    if (!so.vectors.empty() && !so.vectors[i].empty()) {
      std::span<const cplx> u(so.vectors[i].data(),
                              static_cast<std::size_t>(pencil.order));
      res = pencil_residual(pencil, lambda, u);
    } else {
      res = certify_eigenpair(pencil, lambda, seed).residual;
    }
    entries[i] = {lambda.real(), lambda.imag(), res};
  }
  std::sort(entries.begin(), entries.end(),
            [](const EigenvalueEntry& a, const EigenvalueEntry& b) {
              return canonical_less(cplx(a.re, a.im), cplx(b.re, b.im));
            });
  return entries;
}

void write_outputs(const SpectrumRecord& rec, const ExperimentConfig& cfg) {
  if (!cfg.out_csv.empty()) emit_csv(rec, cfg.out_csv);
  if (!cfg.out_json.empty()) emit_json(rec, cfg.out_json);
  if (!cfg.out_svg.empty()) emit_svg_scatter(rec, cfg.out_svg);
}

}  // namespace

SpectrumRecord run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  SpectrumRecord rec;
  rec.tag = cfg.tag();
  rec.config = cfg.echo();
  rec.tool_version = kToolVersion;

  const auto t0 = std::chrono::steady_clock::now();

  if (cfg.problem == ProblemKind::dirichlet) {
    const GridSpec grid =
        make_grid(cfg.dim, GridKind::dirichlet_box, cfg.extent, cfg.n_points);
    dirichlet::PencilConfig pc{grid, cfg.coupling.value_or(1.0)};
    const RealPencil pencil = dirichlet::assemble_pencil(pc);
    SolveOutput so = solve_pencil(pencil, cfg);
    rec.eigenvalues = certify_all(pencil, so, cfg.seed);
    rec.stats = so.stats;

    if (pc.coupling == 0.0 && cfg.solver == SolverKind::dense &&
        pencil.order <= 2500) {
      // independent check: spectrum must be {+-i sqrt(mu)} over spec(h0)
      DenseMatrix<double> h0d(pencil.order);
      for (const auto& e : pencil.h0.entries()) h0d(e.row, e.col) = e.value;
      const std::vector<double> mus = symmetric_eigenvalues(std::move(h0d));
      const std::vector<cplx> want = oracles::c0_spectrum(mus);
      std::vector<cplx> got;
      got.reserve(rec.eigenvalues.size());
      for (const auto& e : rec.eigenvalues) got.emplace_back(e.re, e.im);
      rec.oracle_deltas.emplace_back(
          "c0_hausdorff", hausdorff_distance(got, want));
      double max_re = 0.0, max_abs = 0.0;
      for (const cplx& z : got) {
        max_re = std::max(max_re, std::abs(z.real()));
        max_abs = std::max(max_abs, std::abs(z));
      }
      rec.oracle_deltas.emplace_back("c0_max_re_over_max_abs",
                                     max_abs > 0 ? max_re / max_abs : 0.0);
    }
  } else {
    const GridSpec grid = make_grid(cfg.dim, GridKind::periodic_torus,
                                    cfg.extent, cfg.n_points, cfg.origin);
    periodic::PencilConfig pc;
    pc.grid = grid;
    if (cfg.coefficients.has_value())
      pc.coefficients = *cfg.coefficients;
    else
      pc.coefficients.assign(cfg.dim, periodic::Coefficient::constant(1.0));
    const ComplexPencil pencil = periodic::assemble_pencil(pc);
    SolveOutput so = solve_pencil(pencil, cfg);
    rec.eigenvalues = certify_all(pencil, so, cfg.seed);
    rec.stats = so.stats;

    bool all_const = true;
    for (const auto& c : pc.coefficients) all_const &= c.is_constant();
    if (all_const && cfg.solver == SolverKind::dense) {
      const std::vector<double> a = periodic::constant_values(pc.coefficients);
      const std::vector<cplx> want = oracles::discrete_dispersion_spectrum(
          grid, std::span<const double>(a));
      std::vector<cplx> got;
      got.reserve(rec.eigenvalues.size());
      for (const auto& e : rec.eigenvalues) got.emplace_back(e.re, e.im);
      rec.oracle_deltas.emplace_back("dispersion_hausdorff",
                                     hausdorff_distance(got, want));
    }
  }

  rec.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_outputs(rec, cfg);
  return rec;
}

namespace {

struct SweepTuple {
  std::optional<double> c;
  int n = 0;
  double extent = 0.0;
};

}  // namespace

SweepOutcome run_sweep(const SweepConfig& cfg) {
  cfg.base.validate();
  if (cfg.base.problem == ProblemKind::periodic && !cfg.c_list.empty())
    throw ConfigError("c-list: only applies to the Dirichlet problem");
  if (cfg.workers < 1) throw ConfigError("workers: must be at least 1");

  std::vector<double> cs = cfg.c_list;
  std::vector<int> ns = cfg.n_list;
  std::vector<double> ls = cfg.extent_list;
  if (cs.empty())
    cs = {cfg.base.coupling.value_or(1.0)};  // placeholder for periodic too
  if (ns.empty()) ns = {cfg.base.n_points};
  if (ls.empty()) ls = {cfg.base.extent};

  std::vector<SweepTuple> tuples;
  for (double c : cs)
    for (int n : ns)
      for (double l : ls) {
        SweepTuple t;
        if (cfg.base.problem == ProblemKind::dirichlet) t.c = c;
        t.n = n;
        t.extent = l;
        tuples.push_back(t);
      }

  std::vector<SpectrumRecord> records(tuples.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tuples.size()) return;
      ExperimentConfig ec = cfg.base;
      if (tuples[i].c.has_value()) ec.coupling = tuples[i].c;
      ec.n_points = tuples[i].n;
      ec.extent = tuples[i].extent;

      bool substituted = false;
      std::int64_t companion = 2;
      for (int d = 0; d < ec.dim; ++d) companion *= ec.n_points;
      if (ec.solver == SolverKind::dense && companion > kDenseCompanionCap &&
          !ec.force) {
        if (cfg.paper_scale) {
          ec.solver = SolverKind::arnoldi;
          if (ec.shifts.empty()) ec.shifts = cfg.base.shifts;
          if (ec.shifts.empty()) ec.shifts = {cplx(0.0, 1.0)};
        } else {
          ec.n_points = ec.dim == 3 ? 12 : 40;
          substituted = true;
        }
      }

      ec.out_csv = cfg.out_dir + "/" + ec.tag() + ".csv";
      ec.out_json = cfg.out_dir + "/" + ec.tag() + ".json";
      ec.out_svg = cfg.emit_svg ? cfg.out_dir + "/" + ec.tag() + ".svg" : "";
      try {
        SpectrumRecord rec = run_experiment(ec);
        if (substituted)
          rec.config.emplace_back("n_requested", std::to_string(tuples[i].n));
        records[i] = std::move(rec);
      } catch (const std::exception& ex) {
        SpectrumRecord rec;
        rec.tag = ec.tag();
        rec.config = ec.echo();
        rec.tool_version = kToolVersion;
        rec.failed = true;
        rec.failure = ex.what();
        emit_json(rec, ec.out_json);  // CSV intentionally absent for failures
        records[i] = std::move(rec);
      }
    }
  };

  if (cfg.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // summary index, written once by the coordinator
  nlohmann::ordered_json index;
  index["schema_version"] = 1;
  index["tool_version"] = kToolVersion;
  index["count"] = records.size();
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const SpectrumRecord& r : records) {
    nlohmann::ordered_json one;
    one["tag"] = r.tag;
    one["failed"] = r.failed;
    if (r.failed)
      one["failure"] = r.failure;
    else
      one["eigenvalues"] = r.eigenvalues.size();
    runs.push_back(one);
  }
  index["runs"] = runs;
  SweepOutcome out;
  out.records = std::move(records);
  out.index_path = cfg.out_dir + "/sweep_index.json";
  std::ofstream os(out.index_path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + out.index_path + "' for writing");
  os << index.dump(2) << "\n";
  if (!os.good()) throw IoError("write to '" + out.index_path + "' failed");
  return out;
}

}  // namespace qps

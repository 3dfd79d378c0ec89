#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qps/pseudospectra.hpp"
#include "qps/sparse.hpp"

namespace qps {

struct EigenvalueEntry {
  double re = 0.0;
  double im = 0.0;
  double residual = 0.0;
};

struct SolverStats {
  std::string kind;  // "dense" or "arnoldi"
  std::int64_t companion_order = 0;
  int total_iterations = 0;
  int restarts = 0;
  int op_applications = 0;
  int converged = 0;
  double wall_seconds = 0.0;
};

// One solve's worth of output: the configuration echo, certified eigenvalues
// in canonical order, solver statistics and any oracle comparisons that were
// applicable to the run.
struct SpectrumRecord {
  std::string tag;  // deterministic file tag, e.g. dirichlet_d2_N16_L1_c0.5
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<EigenvalueEntry> eigenvalues;
  SolverStats stats;
  std::string tool_version;
  std::vector<std::pair<std::string, double>> oracle_deltas;
  bool failed = false;
  std::string failure;
};

// CSV with header "re,im,residual", one eigenvalue per line, 17 significant
// digits. Throws std::runtime_error with the path on IO failure.
void emit_csv(const SpectrumRecord& rec, const std::string& path);

std::string record_to_json(const SpectrumRecord& rec);
void emit_json(const SpectrumRecord& rec, const std::string& path);
SpectrumRecord record_from_json_file(const std::string& path);

struct SvgOptions {
  int width = 640;
  int height = 480;
  std::string title;  // defaults to the record tag
};

// Standalone SVG scatter of (re, im); axis bounds are the data bounds padded
// by 5%. Byte output is deterministic for identical input.
std::string scatter_to_svg(const SpectrumRecord& rec, SvgOptions opt = {});
void emit_svg_scatter(const SpectrumRecord& rec, const std::string& path,
                      SvgOptions opt = {});

// Grayscale cell map of log10(s_min) over the scan grid.
std::string field_to_svg(const PseudospectrumField& field, SvgOptions opt = {});
void emit_svg_field(const PseudospectrumField& field, const std::string& path,
                    SvgOptions opt = {});

// CSV columns z_re,z_im,smin; row-major over the grid (x fastest).
void emit_field_csv(const PseudospectrumField& field, const std::string& path);
std::string field_to_json(const PseudospectrumField& field);
void emit_field_json(const PseudospectrumField& field, const std::string& path);

// Matrix Market coordinate text format. Symmetric/hermitian hints emit the
// lower triangle with the matching qualifier; everything else is general.
void write_matrix_market(std::ostream& os, const RealSparse& a);
void write_matrix_market(std::ostream& os, const ComplexSparse& a);
void write_matrix_market(const RealSparse& a, const std::string& path);
void write_matrix_market(const ComplexSparse& a, const std::string& path);

}  // namespace qps

#include "qps/spectrum_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "qps/errors.hpp"

namespace qps {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void finish_out(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed");
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// 1-2-5 tick spacing covering [lo, hi] with roughly `target` intervals.
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  std::vector<double> ticks;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + 0.5 * step; t += step) {
    if (std::abs(t) < 1e-12 * step) t = 0.0;
    ticks.push_back(t);
  }
  return ticks;
}

struct Bounds {
  double lo, hi;
};

Bounds padded(double lo, double hi) {
  if (lo > hi) std::swap(lo, hi);
  double pad = 0.05 * (hi - lo);
  if (pad == 0.0) pad = std::max(0.5, 0.05 * std::abs(lo));
  return {lo - pad, hi + pad};
}

}  // namespace

void emit_csv(const SpectrumRecord& rec, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "re,im,residual\n";
  for (const EigenvalueEntry& e : rec.eigenvalues)
    os << fmt17(e.re) << ',' << fmt17(e.im) << ',' << fmt17(e.residual) << '\n';
  finish_out(os, path);
}

std::string record_to_json(const SpectrumRecord& rec) {
  ordered_json j;
  j["schema_version"] = 1;
  j["tag"] = rec.tag;
  j["tool_version"] = rec.tool_version;
  ordered_json cfg;
  for (const auto& [k, v] : rec.config) cfg[k] = v;
  j["config"] = cfg;
  ordered_json stats;
  stats["kind"] = rec.stats.kind;
  stats["companion_order"] = rec.stats.companion_order;
  stats["total_iterations"] = rec.stats.total_iterations;
  stats["restarts"] = rec.stats.restarts;
  stats["op_applications"] = rec.stats.op_applications;
  stats["converged"] = rec.stats.converged;
  stats["wall_seconds"] = rec.stats.wall_seconds;
  j["solver"] = stats;
  if (!rec.oracle_deltas.empty()) {
    ordered_json od;
    for (const auto& [k, v] : rec.oracle_deltas) od[k] = v;
    j["oracle_deltas"] = od;
  }
  j["failed"] = rec.failed;
  if (rec.failed) j["failure"] = rec.failure;
  ordered_json evs = ordered_json::array();
  for (const EigenvalueEntry& e : rec.eigenvalues) {
    ordered_json one;
    one["re"] = e.re;
    one["im"] = e.im;
    one["residual"] = e.residual;
    evs.push_back(one);
  }
  j["eigenvalues"] = evs;
  return j.dump(2) + "\n";
}

void emit_json(const SpectrumRecord& rec, const std::string& path) {
  std::ofstream os = open_out(path);
  os << record_to_json(rec);
  finish_out(os, path);
}

SpectrumRecord record_from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  ordered_json j = ordered_json::parse(is);
  SpectrumRecord rec;
  rec.tag = j.value("tag", "");
  rec.tool_version = j.value("tool_version", "");
  if (j.contains("config"))
    for (auto it = j["config"].begin(); it != j["config"].end(); ++it)
      rec.config.emplace_back(it.key(), it.value().get<std::string>());
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    rec.stats.kind = s.value("kind", "");
    rec.stats.companion_order = s.value("companion_order", std::int64_t{0});
    rec.stats.total_iterations = s.value("total_iterations", 0);
    rec.stats.restarts = s.value("restarts", 0);
    rec.stats.op_applications = s.value("op_applications", 0);
    rec.stats.converged = s.value("converged", 0);
    rec.stats.wall_seconds = s.value("wall_seconds", 0.0);
  }
  rec.failed = j.value("failed", false);
  rec.failure = j.value("failure", "");
  if (j.contains("eigenvalues"))
    for (const auto& e : j["eigenvalues"])
      rec.eigenvalues.push_back(
          {e["re"].get<double>(), e["im"].get<double>(),
           e["residual"].get<double>()});
  return rec;
}

namespace {

struct SvgCanvas {
  std::ostringstream out;
  int width, height;
  // plot area margins
  int ml = 64, mr = 16, mt = 36, mb = 44;
  Bounds xb{0, 1}, yb{0, 1};

  double px(double x) const {
    return ml + (x - xb.lo) / (xb.hi - xb.lo) * (width - ml - mr);
  }
  double py(double y) const {
    return height - mb - (y - yb.lo) / (yb.hi - yb.lo) * (height - mt - mb);
  }

  void header() {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
  }

  void axes(const std::string& title) {
    out << "<g stroke=\"black\" fill=\"none\" stroke-width=\"1\">\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
        << width - ml - mr << "\" height=\"" << height - mt - mb << "\"/>\n";
    out << "</g>\n";
    out << "<g font-family=\"monospace\" font-size=\"11\" fill=\"black\">\n";
    for (double t : nice_ticks(xb.lo, xb.hi)) {
      const double x = px(t);
      out << "<line x1=\"" << fmt("%.2f", x) << "\" y1=\"" << height - mb
          << "\" x2=\"" << fmt("%.2f", x) << "\" y2=\"" << height - mb + 4
          << "\" stroke=\"black\"/>\n";
      out << "<text x=\"" << fmt("%.2f", x) << "\" y=\"" << height - mb + 16
          << "\" text-anchor=\"middle\">" << fmt("%.6g", t) << "</text>\n";
    }
    for (double t : nice_ticks(yb.lo, yb.hi)) {
      const double y = py(t);
      out << "<line x1=\"" << ml - 4 << "\" y1=\"" << fmt("%.2f", y)
          << "\" x2=\"" << ml << "\" y2=\"" << fmt("%.2f", y)
          << "\" stroke=\"black\"/>\n";
      out << "<text x=\"" << ml - 8 << "\" y=\"" << fmt("%.2f", y + 3.5)
          << "\" text-anchor=\"end\">" << fmt("%.6g", t) << "</text>\n";
    }
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 8
        << "\" text-anchor=\"middle\">Re</text>\n";
    out << "<text x=\"14\" y=\"" << (mt + height - mb) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << (mt + height - mb) / 2 << ")\">Im</text>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-size=\"13\">" << title << "</text>\n";
    out << "</g>\n";
  }
};

}  // namespace

std::string scatter_to_svg(const SpectrumRecord& rec, SvgOptions opt) {
  if (rec.eigenvalues.empty())
    throw std::invalid_argument("no eigenvalues to plot");
  SvgCanvas c;
  c.width = opt.width;
  c.height = opt.height;
  double re_lo = rec.eigenvalues[0].re, re_hi = re_lo;
  double im_lo = rec.eigenvalues[0].im, im_hi = im_lo;
  for (const EigenvalueEntry& e : rec.eigenvalues) {
    re_lo = std::min(re_lo, e.re);
    re_hi = std::max(re_hi, e.re);
    im_lo = std::min(im_lo, e.im);
    im_hi = std::max(im_hi, e.im);
  }
  c.xb = padded(re_lo, re_hi);
  c.yb = padded(im_lo, im_hi);
  c.header();
  c.axes(opt.title.empty() ? rec.tag : opt.title);
  c.out << "<g fill=\"#1f4e9c\" fill-opacity=\"0.75\" stroke=\"none\">\n";
  for (const EigenvalueEntry& e : rec.eigenvalues)
    c.out << "<circle cx=\"" << fmt("%.2f", c.px(e.re)) << "\" cy=\""
          << fmt("%.2f", c.py(e.im)) << "\" r=\"2.5\"/>\n";
  c.out << "</g>\n</svg>\n";
  return c.out.str();
}

void emit_svg_scatter(const SpectrumRecord& rec, const std::string& path,
                      SvgOptions opt) {
  std::ofstream os = open_out(path);
  os << scatter_to_svg(rec, opt);
  finish_out(os, path);
}

std::string field_to_svg(const PseudospectrumField& field, SvgOptions opt) {
  const ZGridSpec& g = field.grid;
  SvgCanvas c;
  c.width = opt.width;
  c.height = opt.height;
  c.xb = padded(g.re_min, g.re_max);
  c.yb = padded(g.im_min, g.im_max);
  c.header();

  double lmin = 0.0, lmax = 0.0;
  bool first = true;
  std::vector<double> logs(field.values.size(), 0.0);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double v = std::max(field.values[i], 1e-300);
    logs[i] = std::log10(v);
    if (first || logs[i] < lmin) lmin = first ? logs[i] : std::min(lmin, logs[i]);
    if (first || logs[i] > lmax) lmax = first ? logs[i] : std::max(lmax, logs[i]);
    first = false;
  }
  const double span = (lmax > lmin) ? lmax - lmin : 1.0;

  c.out << "<g stroke=\"none\">\n";
  const double cw = (g.re_max - g.re_min) / (g.nx - 1);
  const double ch = (g.im_max - g.im_min) / (g.ny - 1);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const double t = (logs[iy * g.nx + ix] - lmin) / span;  // 0 dark .. 1 light
      const int shade = static_cast<int>(20 + 235 * t);
      const cplx z = g.point(ix, iy);
      const double x0 = c.px(z.real() - cw / 2), x1 = c.px(z.real() + cw / 2);
      const double y0 = c.py(z.imag() + ch / 2), y1 = c.py(z.imag() - ch / 2);
      c.out << "<rect x=\"" << fmt("%.2f", x0) << "\" y=\"" << fmt("%.2f", y0)
            << "\" width=\"" << fmt("%.2f", x1 - x0) << "\" height=\""
            << fmt("%.2f", y1 - y0) << "\" fill=\"rgb(" << shade << ','
            << shade << ',' << shade << ")\"/>\n";
    }
  }
  c.out << "</g>\n";
  c.axes(opt.title.empty() ? std::string("log10 smin") : opt.title);
  c.out << "</svg>\n";
  return c.out.str();
}

void emit_svg_field(const PseudospectrumField& field, const std::string& path,
                    SvgOptions opt) {
  std::ofstream os = open_out(path);
  os << field_to_svg(field, opt);
  finish_out(os, path);
}

void emit_field_csv(const PseudospectrumField& field, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "z_re,z_im,smin\n";
  for (int iy = 0; iy < field.grid.ny; ++iy)
    for (int ix = 0; ix < field.grid.nx; ++ix) {
      const cplx z = field.grid.point(ix, iy);
      os << fmt17(z.real()) << ',' << fmt17(z.imag()) << ','
         << fmt17(field.value_at(ix, iy)) << '\n';
    }
  finish_out(os, path);
}

std::string field_to_json(const PseudospectrumField& field) {
  ordered_json j;
  j["schema_version"] = 1;
  j["grid"] = {{"re_min", field.grid.re_min}, {"re_max", field.grid.re_max},
               {"im_min", field.grid.im_min}, {"im_max", field.grid.im_max},
               {"nx", field.grid.nx},         {"ny", field.grid.ny}};
  j["seed"] = field.seed;
  ordered_json rows = ordered_json::array();
  for (int iy = 0; iy < field.grid.ny; ++iy) {
    ordered_json row = ordered_json::array();
    for (int ix = 0; ix < field.grid.nx; ++ix)
      row.push_back(field.value_at(ix, iy));
    rows.push_back(row);
  }
  j["smin"] = rows;
  ordered_json st = ordered_json::array();
  for (char s : field.status) st.push_back(static_cast<int>(s));
  j["status"] = st;
  return j.dump(2) + "\n";
}

void emit_field_json(const PseudospectrumField& field, const std::string& path) {
  std::ofstream os = open_out(path);
  os << field_to_json(field);
  finish_out(os, path);
}

namespace {

template <class T>
bool lower_triangle_only(const SparseMatrix<T>& a) {
  return a.hint() != SymmetryHint::general;
}

}  // namespace

void write_matrix_market(std::ostream& os, const RealSparse& a) {
  const bool lower = lower_triangle_only(a);
  os << "%%MatrixMarket matrix coordinate real "
     << (lower ? "symmetric" : "general") << '\n';
  std::int64_t count = 0;
  for (const auto& e : a.entries())
    if (!lower || e.row >= e.col) ++count;
  os << a.order() << ' ' << a.order() << ' ' << count << '\n';
  for (const auto& e : a.entries()) {
    if (lower && e.row < e.col) continue;
    os << e.row + 1 << ' ' << e.col + 1 << ' ' << fmt17(e.value) << '\n';
  }
}

void write_matrix_market(std::ostream& os, const ComplexSparse& a) {
  const bool lower = a.hint() == SymmetryHint::hermitian;
  os << "%%MatrixMarket matrix coordinate complex "
     << (lower ? "hermitian" : "general") << '\n';
  std::int64_t count = 0;
  for (const auto& e : a.entries())
    if (!lower || e.row >= e.col) ++count;
  os << a.order() << ' ' << a.order() << ' ' << count << '\n';
  for (const auto& e : a.entries()) {
    if (lower && e.row < e.col) continue;
    os << e.row + 1 << ' ' << e.col + 1 << ' ' << fmt17(e.value.real()) << ' '
       << fmt17(e.value.imag()) << '\n';
  }
}

void write_matrix_market(const RealSparse& a, const std::string& path) {
  std::ofstream os = open_out(path);
  write_matrix_market(os, a);
  finish_out(os, path);
}

void write_matrix_market(const ComplexSparse& a, const std::string& path) {
  std::ofstream os = open_out(path);
  write_matrix_market(os, a);
  finish_out(os, path);
}

}  // namespace qps

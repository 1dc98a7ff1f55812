#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bma/bma.hpp"
#include "bma/boundary.hpp"
#include "bma/config.hpp"
#include "bma/convexity.hpp"
#include "bma/error.hpp"
#include "bma/polygon.hpp"
#include "bma/verify.hpp"

using namespace bma;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string cfmt(complex z) {
  double re = z.real() == 0.0 ? 0.0 : z.real();  // normalize -0
  double im = z.imag() == 0.0 ? 0.0 : z.imag();
  std::string s = g17(re);
  s += im < 0 ? "-" : "+";
  s += g17(std::abs(im));
  s += "i";
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::BadConfig, "cannot open output file " + path);
  out << text;
}

struct Shared {
  std::string config_path;
  std::optional<RunConfig> config;

  const RunConfig* cfg() {
    if (!config_path.empty() && !config)
      config = RunConfig::parse_file(config_path);
    return config ? &*config : nullptr;
  }
  MapPtr map(const std::string& spec) { return parse_map_spec(spec, cfg()); }
};

GridSpec parse_grid(const std::string& text) {
  // "48x128" or "48x128x0.999"
  GridSpec g;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() < 2 || parts.size() > 3)
    fail(ErrorCode::BadConfig, "grid must be RxT or RxTxM");
  g.n_r = std::stoi(parts[0]);
  g.n_t = std::stoi(parts[1]);
  if (parts.size() == 3) g.r_max = std::stod(parts[2]);
  return g;
}

size_t parse_arc_index(const AnalyticMap& map, int k) {
  const PolygonData* pd = map.polygon();
  if (!pd) fail(ErrorCode::BadPolygonData, "map has no prevertex arcs");
  if (k < 0 || size_t(k) >= pd->size())
    fail(ErrorCode::BadParameter, "arc index out of range");
  return size_t(k);
}

std::string region_svg(const RegionRaster& r) {
  const int W = 640, H = 640, M = 40;
  auto X = [&](double h) {
    return M + (h - r.window.h_min) / (r.window.h_max - r.window.h_min) * (W - 2 * M);
  };
  auto Y = [&](double k) {
    return H - M - (k - r.window.k_min) / (r.window.k_max - r.window.k_min) * (H - 2 * M);
  };
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
      << H << "'>\n";
  double cw = double(W - 2 * M) / r.nx, ch = double(H - 2 * M) / r.ny;
  for (const RegionCell& cell : r.cells) {
    const char* color = cell.cls == PoleClass::Outside ? "#9ecae1"
                        : cell.cls == PoleClass::Inside ? "#fdae6b"
                                                        : "#cccccc";
    svg << "<rect x='" << X(cell.h) - cw / 2 << "' y='" << Y(cell.k) - ch / 2
        << "' width='" << cw + 0.5 << "' height='" << ch + 0.5 << "' fill='"
        << color << "'/>\n";
  }
  // axes, the h = 0 boundary line, the unit circle h^2 + k^2 = 1
  svg << "<line x1='" << X(r.window.h_min) << "' y1='" << Y(0) << "' x2='"
      << X(r.window.h_max) << "' y2='" << Y(0)
      << "' stroke='black' stroke-width='1'/>\n";
  svg << "<line x1='" << X(0) << "' y1='" << Y(r.window.k_min) << "' x2='"
      << X(0) << "' y2='" << Y(r.window.k_max)
      << "' stroke='black' stroke-width='2'/>\n";
  svg << "<circle cx='" << X(0) << "' cy='" << Y(0) << "' r='"
      << (X(1) - X(0)) << "' fill='none' stroke='black' stroke-dasharray='6,4'/>\n";
  // landmarks: p = 0 at (-1, 0); p = -z at (0, 0)
  svg << "<circle cx='" << X(-1) << "' cy='" << Y(0)
      << "' r='5' fill='black'/>\n";
  svg << "<text x='" << X(-1) + 8 << "' y='" << Y(0) - 8
      << "' font-size='15'>p = 0</text>\n";
  svg << "<circle cx='" << X(0) << "' cy='" << Y(0)
      << "' r='5' fill='black'/>\n";
  svg << "<text x='" << X(0) + 8 << "' y='" << Y(0) - 8
      << "' font-size='15'>p = -z</text>\n";
  svg << "<text x='" << X(r.window.h_max) - 24 << "' y='" << Y(0) + 20
      << "' font-size='15'>h</text>\n";
  svg << "<text x='" << X(0) + 8 << "' y='" << Y(r.window.k_max) + 16
      << "' font-size='15'>k</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"best Moebius approximations of disk maps: evaluation, "
               "certification, and theorem verification"};
  app.require_subcommand(1);
  Shared shared;
  app.add_option("--config", shared.config_path, "map definitions file");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "print the 3-jet of a map");
  std::string eval_map, eval_at;
  eval_cmd->add_option("--map", eval_map, "map spec")->required();
  eval_cmd->add_option("--at", eval_at, "evaluation point a+bi")->required();

  // bma
  auto* bma_cmd = app.add_subcommand("bma", "print the BMA coefficients and pole");
  std::string bma_map, bma_at;
  bma_cmd->add_option("--map", bma_map, "map spec")->required();
  bma_cmd->add_option("--at", bma_at, "expansion point a+bi")->required();

  // classify
  auto* cls_cmd = app.add_subcommand("classify", "pole location trichotomy at a point");
  std::string cls_map, cls_at;
  cls_cmd->add_option("--map", cls_map, "map spec")->required();
  cls_cmd->add_option("--at", cls_at, "point a+bi")->required();

  // shape
  auto* shape_cmd = app.add_subcommand("shape", "convexity/concavity certification");
  std::string shape_map, shape_grid;
  bool shape_serial = false;
  shape_cmd->add_option("--map", shape_map, "map spec")->required();
  shape_cmd->add_option("--grid", shape_grid, "RxT or RxTxM (default 48x128x0.999)");
  shape_cmd->add_flag("--serial", shape_serial, "disable the parallel sweep");

  // dual
  auto* dual_cmd = app.add_subcommand("dual", "emit the dual map definition");
  std::string dual_map_spec, dual_out;
  dual_cmd->add_option("--map", dual_map_spec, "map spec")->required();
  dual_cmd->add_option("--out", dual_out, "output file (default stdout)");

  // polygon
  auto* poly_cmd = app.add_subcommand("polygon", "build/normalize polygon data");
  std::string poly_file, poly_normalize;
  bool poly_vertices = false, poly_prevertices = false;
  poly_cmd->add_option("--file", poly_file, "polygon specification file");
  poly_cmd->add_option("--normalize", poly_normalize,
                       "a1,a2,a3: solve the prevertex normalization");
  poly_cmd->add_flag("--vertices", poly_vertices, "print the image vertices");
  poly_cmd->add_flag("--prevertices", poly_prevertices, "print prevertex angles");

  // locus
  auto* locus_cmd = app.add_subcommand("locus", "boundary pole locus CSV");
  std::string locus_map, locus_out;
  int locus_arc = 0, locus_samples = 720;
  locus_cmd->add_option("--map", locus_map, "map spec")->required();
  locus_cmd->add_option("--arc", locus_arc, "prevertex arc index");
  locus_cmd->add_option("--samples", locus_samples, "sample count");
  locus_cmd->add_option("--out", locus_out, "CSV path (default stdout)");

  // profile
  auto* prof_cmd = app.add_subcommand("profile", "boundary speed profile CSV");
  std::string prof_map, prof_out;
  int prof_arc = 0, prof_samples = 2000;
  double prof_delta = 1e-3;
  prof_cmd->add_option("--map", prof_map, "map spec")->required();
  prof_cmd->add_option("--arc", prof_arc, "prevertex arc index");
  prof_cmd->add_option("--samples", prof_samples, "sample count");
  prof_cmd->add_option("--delta", prof_delta, "endpoint margin fraction");
  prof_cmd->add_option("--out", prof_out, "CSV path (default stdout)");

  // arcs
  auto* arcs_cmd = app.add_subcommand("arcs", "arc integrals and triangle balance");
  std::string arcs_map;
  arcs_cmd->add_option("--map", arcs_map, "map spec")->required();

  // regions
  auto* reg_cmd = app.add_subcommand("regions", "pole trichotomy raster (SVG/CSV)");
  std::string reg_window = "-3:3:-3:3", reg_out;
  int reg_grid = 400;
  reg_cmd->add_option("--window", reg_window, "h0:h1:k0:k1");
  reg_cmd->add_option("--grid", reg_grid, "cells per axis");
  reg_cmd->add_option("--out", reg_out, "output .svg or .csv (default stdout CSV)");

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "run one acceptance criterion");
  std::string ver_id, ver_map, ver_grid;
  ver_cmd->add_option("id", ver_id, "criterion id or name (e.g. thm2.2)")->required();
  ver_cmd->add_option("--map", ver_map, "restrict criterion 4 to one map");
  ver_cmd->add_option("--grid", ver_grid, "override the certification grid");

  // list
  auto* list_cmd = app.add_subcommand("list", "list verify criteria");

  CLI11_PARSE(app, argc, argv);

  if (eval_cmd->parsed()) {
    MapPtr m = shared.map(eval_map);
    Jet3 j = m->jet(parse_complex(eval_at));
    std::printf("f   = %s\nf'  = %s\nf'' = %s\nf'''= %s\n", cfmt(j.f0).c_str(),
                cfmt(j.f1).c_str(), cfmt(j.f2).c_str(), cfmt(j.f3).c_str());
    return 0;
  }

  if (bma_cmd->parsed()) {
    MapPtr m = shared.map(bma_map);
    complex zeta = parse_complex(bma_at);
    Moebius t = best_moebius(*m, zeta);
    ExtendedComplex p = moebius_pole(t);
    std::printf("a = %s\nb = %s\nc = %s\nd = %s\ndet = %s\npole = %s\n",
                cfmt(t.a).c_str(), cfmt(t.b).c_str(), cfmt(t.c).c_str(),
                cfmt(t.d).c_str(), cfmt(t.det()).c_str(),
                p.infinite ? "inf" : cfmt(p.value).c_str());
    return 0;
  }

  if (cls_cmd->parsed()) {
    MapPtr m = shared.map(cls_map);
    complex zeta = parse_complex(cls_at);
    PoleClassification cls = classify_pole(*m, zeta);
    ExtendedComplex p = bma_pole(*m, zeta);
    std::printf("h = %s\nk = %s\nclass = %s\ncollinear = %s\nantipodal = %s\n"
                "pole = %s\n",
                g17(cls.h).c_str(), g17(cls.k).c_str(), pole_class_name(cls.cls),
                cls.collinear ? "yes" : "no", cls.antipodal ? "yes" : "no",
                p.infinite ? "inf" : cfmt(p.value).c_str());
    return 0;
  }

  if (shape_cmd->parsed()) {
    MapPtr m = shared.map(shape_map);
    GridSpec grid = shape_grid.empty() ? GridSpec{} : parse_grid(shape_grid);
    ShapeReport r = m->pole_at_origin()
                        ? concavity_report(*m, grid, !shape_serial)
                        : convexity_report(*m, grid, !shape_serial);
    std::printf("verdict = %s\nmin|p| = %s\nmax||p|-1| = %s\n"
                "max(|p|-|z|^3) = %s\nwitness = %s\nwitness |p| = %s\n",
                shape_verdict_name(r.verdict), g17(r.min_abs_p).c_str(),
                g17(r.max_dev_from_unit).c_str(), g17(r.max_cube_excess).c_str(),
                cfmt(r.witness_zeta).c_str(), g17(r.witness_abs_p).c_str());
    return 0;
  }

  if (dual_cmd->parsed()) {
    MapPtr m = shared.map(dual_map_spec);  // validates f''(0) = 0 as needed
    MapPtr d = dual_map(m);
    std::ostringstream out;
    out << "[map dual]\nkind = dual\nsource = " << dual_map_spec << "\n";
    Jet3 j = d->jet(complex(0.5, 0.0));
    out << "# g(0.5) = " << cfmt(j.f0) << ", g'(0.5) = " << cfmt(j.f1) << "\n";
    write_text(dual_out, out.str());
    return 0;
  }

  if (poly_cmd->parsed()) {
    MapPtr m;
    if (!poly_normalize.empty()) {
      double a1, a2, a3;
      if (std::sscanf(poly_normalize.c_str(), "%lf,%lf,%lf", &a1, &a2, &a3) != 3)
        fail(ErrorCode::BadConfig, "--normalize needs a1,a2,a3");
      PolygonData pd = triangle_prevertices_normalized(a1, a2, a3);
      std::printf("prevertices = [%s, %s, %s]\nangles = [%s, %s, %s]\n",
                  g17(pd.prevertex_angles[0]).c_str(),
                  g17(pd.prevertex_angles[1]).c_str(),
                  g17(pd.prevertex_angles[2]).c_str(),
                  g17(pd.exterior_angles[0]).c_str(),
                  g17(pd.exterior_angles[1]).c_str(),
                  g17(pd.exterior_angles[2]).c_str());
      m = interior_from_data(pd);
    } else if (!poly_file.empty()) {
      m = polygon_from_file(poly_file);
    } else {
      fail(ErrorCode::BadConfig, "polygon needs --file or --normalize");
    }
    const PolygonData* pd = m->polygon();
    if (poly_prevertices && pd) {
      std::printf("prevertices:\n");
      for (size_t k = 0; k < pd->size(); ++k)
        std::printf("  t_%zu = %s (alpha = %s)\n", k,
                    g17(pd->prevertex_angles[k]).c_str(),
                    g17(pd->exterior_angles[k]).c_str());
    }
    if (poly_vertices) {
      std::printf("vertices:\n");
      for (const complex& v : vertices_of(*m))
        std::printf("  %s\n", cfmt(v).c_str());
    }
    return 0;
  }

  if (locus_cmd->parsed()) {
    MapPtr m = shared.map(locus_map);
    size_t k = parse_arc_index(*m, locus_arc);
    const PolygonData& pd = *m->polygon();
    PoleLocus locus =
        pole_locus(*m, CircleArc{pd.arc_start(k), pd.arc_end(k)}, locus_samples);
    std::ostringstream csv;
    csv << "t,re_p,im_p,arg_unwrapped\n";
    for (const PoleLocusSample& s : locus.samples)
      csv << g17(s.t) << "," << g17(s.p.real()) << "," << g17(s.p.imag()) << ","
          << g17(s.arg_unwrapped) << "\n";
    write_text(locus_out, csv.str());
    std::fprintf(stderr,
                 "arc %zu: variation = %s, %s, limits %s -> %s\n", k,
                 g17(locus.total_variation).c_str(),
                 locus.increasing ? "increasing" : "decreasing",
                 cfmt(locus.limit_start).c_str(), cfmt(locus.limit_end).c_str());
    return 0;
  }

  if (prof_cmd->parsed()) {
    MapPtr m = shared.map(prof_map);
    size_t k = parse_arc_index(*m, prof_arc);
    const PolygonData& pd = *m->polygon();
    ProfileReport r = profile_shape_check(
        *m, CircleArc{pd.arc_start(k), pd.arc_end(k)}, prof_samples, prof_delta);
    std::ostringstream csv;
    csv << "t,u,speed\n";
    for (size_t i = 0; i < r.t.size(); ++i)
      csv << g17(r.t[i]) << "," << g17(r.u[i]) << ","
          << g17(1.0 / (r.u[i] * r.u[i])) << "\n";
    write_text(prof_out, csv.str());
    std::fprintf(stderr, "arc %zu: %s (max D2 = %s, scale = %s)\n", k,
                 r.profile_ok ? "profile shape verified" : "PROFILE VIOLATION",
                 g17(r.max_second_diff).c_str(), g17(r.scale).c_str());
    return r.profile_ok ? 0 : 2;
  }

  if (arcs_cmd->parsed()) {
    MapPtr m = shared.map(arcs_map);
    const PolygonData* pd = m->polygon();
    if (!pd) fail(ErrorCode::BadPolygonData, "map has no prevertex arcs");
    std::printf("arc,int_speed,int_inverse_speed,ratio\n");
    for (size_t k = 0; k < pd->size(); ++k) {
      ArcIntegrals ai = arc_integrals(*m, k);
      std::printf("%zu,%s,%s,%s\n", k, g17(ai.speed).c_str(),
                  g17(ai.inverse_speed).c_str(),
                  g17(ai.speed / ai.inverse_speed).c_str());
    }
    if (pd->size() == 3) {
      TriangleBalance tb = triangle_balance(*m);
      std::printf("balance = %s (spread = %s)\n",
                  tb.balanced ? "balanced" : "unbalanced", g17(tb.spread).c_str());
      if (tb.is_precomposed) {
        std::printf("a = %s, b = %s, C = %s\n", g17(tb.a_abs).c_str(),
                    g17(tb.b).c_str(), g17(tb.c_const).c_str());
        for (int k = 0; k < 3; ++k)
          std::printf("sandwich arc %d: %s <= %s (%s), middle %s, upper %s\n", k,
                      g17(tb.lower_link[k].lhs).c_str(),
                      g17(tb.lower_link[k].rhs).c_str(),
                      tb.lower_link[k].holds ? "holds" : "fails",
                      tb.middle_link[k].holds ? "holds" : "fails",
                      tb.upper_link[k].holds ? "holds" : "fails");
      }
    }
    return 0;
  }

  if (reg_cmd->parsed()) {
    RegionWindow w;
    if (std::sscanf(reg_window.c_str(), "%lf:%lf:%lf:%lf", &w.h_min, &w.h_max,
                    &w.k_min, &w.k_max) != 4)
      fail(ErrorCode::BadConfig, "window must be h0:h1:k0:k1");
    RegionRaster raster = region_sample(w, reg_grid, reg_grid);
    bool svg = reg_out.size() > 4 &&
               reg_out.compare(reg_out.size() - 4, 4, ".svg") == 0;
    for (const RegionLandmark& lm : raster.landmarks)
      std::fprintf(stderr, "landmark %-7s at (h,k) = (%g, %g), pole = %s\n",
                   lm.label, lm.h, lm.k, cfmt(lm.pole).c_str());
    if (svg) {
      write_text(reg_out, region_svg(raster));
    } else {
      std::ostringstream csv;
      csv << "h,k,class,re_p,im_p\n";
      for (const RegionCell& cell : raster.cells)
        csv << g17(cell.h) << "," << g17(cell.k) << ","
            << pole_class_name(cell.cls) << "," << g17(cell.pole.real()) << ","
            << g17(cell.pole.imag()) << "\n";
      write_text(reg_out, csv.str());
    }
    return 0;
  }

  if (list_cmd->parsed()) {
    for (const verify::CriterionInfo& info : verify::catalog())
      std::printf("%2d  %-12s %s\n", info.id, info.name, info.summary);
    return 0;
  }

  if (ver_cmd->parsed()) {
    int id = verify::resolve_id(ver_id);
    if (id == 0) fail(ErrorCode::BadParameter, "unknown criterion '" + ver_id + "'");
    verify::VerifyOptions opts;
    if (!ver_map.empty()) opts.map_spec = ver_map;
    if (!ver_grid.empty()) opts.grid = parse_grid(ver_grid);
    verify::CriterionResult r = verify::run_criterion(id, opts);
    std::printf("criterion=%d name=%s status=%s\n", r.id, r.name.c_str(),
                r.pass ? "PASS" : "FAIL");
    for (const std::string& line : r.details)
      std::fprintf(r.pass ? stdout : stderr, "  %s\n", line.c_str());
    return r.pass ? 0 : 2;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", error_name(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

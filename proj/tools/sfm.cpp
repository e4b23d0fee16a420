// sfm: build admissible convex bodies, solve the singular-line matching
// condition, emit minimal-graph surfaces and cones of the sub-Finsler
// Heisenberg group, and run area/convergence/verification reports.
//
// Exit codes: 0 success, 1 verification/solver failure, 2 usage or domain error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sfm/area.hpp"
#include "sfm/io.hpp"
#include "sfm/mesh.hpp"
#include "sfm/parallel.hpp"
#include "sfm/stationarity.hpp"
#include "sfm/surfaces.hpp"

using namespace sfm;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot open output file: " + path);
  return f;
}

AlphaProfile make_profile(const ConvexBody& body, double v_angle, const std::string& alpha_spec,
                          double mollify_eps) {
  // a bare number means a constant angle; otherwise treat it as a file path
  try {
    std::size_t pos = 0;
    const double value = std::stod(alpha_spec, &pos);
    if (pos == alpha_spec.size()) return AlphaProfile(body, v_angle, value);
  } catch (const std::invalid_argument&) {
  }
  PiecewiseLinearProfile prof = load_profile_file(alpha_spec);
  if (mollify_eps > 0.0) prof = mollify_profile(prof, mollify_eps);
  return AlphaProfile(body, v_angle, prof);
}

double mesh_sup_height(const TriMesh& mesh) {
  double sup = 0.0;
  for (const auto& v : mesh.vertices) sup = std::max(sup, std::abs(v.t));
  return sup;
}

// ---------------------------------------------------------------- body ----
int cmd_body(const std::string& body_spec) {
  const ConvexBody K = resolve_body(body_spec);
  double min_h = 1e300, min_rho = 1e300;
  for (int j = 0; j < 4096; ++j) {
    const double th = (j + 0.5) * two_pi / 4096;
    min_h = std::min(min_h, K.support(th));
    min_rho = std::min(min_rho, K.curvature_radius(th));
  }
  std::printf("body: %s\n", K.name().c_str());
  std::printf("min support:          %s\n", fmt(min_h).c_str());
  std::printf("min curvature radius: %s\n", fmt(min_rho).c_str());
  std::printf("diameter:             %s\n", fmt(K.diameter()).c_str());
  std::printf("centrally symmetric:  %s\n", K.centrally_symmetric() ? "yes" : "no");
  return 0;
}

// ---------------------------------------------------------------- beta ----
int cmd_beta(const std::string& body_spec, double v_angle, std::vector<double> alphas,
             int grid_count, const std::string& out_path) {
  const ConvexBody K = resolve_body(body_spec);
  if (alphas.empty()) {
    for (int i = 0; i < grid_count; ++i)
      alphas.push_back(0.05 + i * (pi - 0.1) / std::max(1, grid_count - 1));
  }
  for (double a : alphas)
    if (!(a > 0.0) || !(a < pi))
      throw std::domain_error("alpha must lie strictly inside (0, pi)");
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  *out << "alpha,beta,residual,dbeta_dalpha_fd\n";
  const double h = 1e-5;
  for (double a : alphas) {
    const MatchingPair p = beta_of_alpha(K, v_angle, a);
    const double lo = std::max(1e-7, a - h), hi = std::min(pi - 1e-7, a + h);
    const double fd = (beta_of_alpha(K, v_angle, hi).beta - beta_of_alpha(K, v_angle, lo).beta) /
                      (hi - lo);
    *out << fmt(a) << ',' << fmt(p.beta) << ',' << fmt(p.residual) << ',' << fmt(fd) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------- surface ----
int cmd_surface(const std::string& body_spec, double v_angle, const std::string& alpha_spec,
                double mollify_eps, bool half, double lambda_min, double lambda_max,
                double mu_min, double mu_max, int res, const std::string& out_dir) {
  const ConvexBody K = resolve_body(body_spec);
  const AlphaProfile profile = make_profile(K, v_angle, alpha_spec, mollify_eps);
  const double l0 = half ? std::max(0.0, lambda_min) : lambda_min;

  const TriMesh mesh = build_sigma(profile, l0, lambda_max, mu_min, mu_max, res, res);
  std::filesystem::create_directories(out_dir);
  write_obj(mesh, out_dir + "/surface.obj");
  write_csv(mesh, out_dir + "/surface.csv");

  auto graph = graph_of(profile);
  std::vector<double> radii;
  for (int i = 1; i <= 9; ++i) {
    const double r = l0 + (lambda_max - l0) * i / 10.0;
    if (std::abs(r) > 1e-6) radii.push_back(r);
  }
  double jump = 0.0;
  for (double step : {1e-3, 1e-4, 1e-5})
    jump = std::max(jump, c1_gradient_jump(graph.value, {0, 0}, Vec2::from_angle(v_angle), radii,
                                           step));
  std::printf("vertices: %zu  triangles: %zu\n", mesh.vertex_count(), mesh.triangles.size());
  std::printf("sup |t| over mesh:        %s\n", fmt(mesh_sup_height(mesh)).c_str());
  std::printf("max gradient jump on L_v: %s\n", fmt(jump).c_str());
  std::printf("wrote %s/surface.obj and %s/surface.csv\n", out_dir.c_str(), out_dir.c_str());
  return 0;
}

// ---------------------------------------------------------------- cone ----
ConeSpec make_cone(const ConvexBody& K, int k, const std::vector<double>& thetas, double theta0,
                   bool theta0_set) {
  if (!thetas.empty()) {
    return ConeSpec::make(K, theta0_set ? theta0 : pi / thetas.size(),
                          std::vector<double>(thetas));
  }
  if (k < 3) throw ConeSpecError("need -k >= 3 or an explicit --thetas list");
  if (theta0_set) {
    std::vector<double> eq(k, two_pi / k);
    double sum = 0.0;
    for (int i = 0; i + 1 < k; ++i) sum += eq[i];
    eq[k - 1] = two_pi - sum;
    return ConeSpec::make(K, theta0, std::move(eq));
  }
  return ConeSpec::regular(K, k);
}

int cmd_cone(const std::string& body_spec, int k, const std::vector<double>& thetas,
             double theta0, bool theta0_set, double r0, int res, const std::string& out_dir) {
  const ConvexBody K = resolve_body(body_spec);
  const ConeSpec spec = make_cone(K, k, thetas, theta0, theta0_set);

  const TriMesh mesh = build_cone(spec, r0, res, res);
  std::filesystem::create_directories(out_dir);
  write_obj(mesh, out_dir + "/cone.obj");
  write_csv(mesh, out_dir + "/cone.csv");

  auto graph = graph_of(spec);
  std::vector<double> radii;
  for (int i = 1; i <= 9; ++i) radii.push_back(0.1 * i * r0);
  double jump = 0.0, split_res = 0.0;
  for (const auto& s : spec.sectors()) {
    split_res = std::max(split_res, std::abs(s.split_residual));
    for (double ray : {s.v_angle, s.u_angle})
      jump = std::max(jump,
                      c1_gradient_jump(graph.value, {0, 0}, Vec2::from_angle(ray), radii, 1e-5));
  }
  // parabolic dilation residual over sample points
  double homog = 0.0;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> coord(-r0, r0);
  for (int i = 0; i < 200; ++i) {
    const double x = coord(rng), y = coord(rng);
    const double u = spec.eval(x, y);
    for (double r : {0.5, 2.0}) {
      if (r * std::hypot(x, y) > r0) continue;
      homog = std::max(homog, std::abs(spec.eval(r * x, r * y) - r * r * u));
    }
  }
  std::printf("sectors: %d  vertices: %zu  triangles: %zu\n", spec.k(), mesh.vertex_count(),
              mesh.triangles.size());
  std::printf("max sector-split residual:   %s\n", fmt(split_res).c_str());
  std::printf("max seam gradient jump:      %s (step 1e-5)\n", fmt(jump).c_str());
  std::printf("max dilation residual:       %s\n", fmt(homog).c_str());
  std::printf("sup |t| over mesh:           %s (bound 2 r0^2 sin(pi/k) = %s for C(k))\n",
              fmt(mesh_sup_height(mesh)).c_str(),
              fmt(2 * r0 * r0 * std::sin(pi / spec.k())).c_str());
  std::printf("wrote %s/cone.obj and %s/cone.csv\n", out_dir.c_str(), out_dir.c_str());
  return 0;
}

// ---------------------------------------------------------------- area ----
int cmd_area(const std::string& body_spec, int k, const std::vector<double>& thetas,
             double theta0, bool theta0_set, std::optional<double> alpha, double v_angle,
             double r0, int quad_order, const std::string& out_path) {
  const ConvexBody K = resolve_body(body_spec);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  *out << "case,k_or_alpha,r0,area,closed_form,abs_err,quad_err\n";
  if (alpha) {
    const AlphaProfile prof(K, v_angle, *alpha);
    const auto res = graph_area(K, graph_of(prof), disc_region(prof, r0), quad_order);
    const double closed = herringbone_area_closed_form(prof, r0);
    *out << "herringbone," << fmt(*alpha) << ',' << fmt(r0) << ',' << fmt(res.value) << ','
         << fmt(closed) << ',' << fmt(std::abs(res.value - closed)) << ','
         << fmt(res.error_estimate) << '\n';
  } else {
    const ConeSpec spec = make_cone(K, k, thetas, theta0, theta0_set);
    const auto res = graph_area(K, graph_of(spec), disc_region(spec, r0), quad_order);
    const double closed = cone_area_closed_form(spec, r0);
    *out << "cone," << spec.k() << ',' << fmt(r0) << ',' << fmt(res.value) << ',' << fmt(closed)
         << ',' << fmt(std::abs(res.value - closed)) << ',' << fmt(res.error_estimate) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------- converge ----
int cmd_converge(int k_min, int k_max, double r0, int quad_order, const std::string& out_path) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    out = &file;
  }
  *out << "k,sup_height,height_bound,area_quadrature,area_closed_form,limit_gap\n";
  const double limit = two_pi * r0 * r0 * r0 / 3.0;
  for (int k = k_min; k <= k_max; ++k) {
    const ConeSpec spec = ConeSpec::regular(ConvexBody::disc(), k);
    const int n = 512;
    std::vector<double> row_max(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
      const double x = -r0 + 2.0 * r0 * static_cast<double>(i) / (n - 1);
      double m = 0.0;
      for (int j = 0; j < n; ++j) {
        const double y = -r0 + 2.0 * r0 * j / (n - 1);
        if (x * x + y * y <= r0 * r0) m = std::max(m, std::abs(spec.eval(x, y)));
      }
      row_max[i] = m;
    });
    const double sup = *std::max_element(row_max.begin(), row_max.end());
    const double area =
        graph_area(spec.body(), graph_of(spec), disc_region(spec, r0), quad_order).value;
    *out << k << ',' << fmt(sup) << ',' << fmt(2 * r0 * r0 * std::sin(pi / k)) << ','
         << fmt(area) << ',' << fmt(disc_cone_area_closed_form(k, r0)) << ','
         << fmt(std::abs(area - limit)) << '\n';
  }
  return 0;
}

// --------------------------------------------------------------- verify ----
struct VerifyState {
  int checks = 0;
  std::string first_failure;

  bool require(bool ok, const std::string& name, const std::string& detail) {
    ++checks;
    std::printf("[%s] %s%s%s\n", ok ? "ok" : "FAIL", name.c_str(), detail.empty() ? "" : ": ",
                detail.c_str());
    if (!ok && first_failure.empty()) first_failure = name;
    return ok;
  }
};

int cmd_verify(const std::string& body_spec, bool fast, bool inject_mismatch, double tol) {
  VerifyState st;
  const double scale = tol > 0.0 ? tol / 1e-10 : 1.0;  // override of the 1e-10 base
  std::vector<ConvexBody> bodies;
  if (!body_spec.empty()) {
    bodies.push_back(resolve_body(body_spec));
  } else {
    bodies.push_back(ConvexBody::disc());
    bodies.push_back(ConvexBody::ellipse(2, 1));
    bodies.push_back(ConvexBody::pball(1.5));
    bodies.push_back(ConvexBody::pball(3));
    bodies.push_back(ConvexBody::ellipse(2, 1).translated({0.3, -0.2}));
  }
  const int n_random = fast ? 25 : 100;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(0.0, two_pi), adist(1e-3, pi - 1e-3),
      mag(0.1, 10.0), open(1e-3, two_pi - 1e-3);

  for (const auto& K : bodies) {
    const std::string tag = "[" + K.name() + "] ";
    double worst_dual = 0.0, worst_round = 0.0;
    for (int i = 0; i < n_random; ++i) {
      const Vec2 u = mag(rng) * Vec2::from_angle(ang(rng));
      worst_dual = std::max(worst_dual, std::abs(K.dual_norm(u) - dot(u, K.pi_K(u))));
      const double th = ang(rng);
      worst_round =
          std::max(worst_round, std::abs(wrap_signed(K.gauss_angle(K.gauss_point(th)) - th)));
    }
    st.require(worst_dual < scale * 1e-10, tag + "duality identity", fmt(worst_dual));
    st.require(worst_round < scale * 1e-8, tag + "gauss roundtrip", fmt(worst_round));

    double worst_match = 0.0, worst_split = 0.0;
    bool interior = true;
    for (int i = 0; i < n_random; ++i) {
      const double v = ang(rng), a = adist(rng);
      worst_match = std::max(worst_match, std::abs(beta_of_alpha(K, v, a).residual));
      const double base = ang(rng), th = open(rng);
      const Vec2 u = Vec2::from_angle(base), w = Vec2::from_angle(base + th);
      const Vec2 vv = sector_split(K, u, w);
      worst_split = std::max(
          worst_split, std::abs(dot(K.pi_K(rotate90(u)) - K.pi_K(rotate90(w)), rotate90(vv))));
      const double rel = ccw_angle(base, vv.angle());
      interior = interior && rel > 0 && rel < th;
    }
    st.require(worst_match < scale * 1e-10 * K.diameter(), tag + "matching residual",
               fmt(worst_match));
    st.require(worst_split < scale * 1e-10 * K.diameter() && interior, tag + "sector split",
               fmt(worst_split));
  }

  {
    auto c4 = ConeSpec::regular(ConvexBody::disc(), 4);
    const auto mesh = build_cone(c4, 1.0, fast ? 17 : 33, fast ? 17 : 33);
    double worst_omega = 0.0;
    for (const auto& chain : mesh.rulings)
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        worst_omega = std::max(
            worst_omega,
            std::abs(contact_form_residual(mesh.vertices[chain[i]], mesh.vertices[chain[i + 1]])));
    st.require(worst_omega < scale * 1e-10, "cone rulings horizontal", fmt(worst_omega));

    const auto a4 = graph_area(c4.body(), graph_of(c4), disc_region(c4, 1.0), 16);
    const double closed = disc_cone_area_closed_form(4, 1.0);
    st.require(std::abs(a4.value - closed) < 1e-8, "C(4) area vs closed form",
               fmt(std::abs(a4.value - closed)));

    AlphaProfile u2(ConvexBody::disc(), 0.0, pi / 2);
    const auto rep = perturbation_test(ConvexBody::disc(), graph_of(u2), disc_region(u2, 1.0),
                                       default_bump_family(1.0), {0.1}, fast ? 8 : 12);
    st.require(!rep.any_negative, "perturbation harness on u_{pi/2}",
               "min delta " + fmt(rep.worst_delta));
  }

  if (inject_mismatch) {
    // negative control: a spliced surface with beta detached from alpha must
    // be caught by the stationarity check
    AlphaProfile bad =
        AlphaProfile::with_beta_override(ConvexBody::disc(), 0.0, pi / 4, pi + 0.2);
    const double res = stationarity_residual(ConvexBody::disc(), 0.0, pi / 4, bad.beta(0.0));
    st.require(std::abs(res) < 1e-10, "injected surface stationarity residual", fmt(res));
  }

  if (!st.first_failure.empty()) {
    std::printf("verification FAILED at: %s\n", st.first_failure.c_str());
    return 1;
  }
  std::printf("all %d verification checks passed\n", st.checks);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal horizontal graphs and cones for sub-Finsler Heisenberg structures"};
  app.require_subcommand(1);

  std::string body_spec = "disc", out_path, out_dir = ".", alpha_spec = "1.5707963267948966";
  double v_angle = 0.0, mollify_eps = 0.0, r0 = 1.0, theta0 = 0.0;
  double lambda_min = -2.0, lambda_max = 2.0, mu_min = -1.0, mu_max = 1.0;
  std::vector<double> alphas, thetas;
  std::optional<double> area_alpha;
  int grid_count = 10, res = 129, k = 0, quad_order = 16, k_min = 3, k_max = 16;
  double tol = 0.0;
  bool half = false, fast = false, inject = false;

  auto add_body = [&](CLI::App* cmd) {
    cmd->add_option("--body", body_spec, "built-in name or body file path");
  };

  auto* c_body = app.add_subcommand("body", "validate a body and print its summary");
  add_body(c_body);

  auto* c_beta = app.add_subcommand("beta", "solve the matching angle beta(alpha)");
  add_body(c_beta);
  c_beta->add_option("--v-angle", v_angle, "direction angle of the singular line");
  c_beta->add_option("--alpha", alphas, "explicit alpha values (radians)");
  c_beta->add_option("--grid", grid_count, "alpha grid size when no --alpha given");
  c_beta->add_option("--out", out_path, "CSV output path (stdout when omitted)");

  auto* c_surface = app.add_subcommand("surface", "mesh a herringbone surface");
  add_body(c_surface);
  c_surface->add_option("--v-angle", v_angle, "direction angle of the singular line");
  c_surface->add_option("--alpha", alpha_spec, "constant angle (radians) or profile file");
  c_surface->add_option("--mollify", mollify_eps, "smooth a sampled profile at this width");
  c_surface->add_flag("--half", half, "restrict to lambda >= 0 (half surface)");
  c_surface->add_option("--lambda-min", lambda_min);
  c_surface->add_option("--lambda-max", lambda_max);
  c_surface->add_option("--mu-min", mu_min);
  c_surface->add_option("--mu-max", mu_max);
  c_surface->add_option("--res", res, "grid resolution per axis");
  c_surface->add_option("--out", out_dir, "output directory");

  auto* c_cone = app.add_subcommand("cone", "mesh an area-minimizing cone");
  add_body(c_cone);
  c_cone->add_option("-k,--k", k, "number of equal sectors (C(k))");
  c_cone->add_option("--thetas", thetas, "explicit sector angles summing to 2*pi");
  auto* t0opt = c_cone->add_option("--theta0", theta0, "base angle of the first seam");
  c_cone->add_option("--r0", r0, "disc radius");
  c_cone->add_option("--res", res, "grid resolution per axis");
  c_cone->add_option("--out", out_dir, "output directory");

  auto* c_area = app.add_subcommand("area", "sub-Finsler graph area report");
  add_body(c_area);
  c_area->add_option("-k,--k", k, "cone sector count");
  c_area->add_option("--thetas", thetas, "explicit cone sector angles");
  auto* t0opt2 = c_area->add_option("--theta0", theta0, "cone base angle");
  c_area->add_option("--alpha", area_alpha, "herringbone constant angle instead of a cone");
  c_area->add_option("--v-angle", v_angle, "herringbone singular direction");
  c_area->add_option("--r0", r0, "disc radius");
  c_area->add_option("--quad-order", quad_order, "base Gauss-Legendre order");
  c_area->add_option("--out", out_path, "CSV output path (stdout when omitted)");

  auto* c_conv = app.add_subcommand("converge", "C(k) height and area convergence table");
  c_conv->add_option("--k-min", k_min);
  c_conv->add_option("--k-max", k_max);
  c_conv->add_option("--r0", r0);
  c_conv->add_option("--quad-order", quad_order);
  c_conv->add_option("--out", out_path, "CSV output path (stdout when omitted)");

  auto* c_verify = app.add_subcommand("verify", "run the invariant suites");
  c_verify->add_option("--body", body_spec, "restrict checks to one body")->expected(1);
  c_verify->add_flag("--fast", fast, "smaller random samples");
  c_verify->add_flag("--inject-mismatch", inject,
                     "insert a non-stationary spliced surface (expected to fail)");
  c_verify->add_option("--tol", tol, "override the 1e-10 residual tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_body->parsed()) return cmd_body(body_spec);
    if (c_beta->parsed()) return cmd_beta(body_spec, v_angle, alphas, grid_count, out_path);
    if (c_surface->parsed())
      return cmd_surface(body_spec, v_angle, alpha_spec, mollify_eps, half, lambda_min,
                         lambda_max, mu_min, mu_max, res, out_dir);
    if (c_cone->parsed())
      return cmd_cone(body_spec, k, thetas, theta0, !t0opt->empty(), r0, res, out_dir);
    if (c_area->parsed())
      return cmd_area(body_spec, k, thetas, theta0, !t0opt2->empty(), area_alpha, v_angle, r0,
                      quad_order, out_path);
    if (c_conv->parsed()) return cmd_converge(k_min, k_max, r0, quad_order, out_path);
    if (c_verify->parsed())
      return cmd_verify(c_verify->count("--body") ? body_spec : "", fast, inject, tol);
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

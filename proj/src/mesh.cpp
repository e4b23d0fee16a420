#include "sfm/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "sfm/parallel.hpp"

namespace sfm {

const char* to_string(VertexTag tag) {
  switch (tag) {
    case VertexTag::regular: return "regular";
    case VertexTag::singular_ray: return "singular_ray";
    case VertexTag::seam: return "seam";
  }
  return "?";
}

namespace {

double xy_area2(const TriMesh& mesh, int a, int b, int c) {
  const Vec2 pa = mesh.vertices[a].xy();
  const Vec2 pb = mesh.vertices[b].xy();
  const Vec2 pc = mesh.vertices[c].xy();
  return std::abs(cross(pb - pa, pc - pa));
}

// Emits the two triangles of a grid quad unless degenerate in the plane.
void emit_quad(TriMesh& mesh, int v00, int v10, int v11, int v01) {
  constexpr double kTiny = 1e-300;
  if (xy_area2(mesh, v00, v10, v11) > kTiny) mesh.triangles.push_back({v00, v10, v11});
  if (xy_area2(mesh, v00, v11, v01) > kTiny) mesh.triangles.push_back({v00, v11, v01});
}

// Appends a structured strip parametrized by rows r in [0, nr) and columns
// c in [0, nc), with positions produced by `point` and tags by `tag`.
// Rows become rulings.
template <typename PointFn, typename TagFn>
void append_strip(TriMesh& mesh, int nr, int nc, PointFn&& point, TagFn&& tag, bool parallel) {
  const int base = static_cast<int>(mesh.vertices.size());
  mesh.vertices.resize(base + static_cast<std::size_t>(nr) * nc);
  mesh.tags.resize(mesh.vertices.size());
  mesh.ruling_params.resize(mesh.vertices.size());

  auto fill = [&](std::size_t idx) {
    const int r = static_cast<int>(idx) / nc;
    const int c = static_cast<int>(idx) % nc;
    auto [p, params] = point(r, c);
    mesh.vertices[base + idx] = p;
    mesh.ruling_params[base + idx] = params;
    mesh.tags[base + idx] = tag(r, c);
  };
  if (parallel)
    parallel_for(static_cast<std::size_t>(nr) * nc, fill);
  else
    serial_for(static_cast<std::size_t>(nr) * nc, fill);

  for (int r = 0; r + 1 < nr; ++r) {
    for (int c = 0; c + 1 < nc; ++c) {
      const int v00 = base + r * nc + c;
      const int v10 = base + (r + 1) * nc + c;
      const int v01 = base + r * nc + c + 1;
      const int v11 = base + (r + 1) * nc + c + 1;
      emit_quad(mesh, v00, v10, v11, v01);
    }
  }
  for (int r = 0; r < nr; ++r) {
    std::vector<int> chain(nc);
    for (int c = 0; c < nc; ++c) chain[c] = base + r * nc + c;
    mesh.rulings.push_back(std::move(chain));
  }
}

}  // namespace

TriMesh build_sigma(const AlphaProfile& profile, double lambda_min, double lambda_max,
                    double mu_min, double mu_max, int res_lambda, int res_mu, bool parallel) {
  if (!(lambda_max > lambda_min) || !(mu_max >= mu_min))
    throw std::invalid_argument("build_sigma: empty parameter ranges");
  if (res_lambda < 2 || res_mu < 2)
    throw std::invalid_argument("build_sigma: resolution must be at least 2 per axis");

  TriMesh mesh;
  auto lambda_at = [&](int r) {
    return lambda_min + (lambda_max - lambda_min) * r / (res_lambda - 1);
  };

  // One strip per side of the singular line; both include the mu = 0 row so
  // the line is duplicated with singular_ray tags.
  auto add_side = [&](double m0, double m1) {
    if (!(m1 > m0)) return;
    auto point = [&](int r, int c) {
      const double lambda = lambda_at(r);
      const double mu = m0 + (m1 - m0) * c / (res_mu - 1);
      return std::pair{psi(profile, lambda, mu), std::array<double, 2>{lambda, mu}};
    };
    auto tag = [&](int /*r*/, int c) {
      const double mu = m0 + (m1 - m0) * c / (res_mu - 1);
      return mu == 0.0 ? VertexTag::singular_ray : VertexTag::regular;
    };
    append_strip(mesh, res_lambda, res_mu, point, tag, parallel);
  };

  if (mu_min < 0.0) add_side(mu_min, std::min(0.0, mu_max));
  if (mu_max > 0.0) add_side(std::max(0.0, mu_min), mu_max);
  if (mesh.vertices.empty()) add_side(mu_min, mu_max);
  return mesh;
}

TriMesh build_cone(const ConeSpec& spec, double radius, int res_radial, int res_transverse,
                   bool parallel) {
  TriMesh mesh;
  if (radius == 0.0) return mesh;
  if (!(radius > 0.0)) throw std::invalid_argument("build_cone: radius must be nonnegative");
  if (res_radial < 2 || res_transverse < 2)
    throw std::invalid_argument("build_cone: resolution must be at least 2 per axis");

  for (const ConeSpec::Sector& s : spec.sectors()) {
    const Vec2 v = Vec2::from_angle(s.v_angle);

    // Two ruled sub-patches per sector: rays towards u (opening alpha) and
    // rays towards u_prev (opening beta_prime, below the singular ray).
    struct Side {
      Vec2 dir;
      double opening;
    };
    const Side sides[2] = {
        {Vec2::from_angle(s.u_angle), s.alpha},
        {Vec2::from_angle(s.u_prev_angle), s.beta_prime},
    };

    for (const Side& side : sides) {
      const double sino = std::sin(side.opening);
      auto mu_max = [&](double lambda) {
        const double disc = radius * radius - lambda * lambda * sino * sino;
        const double coso = std::cos(side.opening);
        return disc <= 0.0 ? 0.0 : -lambda * coso + std::sqrt(disc);
      };
      auto point = [&](int r, int c) {
        const double lambda = radius * r / (res_radial - 1);
        const double mu = mu_max(lambda) * c / (res_transverse - 1);
        const Vec2 base = lambda * v;
        const Vec2 p = base + mu * side.dir;
        const double t = mu * lift_slope(base, side.dir);
        return std::pair{Vec3{p.x, p.y, t}, std::array<double, 2>{lambda, mu}};
      };
      auto tag = [&](int r, int c) {
        if (c == 0) return VertexTag::singular_ray;  // mu = 0: on the v ray
        if (r == 0) return VertexTag::seam;          // lambda = 0: on the u ray
        return VertexTag::regular;
      };
      append_strip(mesh, res_radial, res_transverse, point, tag, parallel);
    }
  }
  return mesh;
}

TriMesh heisenberg_translate(const TriMesh& mesh, Vec3 p) {
  TriMesh out = mesh;
  for (Vec3& q : out.vertices) q = heis_product(p, q);
  return out;
}

void write_obj(const TriMesh& mesh, std::ostream& out) {
  char buf[128];
  out << "# sub-Finsler minimal-surface patch\n";
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.t);
    out << buf;
  }
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (mesh.tags[i] != VertexTag::regular)
      out << "# tag " << (i + 1) << ' ' << to_string(mesh.tags[i]) << '\n';
  }
  for (const auto& t : mesh.triangles)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_obj(const TriMesh& mesh, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  write_obj(mesh, f);
}

void write_csv(const TriMesh& mesh, std::ostream& out) {
  char buf[256];
  out << "lambda,mu,x,y,t,tag\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", mesh.ruling_params[i][0],
                  mesh.ruling_params[i][1], v.x, v.y, v.t, to_string(mesh.tags[i]));
    out << buf;
  }
}

void write_csv(const TriMesh& mesh, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  write_csv(mesh, f);
}

}  // namespace sfm

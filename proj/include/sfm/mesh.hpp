#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "sfm/geometry.hpp"
#include "sfm/surfaces.hpp"

namespace sfm {

enum class VertexTag { regular, singular_ray, seam };

const char* to_string(VertexTag tag);

// Indexed triangle mesh of a surface patch in (x, y, t). Vertices along
// seams and singular rays are duplicated (same coordinates, per-patch tags)
// so one-sided quantities stay measurable downstream. Rulings are stored as
// vertex index chains; every chain is a straight horizontal segment.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<VertexTag> tags;
  std::vector<std::array<double, 2>> ruling_params;  // (lambda, mu) per vertex
  std::vector<std::vector<int>> rulings;

  std::size_t vertex_count() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
};

// Structured mesh of Sigma_{v,alpha} over a (lambda, mu) box. The mu grid is
// split at 0 so the singular line is a mesh line with duplicated vertices.
TriMesh build_sigma(const AlphaProfile& profile, double lambda_min, double lambda_max,
                    double mu_min, double mu_max, int res_lambda, int res_mu,
                    bool parallel = true);

// Mesh of C_K(theta0, ..., theta_k) over the closed disc of the given
// radius: one (lambda, mu) patch per sub-sector, rulings along the mesh
// rows, singular rays at mu = 0 and seams at lambda = 0.
TriMesh build_cone(const ConeSpec& spec, double radius, int res_radial, int res_transverse,
                   bool parallel = true);

// Left translation L_p applied vertex-wise; horizontality of rulings is
// preserved by left invariance of the distribution.
TriMesh heisenberg_translate(const TriMesh& mesh, Vec3 p);

// Wavefront OBJ: "v x y t" lines, 1-based "f i j k" faces, vertex tags as
// "# tag <vertex-index> <tag>" comment lines (indices 1-based, matching f).
void write_obj(const TriMesh& mesh, std::ostream& out);
void write_obj(const TriMesh& mesh, const std::string& path);

// CSV sidecar "lambda,mu,x,y,t,tag".
void write_csv(const TriMesh& mesh, std::ostream& out);
void write_csv(const TriMesh& mesh, const std::string& path);

}  // namespace sfm

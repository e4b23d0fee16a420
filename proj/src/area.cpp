#include "sfm/area.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sfm/numerics.hpp"
#include "sfm/parallel.hpp"

namespace sfm {

GraphFn graph_of(const ConeSpec& spec) {
  return {[spec](Vec2 z) { return spec.eval(z.x, z.y); },
          [spec](Vec2 z) { return spec.grad(z.x, z.y); }};
}

GraphFn graph_of(const AlphaProfile& profile) {
  return {[profile](Vec2 z) { return graph_eval(profile, z.x, z.y); },
          [profile](Vec2 z) { return graph_grad(profile, z.x, z.y); }};
}

double area_integrand(const ConvexBody& K, Vec2 grad_u, Vec2 xy) {
  return K.dual_norm({grad_u.x - xy.y, grad_u.y + xy.x});
}

DiscRegion disc_region(const ConeSpec& spec, double r0) {
  DiscRegion region{r0, {}};
  for (const auto& s : spec.sectors()) {
    region.split_angles.push_back(s.u_angle);
    region.split_angles.push_back(s.v_angle);
  }
  return region;
}

DiscRegion disc_region(const AlphaProfile& profile, double r0) {
  return {r0, {wrap_angle(profile.v_angle()), wrap_angle(profile.v_angle() + pi)}};
}

namespace {

std::vector<double> angular_cells(const DiscRegion& region) {
  std::vector<double> cuts;
  for (double a : region.split_angles) cuts.push_back(wrap_angle(a));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());
  if (cuts.empty()) return {0.0, two_pi};
  std::vector<double> bounds(cuts);
  bounds.push_back(cuts.front() + two_pi);
  return bounds;
}

double polar_quadrature(const ConvexBody& K, const GraphFn& graph, const DiscRegion& region,
                        int order, bool parallel) {
  const QuadratureRule& rule = gauss_legendre(order);
  const std::vector<double> bounds = angular_cells(region);
  const std::size_t n_cells = bounds.size() - 1;
  const std::size_t tasks = n_cells * order;  // one task per (cell, radial node)

  std::vector<double> partial(tasks, 0.0);
  auto work = [&](std::size_t task) {
    const std::size_t cell = task / order;
    const int ir = static_cast<int>(task % order);
    const double phi0 = bounds[cell], phi1 = bounds[cell + 1];
    const double half_phi = 0.5 * (phi1 - phi0);
    const double r = 0.5 * region.r0 * (rule.nodes[ir] + 1.0);
    const double wr = 0.5 * region.r0 * rule.weights[ir];

    double acc = 0.0;
    for (int ia = 0; ia < order; ++ia) {
      const double phi = 0.5 * (phi0 + phi1) + half_phi * rule.nodes[ia];
      const double wa = half_phi * rule.weights[ia];
      const Vec2 z = r * Vec2::from_angle(phi);
      acc += wa * wr * r * area_integrand(K, graph.grad(z), z);
    }
    partial[task] = acc;
  };
  if (parallel)
    parallel_for(tasks, work);
  else
    serial_for(tasks, work);
  return pairwise_sum(partial);
}

std::vector<double> axis_cells(double lo, double hi, const std::vector<double>& splits) {
  std::vector<double> bounds{lo};
  for (double s : splits)
    if (s > lo && s < hi) bounds.push_back(s);
  bounds.push_back(hi);
  std::sort(bounds.begin(), bounds.end());
  return bounds;
}

double rect_quadrature(const ConvexBody& K, const GraphFn& graph, const RectRegion& region,
                       int order, bool parallel) {
  const QuadratureRule& rule = gauss_legendre(order);
  const std::vector<double> xb = axis_cells(region.x0, region.x1, region.x_splits);
  const std::vector<double> yb = axis_cells(region.y0, region.y1, region.y_splits);
  const std::size_t nx = xb.size() - 1, ny = yb.size() - 1;
  const std::size_t tasks = nx * ny * order;

  std::vector<double> partial(tasks, 0.0);
  auto work = [&](std::size_t task) {
    const std::size_t cell = task / order;
    const int iy = static_cast<int>(task % order);
    const std::size_t cx = cell % nx, cy = cell / nx;
    const double hx = 0.5 * (xb[cx + 1] - xb[cx]);
    const double hy = 0.5 * (yb[cy + 1] - yb[cy]);
    const double y = 0.5 * (yb[cy] + yb[cy + 1]) + hy * rule.nodes[iy];
    const double wy = hy * rule.weights[iy];
    double acc = 0.0;
    for (int ix = 0; ix < order; ++ix) {
      const double x = 0.5 * (xb[cx] + xb[cx + 1]) + hx * rule.nodes[ix];
      const double wx = hx * rule.weights[ix];
      const Vec2 z{x, y};
      acc += wx * wy * area_integrand(K, graph.grad(z), z);
    }
    partial[task] = acc;
  };
  if (parallel)
    parallel_for(tasks, work);
  else
    serial_for(tasks, work);
  return pairwise_sum(partial);
}

}  // namespace

AreaResult graph_area(const ConvexBody& K, const GraphFn& graph, const DiscRegion& region,
                      int order, bool parallel) {
  if (order < 2) throw std::invalid_argument("quadrature order must be at least 2");
  if (!(region.r0 >= 0.0)) throw std::invalid_argument("disc radius must be nonnegative");
  if (region.r0 == 0.0) return {0.0, 0.0, order};
  const double coarse = polar_quadrature(K, graph, region, order, parallel);
  const double fine = polar_quadrature(K, graph, region, 2 * order, parallel);
  const double err = std::max(std::abs(fine - coarse), 4.0 * 1e-16 * std::abs(fine));
  return {fine, err, order};
}

AreaResult graph_area(const ConvexBody& K, const GraphFn& graph, const RectRegion& region,
                      int order, bool parallel) {
  if (order < 2) throw std::invalid_argument("quadrature order must be at least 2");
  if (!(region.x1 > region.x0) || !(region.y1 > region.y0))
    throw std::invalid_argument("rectangle must have positive measure");
  const double coarse = rect_quadrature(K, graph, region, order, parallel);
  const double fine = rect_quadrature(K, graph, region, 2 * order, parallel);
  const double err = std::max(std::abs(fine - coarse), 4.0 * 1e-16 * std::abs(fine));
  return {fine, err, order};
}

double disc_cone_area_closed_form(int k, double r0) {
  if (k < 3) throw std::domain_error("disc cone area needs k >= 3");
  if (!(r0 >= 0.0)) throw std::domain_error("radius must be nonnegative");
  const double a = pi / k;
  return (4.0 * pi * r0 * r0 * r0 / 3.0) * (1.0 - std::cos(a)) / (a * std::sin(a));
}

double cone_area_closed_form(const ConeSpec& spec, double r0) {
  // On each ruled piece grad_u + (-y, x) = (2 y' / sin(opening)) J(ruling
  // direction), so the dual norm is a fixed support value times 2|y'|.
  const ConvexBody& K = spec.body();
  double acc = 0.0;
  for (const auto& s : spec.sectors()) {
    const double h_plus = K.support(s.u_angle + 0.5 * pi);
    const double h_minus = K.support(s.u_prev_angle + 0.5 * pi);
    acc += (1.0 - std::cos(s.alpha)) / std::sin(s.alpha) * h_plus;
    acc += (1.0 - std::cos(s.beta_prime)) / std::sin(s.beta_prime) * h_minus;
  }
  return (2.0 * r0 * r0 * r0 / 3.0) * acc;
}

double herringbone_area_closed_form(const AlphaProfile& profile, double r0) {
  if (!profile.constant_alpha())
    throw std::domain_error("closed form requires a constant-angle profile");
  const ConvexBody& K = profile.body();
  const double a0 = profile.v_angle();
  const double alpha = profile.alpha(0.0);
  const double beta = profile.beta(0.0);
  const double h_plus = K.support(a0 + alpha + 0.5 * pi);
  const double h_minus = K.support(a0 + beta + 0.5 * pi);
  return (4.0 * r0 * r0 * r0 / 3.0) *
         (h_plus / std::sin(alpha) + h_minus / std::abs(std::sin(beta)));
}

double Bump::value(Vec2 z) const {
  const double s2 = (z - center).norm2() / (radius * radius);
  if (s2 >= 1.0) return 0.0;
  const double w = 1.0 - s2;
  return w * w * w;
}

Vec2 Bump::grad(Vec2 z) const {
  const double s2 = (z - center).norm2() / (radius * radius);
  if (s2 >= 1.0) return {0.0, 0.0};
  const double w = 1.0 - s2;
  return (-6.0 * w * w / (radius * radius)) * (z - center);
}

std::vector<Bump> default_bump_family(double r0) {
  std::vector<Bump> bumps;
  const double scales[3] = {0.15, 0.25, 0.4};
  for (int j = 0; j < 8; ++j) {
    const Vec2 c = (0.5 * r0) * Vec2::from_angle(j * two_pi / 8.0);
    for (double s : scales) bumps.push_back({c, s * r0});
  }
  return bumps;
}

PerturbationReport perturbation_test(const ConvexBody& K, const GraphFn& base,
                                     const DiscRegion& region, const std::vector<Bump>& bumps,
                                     const std::vector<double>& relative_amplitudes, int order,
                                     bool parallel) {
  PerturbationReport report;
  const AreaResult base_area = graph_area(K, base, region, order, parallel);
  report.base_area = base_area.value;
  report.base_error = base_area.error_estimate;

  const double height_scale = region.r0 * region.r0;
  for (std::size_t bi = 0; bi < bumps.size(); ++bi) {
    const Bump& bump = bumps[bi];
    for (double rel : relative_amplitudes) {
      for (double sign : {+1.0, -1.0}) {
        const double eps = sign * rel * height_scale;
        GraphFn perturbed{
            [&base, &bump, eps](Vec2 z) { return base.value(z) + eps * bump.value(z); },
            [&base, &bump, eps](Vec2 z) { return base.grad(z) + eps * bump.grad(z); }};
        const AreaResult a = graph_area(K, perturbed, region, order, parallel);
        PerturbationRow row;
        row.bump_index = bi;
        row.eps = eps;
        row.delta = a.value - base_area.value;
        row.err_bound = a.error_estimate + base_area.error_estimate;
        row.negative = row.delta < -row.err_bound;
        report.worst_delta = std::min(report.worst_delta, row.delta);
        report.any_negative = report.any_negative || row.negative;
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

}  // namespace sfm

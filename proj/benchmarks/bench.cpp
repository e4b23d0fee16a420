// Timing comparison of the OpenMP kernels against their serial reference
// paths. Both paths share the same per-task work and the same deterministic
// reduction, so outputs must match bitwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "sfm/area.hpp"
#include "sfm/mesh.hpp"
#include "sfm/parallel.hpp"
#include "sfm/surfaces.hpp"

using namespace sfm;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename Fn>
double time_ms(Fn&& fn, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, double max_diff) {
  std::printf("%-28s %10.2f ms %10.2f ms %7.2fx   max |diff| = %g\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms, max_diff);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", max_threads());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    auto c8 = ConeSpec::regular(ConvexBody::pball(1.5), 8);
    const auto g = graph_of(c8);
    const auto region = disc_region(c8, 1.0);
    double serial_value = 0.0, parallel_value = 0.0;
    const double ts = time_ms([&] {
      serial_value = graph_area(c8.body(), g, region, 48, false).value;
    });
    const double tp = time_ms([&] {
      parallel_value = graph_area(c8.body(), g, region, 48, true).value;
    });
    report("graph_area C(8), order 48", ts, tp, std::abs(serial_value - parallel_value));
  }

  {
    auto ce = ConeSpec::make(ConvexBody::ellipse(2, 1), 0.9, {pi, pi / 2, pi / 2});
    TriMesh ms, mp;
    const double ts = time_ms([&] { ms = build_cone(ce, 1.0, 257, 129, false); });
    const double tp = time_ms([&] { mp = build_cone(ce, 1.0, 257, 129, true); });
    double diff = 0.0;
    for (std::size_t i = 0; i < ms.vertices.size(); ++i)
      diff = std::max(diff, std::abs(ms.vertices[i].t - mp.vertices[i].t));
    report("build_cone 257x129", ts, tp, diff);
  }

  {
    auto c16 = ConeSpec::regular(ConvexBody::disc(), 16);
    const int n = 1024;
    auto sup_rows = [&](bool parallel) {
      std::vector<double> row_max(n, 0.0);
      auto work = [&](std::size_t i) {
        const double x = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
        double m = 0.0;
        for (int j = 0; j < n; ++j) {
          const double y = -1.0 + 2.0 * j / (n - 1);
          if (x * x + y * y <= 1.0) m = std::max(m, std::abs(c16.eval(x, y)));
        }
        row_max[i] = m;
      };
      if (parallel)
        parallel_for(n, work);
      else
        serial_for(n, work);
      double sup = 0.0;
      for (double v : row_max) sup = std::max(sup, v);
      return sup;
    };
    double ss = 0.0, sp = 0.0;
    const double ts = time_ms([&] { ss = sup_rows(false); });
    const double tp = time_ms([&] { sp = sup_rows(true); });
    report("height sup 1024^2", ts, tp, std::abs(ss - sp));
  }

  {
    AlphaProfile prof(ConvexBody::pball(1.5), pi / 3, pi / 6);
    TriMesh ms, mp;
    const double ts = time_ms([&] { ms = build_sigma(prof, -2, 2, -1, 1, 257, 129, false); });
    const double tp = time_ms([&] { mp = build_sigma(prof, -2, 2, -1, 1, 257, 129, true); });
    double diff = 0.0;
    for (std::size_t i = 0; i < ms.vertices.size(); ++i)
      diff = std::max(diff, std::abs(ms.vertices[i].t - mp.vertices[i].t));
    report("build_sigma 257x129", ts, tp, diff);
  }

  return 0;
}

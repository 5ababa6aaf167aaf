#ifndef MA2D3_TEST_HELPERS_HPP
#define MA2D3_TEST_HELPERS_HPP

#include <cmath>
#include <random>

#include "core/grid.hpp"
#include "core/ops.hpp"

namespace ma2d3::testing {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline Grid2 torus(int n, double box = kTwoPi) { return make_periodic_grid(n, n, box, box); }

// Band-limited random field: a fixed number of low harmonics with seeded
// coefficients, so tests are reproducible and spectrally exact.
inline ScalarField random_smooth(const Grid2& g, std::mt19937_64& rng, int max_mode = 3,
                                 double amp = 1.0) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  struct Mode {
    int mx, my;
    double c, s;
  };
  std::vector<Mode> modes;
  for (int mx = 0; mx <= max_mode; ++mx)
    for (int my = -max_mode; my <= max_mode; ++my) {
      if (mx == 0 && my <= 0) continue;
      modes.push_back({mx, my, coef(rng), coef(rng)});
    }
  double bx = kTwoPi / g.length_x(), by = kTwoPi / g.length_y();
  ScalarField f(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      double x = g.x(ix), y = g.y(iy), v = 0;
      for (const auto& m : modes)
        v += m.c * std::cos(bx * m.mx * x + by * m.my * y) +
             m.s * std::sin(bx * m.mx * x + by * m.my * y);
      f.at(ix, iy) = amp * v / modes.size() * 3.0;
    }
  return f;
}

inline double max_abs(const ScalarField& f) { return sup_norm(f); }

}  // namespace ma2d3::testing

#endif

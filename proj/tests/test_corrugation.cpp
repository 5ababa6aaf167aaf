#include <cmath>
#include <random>

#include "core/corrugation.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace ma2d3;
using namespace ma2d3::testing;

TEST_CASE("profile values at zero") {
  Profiles p = profiles(0.0);
  CHECK(p.g == 0.0);
  CHECK(p.gbar == 0.5);
  CHECK(p.gdbar == 0.0);
  CHECK(p.gtilde == 0.5);
}

TEST_CASE("profile derivative identities on a dense sample") {
  for (int i = 0; i < 1000; ++i) {
    double t = -7.0 + 14.0 * i / 999.0;
    Profiles p = profiles(t);
    // hand-differentiated closed forms
    double gp = 2.0 * std::cos(t);
    double gbarp = -std::sin(2.0 * t);
    double gdbarp = -std::cos(2.0 * t);
    double gtildep = std::sin(2.0 * t);
    CHECK(std::abs(0.5 * gp * gp + gdbarp - 1.0) <= 1e-12);
    CHECK(std::abs(gbarp + 0.5 * p.g * gp) <= 1e-12);
    CHECK(std::abs(gtildep + gbarp) <= 1e-12);  // Gtilde' = -Gbar'
  }
}

TEST_CASE("zero amplitude is a bit-identical no-op") {
  Grid2 g = torus(64);
  std::mt19937_64 rng(61);
  VectorField v(g, 3), w(g, 2);
  for (int c = 0; c < 3; ++c) v.comp[c] = random_smooth(g, rng);
  for (int c = 0; c < 2; ++c) w.comp[c] = random_smooth(g, rng);
  StepParams p;
  p.axis = 1;
  p.comp = 2;
  p.freq = 8;
  p.amplitude = ScalarField(g, 0.0);
  StepResult out = step_perturb(v, w, p);
  for (int c = 0; c < 3; ++c) CHECK(out.v.comp[c].a == v.comp[c].a);
  for (int c = 0; c < 2; ++c) CHECK(out.w.comp[c].a == w.comp[c].a);
  CHECK(sup_norm(step_residual(v, w, p)) == 0.0);
}

TEST_CASE("constant amplitude against the closed forms") {
  // v = w = 0, a = 1, i = 1, j = 1, lambda = 4:
  //   v~1 = sin(4 x1)/2, w~1 = -(1/8) sin(8 x1), everything else zero
  Grid2 g = torus(128);
  VectorField v(g, 3), w(g, 2);
  StepParams p;
  p.axis = 1;
  p.comp = 1;
  p.freq = 4;
  p.amplitude = ScalarField(g, 1.0);
  StepResult out = step_perturb(v, w, p);
  ScalarField v1 = sample(g, [](double x, double) { return 0.5 * std::sin(4 * x); });
  ScalarField w1 = sample(g, [](double x, double) { return -std::sin(8 * x) / 8.0; });
  CHECK(sup_norm(out.v.comp[0] - v1) < 1e-12);
  CHECK(sup_norm(out.v.comp[1]) == 0.0);
  CHECK(sup_norm(out.v.comp[2]) == 0.0);
  CHECK(sup_norm(out.w.comp[0] - w1) < 1e-12);
  CHECK(sup_norm(out.w.comp[1]) == 0.0);
}

TEST_CASE("C0 proximity bound |v~ - v| <= 2|a|/lambda pointwise") {
  Grid2 g = torus(96);
  std::mt19937_64 rng(67);
  VectorField v(g, 3), w(g, 2);
  v.comp[1] = random_smooth(g, rng);
  StepParams p;
  p.axis = 2;
  p.comp = 2;
  p.freq = 16;
  p.amplitude = random_smooth(g, rng);
  StepResult out = step_perturb(v, w, p);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      double dv = std::abs(out.v.comp[1].at(ix, iy) - v.comp[1].at(ix, iy));
      CHECK(dv <= 2.0 * std::abs(p.amplitude.at(ix, iy)) / p.freq + 1e-14);
    }
}

TEST_CASE("only the chosen component of v changes") {
  Grid2 g = torus(64);
  std::mt19937_64 rng(71);
  VectorField v(g, 3), w(g, 2);
  for (int c = 0; c < 3; ++c) v.comp[c] = random_smooth(g, rng);
  StepParams p;
  p.axis = 1;
  p.comp = 3;
  p.freq = 8;
  p.amplitude = random_smooth(g, rng);
  StepResult out = step_perturb(v, w, p);
  CHECK(out.v.comp[0].a == v.comp[0].a);
  CHECK(out.v.comp[1].a == v.comp[1].a);
  CHECK(out.v.comp[2].a != v.comp[2].a);
}

TEST_CASE("step identity at spectral accuracy, random smooth data") {
  Grid2 g = torus(256);
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    VectorField v(g, 3), w(g, 2);
    for (int c = 0; c < 3; ++c) v.comp[c] = random_smooth(g, rng, 3, 0.7);
    for (int c = 0; c < 2; ++c) w.comp[c] = random_smooth(g, rng, 3, 0.7);
    StepParams p;
    p.axis = 1 + (trial % 2);
    p.comp = 1 + (trial % 3);
    p.freq = 8;
    p.amplitude = random_smooth(g, rng, 2, 0.6);
    CHECK(sup_norm(step_residual(v, w, p)) < 1e-8);
  }
}

TEST_CASE("second derivative grows linearly in the frequency") {
  Grid2 g = torus(512);
  VectorField v(g, 3), w(g, 2);
  ScalarField a = sample(g, [](double x, double y) { return 1.0 + 0.3 * std::sin(x) * std::cos(y); });
  std::vector<double> freqs = {8, 16, 32, 64}, lf, lh;
  for (double f : freqs) {
    StepParams p;
    p.axis = 1;
    p.comp = 1;
    p.freq = f;
    p.amplitude = a;
    StepResult out = step_perturb(v, w, p);
    SymMatrixField h(g);
    h.d11 = partial_derivative(out.v.comp[0], 2, 0);
    h.d12 = partial_derivative(out.v.comp[0], 1, 1);
    h.d22 = partial_derivative(out.v.comp[0], 0, 2);
    lf.push_back(std::log(f));
    lh.push_back(std::log(sup_norm(h)));
  }
  double slope = (lh.back() - lh.front()) / (lf.back() - lf.front());
  CHECK(slope > 0.9);
  CHECK(slope < 1.1);
}

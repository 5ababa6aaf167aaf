#include "core/corrugation.hpp"

#include <cmath>

namespace ma2d3 {

Profiles profiles(double t) {
  Profiles p;
  p.g = 2.0 * std::sin(t);
  p.gbar = 0.5 * std::cos(2.0 * t);
  p.gdbar = -0.5 * std::sin(2.0 * t);
  p.gtilde = 1.0 - 0.5 * std::cos(2.0 * t);
  return p;
}

ScalarField profile_field(const Grid2& grid, int axis, double freq, int which) {
  require(axis == 1 || axis == 2, errc::config, "oscillation axis must be 1 or 2");
  ScalarField out(grid);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      double t = freq * (axis == 1 ? grid.x(ix) - grid.x0 : grid.y(iy) - grid.y0);
      Profiles p = profiles(t);
      double v = which == 0 ? p.g : which == 1 ? p.gbar : which == 2 ? p.gdbar : p.gtilde;
      out.at(ix, iy) = v;
    }
  return out;
}

namespace {

void check_step(const VectorField& v, const VectorField& w, const StepParams& p) {
  require_same_grid(v.grid, w.grid, "corrugation step");
  require_same_grid(v.grid, p.amplitude.grid, "corrugation step");
  require(p.freq > 0, errc::config, "corrugation frequency must be positive");
  require(p.comp >= 1 && p.comp <= v.k(), errc::config, "corrugation component out of range");
  require(p.axis == 1 || p.axis == 2, errc::config, "oscillation axis must be 1 or 2");
}

}  // namespace

StepResult step_perturb(const VectorField& v, const VectorField& w, const StepParams& p) {
  check_step(v, w, p);
  const Grid2& g = v.grid;
  const ScalarField& a = p.amplitude;
  int j = p.comp - 1;
  double il = 1.0 / p.freq;

  ScalarField G = profile_field(g, p.axis, p.freq, 0);
  ScalarField Gb = profile_field(g, p.axis, p.freq, 1);
  ScalarField Gd = profile_field(g, p.axis, p.freq, 2);

  StepResult out{v, w};
  out.v.comp[j] += il * (a * G);

  ScalarField vj_x = component_derivative(v, j, 1, 0);
  ScalarField vj_y = component_derivative(v, j, 0, 1);
  ScalarField ax = partial_derivative(a, 1, 0);
  ScalarField ay = partial_derivative(a, 0, 1);

  ScalarField aG = a * G;
  ScalarField aGb = a * Gb;
  out.w.comp[0] -= il * (aG * vj_x);
  out.w.comp[1] -= il * (aG * vj_y);
  out.w.comp[0] += (il * il) * (aGb * ax);
  out.w.comp[1] += (il * il) * (aGb * ay);
  out.w.comp[p.axis - 1] += il * (a * a * Gd);
  return out;
}

SymMatrixField step_error_terms(const VectorField& v, const StepParams& p) {
  const Grid2& g = v.grid;
  const ScalarField& a = p.amplitude;
  int j = p.comp - 1;
  double il = 1.0 / p.freq;

  ScalarField G = profile_field(g, p.axis, p.freq, 0);
  ScalarField Gb = profile_field(g, p.axis, p.freq, 1);
  ScalarField Gt = profile_field(g, p.axis, p.freq, 3);

  SymMatrixField hv(g);
  hv.d11 = component_derivative(v, j, 2, 0);
  hv.d12 = component_derivative(v, j, 1, 1);
  hv.d22 = component_derivative(v, j, 0, 2);

  SymMatrixField ha = hessian(a);
  auto [ax, ay] = gradient(a);

  SymMatrixField err(g);
  ScalarField aG = a * G * (-il);
  ScalarField aGb = a * Gb * (il * il);
  err.d11 = aG * hv.d11 + aGb * ha.d11 + (il * il) * (Gt * (ax * ax));
  err.d12 = aG * hv.d12 + aGb * ha.d12 + (il * il) * (Gt * (ax * ay));
  err.d22 = aG * hv.d22 + aGb * ha.d22 + (il * il) * (Gt * (ay * ay));
  return err;
}

SymMatrixField step_residual(const VectorField& v, const VectorField& w, const StepParams& p) {
  check_step(v, w, p);
  StepResult s = step_perturb(v, w, p);

  SymMatrixField lhs = quadratic_form(s.v) + sym_grad(s.w);
  lhs -= quadratic_form(v) + sym_grad(w);
  ScalarField a2 = p.amplitude * p.amplitude;
  if (p.axis == 1) lhs.d11 -= a2; else lhs.d22 -= a2;

  return lhs - step_error_terms(v, p);
}

}  // namespace ma2d3

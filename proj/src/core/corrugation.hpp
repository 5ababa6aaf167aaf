#ifndef MA2D3_CORRUGATION_HPP
#define MA2D3_CORRUGATION_HPP

#include "core/grid.hpp"
#include "core/ops.hpp"

namespace ma2d3 {

// Kuiper-type oscillation profiles:
//   G(t) = 2 sin t, Gbar(t) = cos(2t)/2, Gdbar(t) = -sin(2t)/2,
//   Gtilde(t) = 1 - cos(2t)/2.
struct Profiles {
  double g, gbar, gdbar, gtilde;
};
Profiles profiles(double t);

// Phase field G(freq * x_axis) sampled on the grid (phase origin at the grid
// origin), for each of the four profiles.
ScalarField profile_field(const Grid2& grid, int axis, double freq, int which);

struct StepParams {
  int axis = 1;       // oscillation axis i in {1,2}
  int comp = 1;       // codimension component j in {1..k}
  double freq = 0;    // lambda
  ScalarField amplitude;
};

struct StepResult {
  VectorField v;
  VectorField w;
};

// One corrugation step:
//   v~ = v + (a/lambda) G(lambda x_i) e_j
//   w~ = w - (a/lambda) G(lambda x_i) grad v^j + (a/lambda^2) Gbar(lambda x_i) grad a
//        + (a^2/lambda) Gdbar(lambda x_i) e_i
StepResult step_perturb(const VectorField& v, const VectorField& w, const StepParams& p);

// Defect of the step identity: quadratic-form difference minus the cancelled
// rank-one defect minus the three oscillatory error terms. Converges to zero
// with grid resolution; vanishes to spectral accuracy on periodic grids.
SymMatrixField step_residual(const VectorField& v, const VectorField& w, const StepParams& p);

// The three error terms on the right-hand side of the step identity.
SymMatrixField step_error_terms(const VectorField& v, const StepParams& p);

}  // namespace ma2d3

#endif

#ifndef MA2D3_OPS_HPP
#define MA2D3_OPS_HPP

#include <utility>
#include <vector>

#include "core/grid.hpp"

namespace ma2d3 {

// d^t/dx1^t d^s/dx2^s. Spectral on periodic grids, 4th-order finite
// differences (biased at the two outermost layers) on extended grids.
ScalarField partial_derivative(const ScalarField& f, int t, int s);

// Component derivative including the affine part of 2-component fields.
ScalarField component_derivative(const VectorField& f, int c, int t, int s);
// Samples plus the affine part, materialized.
ScalarField component_values(const VectorField& f, int c);

SymMatrixField hessian(const ScalarField& f);
std::pair<ScalarField, ScalarField> gradient(const ScalarField& f);

struct NormReport {
  double sup = 0.0;
  std::vector<double> cm;                            // cm[m] = C^m norm
  std::vector<std::pair<double, double>> holder;     // (beta, seminorm)
  double sampling_radius = 0.0;
};

NormReport norms(const ScalarField& f, int m_max, const std::vector<double>& betas,
                 const Region& region = Region::all());
NormReport norms(const VectorField& f, int m_max, const std::vector<double>& betas,
                 const Region& region = Region::all());
NormReport norms(const SymMatrixField& f, int m_max, const std::vector<double>& betas,
                 const Region& region = Region::all());

double sup_norm(const ScalarField& f, const Region& region = Region::all());
// sup over points of the spectral norm of the 2x2 matrix
double sup_norm(const SymMatrixField& f, const Region& region = Region::all());
double sup_norm(const VectorField& f, const Region& region = Region::all());
// max over component C^m norms
double cm_norm(const ScalarField& f, int m, const Region& region = Region::all());
double cm_norm(const VectorField& f, int m, const Region& region = Region::all());
// sup over derivatives of exactly order m
double deriv_order_norm(const SymMatrixField& f, int m, const Region& region = Region::all());

double field_min(const ScalarField& f, const Region& region = Region::all());
double field_max(const ScalarField& f, const Region& region = Region::all());

// Margin between the grid rectangle and its domain metadata; +inf when the
// grid is periodic or carries no domain.
double grid_margin(const Grid2& g, const Region& domain);

// Convolution with the normalized compactly supported radial bump
// c * exp(1/(r^2-1)) of radius l. Discrete-sum normalization, so constants
// are preserved exactly.
ScalarField mollify(const ScalarField& f, double l);
VectorField mollify(const VectorField& f, double l);
SymMatrixField mollify(const SymMatrixField& f, double l);

// (fg)*phi_l - (f*phi_l)(g*phi_l)
ScalarField convolution_commutator(const ScalarField& f, const ScalarField& g, double l);

SymMatrixField sym_grad(const VectorField& phi);
SymMatrixField quadratic_form(const VectorField& v);  // (1/2)(grad v)^T grad v
SymMatrixField defect(const VectorField& v, const VectorField& w, const SymMatrixField& A);
ScalarField curl_curl(const SymMatrixField& m);
ScalarField det_ma(const VectorField& v);
SymMatrixField wedge(const SymMatrixField& d);
ScalarField min_eigenvalue(const SymMatrixField& d);

SymMatrixField outer_sym(const ScalarField& gx, const ScalarField& gy);

// Potential with sym_grad(psi) = M, constructed by axis line integration of
// the rotation and the rows of M. Requires curl_curl(M) ~ 0. On periodic
// grids the non-periodic content is returned in psi.lin.
VectorField potential_from_sym_grad(const SymMatrixField& m);

// Smooth [0,1] cutoff: 1 on `inner`, 0 outside inner.grown(width).
ScalarField make_cutoff(const Grid2& g, const Region& inner, double width);
ScalarField unit_cutoff(const Grid2& g);

ScalarField antiderivative_y_fd(const ScalarField& f);  // cumulative, 4th order

}  // namespace ma2d3

#endif

#ifndef MA2D3_DECOMPOSE_HPP
#define MA2D3_DECOMPOSE_HPP

#include "core/grid.hpp"
#include "core/ops.hpp"

namespace ma2d3 {

// Linear maps a(D), Psi(D) with D = a(D) Id + sym_grad(Psi(D)).
//
// Construction: split D into trace and traceless parts, mask the traceless
// part with the cutoff, solve laplace(u) = -curl_curl(masked part) on the
// enclosing periodic box, set coeff = tr D / 2 - u, and line-integrate
// M = masked part + u Id back to the potential.
struct Decomposition {
  ScalarField coeff;
  VectorField potential;
  double residual = 0;           // sup |D - coeff Id - sym_grad(potential)| on the check region
  double curlcurl_residual = 0;  // sup |curl_curl(M)| after the Poisson correction

  // shifted variant only
  ScalarField amp2;        // a^2 = Ct mu^gamma + abar(chi H)
  double ctilde = 0;       // the Ct actually used
  double band_low = 0;     // min a^2 / (Ct mu^gamma)
  double band_high = 0;    // max a^2 / (Ct mu^gamma)
};

struct DecomposeOptions {
  Region check_region = Region::all();
  double tolerance = 1e-6;   // relative identity residual that triggers an error
  bool hard_fail = true;
  // shifted variant: admissible |abar|/(ctilde mu^gamma). The base input gets
  // a quarter; iterated targets carry error terms worth another quarter.
  double max_abar_fraction = 0.25;
};

Decomposition decompose(const SymMatrixField& d, const ScalarField& cutoff,
                        const DecomposeOptions& opt = {});

// Shifted positive variant: a^2 = ctilde mu^gamma + abar(chi H) with
// Psi = Psibar(chi H) - ctilde mu^gamma id2. Requires
// |abar(chi H)| <= ctilde mu^gamma / 4; pass ctilde <= 0 to measure it as
// 4 |abar(chi H)|_0 / mu^gamma on this call.
Decomposition decompose_shifted(const SymMatrixField& h, double mu, double gamma, double ctilde,
                                const ScalarField& cutoff, const DecomposeOptions& opt = {});

}  // namespace ma2d3

#endif

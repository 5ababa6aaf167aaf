#ifndef MA2D3_KALLEN_HPP
#define MA2D3_KALLEN_HPP

#include <vector>

#include "core/decompose.hpp"
#include "core/grid.hpp"

namespace ma2d3 {

// Absorption of an order-N block of corrugation errors into one amplitude:
// iterate the shifted decomposition against the projected error fields E_n
// so that a_n^2 Id + sym_grad(Psi_n) = H - E_{n-1} with its 22-component
// removed, and return a = a_N, Psi = Psi_N, F = E_N^ - E_{N-1}^.

struct KallenTrailEntry {
  int n = 0;
  double e_step_norm = 0;       // |E_n^ - E_{n-1}^|_0 on the inner region
  double band_low = 0;          // a_n^2 / (ctilde mu^gamma) extremes
  double band_high = 0;
  double identity_residual = 0;
};

struct KallenResult {
  ScalarField a;
  VectorField psi;
  SymMatrixField f;  // E_N^ - E_{N-1}^
  std::vector<KallenTrailEntry> trail;
  double ctilde = 0;
  std::vector<double> h_scale;  // measured |grad^m H|_0 / mu^m, m = 0..4
  std::vector<double> q_scale;  // measured |grad^m Q|_0 / mu^{m+1}
};

struct KallenOptions {
  double sigma0 = 4.0;
  double identity_tol = 1e-6;
  Region inner = Region::all();
  bool hard_fail = true;
  bool log_scales = true;  // measure the input scale hypotheses up to order 4
};

KallenResult kallen_iterate(const SymMatrixField& h, const SymMatrixField& q, double lambda,
                            double mu, int n_iters, double gamma, double ctilde,
                            const ScalarField& cutoff, const KallenOptions& opt = {});

}  // namespace ma2d3

#endif

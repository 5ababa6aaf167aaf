#include "core/kallen.hpp"

#include <cmath>

#include "core/corrugation.hpp"

namespace ma2d3 {

namespace {

// E_n = -(a/lambda) G(lambda x1) Q + (a/lambda^2) Gbar(lambda x1) hess(a)
//       + (1/lambda^2) Gtilde(lambda x1) grad a (x) grad a
SymMatrixField error_field(const ScalarField& a, const SymMatrixField& q, double lambda) {
  const Grid2& g = a.grid;
  ScalarField G = profile_field(g, 1, lambda, 0);
  ScalarField Gb = profile_field(g, 1, lambda, 1);
  ScalarField Gt = profile_field(g, 1, lambda, 3);

  double il = 1.0 / lambda;
  SymMatrixField ha = hessian(a);
  auto [ax, ay] = gradient(a);

  ScalarField aG = a * G * (-il);
  ScalarField aGb = a * Gb * (il * il);
  SymMatrixField e(g);
  e.d11 = aG * q.d11 + aGb * ha.d11 + (il * il) * (Gt * (ax * ax));
  e.d12 = aG * q.d12 + aGb * ha.d12 + (il * il) * (Gt * (ax * ay));
  e.d22 = aG * q.d22 + aGb * ha.d22 + (il * il) * (Gt * (ay * ay));
  return e;
}

ScalarField sqrt_field(const ScalarField& f) {
  ScalarField out(f.grid);
  for (size_t i = 0; i < f.a.size(); ++i) {
    require(f.a[i] > 0, errc::amplitude, "squared amplitude lost positivity");
    out.a[i] = std::sqrt(f.a[i]);
  }
  return out;
}

}  // namespace

KallenResult kallen_iterate(const SymMatrixField& h, const SymMatrixField& q, double lambda,
                            double mu, int n_iters, double gamma, double ctilde,
                            const ScalarField& cutoff, const KallenOptions& opt) {
  require_same_grid(h.grid, q.grid, "kallen_iterate");
  require(n_iters >= 1, errc::config, "kallen iteration needs N >= 1");
  require(lambda > 0 && mu > 0, errc::config, "kallen frequencies must be positive");
  require(std::pow(lambda, 1.0 - gamma) >= mu * opt.sigma0,
          errc::config, "kallen precondition lambda^{1-gamma} >= mu*sigma0 violated");

  KallenResult res;
  if (opt.log_scales) {
    // hypothesis scales, orders 0..4; they are inputs to the paper's constants,
    // not well-definedness conditions, so they are logged rather than enforced
    for (int m = 0; m <= 4; ++m) {
      res.h_scale.push_back(deriv_order_norm(h, m, opt.inner) / std::pow(mu, m));
      res.q_scale.push_back(deriv_order_norm(q, m, opt.inner) / std::pow(mu, m + 1));
    }
  }

  DecomposeOptions dopt;
  dopt.check_region = opt.inner;
  dopt.tolerance = opt.identity_tol;
  dopt.hard_fail = opt.hard_fail;

  SymMatrixField e_prev_w(h.grid);  // E_{n-1} wedge-projected, starts at zero
  SymMatrixField e_prev2_w(h.grid);
  ScalarField a;
  VectorField psi;

  for (int n = 1; n <= n_iters; ++n) {
    SymMatrixField target = h - e_prev_w;
    // the base field owns a quarter of the padding; the absorbed error fields
    // own the second quarter
    dopt.max_abar_fraction = n == 1 ? 0.25 : 0.5;
    Decomposition dec = decompose_shifted(target, mu, gamma, ctilde, cutoff, dopt);
    if (n == 1) {
      ctilde = dec.ctilde;
      res.ctilde = ctilde;
    }
    a = sqrt_field(dec.amp2);
    psi = dec.potential;

    SymMatrixField e_n_w = wedge(error_field(a, q, lambda));

    KallenTrailEntry t;
    t.n = n;
    t.e_step_norm = sup_norm(e_n_w - e_prev_w, opt.inner);
    t.band_low = dec.band_low;
    t.band_high = dec.band_high;
    t.identity_residual = dec.residual;
    res.trail.push_back(t);

    e_prev2_w = e_prev_w;
    e_prev_w = e_n_w;
  }

  res.a = a;
  res.psi = psi;
  res.f = e_prev_w - e_prev2_w;
  return res;
}

}  // namespace ma2d3

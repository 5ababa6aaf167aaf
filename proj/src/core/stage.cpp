#include "core/stage.hpp"

#include <algorithm>
#include <cmath>

#include "core/corrugation.hpp"

namespace ma2d3 {

CodimAssignment codim_assignment(int k) {
  require(k >= 0, errc::config, "codimension assignment needs k >= 0");
  CodimAssignment c;
  c.alpha = (2 * k) % 3 + 1;
  c.beta = (2 * k + 1) % 3 + 1;
  c.gamma = 6 - c.alpha - c.beta;
  return c;
}

Region active_region(const StageState& s) {
  if (s.domain.whole()) return Region::all();
  return s.domain.grown(s.margin);
}

namespace {

ScalarField clamped_sqrt(const ScalarField& f, double floor_val, const Region& certified) {
  ScalarField out(f.grid);
  const Grid2& g = f.grid;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      double v = f.at(ix, iy);
      if (v <= 0) {
        // only tolerable outside the certified region, where the cutoff may
        // degenerate the amplitude; inside it positivity was checked already
        require(!certified.contains(g.x(ix), g.y(iy)), errc::positivity,
                "b^2 lost positivity inside the active region");
        v = floor_val;
      }
      out.at(ix, iy) = std::sqrt(v);
    }
  return out;
}

}  // namespace

DoubleStepRecord double_step(StageState& state, double lambda_next, double mu_next,
                             double mu_prev, const DoubleStepParams& p) {
  require(mu_prev <= lambda_next && lambda_next <= mu_next, errc::config,
          "double step needs mu_k <= lambda_{k+1} <= mu_{k+1}");
  require(p.ctilde_k > 0, errc::config, "double step needs ctilde_k > 0");
  const Grid2& g = state.v.grid;

  CodimAssignment cd = codim_assignment(state.k);
  double next_margin = state.margin - state.eta;
  require(state.domain.whole() || next_margin >= 0, errc::margin,
          "active margin exhausted in double step");
  Region act_next = state.domain.whole() ? Region::all() : state.domain.grown(next_margin);
  Region inner = act_next;

  ScalarField chi = state.domain.whole()
                        ? unit_cutoff(g)
                        : make_cutoff(g, state.domain.grown(next_margin), state.eta);

  DoubleStepRecord rec;
  rec.k = state.k;
  rec.alpha = cd.alpha;
  rec.beta = cd.beta;
  rec.lambda = lambda_next;
  rec.mu = mu_next;

  SymMatrixField d_k = defect(state.v, state.w, state.a0);
  rec.defect_before = sup_norm(d_k, active_region(state));

  // scaled inputs of the absorption iteration
  double ict = 1.0 / p.ctilde_k;
  SymMatrixField h = d_k * ict;
  SymMatrixField q = hessian(state.v.comp[cd.alpha - 1]) * (1.0 / std::sqrt(p.ctilde_k));

  KallenOptions kopt;
  kopt.sigma0 = p.sigma0;
  kopt.identity_tol = p.identity_tol;
  kopt.inner = inner;
  kopt.hard_fail = p.hard_fail;
  KallenResult kr = kallen_iterate(h, q, lambda_next, mu_prev, p.n_iters, p.gamma, p.ctilde,
                                   chi, kopt);
  rec.trail = kr.trail;
  rec.ctilde_used = kr.ctilde;
  rec.ctilde_k = p.ctilde_k;

  ScalarField a_next = kr.a * std::sqrt(p.ctilde_k);
  VectorField psi_next = kr.psi;
  psi_next *= p.ctilde_k;
  SymMatrixField f_next = kr.f * p.ctilde_k;
  rec.kallen_f_norm = sup_norm(f_next, inner);

  // first corrugation, axis 1, component alpha, plus the potential transfer
  StepParams s1;
  s1.axis = 1;
  s1.comp = cd.alpha;
  s1.freq = lambda_next;
  s1.amplitude = a_next;
  StepResult mid = step_perturb(state.v, state.w, s1);
  mid.w += psi_next;

  // second amplitude from the shifted 22-component
  ScalarField g_l = profile_field(g, 1, lambda_next, 0);
  ScalarField gb_l = profile_field(g, 1, lambda_next, 1);
  ScalarField gt_l = profile_field(g, 1, lambda_next, 3);
  ScalarField v_a_22 = component_derivative(state.v, cd.alpha - 1, 0, 2);
  ScalarField a_22 = partial_derivative(a_next, 0, 2);
  ScalarField a_2 = partial_derivative(a_next, 0, 1);
  double il = 1.0 / lambda_next;
  ScalarField b2 = a_next * a_next;
  b2 += il * (a_next * g_l * v_a_22);
  b2 -= (il * il) * (a_next * gb_l * a_22);
  b2 -= (il * il) * (gt_l * (a_2 * a_2));

  rec.b2_floor = 0.25 * kr.ctilde * p.ctilde_k * std::pow(mu_prev, p.gamma);
  rec.b2_min = field_min(b2, inner);
  require(rec.b2_min > 0, errc::positivity,
          "b^2 lost positivity: lambda_{k+1}/mu_k too small (min " +
              std::to_string(rec.b2_min) + ")");

  // bookkeeping identity: intermediate defect = -F_{k+1} + b^2 e2 x e2
  SymMatrixField d_mid = defect(mid.v, mid.w, state.a0);
  SymMatrixField expect = f_next * -1.0;
  expect.d22 += b2;
  rec.jamea_residual = sup_norm(d_mid - expect, inner);
  if (p.hard_fail && rec.jamea_residual > p.identity_tol)
    fail(errc::verification, "double-step bookkeeping residual " +
                                 std::to_string(rec.jamea_residual) + " exceeds " +
                                 std::to_string(p.identity_tol));

  // second corrugation, axis 2, component beta
  StepParams s2;
  s2.axis = 2;
  s2.comp = cd.beta;
  s2.freq = mu_next;
  s2.amplitude = clamped_sqrt(b2, rec.b2_floor, inner);
  StepResult fin = step_perturb(mid.v, mid.w, s2);

  rec.dv_c1 = cm_norm(fin.v - state.v, 1, act_next);
  rec.dw_c1 = cm_norm(fin.w - state.w, 1, act_next);
  SymMatrixField d_next = defect(fin.v, fin.w, state.a0);
  rec.defect_after = sup_norm(d_next, act_next);
  double vh = 0, wh = 0;
  for (int c = 0; c < 3; ++c)
    vh = std::max(vh, sup_norm(hessian(fin.v.comp[c]), act_next));
  for (int c = 0; c < 2; ++c)
    wh = std::max(wh, sup_norm(hessian(fin.w.comp[c]), act_next));
  rec.v_hess = vh;
  rec.w_hess = wh;

  state.v = std::move(fin.v);
  state.w = std::move(fin.w);
  state.k += 1;
  state.margin = next_margin;
  return rec;
}

namespace {

double snap_frequency(const Grid2& g, double freq) {
  if (!g.periodic()) return freq;
  double base = 2.0 * M_PI / g.length_x();
  double m = std::max(1.0, std::round(freq / base));
  return m * base;
}

}  // namespace

StageResult run_stage(const VectorField& v_in, const VectorField& w_in, const SymMatrixField& a_in,
                      double l, const StageParams& p) {
  require(l > 0, errc::config, "stage needs l > 0");
  require(p.n_steps >= 1, errc::config, "stage needs K >= 1");
  require(p.n_iters >= 1, errc::config, "stage needs N >= 1");
  const Grid2& g = v_in.grid;

  StageReport rep;
  rep.l = l;
  double eta = l / (p.n_steps + 1);
  rep.eta = eta;

  bool torus = p.domain.whole();
  if (!torus) {
    double need = l + p.n_steps * eta;
    double have = grid_margin(g, p.domain);
    require(have >= need, errc::margin,
            "grid margin " + std::to_string(have) + " below required " + std::to_string(need));
  }

  double mbar = p.mbar;
  if (mbar <= 0)
    mbar = std::max({cm_norm(v_in, 2, Region::all()), cm_norm(w_in, 2, Region::all()), 1.0});

  // mollification at eta/2
  VectorField v0 = v_in;
  VectorField w0 = w_in;
  SymMatrixField a0 = a_in;
  double lmol = 0.5 * eta;
  Region act0 = torus ? Region::all() : p.domain.grown(l + p.n_steps * eta);
  double d_before_mol = sup_norm(defect(v_in, w_in, a_in), act0);
  bool do_mol = false;
  switch (p.mollify) {
    case MollifyPolicy::always: do_mol = true; break;
    case MollifyPolicy::never: do_mol = false; break;
    case MollifyPolicy::automatic: {
      double predicted_bump = (lmol * mbar) * (lmol * mbar);
      do_mol = lmol >= 3.0 * g.h && predicted_bump <= 0.25 * std::max(d_before_mol, 1e-8);
      break;
    }
  }
  if (do_mol) {
    v0 = mollify(v_in, lmol);
    w0 = mollify(w_in, lmol);
    a0 = mollify(a_in, lmol);
    rep.mollify_length = lmol;
    double d_after = sup_norm(defect(v0, w0, a0), act0);
    rep.mollify_defect_bump = d_after - d_before_mol;
  } else if (p.mollify == MollifyPolicy::automatic) {
    rep.notes += "mollification skipped (scale under-resolved or bump too large); ";
  }

  double d0 = sup_norm(defect(v0, w0, a0), act0);
  rep.defect_initial = d0;
  // the (l M)^2 term covers the mollification error; it has no counterpart
  // when the mollification was skipped
  double mol_pad = rep.mollify_length > 0 ? (l * mbar) * (l * mbar) : 0.0;
  double ctilde0 = p.ctilde0_override > 0 ? p.ctilde0_override
                                          : p.ctilde0_scale * (d0 + mol_pad);
  ctilde0 = std::max(ctilde0, 1e-15);
  rep.ctilde0 = ctilde0;

  // frequency progression
  std::vector<double> lam(p.n_steps + 1, 0.0), mu(p.n_steps + 1, 0.0);
  double mu0;
  if (p.mode == StageMode::strict) {
    mu0 = 1.0 / eta;
    double sigma = p.lambda * l;
    require(sigma > 1, errc::config, "strict stage needs sigma = lambda*l > 1");
    require(std::pow(p.lambda, 1.0 - p.gamma) * l >= p.sigma0, errc::config,
            "stage precondition lambda^{1-gamma} l >= sigma0 violated");
    FrequencySchedule sched = make_schedule(mu0, sigma, p.n_iters, p.n_steps);
    ConditionReport cr = verify_conditions(sched, p.gamma, p.sigma0);
    if (!cr.pass && p.hard_fail)
      fail(errc::verification, "frequency schedule failed its condition report");
    for (int k = 1; k <= p.n_steps; ++k) {
      lam[k] = sched.lambda_value(k);
      mu[k] = sched.mu_value(k);
    }
  } else {
    mu0 = p.mu0 > 0 ? p.mu0 : (p.n_steps + 1) / l;
    mu0 = snap_frequency(g, mu0);
    require(p.ratio_lm >= 2 && p.ratio_ml >= 2, errc::config,
            "relaxed stage needs integer frequency ratios >= 2");
    double cur = mu0;
    for (int k = 1; k <= p.n_steps; ++k) {
      lam[k] = cur * p.ratio_lm;
      mu[k] = lam[k] * p.ratio_ml;
      cur = mu[k];
    }
  }
  mu[0] = mu0;
  rep.mu0 = mu0;

  double nyquist = M_PI / g.h;
  if (mu[p.n_steps] > nyquist)
    fail(errc::resolution, "mu_K = " + std::to_string(mu[p.n_steps]) +
                               " exceeds the grid Nyquist limit " + std::to_string(nyquist));
  if (mu[p.n_steps] > 0.5 * nyquist)
    rep.notes += "mu_K beyond half the Nyquist limit: quadratic defect terms partially alias; ";

  StageState st;
  st.v = v0;
  st.w = w0;
  st.a0 = a0;
  st.k = p.codim_offset;
  st.domain = p.domain;
  st.margin = torus ? 0.0 : l + p.n_steps * eta;
  st.eta = torus ? 0.0 : eta;

  double ctilde_k = ctilde0;
  double kallen_ct = p.kallen_ctilde;
  for (int k = 0; k < p.n_steps; ++k) {
    DoubleStepParams dp;
    dp.n_iters = p.n_iters;
    dp.gamma = p.gamma;
    dp.ctilde_k = ctilde_k;
    dp.ctilde = kallen_ct;
    dp.sigma0 = p.sigma0;
    dp.identity_tol = p.identity_tol;
    dp.hard_fail = p.hard_fail;
    DoubleStepRecord rec = double_step(st, lam[k + 1], mu[k + 1], mu[k], dp);
    rep.steps.push_back(rec);
    // the padding constant is measured once per run and then held fixed with
    // headroom, so later amplitudes cannot collapse below the inherited
    // curvature scale and later inputs keep their quarter-band admissible
    if (kallen_ct <= 0) kallen_ct = 1.5 * rec.ctilde_used;
    // the (CAB) progression with constant 1, floored by the measured defect
    // scale and by mu_k/mu_{k+1} (the A_k/ctilde_k admissibility condition)
    double predicted = ctilde_k * std::pow(mu[k], p.gamma) *
                       std::pow(lam[k + 1], p.gamma * p.n_iters) /
                       std::pow(lam[k + 1] / mu[k], p.n_iters);
    ctilde_k = std::max({predicted, 1.25 * rec.defect_after, ctilde_k * mu[k] / mu[k + 1]});
  }
  rep.ctilde_final = ctilde_k;
  rep.kallen_ctilde = kallen_ct;

  Region act_final = torus ? Region::all() : p.domain.grown(l);
  rep.defect_final = sup_norm(defect(st.v, st.w, st.a0), act_final);
  rep.dv_c1 = cm_norm(st.v - v_in, 1, act_final);
  rep.dw_c1 = cm_norm(st.w - w_in, 1, act_final);
  double vh = 0, wh = 0;
  for (int c = 0; c < 3; ++c) vh = std::max(vh, sup_norm(hessian(st.v.comp[c]), act_final));
  for (int c = 0; c < 2; ++c) wh = std::max(wh, sup_norm(hessian(st.w.comp[c]), act_final));
  rep.v_hess = vh;
  rep.w_hess = wh;

  // stage-bound right-hand sides with constant 1, for the measured/predicted
  // ratio columns of the report
  double span = mu[p.n_steps] / mu0;
  double lam_eff = span / l;
  double amp = std::sqrt(d0) + l * mbar;
  double grad_v0 = cm_norm(v_in, 1, act0);
  long long fk1 = fibonacci(std::min(p.n_steps + 1, 90));
  double growth = static_cast<double>(fk1 - 2) + 0.5 * (fk1 - 1) * p.n_iters;
  rep.pred_dv = std::pow(lam_eff, 0.5 * p.gamma) * amp;
  rep.pred_dw = std::pow(lam_eff, p.gamma) * amp * (1 + amp + grad_v0);
  rep.pred_vh = std::pow(span, growth) * std::pow(lam_eff, 0.5 * p.gamma) / l * amp;
  rep.pred_wh = std::pow(span, growth) * std::pow(lam_eff, p.gamma) / l * amp * (1 + amp + grad_v0);
  long long fk = fibonacci(std::min(p.n_steps, 90));
  rep.pred_defect = std::pow(lam_eff, p.gamma) /
                    std::pow(span, 2.0 * (fk - 1) * p.n_iters) * (d0 + (l * mbar) * (l * mbar));

  StageResult out;
  out.v = std::move(st.v);
  out.w = std::move(st.w);
  out.report = rep;
  return out;
}

// ---------------------------------------------------------------------------
// exact bound propagation
// ---------------------------------------------------------------------------

BoundLedger simulate_stage_bounds(int N, int K, double gamma, double sigma, double mu0,
                                  double c_const) {
  require(N >= 4 && K >= 4, errc::config, "bound simulation needs N, K >= 4");
  FrequencySchedule s = make_schedule(1.0, sigma > 1 ? sigma : 2.0, N, K);

  BoundLedger led;
  led.N = N;
  led.K = K;
  led.sigma = sigma;
  led.mu0 = mu0;

  auto e_lam = [&](int k) { return s.lambda_exp(k).value(N); };
  auto e_mu = [&](int k) { return s.mu_exp(k).value(N); };

  std::vector<ExpoAffine> ct(K + 1), ak(K + 2), bk(K + 1);
  std::vector<double> ct_coeff(K + 1, 1.0);
  ct[0] = {Rational(0), Rational(0)};
  for (int k = 0; k < K; ++k) {
    ct[k + 1].cg = ct[k].cg + e_mu(k) + Rational(N) * e_lam(k + 1);
    ct[k + 1].c0 = ct[k].c0 - Rational(N) * (e_lam(k + 1) - e_mu(k));
    ct_coeff[k + 1] = ct_coeff[k] * c_const;
  }
  ak[0] = ak[1] = bk[0] = ct[0];
  for (int k = 2; k <= K + 1; ++k) ak[k] = ExpoAffine{ct[k - 2].c0, ct[k - 2].cg + e_mu(k - 2)};
  for (int k = 1; k <= K; ++k) bk[k] = ExpoAffine{ct[k - 1].c0, ct[k - 1].cg + e_mu(k - 1)};

  for (int k = 0; k <= K; ++k) {
    LedgerRow row;
    row.k = k;
    row.lam = s.lambda_exp(k);
    row.mu = s.mu_exp(k);
    row.coeff_ct = ct_coeff[k];
    row.ctilde = ct[k];
    row.ak = ak[k];
    row.bk = bk[k];
    led.rows.push_back(row);
  }

  led.decay_exponent = (Rational(0) - ct[K].c0).as_int64();
  led.ctilde_gamma_coeff = ct[K].cg;

  // hessian blow-up: max of the gamma-free exponents of A_K^{1/2} mu_{K-1},
  // B_K^{1/2} lambda_K and A_{K+1}^{1/2} mu_K
  Rational g1 = ak[K].half().c0 + e_mu(K - 1);
  Rational g2 = bk[K].half().c0 + e_lam(K);
  Rational g3 = ak[K + 1].half().c0 + e_mu(K);
  Rational growth = g1;
  if (growth < g2) growth = g2;
  if (growth < g3) growth = g3;
  led.growth_exponent = growth;

  HalfInt lam_sum{0, 0}, mu_sum{0, 0};
  for (int k = 1; k <= K; ++k) {
    lam_sum = lam_sum + s.lambda_exp(k);
    mu_sum = mu_sum + s.mu_exp(k);
  }
  led.lambda_exponent = mu_sum.value(N) + Rational(N) * lam_sum.value(N);
  led.gamma_bar = gamma * led.lambda_exponent.value();
  return led;
}

}  // namespace ma2d3

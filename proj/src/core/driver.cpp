#include "core/driver.hpp"

#include <algorithm>
#include <cmath>

#include "core/spectral.hpp"

namespace ma2d3 {

double check_subsolution(const VectorField& v, const VectorField& w, const SymMatrixField& a,
                         const Region& region) {
  return field_min(min_eigenvalue(defect(v, w, a)), region);
}

namespace {

struct Fit {
  double slope = 0, intercept = 0, r2 = 0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  Fit f;
  size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0) return f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, ybar = sy / n;
  for (size_t i = 0; i < n; ++i) {
    double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r2 = ss_tot > 1e-300 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-12 ? 1.0 : 0.0);
  return f;
}

}  // namespace

AlphaEstimate estimate_alpha(const std::vector<TraceRow>& trace) {
  AlphaEstimate est;
  std::vector<double> n_dv, log_dv, n_b, log_b2;
  for (const auto& row : trace) {
    if (row.dv_c1 > 0) {
      n_dv.push_back(row.n);
      log_dv.push_back(std::log(row.dv_c1));
    }
    if (row.v_c2 > 0) {
      n_b.push_back(row.n);
      log_b2.push_back(std::log(row.v_c2));
    }
  }
  if (n_dv.size() < 3 || n_b.size() < 3) {
    est.note = "fewer than 3 usable trace rows";
    return est;
  }
  Fit decay = least_squares(n_dv, log_dv);
  Fit growth = least_squares(n_b, log_b2);
  est.log_b = -decay.slope;      // |v_{n+1}-v_n|_1 ~ b^{-n}
  est.log_big_b = growth.slope;  // |v_n|_2 ~ B^n
  est.r2 = std::min(decay.r2, growth.r2);
  if (est.log_b <= 0 || est.log_big_b <= 0) {
    est.note = "trace is not geometric (nonpositive fitted rates)";
    return est;
  }
  est.alpha = est.log_b / (est.log_b + est.log_big_b);
  est.ok = true;
  if (est.r2 < 0.9) est.note = "low fit quality";
  return est;
}

namespace {

VectorField upsample2(const VectorField& f) {
  VectorField out;
  out.comp.reserve(f.comp.size());
  for (const auto& c : f.comp) out.comp.push_back(spectral::upsample2(c));
  out.grid = out.comp.front().grid;
  out.lin = f.lin;
  return out;
}

SymMatrixField upsample2(const SymMatrixField& f) {
  SymMatrixField out;
  out.d11 = spectral::upsample2(f.d11);
  out.d12 = spectral::upsample2(f.d12);
  out.d22 = spectral::upsample2(f.d22);
  out.grid = out.d11.grid;
  return out;
}

}  // namespace

NashKuiperResult run_nash_kuiper(VectorField v, VectorField w, SymMatrixField a,
                                 const NashKuiperConfig& cfg) {
  require_same_grid(v.grid, w.grid, "nash-kuiper");
  require_same_grid(v.grid, a.grid, "nash-kuiper");
  require(cfg.eps > 0, errc::config, "nash-kuiper needs a positive C0 budget");
  require(cfg.max_stages >= 1, errc::config, "nash-kuiper needs max_stages >= 1");

  Region act = cfg.stage.domain.whole() ? Region::all() : cfg.stage.domain;
  double subsol = check_subsolution(v, w, a, act);
  require(subsol > 0, errc::positivity,
          "initial pair is not a strict subsolution (min defect eigenvalue " +
              std::to_string(subsol) + ")");

  NashKuiperResult res;
  VectorField v0 = v;
  double d_prev = sup_norm(defect(v, w, a), act);
  if (d_prev > 1.0) res.stop_reason = "preliminary stage engaged (initial defect above 1); ";

  double lambda_n = cfg.stage.lambda;
  double mu_cont = 0;
  double ct_cont = 0;
  double kallen_ct_cont = cfg.stage.kallen_ctilde;
  int koff = cfg.stage.codim_offset;
  int nondecreasing = 0;

  int n = 0;
  while (n < cfg.max_stages) {
    ++n;
    StageParams sp = cfg.stage;
    sp.codim_offset = koff;
    double l_n;
    if (sp.mode == StageMode::relaxed) {
      if (n == 1) {
        l_n = cfg.l0;
        if (sp.mu0 <= 0) sp.mu0 = (sp.n_steps + 1) / l_n;
      } else {
        sp.mu0 = mu_cont;
        l_n = (sp.n_steps + 1) / sp.mu0;
        sp.ctilde0_override = std::max(ct_cont, sp.ctilde0_scale * d_prev);
        sp.kallen_ctilde = kallen_ct_cont;
      }
    } else {
      l_n = cfg.l0;
      sp.lambda = lambda_n;
    }

    // keep the frequency chain below the Nyquist limit, refining if allowed
    double planned_mu_k = (sp.mode == StageMode::relaxed)
                              ? sp.mu0 * std::pow(double(sp.ratio_lm) * sp.ratio_ml, sp.n_steps)
                              : 0.0;
    double limit_frac = cfg.refine ? cfg.refine_threshold : 1.0;
    int refined_here = 0;
    while (sp.mode == StageMode::relaxed && planned_mu_k > limit_frac * M_PI / v.grid.h) {
      ++refined_here;
      require(cfg.refine && v.grid.periodic() && v.grid.nx < 4096, errc::resolution,
              "stage " + std::to_string(n) + " frequency chain exceeds the Nyquist limit");
      v = upsample2(v);
      w = upsample2(w);
      a = upsample2(a);
      v0 = upsample2(v0);
    }

    StageResult sr = run_stage(v, w, a, l_n, sp);
    v = std::move(sr.v);
    w = std::move(sr.w);
    koff += sp.n_steps;
    mu_cont = sr.report.steps.back().mu;
    ct_cont = sr.report.ctilde_final;
    kallen_ct_cont = sr.report.kallen_ctilde;
    lambda_n = std::pow(lambda_n, 1.0 + cfg.rho);
    res.stage_reports.push_back(sr.report);

    TraceRow row;
    row.n = n;
    row.defect = sup_norm(defect(v, w, a), act);
    row.v_c2 = cm_norm(v, 2, act);
    row.dv_c1 = sr.report.dv_c1;
    row.dw_c1 = sr.report.dw_c1;
    row.v_drift_sup = sup_norm(v - v0, act);
    row.mu0 = sr.report.mu0;
    row.h = v.grid.h;
    row.refined = refined_here;
    res.trace.push_back(row);

    if (cfg.stage_hook) cfg.stage_hook(n, v, w);

    if (row.defect >= d_prev) {
      if (++nondecreasing >= 2)
        fail(errc::stagnation, "defect non-decreasing across 2 consecutive stages");
    } else {
      nondecreasing = 0;
    }
    d_prev = row.defect;

    if (row.v_drift_sup > cfg.eps) {
      res.stop_reason += "C0 budget exhausted";
      break;
    }
    if (row.defect <= cfg.defect_tol) {
      res.stop_reason += "defect tolerance reached";
      break;
    }
  }
  if (res.stop_reason.empty() || res.stop_reason.back() == ' ')
    res.stop_reason += "stage limit reached";

  res.v = std::move(v);
  res.w = std::move(w);
  res.a = std::move(a);
  res.alpha = estimate_alpha(res.trace);
  res.c0_drift = res.trace.empty() ? 0.0 : res.trace.back().v_drift_sup;
  return res;
}

DensityResult density_demo(const DensityProblem& p, const NashKuiperConfig& cfg) {
  const Grid2& g = p.f.grid;
  require(!g.periodic(), errc::config, "the density demo runs on an extended grid");
  require(p.eps > 0, errc::config, "density demo needs eps > 0");
  require_finite(p.f, "density target f");

  DensityResult out;

  // A11 = -(double antiderivative of f in x2) + c, A22 = 0, then pad by c Id:
  // -curl_curl(A) = f holds for every c, and the padding buys the subsolution.
  ScalarField fdd = antiderivative_y_fd(antiderivative_y_fd(p.f));
  VectorField v0(g, 3);
  if (p.target_scale != 0) {
    VectorField vt = p.v_target;
    vt *= p.target_scale;
    v0 = mollify(vt, std::max(cfg.l0 * 0.5, 3 * g.h));
  }
  VectorField w0(g, 2);

  double c = 1.0;
  bool found = false;
  for (int i = 0; i < 40; ++i) {
    SymMatrixField a(g);
    a.d11 = fdd * -1.0;
    a.d11 += c;
    a.d22 = ScalarField(g, c);
    if (check_subsolution(v0, w0, a, cfg.stage.domain) > 0.01) {
      out.a = a;
      out.c = c;
      found = true;
      break;
    }
    c *= 2.0;
  }
  require(found, errc::positivity, "could not construct a subsolution: padding constant exhausted");

  Region inner = cfg.stage.domain.whole() ? Region::all() : cfg.stage.domain;
  out.curlcurl_residual = sup_norm(curl_curl(out.a) * -1.0 - p.f, inner);

  double coarse = std::max(cfg.l0 * 0.5, 3 * g.h);
  NashKuiperConfig run_cfg = cfg;
  DensityResult* self = &out;
  const ScalarField* f_ptr = &p.f;
  const VectorField* vt_ptr = &p.v_target;
  run_cfg.stage_hook = [self, f_ptr, vt_ptr, coarse, inner](int n, const VectorField& vn,
                                                            const VectorField&) {
    DensityStageRow row;
    row.n = n;
    row.det_residual_coarse = sup_norm(mollify(det_ma(vn) - *f_ptr, coarse), inner);
    row.v_to_target_sup = sup_norm(vn - *vt_ptr, inner);
    self->rows.push_back(row);
  };

  out.run = run_nash_kuiper(v0, w0, out.a, run_cfg);
  for (size_t i = 0; i < out.rows.size() && i < out.run.trace.size(); ++i)
    out.rows[i].defect = out.run.trace[i].defect;
  return out;
}

}  // namespace ma2d3

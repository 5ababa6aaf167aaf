#ifndef MA2D3_DRIVER_HPP
#define MA2D3_DRIVER_HPP

#include <functional>
#include <string>
#include <vector>

#include "core/stage.hpp"

namespace ma2d3 {

// min over the sampled region of the smaller defect eigenvalue; positive
// certifies a strict subsolution on the grid.
double check_subsolution(const VectorField& v, const VectorField& w, const SymMatrixField& a,
                         const Region& region = Region::all());

struct TraceRow {
  int n = 0;
  double defect = 0;       // |D_n|_0 after the stage
  double v_c2 = 0;         // |v_n|_2
  double dv_c1 = 0;        // |v_n - v_{n-1}|_1
  double dw_c1 = 0;
  double v_drift_sup = 0;  // |v_n - v_0|_0
  double mu0 = 0;          // stage base frequency
  double h = 0;
  int refined = 0;
};

struct AlphaEstimate {
  double alpha = 0;
  double r2 = 0;        // worse of the two fit qualities
  double log_b = 0;     // decay rate of |v_{n+1}-v_n|_1
  double log_big_b = 0; // growth rate of |v_n|_2
  bool ok = false;
  std::string note;
};

// Fit geometric rates to the trace and return the largest alpha with
// B^{alpha n} b^{-(1-alpha) n} bounded, i.e. log b / (log b + log B).
AlphaEstimate estimate_alpha(const std::vector<TraceRow>& trace);

struct NashKuiperConfig {
  StageParams stage;          // per-stage parameters (mode, N, K, gamma, ...)
  double l0 = 0.25;           // first-stage mollification length scale
  double eps = 0.5;           // C0 budget for |v_n - v_0|_0
  double defect_tol = 1e-9;   // stop when |D|_0 falls below
  int max_stages = 3;
  double rho = 0.0;           // strict-mode growth rule lambda -> lambda^{1+rho}
  bool refine = false;        // 2x spectral refinement when Nyquist-bound
  // refine while mu_K exceeds this fraction of pi/h; 0.45 keeps the
  // quadratic defect terms below the Nyquist line
  double refine_threshold = 0.45;
  // observer invoked after each stage with the current fields
  std::function<void(int, const VectorField&, const VectorField&)> stage_hook;
};

struct NashKuiperResult {
  std::vector<TraceRow> trace;
  std::vector<StageReport> stage_reports;
  VectorField v;
  VectorField w;
  SymMatrixField a;
  std::string stop_reason;
  AlphaEstimate alpha;
  double c0_drift = 0;  // final |v - v_0|_0
};

NashKuiperResult run_nash_kuiper(VectorField v, VectorField w, SymMatrixField a,
                                 const NashKuiperConfig& cfg);

// ---------------------------------------------------------------------------
// density demo for the weak Monge-Ampere system
// ---------------------------------------------------------------------------

struct DensityProblem {
  ScalarField f;          // target curvature field on an extended grid
  VectorField v_target;   // 3 components
  double eps = 0.5;
  double target_scale = 1.0;
  Region domain = Region::all();
};

struct DensityStageRow {
  int n = 0;
  double defect = 0;
  double v_to_target_sup = 0;
  double det_residual_coarse = 0;  // |phi_L * (det_ma(v_n) - f)|_0
};

struct DensityResult {
  SymMatrixField a;          // constructed with -curl_curl a = f
  double c = 0;              // padding constant
  double curlcurl_residual = 0;
  std::vector<DensityStageRow> rows;
  NashKuiperResult run;
};

DensityResult density_demo(const DensityProblem& p, const NashKuiperConfig& cfg);

}  // namespace ma2d3

#endif

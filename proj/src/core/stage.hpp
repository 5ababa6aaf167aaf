#ifndef MA2D3_STAGE_HPP
#define MA2D3_STAGE_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/kallen.hpp"
#include "core/schedule.hpp"

namespace ma2d3 {

// Circular codimension assignment: alpha_k = (2k mod 3)+1,
// beta_k = ((2k+1) mod 3)+1, gamma_k the remaining index.
struct CodimAssignment {
  int alpha, beta, gamma;
};
CodimAssignment codim_assignment(int k);

struct StageState {
  VectorField v;  // 3 components
  VectorField w;  // 2 components
  SymMatrixField a0;
  int k = 0;
  double margin = 0;      // active margin around the domain, shrinks per step
  Region domain = Region::all();
  double eta = 0;         // per-step margin consumption (0 on the torus)
};

Region active_region(const StageState& s);

struct DoubleStepParams {
  int n_iters = 2;          // Kallen depth N
  double gamma = 0.02;
  double ctilde_k = 1.0;    // scale of the incoming defect bounds
  double ctilde = -1.0;     // Kallen padding constant, <= 0 measures per call
  double sigma0 = 4.0;
  double identity_tol = 1e-5;  // hard bound on the bookkeeping residual
  bool hard_fail = true;
};

struct DoubleStepRecord {
  int k = 0;
  int alpha = 0, beta = 0;
  double lambda = 0, mu = 0;
  double defect_before = 0, defect_after = 0;
  double jamea_residual = 0;        // intermediate-defect bookkeeping identity
  double b2_min = 0, b2_floor = 0;  // positivity band of the second amplitude
  double dv_c1 = 0, dw_c1 = 0;      // measured C^1 increments
  double v_hess = 0, w_hess = 0;    // |grad^2 v~|, |grad^2 w~| after the step
  double kallen_f_norm = 0;
  double ctilde_used = 0;   // Kallen padding constant of this step
  double ctilde_k = 0;      // defect bound scale the step was run with
  std::vector<KallenTrailEntry> trail;
};

// One double step: Kallen-prepared corrugation along e_alpha at frequency
// lambda_next, then the cancelling corrugation along e_beta at mu_next.
// mu_prev is the incoming oscillation scale mu_k.
DoubleStepRecord double_step(StageState& state, double lambda_next, double mu_next,
                             double mu_prev, const DoubleStepParams& p);

enum class StageMode { strict, relaxed };
enum class MollifyPolicy { always, automatic, never };

struct StageParams {
  StageMode mode = StageMode::relaxed;
  int n_iters = 2;       // N
  int n_steps = 1;       // K
  double gamma = 0.02;
  double sigma0 = 4.0;
  double mbar = 0;       // M bound; 0 measures max{|v|_2, |w|_2, 1}
  double lambda = 0;     // strict mode: sigma = lambda * l
  int ratio_lm = 4;      // relaxed mode: lambda_{k+1} / mu_k
  int ratio_ml = 4;      // relaxed mode: mu_k / lambda_k
  double mu0 = 0;        // relaxed mode: incoming oscillation scale; 0 derives from l
  int codim_offset = 0;
  double ctilde0_scale = 1.0;
  double ctilde0_override = 0;  // > 0 replaces the measured ctilde_0
  double kallen_ctilde = -1;    // fixed padding constant; < 0 measures it once
  double identity_tol = 1e-5;
  MollifyPolicy mollify = MollifyPolicy::automatic;
  Region domain = Region::all();
  bool hard_fail = true;
};

struct StageReport {
  std::vector<DoubleStepRecord> steps;
  double l = 0, eta = 0, mu0 = 0;
  double mollify_length = 0;       // 0 when skipped
  double mollify_defect_bump = 0;  // defect change caused by mollification
  double ctilde0 = 0;
  double ctilde_final = 0;         // defect bound scale after the last step
  double kallen_ctilde = 0;        // padding constant used by every step
  double defect_initial = 0, defect_final = 0;
  double dv_c1 = 0, dw_c1 = 0, v_hess = 0, w_hess = 0;
  // predicted right-hand sides of the stage bounds with constant 1
  double pred_dv = 0, pred_dw = 0, pred_vh = 0, pred_wh = 0, pred_defect = 0;
  std::string notes;
};

struct StageResult {
  VectorField v;
  VectorField w;
  StageReport report;
};

StageResult run_stage(const VectorField& v, const VectorField& w, const SymMatrixField& a,
                      double l, const StageParams& p);

// ---------------------------------------------------------------------------
// exact propagation of the auxiliary constants through the stage recursion
// ---------------------------------------------------------------------------

// Exponent of the form c0 + cg * gamma, both exact rationals, in log_sigma
// units over the base mu0 = 1 normalization.
struct ExpoAffine {
  Rational c0;
  Rational cg;
  ExpoAffine operator+(const ExpoAffine& o) const { return {c0 + o.c0, cg + o.cg}; }
  ExpoAffine operator-(const ExpoAffine& o) const { return {c0 - o.c0, cg - o.cg}; }
  ExpoAffine half() const { return {c0 / Rational(2), cg / Rational(2)}; }
};

struct LedgerRow {
  int k = 0;
  HalfInt lam, mu;
  double coeff_ct = 1.0;  // C-power accumulated in front of ctilde_k
  ExpoAffine ctilde, ak, bk;
};

struct BoundLedger {
  int N = 0, K = 0;
  double sigma = 0, mu0 = 0;
  std::vector<LedgerRow> rows;
  long long decay_exponent = 0;     // gamma-free sigma-exponent of ctilde_0/ctilde_K
  Rational growth_exponent;         // gamma-free sigma-exponent of the hessian blow-up
  Rational lambda_exponent;         // exponent of Lambda = prod mu_k lambda_k^N
  Rational ctilde_gamma_coeff;      // exact gamma coefficient of ctilde_K/ctilde_0
  double gamma_bar = 0;             // gamma * lambda_exponent (the reparametrized exponent)
};

BoundLedger simulate_stage_bounds(int N, int K, double gamma, double sigma, double mu0,
                                  double c_const = 1.0);

}  // namespace ma2d3

#endif

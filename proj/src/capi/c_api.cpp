#include "ma2d3/ma2d3.h"

#include <string>

#include "core/config.hpp"
#include "core/runner.hpp"
#include "core/schedule.hpp"
#include "core/stage.hpp"

namespace {

thread_local std::string g_last_error;

ma2d3_status status_from_exit(int code) {
  switch (code) {
    case 0: return MA2D3_OK;
    case 1: return MA2D3_VERIFY_FAILED;
    case 2: return MA2D3_CONFIG_ERROR;
    default: return MA2D3_NUMERIC_ERROR;
  }
}

template <typename Fn>
ma2d3_status guarded(Fn&& fn) {
  try {
    fn();
    return MA2D3_OK;
  } catch (const ma2d3::error& e) {
    g_last_error = e.what();
    return status_from_exit(ma2d3::exit_code_for(e.code()));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MA2D3_NUMERIC_ERROR;
  }
}

}  // namespace

struct ma2d3_config {
  ma2d3::RunConfig cfg;
};

struct ma2d3_report {
  int exit_code = 0;
  std::string text;
};

extern "C" {

ma2d3_config* ma2d3_config_new(void) {
  try {
    return new ma2d3_config();
  } catch (...) {
    return nullptr;
  }
}

void ma2d3_config_free(ma2d3_config* cfg) { delete cfg; }

ma2d3_status ma2d3_config_set(ma2d3_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) {
    g_last_error = "null argument";
    return MA2D3_CONFIG_ERROR;
  }
  return guarded([&] { cfg->cfg.set(key, value); });
}

ma2d3_status ma2d3_config_load(ma2d3_config* cfg, const char* path) {
  if (!cfg || !path) {
    g_last_error = "null argument";
    return MA2D3_CONFIG_ERROR;
  }
  return guarded([&] { cfg->cfg.load_file(path); });
}

const char* ma2d3_config_keys(void) {
  static const std::string help = ma2d3::RunConfig::registry_help();
  return help.c_str();
}

ma2d3_status ma2d3_run(ma2d3_config* cfg, const char* subcommand, ma2d3_report** out) {
  if (out) *out = nullptr;
  if (!cfg || !subcommand) {
    g_last_error = "null argument";
    return MA2D3_CONFIG_ERROR;
  }
  ma2d3::RunOutcome outcome = ma2d3::run_subcommand(subcommand, cfg->cfg);
  if (outcome.exit_code != 0) g_last_error = outcome.summary;
  if (out) {
    try {
      *out = new ma2d3_report{outcome.exit_code, std::move(outcome.summary)};
    } catch (...) {
      g_last_error = "out of memory";
      return MA2D3_NUMERIC_ERROR;
    }
  }
  return status_from_exit(outcome.exit_code);
}

const char* ma2d3_report_text(const ma2d3_report* rep) { return rep ? rep->text.c_str() : ""; }

int ma2d3_report_exit_code(const ma2d3_report* rep) { return rep ? rep->exit_code : 2; }

void ma2d3_report_free(ma2d3_report* rep) { delete rep; }

int64_t ma2d3_fibonacci(int k) {
  if (k < 0 || k > 90) return -1;
  return ma2d3::fibonacci(k);
}

ma2d3_status ma2d3_exponent_summary(int n, int k, double* r, double* alpha, double* gamma_max) {
  return guarded([&] {
    ma2d3::ExponentSummary ex = ma2d3::exponent_summary(n, k);
    if (r) *r = ex.r.value();
    if (alpha) *alpha = ex.alpha.value();
    if (gamma_max) *gamma_max = ex.gamma_max.value();
  });
}

ma2d3_status ma2d3_ledger_exponents(int n, int k, int64_t* decay, double* growth) {
  return guarded([&] {
    ma2d3::BoundLedger led = ma2d3::simulate_stage_bounds(n, k, 0.01, 2.0, 1.0);
    if (decay) *decay = led.decay_exponent;
    if (growth) *growth = led.growth_exponent.value();
  });
}

const char* ma2d3_last_error(void) { return g_last_error.c_str(); }

const char* ma2d3_version(void) { return "1.0.0"; }

}  // extern "C"

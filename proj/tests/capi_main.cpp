// Exercises the shared-library C API end to end: configuration handling,
// subcommand execution, artifact determinism and the exact-arithmetic entry
// points. Links only against the public header.
#include <ma2d3/ma2d3.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void check(bool ok, const char* what) {
  std::printf("%s %s\n", ok ? "ok  " : "FAIL", what);
  if (!ok) ++g_failures;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  check(std::strcmp(ma2d3_version(), "1.0.0") == 0, "version string");
  check(ma2d3_fibonacci(0) == 1 && ma2d3_fibonacci(6) == 13, "fibonacci");
  check(ma2d3_fibonacci(91) == -1, "fibonacci range guard");

  {
    double r = 0, alpha = 0, gmax = 0;
    check(ma2d3_exponent_summary(4, 4, &r, &alpha, &gmax) == MA2D3_OK, "exponent summary status");
    check(r == 0.625 && alpha == 4.0 / 9.0, "exponent summary values");
    check(ma2d3_exponent_summary(2, 4, &r, &alpha, &gmax) == MA2D3_CONFIG_ERROR,
          "exponent summary domain error");
  }
  {
    int64_t decay = 0;
    double growth = 0;
    check(ma2d3_ledger_exponents(4, 4, &decay, &growth) == MA2D3_OK, "ledger status");
    check(decay == 32 && growth == 20.0, "ledger exponents");
  }

  {  // unknown key is rejected with a message
    ma2d3_config* cfg = ma2d3_config_new();
    check(ma2d3_config_set(cfg, "no.such.key", "1") == MA2D3_CONFIG_ERROR, "unknown key status");
    check(std::strstr(ma2d3_last_error(), "no.such.key") != nullptr, "unknown key message");
    ma2d3_config_free(cfg);
  }

  {  // missing required key
    ma2d3_config* cfg = ma2d3_config_new();
    ma2d3_config_set(cfg, "out", "out_capi_missing");
    ma2d3_report* rep = nullptr;
    ma2d3_status st = ma2d3_run(cfg, "verify-schedule", &rep);
    check(st == MA2D3_CONFIG_ERROR, "missing key status");
    check(rep && ma2d3_report_exit_code(rep) == 2, "missing key exit code");
    check(std::strstr(ma2d3_report_text(rep), "missing required key") != nullptr,
          "missing key message names the problem");
    ma2d3_report_free(rep);
    ma2d3_config_free(cfg);
  }

  {  // verify-schedule happy path and byte-identical reruns
    for (int run = 0; run < 2; ++run) {
      ma2d3_config* cfg = ma2d3_config_new();
      ma2d3_config_set(cfg, "N", "4");
      ma2d3_config_set(cfg, "K", "4");
      ma2d3_config_set(cfg, "sigma", "2");
      ma2d3_config_set(cfg, "gamma", "0.01");
      ma2d3_config_set(cfg, "out", run == 0 ? "out_capi_a" : "out_capi_b");
      ma2d3_report* rep = nullptr;
      ma2d3_status st = ma2d3_run(cfg, "verify-schedule", &rep);
      check(st == MA2D3_OK, "verify-schedule status");
      check(rep && ma2d3_report_exit_code(rep) == 0, "verify-schedule exit code");
      check(std::strstr(ma2d3_report_text(rep), "PASS") != nullptr, "verify-schedule passes");
      ma2d3_report_free(rep);
      ma2d3_config_free(cfg);
    }
    check(slurp("out_capi_a/conditions.csv") == slurp("out_capi_b/conditions.csv"),
          "conditions.csv deterministic");
    check(slurp("out_capi_a/schedule.csv") == slurp("out_capi_b/schedule.csv"),
          "schedule.csv deterministic");
    check(!slurp("out_capi_a/schedule.csv").empty(), "schedule.csv nonempty");
  }

  {  // simulate-bounds carries the closed-form exponents
    ma2d3_config* cfg = ma2d3_config_new();
    ma2d3_config_set(cfg, "N", "4");
    ma2d3_config_set(cfg, "K", "4");
    ma2d3_config_set(cfg, "out", "out_capi_bounds");
    ma2d3_report* rep = nullptr;
    check(ma2d3_run(cfg, "simulate-bounds", &rep) == MA2D3_OK, "simulate-bounds status");
    const char* text = ma2d3_report_text(rep);
    check(std::strstr(text, "decay exponent: 32") != nullptr, "decay exponent in report");
    check(std::strstr(text, "growth exponent: 20") != nullptr, "growth exponent in report");
    ma2d3_report_free(rep);
    ma2d3_config_free(cfg);
  }

  {  // config file loading plus unknown subcommand
    std::ofstream os("capi_test.cfg");
    os << "# schedule check\nN = 5\nK = 5\nsigma = 2\ngamma = 0.005\nout = out_capi_cfg\n";
    os.close();
    ma2d3_config* cfg = ma2d3_config_new();
    check(ma2d3_config_load(cfg, "capi_test.cfg") == MA2D3_OK, "config file load");
    ma2d3_report* rep = nullptr;
    check(ma2d3_run(cfg, "verify-schedule", &rep) == MA2D3_OK, "config file run");
    ma2d3_report_free(rep);
    check(ma2d3_run(cfg, "no-such-command", &rep) == MA2D3_CONFIG_ERROR, "unknown subcommand");
    ma2d3_report_free(rep);
    ma2d3_config_free(cfg);
  }

  std::printf("%s (%d failures)\n", g_failures == 0 ? "PASS" : "FAIL", g_failures);
  return g_failures == 0 ? 0 : 1;
}

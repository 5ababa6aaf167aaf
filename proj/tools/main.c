/*
 * ma2d3 command-line front end. Thin wrapper over the shared-library C API:
 * parses the subcommand and key=value arguments, runs, prints the report,
 * exits with the documented code (0 ok, 1 verification failure,
 * 2 configuration error, 3 numerical error).
 */
#include <stdio.h>
#include <string.h>

#include <ma2d3/ma2d3.h>

static void usage(FILE* out) {
  fprintf(out,
          "usage: ma2d3 <subcommand> [config=FILE] [key=value ...]\n"
          "\n"
          "subcommands:\n"
          "  verify-schedule   exact condition report for a Fibonacci frequency schedule\n"
          "  simulate-bounds   propagate the stage bound constants in exact arithmetic\n"
          "  run-stage         one stage (mollify + K double steps) on a built-in problem\n"
          "  run               the full outer iteration\n"
          "  density           weak Monge-Ampere density demo\n"
          "  export-mesh       height-field meshes from a field snapshot\n"
          "  self-test         quick identity checks\n"
          "\n"
          "configuration keys:\n%s",
          ma2d3_config_keys());
}

int main(int argc, char** argv) {
  if (argc < 2 || strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "-h") == 0) {
    usage(argc < 2 ? stderr : stdout);
    return argc < 2 ? 2 : 0;
  }

  ma2d3_config* cfg = ma2d3_config_new();
  if (!cfg) {
    fprintf(stderr, "error: out of memory\n");
    return 3;
  }

  for (int i = 2; i < argc; ++i) {
    const char* eq = strchr(argv[i], '=');
    if (!eq) {
      fprintf(stderr, "error: expected key=value argument, got '%s'\n", argv[i]);
      ma2d3_config_free(cfg);
      return 2;
    }
    ma2d3_status st;
    char key[256];
    size_t klen = (size_t)(eq - argv[i]);
    if (klen >= sizeof key) {
      fprintf(stderr, "error: key too long\n");
      ma2d3_config_free(cfg);
      return 2;
    }
    memcpy(key, argv[i], klen);
    key[klen] = '\0';
    if (strcmp(key, "config") == 0)
      st = ma2d3_config_load(cfg, eq + 1);
    else
      st = ma2d3_config_set(cfg, key, eq + 1);
    if (st != MA2D3_OK) {
      fprintf(stderr, "error: %s\n", ma2d3_last_error());
      ma2d3_config_free(cfg);
      return (int)st;
    }
  }

  ma2d3_report* rep = NULL;
  ma2d3_status st = ma2d3_run(cfg, argv[1], &rep);
  int code = rep ? ma2d3_report_exit_code(rep) : (int)st;
  if (rep) {
    fputs(ma2d3_report_text(rep), code == 0 ? stdout : stderr);
    ma2d3_report_free(rep);
  } else if (st != MA2D3_OK) {
    fprintf(stderr, "error: %s\n", ma2d3_last_error());
  }
  ma2d3_config_free(cfg);
  return code;
}

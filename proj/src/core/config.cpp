#include "core/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ma2d3 {

namespace {

struct KeySpec {
  const char* key;
  const char* def;
  const char* help;
};

// the full key registry with defaults; documented in the README as well
const KeySpec kKeys[] = {
    {"out", "out", "output directory for artifacts"},
    {"grid.n", "256", "grid points per side"},
    {"grid.box", "1.0", "periodic box side length"},
    {"grid.mode", "periodic", "periodic | extended"},
    {"domain", "all", "all | rect:cx,cy,hx,hy | disk:cx,cy,r"},
    {"mode", "relaxed", "stage mode: strict | relaxed"},
    {"N", "2", "absorption depth per double step"},
    {"K", "1", "double steps per stage"},
    {"gamma", "0.02", "regularity exponent gamma"},
    {"sigma", "2.0", "frequency ratio sigma (schedule commands)"},
    {"sigma0", "1.0", "schedule slack constant sigma_0"},
    {"mu0", "0", "base frequency; 0 derives it from l"},
    {"lambda", "8", "strict-mode base frequency (sigma = lambda*l)"},
    {"ratio.lm", "4", "relaxed mode lambda_{k+1}/mu_k (integer)"},
    {"ratio.ml", "4", "relaxed mode mu_k/lambda_k (integer)"},
    {"C", "1.0", "ledger constant in the bound recursion"},
    {"l0", "0.25", "stage length scale l"},
    {"eps", "0.5", "C0 budget for the outer iteration"},
    {"stages", "3", "maximum number of stages"},
    {"rho", "0.0", "strict-mode frequency growth exponent"},
    {"refine", "0", "allow 2x grid refinement at the Nyquist limit"},
    {"mollify", "auto", "stage mollification: auto | always | never"},
    {"ctilde0.scale", "1.0", "scale on the measured defect bound"},
    {"tol.identity", "1e-5", "hard bound on bookkeeping identity residuals"},
    {"tol.defect", "1e-9", "outer-iteration defect stopping tolerance"},
    {"codim.offset", "0", "starting index of the codimension rotation"},
    {"mbar", "0", "C2 bound of the data; 0 measures it"},
    {"problem", "flat", "built-in subsolution: flat | curved"},
    {"f", "one", "density target: zero | one | sinpi"},
    {"target", "zero", "density target field: zero | waves"},
    {"target.scale", "1.0", "scaling of the density target field"},
    {"field", "", "input snapshot path (export-mesh)"},
    {"snapshot.payload", "csv", "snapshot payload: csv | binary"},
};

}  // namespace

RunConfig::RunConfig() {
  for (const auto& k : kKeys) {
    Entry e;
    e.value = k.def;
    entries_[k.key] = e;
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto it = entries_.find(key);
  require(it != entries_.end(), errc::config, "unknown configuration key: " + key);
  it->second.value = value;
  it->second.set = true;
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), errc::config, "cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t eq = line.find('=');
    require(eq != std::string::npos, errc::config,
            path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(b, eq - b);
    std::string val = line.substr(eq + 1);
    auto strip = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t z = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, z - a + 1);
    };
    set(strip(key), strip(val));
  }
}

void RunConfig::apply_args(const std::vector<std::string>& args) {
  for (const auto& a : args) {
    size_t eq = a.find('=');
    require(eq != std::string::npos, errc::config, "expected key=value argument, got: " + a);
    std::string key = a.substr(0, eq), val = a.substr(eq + 1);
    if (key == "config") {
      load_file(val);
    } else {
      set(key, val);
    }
  }
}

const RunConfig::Entry& RunConfig::entry(const std::string& key) const {
  auto it = entries_.find(key);
  require(it != entries_.end(), errc::config, "unknown configuration key: " + key);
  it->second.used = true;
  it->second.resolved = it->second.value;
  return it->second;
}

std::string RunConfig::get_string(const std::string& key) const { return entry(key).value; }

double RunConfig::get_double(const std::string& key) const {
  const Entry& e = entry(key);
  char* end = nullptr;
  double v = std::strtod(e.value.c_str(), &end);
  require(end && *end == '\0' && !e.value.empty(), errc::config,
          "key " + key + " needs a number, got '" + e.value + "'");
  return v;
}

int RunConfig::get_int(const std::string& key) const {
  double v = get_double(key);
  int i = static_cast<int>(v);
  require(static_cast<double>(i) == v, errc::config, "key " + key + " needs an integer");
  return i;
}

bool RunConfig::get_bool(const std::string& key) const {
  std::string v = get_string(key);
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  fail(errc::config, "key " + key + " needs a boolean, got '" + v + "'");
}

bool RunConfig::is_set(const std::string& key) const {
  auto it = entries_.find(key);
  require(it != entries_.end(), errc::config, "unknown configuration key: " + key);
  return it->second.set;
}

void RunConfig::mark_used(const std::string& key) const { entry(key); }

void RunConfig::require_set(const std::string& key) const {
  require(is_set(key), errc::config, "missing required key: " + key);
}

void RunConfig::check_all_used(const std::string& subcommand) const {
  for (const auto& [key, e] : entries_)
    if (e.set && !e.used)
      fail(errc::config, "key " + key + " is not used by subcommand " + subcommand);
}

std::string RunConfig::effective_summary() const {
  std::ostringstream os;
  for (const auto& [key, e] : entries_) {
    os << key << "=" << e.value;
    if (!e.set) os << "   # default";
    os << '\n';
  }
  return os.str();
}

std::string RunConfig::registry_help() {
  std::ostringstream os;
  for (const auto& k : kKeys) os << "  " << k.key << " (default " << k.def << "): " << k.help << '\n';
  return os.str();
}

}  // namespace ma2d3

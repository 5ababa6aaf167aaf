#ifndef MA2D3_CONFIG_HPP
#define MA2D3_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace ma2d3 {

// Flat key=value configuration. Keys come from a fixed registry; unknown keys
// are rejected. Every lookup records the resolved value (default or not) so
// the emitted summary carries the full effective configuration.
class RunConfig {
 public:
  RunConfig();

  void set(const std::string& key, const std::string& value);
  void load_file(const std::string& path);
  // parse "key=value" tokens; "config=PATH" loads a file at that position
  void apply_args(const std::vector<std::string>& args);

  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  bool is_set(const std::string& key) const;

  // keys that were explicitly provided must be consumed by the subcommand
  void mark_used(const std::string& key) const;
  void check_all_used(const std::string& subcommand) const;
  // fail with a configuration error unless the key was explicitly provided
  void require_set(const std::string& key) const;

  std::string effective_summary() const;  // key=value per line, resolved
  static std::string registry_help();

 private:
  struct Entry {
    std::string value;
    bool set = false;
    mutable bool used = false;
    mutable std::string resolved;
  };
  std::map<std::string, Entry> entries_;
  const Entry& entry(const std::string& key) const;
};

}  // namespace ma2d3

#endif

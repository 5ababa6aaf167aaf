#ifndef MA2D3_ERRORS_HPP
#define MA2D3_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ma2d3 {

// Error categories. The CLI maps them onto exit codes: config -> 2,
// verification -> 1, everything numerical -> 3.
enum class errc {
  config,        // bad key, bad value, missing input
  verification,  // a condition report failed
  amplitude,     // (Ct_st) or the a^2 band violated
  positivity,    // b^2 lost positivity: frequency ratio too small
  resolution,    // requested frequency beyond the grid Nyquist limit
  margin,        // not enough boundary margin for a stencil / mollifier
  compatibility, // decomposition input not a compatible field
  stagnation,    // defect stopped decreasing across stages
  io,            // file errors
  internal,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

inline void require(bool ok, errc code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace ma2d3

#endif

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dds {

enum class errc {
  degenerate_interval,  // some |X_i| < 2
  domain_overflow,      // |X| does not fit an unsigned 64-bit integer
  network_too_large,    // |X| beyond the tabulation limit
  out_of_domain,        // state outside X
  not_in_xprime,        // (x,v) with x+v outside X
  bad_restriction,      // restriction window empty or not inside X_i
  bad_argument,
  parse_error,          // carries line/column
  range_violation,      // rule value outside X_i with clamping off
  cap_exceeded,         // circuit-enumeration cap hit
  retries_exhausted,    // constrained generation gave up
  empty_state_set,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::degenerate_interval: return "degenerate_interval";
    case errc::domain_overflow: return "domain_overflow";
    case errc::network_too_large: return "network_too_large";
    case errc::out_of_domain: return "out_of_domain";
    case errc::not_in_xprime: return "not_in_xprime";
    case errc::bad_restriction: return "bad_restriction";
    case errc::bad_argument: return "bad_argument";
    case errc::parse_error: return "parse_error";
    case errc::range_violation: return "range_violation";
    case errc::cap_exceeded: return "cap_exceeded";
    case errc::retries_exhausted: return "retries_exhausted";
    case errc::empty_state_set: return "empty_state_set";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  error(errc code, const std::string& what, int line, int col)
      : std::runtime_error(what), code_(code), line_(line), col_(col) {}

  errc code() const { return code_; }
  bool has_position() const { return line_ > 0; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  errc code_;
  int line_ = 0;
  int col_ = 0;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw error(code, what);
}

// Limits for the elementary-circuit machinery. Exceeding a cap raises
// errc::cap_exceeded; results are never silently truncated.
struct CircuitCaps {
  int max_vertices = 24;
  std::uint64_t max_circuits = 1000000;
};

}  // namespace dds

#pragma once

#include <stdexcept>
#include <string>

namespace ukepler {

// Error categories, mapped to CLI exit codes by the front end:
// usage/parse -> 2, singularity/integration -> 3, the rest -> 1.
enum class Errc {
  usage,         // bad arguments, mismatched algebra tags, malformed specs
  domain,        // value outside the operation's domain (off-cone, r <= 0, ...)
  unsupported,   // operation not defined for this algebra (e.g. commutator on the spin factor)
  numerical,     // ill-conditioned metric, failed validation of computed data
  parse,         // malformed input file
  integration,   // adaptive step underflow
  singularity    // trajectory ran into the cone boundary (collision)
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) { throw Error(Errc::usage, msg); }
[[noreturn]] inline void throw_domain(const std::string& msg) { throw Error(Errc::domain, msg); }
[[noreturn]] inline void throw_unsupported(const std::string& msg) { throw Error(Errc::unsupported, msg); }
[[noreturn]] inline void throw_numerical(const std::string& msg) { throw Error(Errc::numerical, msg); }
[[noreturn]] inline void throw_parse(const std::string& msg) { throw Error(Errc::parse, msg); }

}  // namespace ukepler

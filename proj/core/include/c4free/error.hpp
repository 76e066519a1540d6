#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace c4free {

enum class ErrorKind {
  domain,                 // argument outside the operation's domain
  unsupported_parameter,  // parameter the implementation deliberately does not handle
  generation_failure,     // a seeded generator exhausted its retry budget
  oracle_limit,           // exhaustive oracle asked to run above its size limit
  precondition,           // input violates a checked structural precondition
  not_biregular,          // almost-biregularity precondition violated
  extraction_failure,     // Las Vegas retry budget exhausted
  parameter,              // parameters too aggressive for the given input
  kernel_failure,         // kernel construction could not verify its dichotomy
  stale_certificate,      // certificate digest does not match the graph
  unsupported_scale,      // exact computation requested beyond its budget
  parse,                  // malformed input file
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace c4free

#pragma once

#include <stdexcept>
#include <string>

namespace asqg {

/// Failure categories shared by the C++ surface and the C API status codes.
enum class Errc {
  invalid_argument = 1,
  singular_point,
  lattice_singularity,
  truncation_failure,
  self_intersection,
  lattice_collision,
  accuracy_guard,
  boundary_evaluation,
  path_singularity,
  degenerate_chain,
  unsupported,
  io,
  parse,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }
  /// Message without the category prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace asqg

#include "asqg/errors.hpp"

namespace asqg {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::singular_point: return "singular point";
    case Errc::lattice_singularity: return "lattice singularity";
    case Errc::truncation_failure: return "truncation failure";
    case Errc::self_intersection: return "self-intersection";
    case Errc::lattice_collision: return "lattice collision";
    case Errc::accuracy_guard: return "accuracy guard violation";
    case Errc::boundary_evaluation: return "evaluation on boundary";
    case Errc::path_singularity: return "path through singularity";
    case Errc::degenerate_chain: return "degenerate chain";
    case Errc::unsupported: return "unsupported";
    case Errc::io: return "i/o error";
    case Errc::parse: return "parse error";
  }
  return "unknown error";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace asqg

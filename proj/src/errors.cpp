#include "conevortex/errors.hpp"

namespace conevortex {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Range: return "range";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::Degenerate: return "degenerate-geometry";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Resonance: return "resonance";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace conevortex

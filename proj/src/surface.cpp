#include "tracklab/surface.hpp"

namespace tracklab {

int euler_char(const SurfaceSig& sig) {
  return sig.orientable ? 2 - 2 * sig.genus - sig.boundary : 2 - sig.genus - sig.boundary;
}

Exceptionality classify_exceptional(const SurfaceSig& sig) {
  const int chi = euler_char(sig);
  if (chi >= 0) return Exceptionality::NotHyperbolic;
  if (sig.orientable) {
    return (sig.genus == 0 && sig.boundary == 3) ? Exceptionality::Exceptional
                                                 : Exceptionality::NonExceptional;
  }
  return chi == -1 ? Exceptionality::Exceptional : Exceptionality::NonExceptional;
}

namespace {

void require_nonorientable_hyperbolic(const SurfaceSig& sig) {
  if (sig.orientable) throw SurfaceError("multicurve counts are only provided for non-orientable surfaces");
  if (sig.genus < 1) throw SurfaceError("non-orientable genus must be at least 1");
  if (!is_hyperbolic(sig)) throw SurfaceError("surface " + to_string(sig) + " is not hyperbolic");
}

}  // namespace

int max_multicurve(const SurfaceSig& sig) {
  require_nonorientable_hyperbolic(sig);
  return 2 * sig.genus - 3 + sig.boundary;
}

int max_two_sided_multicurve(const SurfaceSig& sig) {
  require_nonorientable_hyperbolic(sig);
  const int k = sig.genus;
  const int twice = (k % 2 == 1) ? 3 * k - 7 + 2 * sig.boundary : 3 * k - 8 + 2 * sig.boundary;
  return twice / 2;
}

std::string to_string(const SurfaceSig& sig) {
  return std::string(sig.orientable ? "O " : "N ") + std::to_string(sig.genus) + " " + std::to_string(sig.boundary);
}

const char* to_string(Exceptionality e) {
  switch (e) {
    case Exceptionality::Exceptional: return "exceptional";
    case Exceptionality::NonExceptional: return "non-exceptional";
    case Exceptionality::NotHyperbolic: return "not-hyperbolic";
  }
  return "?";
}

}  // namespace tracklab

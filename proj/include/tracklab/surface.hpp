#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace tracklab {

/// Topological type of a compact surface: orientable genus g or non-orientable
/// genus k (number of cross-caps), together with the number of boundary
/// components / punctures.
struct SurfaceSig {
  bool orientable = true;
  int genus = 0;
  int boundary = 0;

  auto operator<=>(const SurfaceSig&) const = default;
};

enum class Exceptionality { Exceptional, NonExceptional, NotHyperbolic };

class SurfaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int euler_char(const SurfaceSig& sig);
inline bool is_hyperbolic(const SurfaceSig& sig) { return euler_char(sig) < 0; }

Exceptionality classify_exceptional(const SurfaceSig& sig);

// Maximal number of components of a multicurve, c(S), and of a two-sided
// multicurve, c^+(S). Only defined for non-orientable hyperbolic surfaces;
// anything else throws SurfaceError.
int max_multicurve(const SurfaceSig& sig);
int max_two_sided_multicurve(const SurfaceSig& sig);

/// `O g r` / `N k r`.
std::string to_string(const SurfaceSig& sig);
const char* to_string(Exceptionality e);

}  // namespace tracklab

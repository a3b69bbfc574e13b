#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tracklab/rational.hpp"

namespace tracklab {

struct CurveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Intersection numbers of a lamination with a fixed, ordered family of curve labels.
struct IntersectionVector {
  std::vector<std::string> family;
  std::vector<Rational> values;

  IntersectionVector() = default;
  IntersectionVector(std::vector<std::string> f, std::vector<Rational> v);

  const Rational& at(const std::string& label) const;
  bool has(const std::string& label) const;
  bool operator==(const IntersectionVector&) const = default;
};

/// max over the family of |u(a) - v(a)|.
Rational dA_distance(const IntersectionVector& u, const IntersectionVector& v);

struct TwistComponent {
  std::string label;
  long long exponent = 0;
  Rational i_alpha_gamma;  // i(alpha, gamma_i)
  Rational i_gamma_beta;   // i(gamma_i, beta)
};

/// Product of powers of Dehn twists along disjoint two-sided curves, with the
/// intersection data needed to bound i(T(alpha), beta).
struct TwistSpec {
  std::vector<TwistComponent> components;
  Rational i_alpha_beta;

  void check() const;
  TwistSpec scaled(long long k) const;
};

struct Interval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

Interval ivanov_bounds(const TwistSpec& spec);

/// Largest width ivanov_bounds can have for this intersection data.
Rational ivanov_width_bound(const TwistSpec& spec);

/// lim (1/k) T^k(alpha) evaluated on `family`; gamma_data[j][i] = i(gamma_i, family[j]).
IntersectionVector twist_limit(const TwistSpec& spec, const std::vector<std::string>& family,
                               const std::vector<std::vector<Rational>>& gamma_data);

/// Embedded two-holed projective plane: boundary labels, dual curve eta, core gamma.
struct HoledPlane {
  std::vector<std::string> boundary;
  std::string eta;
  std::string core;
};

struct AtomResult {
  bool atom = false;
  Rational weight;  // 2 (i(eta) - max over the boundary); zero when there is no atom
  std::string core;
};

AtomResult scharlemann_atom(const IntersectionVector& lam, const HoledPlane& P);

}  // namespace tracklab

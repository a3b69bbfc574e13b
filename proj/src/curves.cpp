#include "tracklab/curves.hpp"

#include <algorithm>

namespace tracklab {

IntersectionVector::IntersectionVector(std::vector<std::string> f, std::vector<Rational> v)
    : family(std::move(f)), values(std::move(v)) {
  if (family.size() != values.size()) throw CurveError("family and values differ in size");
  for (const auto& x : values) {
    if (x < 0) throw CurveError("negative intersection number");
  }
}

bool IntersectionVector::has(const std::string& label) const {
  return std::find(family.begin(), family.end(), label) != family.end();
}

const Rational& IntersectionVector::at(const std::string& label) const {
  auto it = std::find(family.begin(), family.end(), label);
  if (it == family.end()) throw CurveError("missing label " + label);
  return values[it - family.begin()];
}

Rational dA_distance(const IntersectionVector& u, const IntersectionVector& v) {
  if (u.family != v.family) throw CurveError("family mismatch");
  Rational d = 0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    Rational x = abs(u.values[i] - v.values[i]);
    if (x > d) d = x;
  }
  return d;
}

void TwistSpec::check() const {
  if (i_alpha_beta < 0) throw CurveError("negative intersection number");
  for (const auto& c : components) {
    if (c.i_alpha_gamma < 0 || c.i_gamma_beta < 0) throw CurveError("negative intersection number");
  }
}

TwistSpec TwistSpec::scaled(long long k) const {
  TwistSpec s = *this;
  for (auto& c : s.components) c.exponent *= k;
  return s;
}

Interval ivanov_bounds(const TwistSpec& spec) {
  spec.check();
  Rational top = spec.i_alpha_beta, bottom = -spec.i_alpha_beta;
  for (const auto& c : spec.components) {
    const Rational n = Rational(static_cast<long>(c.exponent < 0 ? -c.exponent : c.exponent));
    const Rational prod = c.i_alpha_gamma * c.i_gamma_beta;
    top += n * prod;
    bottom += (n - 2) * prod;
  }
  return {bottom < 0 ? Rational(0) : bottom, top};
}

Rational ivanov_width_bound(const TwistSpec& spec) {
  Rational w = 2 * spec.i_alpha_beta;
  for (const auto& c : spec.components) w += 2 * c.i_alpha_gamma * c.i_gamma_beta;
  return w;
}

IntersectionVector twist_limit(const TwistSpec& spec, const std::vector<std::string>& family,
                               const std::vector<std::vector<Rational>>& gamma_data) {
  spec.check();
  if (gamma_data.size() != family.size()) throw CurveError("one row of gamma data per family label");
  std::vector<Rational> out;
  for (const auto& row : gamma_data) {
    if (row.size() != spec.components.size()) throw CurveError("one gamma intersection per component");
    Rational x = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& c = spec.components[i];
      if (row[i] < 0) throw CurveError("negative intersection number");
      x += Rational(static_cast<long>(c.exponent < 0 ? -c.exponent : c.exponent)) * c.i_alpha_gamma * row[i];
    }
    out.push_back(x);
  }
  return IntersectionVector(family, out);
}

AtomResult scharlemann_atom(const IntersectionVector& lam, const HoledPlane& P) {
  if (P.boundary.empty()) throw CurveError("plane without boundary labels");
  Rational mx = 0;
  for (const auto& b : P.boundary) {
    if (lam.at(b) > mx) mx = lam.at(b);
  }
  const Rational eta = lam.at(P.eta);
  AtomResult r;
  r.core = P.core;
  if (mx < eta) {
    r.atom = true;
    r.weight = 2 * (eta - mx);
  }
  return r;
}

}  // namespace tracklab

#include "tracklab/exceptional.hpp"

namespace tracklab {

N12Report n12_orbits() {
  N12Report r;
  r.pml = {"gamma", "eta"};
  r.one_sided = {true, true};
  // Z/2 x Z/2: one factor exchanges the two one-sided curves, the other fixes both.
  r.action = {{0, 1}, {0, 1}, {1, 0}, {1, 0}};
  std::vector<int> seen(r.pml.size(), 0);
  for (std::size_t p = 0; p < r.pml.size(); ++p) {
    if (seen[p]) continue;
    ++r.orbits;
    for (const auto& g : r.action) seen[g[p]] = 1;
  }
  return r;
}

N21Report n21_twist_orbit(long long n_max, const Rational& i_g0_alpha, const Rational& i_alpha_beta,
                          const Rational& i_g0_beta) {
  if (i_g0_alpha <= 0) throw CurveError("i(gamma_0, alpha) must be positive");
  if (n_max < 1) throw CurveError("n_max must be positive");
  N21Report r;
  r.limit = i_g0_alpha * i_alpha_beta;
  for (long long n = 1; n <= n_max; ++n) {
    TwistSpec s;
    s.components.push_back({"alpha", n, i_g0_alpha, i_alpha_beta});
    s.i_alpha_beta = i_g0_beta;
    N21Step st;
    st.n = n;
    st.bounds = ivanov_bounds(s);
    const Rational k(static_cast<long>(n));
    st.normalized = Interval{st.bounds.lo / k, st.bounds.hi / k};
    r.steps.push_back(st);
  }
  return r;
}

N30Report n30_structure() { return {}; }

}  // namespace tracklab

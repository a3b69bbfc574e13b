#include "tracklab/cone.hpp"

#include <algorithm>

#include "tracklab/lp.hpp"

namespace tracklab {

namespace {

std::vector<bool> zero_set(const IntVector& r) {
  std::vector<bool> z(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) z[i] = (r[i] == 0);
  return z;
}

bool contains(const std::vector<bool>& big, const std::vector<bool>& small) {
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (small[i] && !big[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<IntVector> extreme_rays(const std::vector<std::vector<int>>& equations, int dim) {
  // Start from the positive orthant and cut by one hyperplane at a time.
  std::vector<IntVector> rays;
  for (int i = 0; i < dim; ++i) {
    IntVector r(dim, 0);
    r[i] = 1;
    rays.push_back(std::move(r));
  }
  for (const auto& row : equations) {
    std::vector<Integer> val(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) {
      Integer s = 0;
      for (int i = 0; i < dim; ++i) s += row[i] * rays[k][i];
      val[k] = s;
    }
    std::vector<std::vector<bool>> zs;
    for (const auto& r : rays) zs.push_back(zero_set(r));
    std::vector<IntVector> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] == 0) next.push_back(rays[k]);
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (val[n] >= 0) continue;
        // Combinatorial adjacency: no third ray vanishes on Z(p) & Z(n).
        std::vector<bool> common(dim);
        for (int i = 0; i < dim; ++i) common[i] = zs[p][i] && zs[n][i];
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          if (contains(zs[k], common)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector r(dim);
        for (int i = 0; i < dim; ++i) r[i] = val[p] * rays[n][i] - val[n] * rays[p][i];
        make_primitive(r);
        next.push_back(std::move(r));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays = std::move(next);
  }
  std::sort(rays.begin(), rays.end());
  return rays;
}

std::vector<IntVector> cone_rays(const TrainTrack& track) {
  return extreme_rays(switch_matrix(track), track.num_edges());
}

IntVector ray_sum(const TrainTrack& track) {
  IntVector sum(track.num_edges(), 0);
  for (const auto& r : cone_rays(track)) {
    for (std::size_t i = 0; i < r.size(); ++i) sum[i] += r[i];
  }
  return sum;
}

bool is_recurrent(const TrainTrack& track) {
  if (track.num_edges() == 0) return false;
  const auto s = ray_sum(track);
  return std::all_of(s.begin(), s.end(), [](const Integer& x) { return x > 0; });
}

Projection restrict_renormalize(const TrainTrack& track, const WeightVector& w, const Rational& eps) {
  const int ne = track.num_edges();
  if (!satisfies_switch_equations(track, w)) {
    throw TrackError(TrackError::Kind::Precondition, "weights are not in the weight cone");
  }
  if (combinatorial_length(track, w) != 1) {
    throw TrackError(TrackError::Kind::Precondition, "weights must have combinatorial length 1");
  }
  std::vector<bool> heavy(ne);
  for (int e = 0; e < ne; ++e) heavy[e] = !(track.edges[e].length * w[e] < eps);

  // Variables: nu_0..nu_{ne-1}, delta.
  lp::Problem p;
  p.num_vars = ne + 1;
  p.objective.assign(ne + 1, 0);
  p.objective[ne] = 1;
  for (const auto& row : switch_matrix(track)) {
    lp::Constraint c;
    c.coeffs.assign(ne + 1, 0);
    for (int e = 0; e < ne; ++e) c.coeffs[e] = row[e];
    p.constraints.push_back(std::move(c));
  }
  for (int e = 0; e < ne; ++e) {
    if (heavy[e]) continue;
    lp::Constraint c;
    c.coeffs.assign(ne + 1, 0);
    c.coeffs[e] = 1;
    p.constraints.push_back(std::move(c));
  }
  {
    lp::Constraint c;
    c.coeffs.assign(ne + 1, 0);
    for (int e = 0; e < ne; ++e) c.coeffs[e] = track.edges[e].length;
    c.rhs = 1;
    p.constraints.push_back(std::move(c));
  }
  for (int e = 0; e < ne; ++e) {
    const Rational& len = track.edges[e].length;
    // len*(w - nu) <= delta  and  len*(nu - w) <= delta
    lp::Constraint lo, hi;
    lo.coeffs.assign(ne + 1, 0);
    hi.coeffs.assign(ne + 1, 0);
    lo.coeffs[e] = -len;
    lo.coeffs[ne] = -1;
    lo.rel = lp::Relation::LessEq;
    lo.rhs = -len * w[e];
    hi.coeffs[e] = len;
    hi.coeffs[ne] = -1;
    hi.rel = lp::Relation::LessEq;
    hi.rhs = len * w[e];
    p.constraints.push_back(std::move(lo));
    p.constraints.push_back(std::move(hi));
  }
  const auto sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal) {
    throw TrackError(TrackError::Kind::SubconeTrivial, "no nonzero weight vector supported on the heavy edges");
  }
  Projection out;
  out.weights.assign(sol.x.begin(), sol.x.begin() + ne);
  out.deviation = sol.x[ne];
  return out;
}

}  // namespace tracklab

#pragma once

#include <vector>

#include "tracklab/rational.hpp"
#include "tracklab/track.hpp"

namespace tracklab {

using IntVector = std::vector<Integer>;

/// Extreme rays of {x >= 0 : A x = 0}, primitive, sorted lexicographically.
/// Double description over the integers.
std::vector<IntVector> extreme_rays(const std::vector<std::vector<int>>& equations, int dim);

/// Extreme rays of the weight cone W(track).
std::vector<IntVector> cone_rays(const TrainTrack& track);

/// Whether the weight cone contains a strictly positive vector.
bool is_recurrent(const TrainTrack& track);

/// Sum of all extreme rays (strictly positive iff the track is recurrent).
IntVector ray_sum(const TrainTrack& track);

struct Projection {
  WeightVector weights;
  /// max_e len(e) |w(e) - nu(e)|
  Rational deviation;
};

/// Closest point, in the len-weighted sup norm, of the sub-cone of weights
/// vanishing on every edge with len(e) w(e) < eps, normalized to
/// combinatorial length 1. Throws TrackError(SubconeTrivial) when that
/// sub-cone is {0}.
Projection restrict_renormalize(const TrainTrack& track, const WeightVector& w, const Rational& eps);

}  // namespace tracklab

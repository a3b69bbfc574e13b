#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "tracklab/track.hpp"

namespace tracklab {

/// Seed from TRACKLAB_SEED, or the fallback when unset or unparsable.
std::uint64_t corpus_seed(std::uint64_t fallback = 20240611);

/// Calls visit on every track with the given number of switches and edges:
/// every way to distribute the 2n ends over the slot rows, every perfect
/// matching of the ends, and (if with_twists) every twist assignment.
/// Lengths are all 1.
void for_each_track(int switches, int edges, bool with_twists,
                    const std::function<void(const TrainTrack&)>& visit);

/// All one-switch tracks with 1..max_edges edges and all twist assignments.
std::vector<TrainTrack> one_vertex_tracks(int max_edges);

/// Sorted edge list of the track with every end written as (switch, side,
/// slot). Equal keys mean equal tracks up to edge names and orientations.
std::vector<std::array<int, 7>> track_key(const TrainTrack& track);

/// Whether the track's key is least among its images under switch
/// relabelling, exchanging the sides of a switch, and reversing a switch's
/// slot order (which toggles the twist of every end plugged there).
bool is_canonical(const TrainTrack& track);

/// Tracks with up to max_switches switches and max_edges edges that pass
/// strict validation on their implied surface, have every switch at least
/// trivalent, live on a hyperbolic surface and are recurrent. The implied
/// surface is attached. With up_to_symmetry only canonical tracks are kept.
std::vector<TrainTrack> base_tracks(int max_switches, int max_edges, bool up_to_symmetry = false);

/// Strictly positive weights: a combination of all extreme rays with large
/// random coefficients, so that carried leaves are long.
WeightVector generic_weights(const TrainTrack& track, std::mt19937_64& rng);

}  // namespace tracklab

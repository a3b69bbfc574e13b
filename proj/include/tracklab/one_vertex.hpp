#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tracklab/track.hpp"

namespace tracklab {

enum class EdgeType { TB, TT, BB };
const char* to_string(EdgeType t);

/// A train track with a single switch ("switchboard").
class SwitchboardTrack {
 public:
  /// Throws TrackError(Precondition) unless the track has exactly one switch.
  explicit SwitchboardTrack(TrainTrack track);

  const TrainTrack& track() const { return track_; }
  EdgeType type(int e) const { return types_[e]; }
  /// Sidedness of the curve associated to an edge (read off the twist bit).
  Sidedness edge_sidedness(int e) const;
  std::vector<int> edges_of(EdgeType t) const;

 private:
  TrainTrack track_;
  std::vector<EdgeType> types_;
};

/// Boundary of the switch read cyclically: T.0 .. T.(p-1), B.(q-1) .. B.0.
/// Every edge is a chord between its two plugs.
class ChordDiagram {
 public:
  explicit ChordDiagram(const SwitchboardTrack& t);

  /// Cyclic position of a plug.
  int position(const EndRef& r) const;
  /// Chord endpoints (lo < hi).
  std::array<int, 2> chord(int e) const;
  static bool links(std::array<int, 2> a, std::array<int, 2> b);

 private:
  const SwitchboardTrack* board_;
  int top_ = 0;
  int bottom_ = 0;
};

enum class PairRelation { Crossing, Nested, Separated };
const char* to_string(PairRelation r);

bool crossing_tb(const SwitchboardTrack& t, int e, int f);
PairRelation tt_relation(const SwitchboardTrack& t, int e, int f);  // TT-TT or BB-BB
bool tb_separated_from_pair(const SwitchboardTrack& t, int e, int et, int eb);

struct ConditionReport {
  std::array<bool, 7> pass{};
  /// True when t-t edges play the two-sided role (the unprimed reading).
  bool tt_two_sided_mode = true;
  std::array<std::string, 7> detail;

  bool all_pass() const {
    for (bool p : pass) {
      if (!p) return false;
    }
    return true;
  }
};

ConditionReport check_conditions(const SwitchboardTrack& t);

struct TwoSidedDecision {
  std::optional<LegalLoop> witness;
  bool carries_two_sided() const { return witness.has_value(); }
};

/// Searches carried curves with multiplicity <= 2 for a two-sided one.
/// Throws TrackError(Precondition) on non-recurrent tracks.
TwoSidedDecision decide_two_sided(const SwitchboardTrack& t);

struct CarriedClassification {
  bool has_two_sided = false;
  std::optional<LegalLoop> two_sided_witness;
  /// Components passing through the switch at most twice.
  std::vector<LegalLoop> components;
  /// Every extreme ray decomposes over the components.
  bool rays_decompose = false;
};

/// Throws TrackError(Precondition) if some condition fails.
CarriedClassification classify_carried(const SwitchboardTrack& t);

}  // namespace tracklab

#pragma once

#include <vector>

#include "tracklab/track.hpp"

namespace tracklab {

// A lambda-structure is read off a filling weight vector: each plug is an
// interval of its switch side, strands cross the switch vertically, and a turn
// between a top plug and a bottom plug carries the length of their overlap.

struct Turn {
  int sw = 0;
  HalfEdge top;
  HalfEdge bottom;
  Rational mass;
};

enum class EdgeKind { NonLoopy, FakeLoopy, Loopy };
const char* to_string(EdgeKind k);

struct LoopyInfo {
  int edge = 0;
  int winding = 0;
  Rational m_w;
  Rational m_w1;
  /// Offset between the top and bottom plug (top minus bottom).
  Rational shift;
  Rational self_turn;
};

struct LambdaLengths {
  std::vector<Rational> per_edge;
  Rational total;
  Rational minimum;
};

class LambdaStructure {
 public:
  /// Throws TrackError(Invalid) for non-positive or unbalanced weights and
  /// TrackError(ClosedLeaf) when a single edge closes up on itself.
  LambdaStructure(TrainTrack track, WeightVector weights);

  const TrainTrack& track() const { return track_; }
  const WeightVector& weights() const { return weights_; }
  const std::vector<Turn>& turns() const { return turns_; }
  const std::vector<LoopyInfo>& loopy() const { return loopy_; }
  EdgeKind kind(int e) const { return kinds_[e]; }
  const LoopyInfo* loopy_info(int e) const;
  /// positions[edge][end] = {lo, hi}
  const std::vector<std::array<std::array<Rational, 2>, 2>>& positions() const { return pos_; }

  Rational lambda_length(int e) const;
  LambdaLengths lengths() const;

  /// Sum of turn masses through a half-edge, self-turns counted at both ends.
  Rational marginal(HalfEdge h) const;
  /// Marginals equal weights and loopy bookkeeping is consistent.
  bool check() const;

 private:
  TrainTrack track_;
  WeightVector weights_;
  std::vector<std::array<std::array<Rational, 2>, 2>> pos_;
  std::vector<Turn> turns_;
  std::vector<EdgeKind> kinds_;
  std::vector<LoopyInfo> loopy_;
};

LambdaLengths lambda_lengths(const LambdaStructure& ls);

/// Winding data of a loopy band with plug width W and plug offset d != 0.
LoopyInfo winding_data(const Rational& width, const Rational& shift);

}  // namespace tracklab

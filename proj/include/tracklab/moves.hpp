#pragma once

#include <string>
#include <vector>

#include "tracklab/lambda.hpp"

namespace tracklab {

/// Piece of an edge of the original track, in length coordinates. A segment
/// with from > to runs against the edge orientation.
struct Segment {
  int edge = 0;
  Rational from;
  Rational to;

  bool operator==(const Segment&) const = default;
};
using CarryPath = std::vector<Segment>;

Rational path_length(const CarryPath& p);
CarryPath reversed(const CarryPath& p);
/// Sub-path between arc-length parameters t0 < t1.
CarryPath slice(const CarryPath& p, const Rational& t0, const Rational& t1);

/// A refinement of a fixed original track, together with the carrying map
/// that sends every current edge to a path in the original.
struct Refinement {
  explicit Refinement(const LambdaStructure& ls);

  TrainTrack base;
  WeightVector base_weights;
  LambdaStructure current;
  std::vector<CarryPath> paths;
  int next_name = 0;
};

enum class MoveKind { Subdivide, Smooth, SplitCusp, Comb, Unmask, Unloop, GenericSplit };
const char* to_string(MoveKind k);

struct MoveRecord {
  MoveKind kind = MoveKind::Subdivide;
  std::string target;
  Rational length_before;
  Rational length_after;
  Rational min_before;
  Rational min_after;
  /// Change of total lambda-length predicted by the move's accounting rule
  /// (plain length for smoothing).
  Rational predicted_delta;
  bool identity_holds = true;
  /// Some loopy edge was created by a concatenation or consumed by a cut.
  /// The accounting rules above do not cover this case.
  bool loopy_involved = false;
  std::string note;
};

struct RefinementTrace {
  std::vector<MoveRecord> moves;
};

/// Splits the cusp between slots `slot` and `slot + 1` on the given side.
/// Throws TrackError(Precondition) for a bad cusp or a loopy common child.
Refinement split_cusp(const Refinement& r, int sw, Side side, int slot, RefinementTrace& trace);

/// Combs the half-edge (e, end). Throws TrackError(Precondition) unless e is
/// non-loopy.
Refinement comb(const Refinement& r, HalfEdge h, RefinementTrace& trace);

/// Throws TrackError(Precondition) unless e is fake loopy.
Refinement unmask(const Refinement& r, int e, RefinementTrace& trace);

/// Throws TrackError(Precondition) unless e is loopy.
Refinement unloop(const Refinement& r, int e, RefinementTrace& trace);

/// Replaces e by a chain of edges with the given lengths (summing to len(e)),
/// joined at new bivalent switches. Loopy edges are rejected.
Refinement subdivide(const Refinement& r, int e, const std::vector<Rational>& pieces, RefinementTrace& trace);

/// Removes the bivalent switch sw, merging its two edges. No-op on a circle.
Refinement smooth(const Refinement& r, int sw, RefinementTrace& trace);

/// Removes every bivalent switch that is not on a circle component.
Refinement smooth_all(const Refinement& r, RefinementTrace& trace);

/// Composed carrying map is a legal path of the right length for every edge.
bool carrying_consistent(const Refinement& r);
/// Weights pushed forward along the carrying map equal the original weights.
bool pushforward_matches(const Refinement& r);

}  // namespace tracklab

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracklab/rational.hpp"
#include "tracklab/surface.hpp"

namespace tracklab {

// A train track as a band complex. Every switch is a thin rectangle with a
// top side (T) and a bottom side (B); each side carries an ordered row of
// slots, read left to right. Every edge is a band plugged into two slots.
//
// The twist bit fixes how the band is plugged: with twist 0 the point at
// distance u from the left of one plug is glued to the point at distance u
// from the left of the other plug; with twist 1 it is glued to the point at
// distance u from the right.

enum class Side : std::uint8_t { T = 0, B = 1 };

constexpr Side opposite(Side s) { return s == Side::T ? Side::B : Side::T; }
constexpr char side_char(Side s) { return s == Side::T ? 'T' : 'B'; }

struct EndRef {
  int sw = 0;
  Side side = Side::T;
  int slot = 0;

  bool operator==(const EndRef&) const = default;
};

struct Edge {
  std::string name;
  std::array<EndRef, 2> ends;
  bool twist = false;
  Rational length = 1;
};

struct Switch {
  std::string name;
};

/// (edge index, end index 0/1).
struct HalfEdge {
  int edge = 0;
  int end = 0;

  bool operator==(const HalfEdge&) const = default;
  auto operator<=>(const HalfEdge&) const = default;
};

struct TrainTrack {
  std::vector<Switch> switches;
  std::vector<Edge> edges;
  std::optional<SurfaceSig> surface;

  int num_switches() const { return static_cast<int>(switches.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  const EndRef& end(HalfEdge h) const { return edges[h.edge].ends[h.end]; }

  /// -1 when absent.
  int switch_index(const std::string& name) const;
  int edge_index(const std::string& name) const;

  /// Both ends at the same switch on the same side.
  bool same_side(int e) const {
    const auto& [a, b] = edges[e].ends;
    return a.side == b.side;
  }
  /// Both ends at one switch on opposite sides.
  bool is_tb_self_loop(int e) const {
    const auto& [a, b] = edges[e].ends;
    return a.sw == b.sw && a.side != b.side;
  }
};

using WeightVector = std::vector<Rational>;

class TrackError : public std::runtime_error {
 public:
  enum class Kind { Malformed, Invalid, Illegal, Precondition, ClosedLeaf, SubconeTrivial, Certificate };
  TrackError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Slot rows of every switch, indexed [switch][side]. Throws
/// TrackError(Malformed) on dangling indices, duplicate occupancy, or gaps.
std::vector<std::array<std::vector<HalfEdge>, 2>> slot_rows(const TrainTrack& track);

int valence(const TrainTrack& track, int sw);

/// Integer matrix with one row per switch: (#ends on T) - (#ends on B).
std::vector<std::vector<int>> switch_matrix(const TrainTrack& track);

bool satisfies_switch_equations(const TrainTrack& track, const WeightVector& w);

/// Left/right positions of every half-edge inside its switch side, with
/// slot widths given by the weights: positions[edge][end] = {lo, hi}.
std::vector<std::array<std::array<Rational, 2>, 2>> plug_positions(const TrainTrack& track,
                                                                   const WeightVector& w);

/// Combinatorial length sum_e len(e) w(e).
Rational combinatorial_length(const TrainTrack& track, const WeightVector& w);

// ---------------------------------------------------------------------------
// Validation and complementary-region census.

struct Region {
  int cusps = 0;
  /// Boundary word: band sides met while walking the boundary, e.g. "a+ b- ...".
  std::vector<std::string> word;
  /// Index chi - cusps/2 when the region is taken to be a disk.
  Rational disk_index() const { return Rational(1) - Rational(cusps, 2); }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;
  std::vector<Region> regions;           // strict mode only
  bool ribbon_orientable = true;         // strict mode only
  int reduced_switches = 0;              // after removing bivalent switches
  int reduced_edges = 0;
  std::optional<int> puncture_slack;     // strict mode with surface
};

ValidationReport validate(const TrainTrack& track, bool strict);

/// Boundary components of the band complex, with cusp counts.
std::vector<Region> region_census(const TrainTrack& track);

/// Whether the band complex is an orientable surface.
bool ribbon_orientable(const TrainTrack& track);

/// Surface obtained by capping every boundary component of the band complex
/// with a disk, puncturing just enough to make each region allowed
/// (index < 0). Used to attach a surface to generated tracks.
SurfaceSig implied_surface(const TrainTrack& track);

// ---------------------------------------------------------------------------
// Carried loops.

enum class Sidedness { OneSided, TwoSided };
const char* to_string(Sidedness s);

struct Step {
  int edge = 0;
  bool forward = true;  // traverse end0 -> end1

  bool operator==(const Step&) const = default;
  auto operator<=>(const Step&) const = default;
};

struct LegalLoop {
  std::vector<Step> steps;
  std::vector<int> multiplicity;
  Sidedness sidedness = Sidedness::TwoSided;

  int vertex_visits() const { return static_cast<int>(steps.size()); }
};

bool is_legal(const TrainTrack& track, const std::vector<Step>& steps);

/// XOR over traversed edges of twist(e) XOR same_side(e). Throws
/// TrackError(Illegal) if the loop is not legal.
Sidedness sidedness_parity(const TrainTrack& track, const std::vector<Step>& steps);

/// Lexicographically least rotation over both traversal directions.
std::vector<Step> canonical_loop(const std::vector<Step>& steps);

/// All simple closed curves carried by the track whose multiplicity vector is
/// bounded by max_mult componentwise, in canonical order.
std::vector<LegalLoop> enumerate_loops(const TrainTrack& track, int max_mult);

/// Components of the multicurve with the given integer weights.
std::vector<LegalLoop> multicurve_components(const TrainTrack& track, const std::vector<int>& weights);

std::string format_loop(const TrainTrack& track, const std::vector<Step>& steps);

}  // namespace tracklab

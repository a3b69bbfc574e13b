#pragma once

#include <vector>

#include "tracklab/moves.hpp"
#include "tracklab/one_vertex.hpp"

namespace tracklab {

struct Certificate {
  int abs_chi = 0;
  Rational mw0;
  Rational mw1;
  Rational lw0;
  Rational lw1;
  int rounds = 0;
  int max_switches = 0;  // after smoothing bivalent switches, over all rounds
  int max_edges = 0;

  bool doubled() const { return mw1 >= 2 * mw0; }
  bool below_bound() const { return lw1 < lw0 + 1000 * abs_chi * mw0; }
  bool grew() const { return lw0 < lw1; }
  bool rounds_ok() const { return rounds <= 9 * abs_chi; }
  bool counts_ok() const { return max_switches <= 6 * abs_chi && max_edges <= 9 * abs_chi; }
  bool holds() const { return doubled() && below_bound() && rounds_ok(); }
};

struct ProcedureResult {
  Refinement refinement;
  RefinementTrace trace;
  Certificate certificate;
};

struct ProcedureOptions {
  /// Throw TrackError(Certificate) when a bound fails.
  bool enforce = true;
  /// Hard stop on comb rounds.
  int round_cap = 200;
};

/// Requires a surface on the base track.
ProcedureResult main_procedure(const Refinement& start, const ProcedureOptions& opts = {});
ProcedureResult main_procedure(const LambdaStructure& ls, const ProcedureOptions& opts = {});

struct UniformCertificate {
  int abs_chi = 0;
  Rational C;
  Rational L;
  Rational lw_in;
  Rational lw;
  Rational mw;
  int procedures = 0;
  std::vector<Certificate> steps;

  bool generic = false;
  int E = 0;
  Rational C_generic;           // 2^(E+1) C
  Rational lw_pre;              // before the genericity pass
  Rational mw_pre;
  int generic_steps = 0;
  bool valences_ok = true;

  Rational ratio() const { return lw / mw; }
  bool uniform_ok() const { return generic ? lw <= C_generic * mw : lw <= C * mw; }
  bool long_enough() const { return lw >= L; }
  bool generic_ok() const;
  bool holds() const;
};

struct UniformResult {
  Refinement refinement;
  RefinementTrace trace;
  UniformCertificate certificate;
};

/// Throws TrackError(Precondition) when C <= 1000|chi| or L < lambda-length of
/// the input.
UniformResult uniformize(const LambdaStructure& ls, const Rational& C, const Rational& L, bool generic,
                         const ProcedureOptions& opts = {});

/// Switches of valence above 3, except 4-valent switches at a loopy edge.
std::vector<int> bad_valences(const LambdaStructure& ls);

struct FirstReturn {
  SwitchboardTrack board;
  LambdaStructure lambda;
  /// Path in the input track of every edge of the board.
  std::vector<CarryPath> paths;
};

/// One-switch refinement from the first-return map to a transversal at the
/// middle of edge e. Throws TrackError(Precondition) when len*w is not maximal
/// at e, or when part of the weight never crosses the transversal.
FirstReturn first_return(const LambdaStructure& ls, int e);

}  // namespace tracklab

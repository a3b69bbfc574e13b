#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tracklab/lambda.hpp"
#include "tracklab/moves.hpp"
#include "tracklab/track.hpp"

namespace tracklab {

// Line format (.tt):
//   surface O|N <genus> <boundary>
//   switch <name>
//   edge <name> <sw>.<T|B>.<slot> <sw>.<T|B>.<slot> twist=<0|1> len=<rational>
//   weight <edge>=<rational>
//   turn <switch> <edge>.<end> <edge>.<end> mass=<rational>
//   loopy <edge> w=<int> mw=<rational> mw1=<rational>
// '#' starts a comment. Turn and loopy lines are checked against the values
// derived from the weights.

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Semantic };
  ParseError(Kind kind, int line, int col, const std::string& msg);
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  Kind kind_;
  int line_;
  int col_;
};

struct TrackFile {
  TrainTrack track;
  std::optional<WeightVector> weights;
  std::optional<LambdaStructure> lambda;
};

TrackFile parse_track(std::string_view text);
/// Prefixes diagnostics with the path.
TrackFile load_track(const std::string& path);

/// Canonical form: surface, switches, edges, then weights, turns and loopy data when present.
std::string format_track(const TrainTrack& track, const WeightVector* weights = nullptr);
std::string format_track(const LambdaStructure& ls);

std::string format_trace(const RefinementTrace& trace);

}  // namespace tracklab

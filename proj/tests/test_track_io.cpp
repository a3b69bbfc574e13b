#include <doctest.h>

#include <random>

#include "tracklab/corpus.hpp"
#include "tracklab/procedure.hpp"
#include "tracklab/track_io.hpp"

using namespace tracklab;

namespace {

ParseError::Kind kind_of(const char* text) {
  try {
    parse_track(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("parsed without error: " << text);
  return ParseError::Kind::Syntax;
}

int line_of(const char* text) {
  try {
    parse_track(text);
  } catch (const ParseError& e) {
    CHECK(e.col() >= 1);
    return e.line();
  }
  return 0;
}

const char* kMinimal =
    "switch v\n"
    "edge a v.T.0 v.B.1 twist=0 len=3/2\n"
    "edge b v.T.1 v.B.0 twist=1 len=2\n";

}  // namespace

TEST_CASE("minimal file") {
  const auto f = parse_track(kMinimal);
  CHECK(f.track.num_switches() == 1);
  CHECK(f.track.num_edges() == 2);
  CHECK_FALSE(f.track.surface.has_value());
  CHECK_FALSE(f.weights.has_value());
  CHECK_FALSE(f.lambda.has_value());
  CHECK(f.track.edges[0].length == Rational(3, 2));
  CHECK(f.track.edges[0].length.get_den() == 2);
  CHECK(f.track.edges[1].twist);
  CHECK(f.track.edges[0].ends[1] == EndRef{0, Side::B, 1});
}

TEST_CASE("comments, blank lines and the surface header") {
  const auto f = parse_track(
      "# header comment\n"
      "\n"
      "surface N 3 1   # trailing\n"
      "switch v\n"
      "edge a v.T.0 v.B.0 twist=0 len=6/4\n");
  REQUIRE(f.track.surface.has_value());
  CHECK_FALSE(f.track.surface->orientable);
  CHECK(f.track.surface->genus == 3);
  CHECK(f.track.surface->boundary == 1);
  CHECK(f.track.edges[0].length == Rational(3, 2));
}

TEST_CASE("syntax errors carry their position") {
  CHECK(kind_of("switch v\nedge a v.X.0 v.B.0 twist=0 len=1\n") == ParseError::Kind::Syntax);
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.0 twist=2 len=1\n") == ParseError::Kind::Syntax);
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.0 twist=0 len=x\n") == ParseError::Kind::Syntax);
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.0 twist=0\n") == ParseError::Kind::Syntax);
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.0 twist=0 len=1/0\n") == ParseError::Kind::Syntax);
  CHECK(kind_of("bogus\n") == ParseError::Kind::Syntax);
  CHECK(kind_of("surface Q 1 1\n") == ParseError::Kind::Syntax);
  CHECK(line_of("switch v\n\n# c\nedge a v.T.0 v.Q.0 twist=0 len=1\n") == 4);
  try {
    parse_track("switch v\nedge a v.T.0 v.B.0 twist=0 len=x\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("2:", 0) == 0);
  }
}

TEST_CASE("semantic errors") {
  // duplicate slot occupancy
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.0 twist=0 len=1\nedge b v.T.0 v.B.1 twist=0 len=1\n") ==
        ParseError::Kind::Semantic);
  // undeclared switch
  CHECK(kind_of("switch v\nedge a v.T.0 w.B.0 twist=0 len=1\n") == ParseError::Kind::Semantic);
  // slots must be dense
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.2 twist=0 len=1\n") == ParseError::Kind::Semantic);
  // duplicate names
  CHECK(kind_of("switch v\nswitch v\n") == ParseError::Kind::Semantic);
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.0 twist=0 len=1\nedge a v.T.1 v.B.1 twist=0 len=1\n") ==
        ParseError::Kind::Semantic);
  // lengths are positive
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.0 twist=0 len=0\n") == ParseError::Kind::Semantic);
  // weights name edges, once each, all of them
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.0 twist=0 len=1\nweight z=1\n") == ParseError::Kind::Semantic);
  CHECK(kind_of("switch v\nedge a v.T.0 v.B.0 twist=0 len=1\nweight a=1\nweight a=1\n") ==
        ParseError::Kind::Semantic);
  CHECK(kind_of(
            "switch v\nedge a v.T.0 v.B.1 twist=0 len=1\nedge b v.T.1 v.B.0 twist=0 len=1\nweight a=1\n") ==
        ParseError::Kind::Semantic);
  CHECK(line_of("switch v\nedge a v.T.0 v.B.0 twist=0 len=1\nedge b v.T.0 v.B.1 twist=0 len=1\n") == 3);
}

TEST_CASE("turn and loopy lines must match the weights") {
  const std::string base =
      "switch v\n"
      "edge c v.T.0 v.B.1 twist=0 len=1\n"
      "edge xy v.T.1 v.B.0 twist=0 len=1\n"
      "weight c=5\n"
      "weight xy=2\n";
  const auto ok = parse_track(base + "loopy c w=1 mw=1 mw1=1\n");
  REQUIRE(ok.lambda.has_value());
  CHECK(ok.lambda->kind(0) == EdgeKind::Loopy);
  CHECK(ok.lambda->lambda_length(0) == 3);

  CHECK_THROWS_AS(parse_track(base + "loopy c w=2 mw=1 mw1=1\n"), ParseError);
  CHECK_THROWS_AS(parse_track(base + "loopy xy w=0 mw=0 mw1=2\n"), ParseError);
  CHECK_THROWS_AS(parse_track(base + "turn v c.0 c.1 mass=4\n"), ParseError);
  CHECK(parse_track(base + "turn v c.0 c.1 mass=3\n").lambda.has_value());
  try {
    parse_track(base + "turn v c.0 c.1 mass=4\n");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::Semantic);
    CHECK(e.line() == 6);
  }
  // turn data without weights has nothing to check against
  CHECK_THROWS_AS(parse_track("switch v\nedge a v.T.0 v.B.0 twist=0 len=1\nturn v a.0 a.1 mass=1\n"), ParseError);
}

TEST_CASE("round trip on the corpus") {
  std::mt19937_64 rng(corpus_seed() + 21);
  int n = 0;
  for (auto t : base_tracks(2, 4, true)) {
    if (++n > 400) break;
    t.edges[0].length = Rational(3, 2);
    const std::string plain = format_track(t);
    const auto back = parse_track(plain);
    CHECK(format_track(back.track) == plain);
    CHECK(back.track.surface == t.surface);

    const auto w = generic_weights(t, rng);
    try {
      const LambdaStructure ls(t, w);
      const std::string text = format_track(ls);
      const auto again = parse_track(text);
      REQUIRE(again.lambda.has_value());
      CHECK(again.weights == w);
      CHECK(again.lambda->turns().size() == ls.turns().size());
      CHECK(again.lambda->lengths().total == ls.lengths().total);
      CHECK(format_track(*again.lambda) == text);
    } catch (const TrackError& e) {
      CHECK(e.kind() == TrackError::Kind::ClosedLeaf);
      const std::string text = format_track(t, &w);
      CHECK(parse_track(text).weights == w);
    }
  }
}

TEST_CASE("trace lines") {
  RefinementTrace trace;
  MoveRecord m;
  m.kind = MoveKind::Comb;
  m.target = "a.0";
  m.length_before = 3;
  m.length_after = Rational(9, 2);
  m.min_before = 1;
  m.min_after = 2;
  m.predicted_delta = Rational(3, 2);
  m.note = "x";
  trace.moves.push_back(m);
  const auto text = format_trace(trace);
  CHECK(text.find("kind=comb") != std::string::npos);
  CHECK(text.find("lw_after=9/2") != std::string::npos);
  CHECK(text.find("identity=1") != std::string::npos);
  CHECK(text.find("note=\"x\"") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
}

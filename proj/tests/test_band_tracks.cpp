#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tracklab/corpus.hpp"

using namespace tracklab;
using oracle::track;

namespace {

const char* kTwoEdges =
    "switch v\n"
    "edge a v.T.0 v.B.0 twist=0 len=1\n"
    "edge b v.T.1 v.B.1 twist=0 len=1\n";

const char* kTopBottom =
    "switch v\n"
    "edge a v.T.0 v.T.1 twist=0 len=1\n"
    "edge b v.B.0 v.B.1 twist=0 len=1\n";

std::vector<std::vector<int>> as_int(const std::vector<IntVector>& rays) {
  std::vector<std::vector<int>> out;
  for (const auto& r : rays) {
    std::vector<int> v;
    for (const auto& x : r) v.push_back(static_cast<int>(x.get_si()));
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("switch matrix") {
  CHECK(switch_matrix(track(kTwoEdges)) == std::vector<std::vector<int>>{{0, 0}});
  CHECK(switch_matrix(track(kTopBottom)) == std::vector<std::vector<int>>{{2, -2}});
  const auto theta = track(
      "switch s1\nswitch s2\n"
      "edge a s1.T.0 s2.B.0 twist=0 len=1\n"
      "edge b s1.B.0 s2.T.0 twist=0 len=1\n"
      "edge c s1.B.1 s2.T.1 twist=0 len=1\n");
  CHECK(switch_matrix(theta) == std::vector<std::vector<int>>{{1, -1, -1}, {-1, 1, 1}});
}

TEST_CASE("validation") {
  const auto t = track(kTwoEdges);
  CHECK(validate(t, false).ok);
  CHECK(valence(t, 0) == 4);

  SUBCASE("a lone annulus bounds disks without cusps") {
    const auto circle = track("switch v\nedge a v.T.0 v.B.0 twist=0 len=1\n");
    CHECK(validate(circle, false).ok);
    const auto rep = validate(circle, true);
    CHECK_FALSE(rep.ok);
    bool zero_cusp = false;
    for (const auto& r : rep.regions) zero_cusp = zero_cusp || r.cusps == 0;
    CHECK(zero_cusp);
  }

  SUBCASE("edge count above 9|chi|") {
    std::string text = "surface N 1 2\nswitch v\n";
    for (int i = 0; i < 10; ++i) {
      text += "edge e" + std::to_string(i) + " v.T." + std::to_string(i) + " v.B." + std::to_string(9 - i) +
              " twist=1 len=1\n";
    }
    const auto rep = validate(track(text.c_str()), true);
    CHECK_FALSE(rep.ok);
    bool mentions = false;
    for (const auto& i : rep.issues) mentions = mentions || i.find("edges") != std::string::npos;
    CHECK(mentions);
  }

  SUBCASE("malformed slots") {
    TrainTrack bad = t;
    bad.edges[1].ends[0].slot = 0;  // two ends in T.0
    CHECK_THROWS_AS(slot_rows(bad), TrackError);
    bad = t;
    bad.edges[1].ends[0].slot = 2;  // gap at T.1
    CHECK_THROWS_AS(slot_rows(bad), TrackError);
  }
}

TEST_CASE("region census accounts for the Euler characteristic") {
  int checked = 0;
  for (const auto& t : base_tracks(2, 4, true)) {
    const auto rep = validate(t, true);
    REQUIRE(rep.ok);
    // chi(S) = sum over regions of (1 - cusps/2) minus punctures, and
    // chi(band complex) = V - E; each region is a capped boundary.
    const int chi = euler_char(*t.surface);
    Rational idx = 0;
    for (const auto& r : rep.regions) idx += r.disk_index();
    CAPTURE(to_string(*t.surface));
    CHECK(Rational(t.num_switches() - t.num_edges()) + static_cast<int>(rep.regions.size()) -
              (rep.puncture_slack ? *rep.puncture_slack : 0) ==
          chi);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("cone rays") {
  CHECK(as_int(cone_rays(track(kTwoEdges))) == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(as_int(cone_rays(track(kTopBottom))) == std::vector<std::vector<int>>{{1, 1}});
}

TEST_CASE("cone rays agree with brute force on random small tracks") {
  std::mt19937_64 rng(corpus_seed());
  std::vector<TrainTrack> pool;
  for (int s = 1; s <= 2; ++s) {
    for (int e = 1; e <= 4; ++e) for_each_track(s, e, false, [&](const TrainTrack& t) { pool.push_back(t); });
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  for (int i = 0; i < 300; ++i) {
    const auto& t = pool[i];
    CAPTURE(format_track(t));
    const auto rays = as_int(cone_rays(t));
    for (const auto& r : rays) {
      for (int x : r) CHECK(x <= 5);
    }
    CHECK(rays == oracle::brute_rays(t));
  }
}

TEST_CASE("ray output is exact and irredundant") {
  for (int e = 1; e <= 4; ++e) {
    for_each_track(1, e, false, [&](const TrainTrack& t) {
      const auto rays = cone_rays(t);
      for (const auto& r : rays) {
        WeightVector w;
        for (const auto& x : r) w.push_back(Rational(x));
        CHECK(satisfies_switch_equations(t, w));
        for (const auto& x : r) CHECK(x >= 0);
      }
      // a ray inside the cone spanned by the others would have a support
      // containing another ray's support
      for (std::size_t i = 0; i < rays.size(); ++i) {
        for (std::size_t j = 0; j < rays.size(); ++j) {
          if (i == j) continue;
          bool sub = true;
          for (std::size_t k = 0; k < rays[i].size(); ++k) {
            if (rays[j][k] > 0 && rays[i][k] == 0) sub = false;
          }
          CHECK_FALSE(sub);
        }
      }
    });
  }
}

TEST_CASE("recurrence") {
  CHECK(is_recurrent(track(kTwoEdges)));
  // c is forced to zero: both ends on the top side with nothing to balance
  const auto forced = track(
      "switch v\n"
      "edge a v.T.0 v.B.0 twist=0 len=1\n"
      "edge b v.T.1 v.B.1 twist=0 len=1\n"
      "edge c v.T.2 v.T.3 twist=0 len=1\n");
  CHECK_FALSE(is_recurrent(forced));
  CHECK_FALSE(oracle::lp_recurrent(forced));
  // one-sided b-b band and t-b bands but no t-t band
  const auto no_tt = track(
      "switch v\n"
      "edge a v.T.0 v.B.0 twist=1 len=1\n"
      "edge z v.B.1 v.B.3 twist=0 len=1\n"
      "edge c v.T.1 v.B.2 twist=1 len=1\n");
  CHECK_FALSE(is_recurrent(no_tt));

  int n = 0;
  for (int s = 1; s <= 2; ++s) {
    for (int e = 1; e <= 4; ++e) {
      for_each_track(s, e, false, [&](const TrainTrack& t) {
        if (n++ % 7 == 0) CHECK(is_recurrent(t) == oracle::lp_recurrent(t));
      });
    }
  }
}

TEST_CASE("sidedness of single-band loops") {
  const auto tb0 = track("switch v\nedge a v.T.0 v.B.0 twist=0 len=1\n");
  const auto tb1 = track("switch v\nedge a v.T.0 v.B.0 twist=1 len=1\n");
  CHECK(sidedness_parity(tb0, {{0, true}}) == Sidedness::TwoSided);
  CHECK(sidedness_parity(tb1, {{0, true}}) == Sidedness::OneSided);
  // t-t band a closed through b-b band b: parity adds up over both
  const auto tt = track(kTopBottom);
  CHECK(sidedness_parity(tt, {{0, true}, {1, true}}) == Sidedness::TwoSided);
  CHECK_THROWS_AS(sidedness_parity(tt, {{0, true}}), TrackError);
}

TEST_CASE("loop enumeration") {
  SUBCASE("single circle") {
    const auto loops = enumerate_loops(track("switch v\nedge a v.T.0 v.B.0 twist=0 len=1\n"), 3);
    CHECK(loops.size() == 1);
  }
  SUBCASE("two parallel bands") {
    const auto loops = enumerate_loops(track(kTwoEdges), 1);
    CHECK(loops.size() == 2);
  }
  SUBCASE("crossing bands carry a two-sided curve through both") {
    const auto t = track(
        "switch v\n"
        "edge a v.T.0 v.B.1 twist=1 len=1\n"
        "edge b v.T.1 v.B.0 twist=1 len=1\n");
    bool found = false;
    for (const auto& l : enumerate_loops(t, 2)) {
      if (l.sidedness == Sidedness::TwoSided && l.multiplicity[0] > 0 && l.multiplicity[1] > 0) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("loops give cone vectors and their sidedness is rotation invariant") {
  std::mt19937_64 rng(corpus_seed() + 1);
  const auto tracks = one_vertex_tracks(3);
  for (int i = 0; i < 200; ++i) {
    const auto& t = tracks[rng() % tracks.size()];
    for (const auto& l : enumerate_loops(t, 2)) {
      WeightVector w;
      for (int m : l.multiplicity) w.push_back(m);
      CHECK(satisfies_switch_equations(t, w));
      auto steps = l.steps;
      std::rotate(steps.begin(), steps.begin() + 1, steps.end());
      CHECK(sidedness_parity(t, steps) == l.sidedness);
      std::reverse(steps.begin(), steps.end());
      for (auto& s : steps) s.forward = !s.forward;
      CHECK(sidedness_parity(t, steps) == l.sidedness);
      CHECK(canonical_loop(steps) == l.steps);
    }
  }
}

TEST_CASE("projection to a sub-cone") {
  const auto t = track(kTwoEdges);
  SUBCASE("already supported on heavy edges") {
    const WeightVector w{Rational(1, 2), Rational(1, 2)};
    const auto p = restrict_renormalize(t, w, Rational(1, 10));
    CHECK(p.weights == w);
    CHECK(p.deviation == 0);
  }
  SUBCASE("light second ray is dropped") {
    const auto p = restrict_renormalize(t, {Rational(9, 10), Rational(1, 10)}, Rational(1, 5));
    CHECK(p.weights == WeightVector{1, 0});
    CHECK(p.deviation == Rational(1, 10));
  }
  SUBCASE("everything light") {
    CHECK_THROWS_AS(restrict_renormalize(t, {Rational(1, 2), Rational(1, 2)}, 1), TrackError);
  }
}

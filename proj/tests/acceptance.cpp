// One PASS/FAIL line per acceptance criterion. Exit status is 0 unless the
// run itself breaks; --strict also fails on any FAIL line.

#include <chrono>
#include <cstring>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tracklab/corpus.hpp"
#include "tracklab/exceptional.hpp"
#include "tracklab/one_vertex.hpp"
#include "tracklab/procedure.hpp"
#include "tracklab/surface.hpp"

using namespace tracklab;

namespace {

struct Line {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(int id, const std::string& name, bool pass, const std::string& detail, double secs) {
  std::ostringstream d;
  d << detail << " time=" << static_cast<int>(secs * 10) / 10.0 << "s";
  lines.push_back({id, name, pass, d.str()});
  std::cout << (pass ? "PASS" : "FAIL") << "  " << id << "  " << name << "  " << d.str() << std::endl;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Rational kLengths[5] = {1, Rational(3, 2), 2, 3, 5};

// One seeded length tuple and generic weights per track.
std::vector<LambdaStructure> structures(const std::vector<TrainTrack>& tracks, std::uint64_t salt, int& closed) {
  std::mt19937_64 rng(corpus_seed() + salt);
  std::vector<LambdaStructure> out;
  closed = 0;
  for (auto t : tracks) {
    for (auto& e : t.edges) e.length = kLengths[rng() % 5];
    try {
      out.emplace_back(t, generic_weights(t, rng));
    } catch (const TrackError& err) {
      if (err.kind() != TrackError::Kind::ClosedLeaf) throw;
      ++closed;
    }
  }
  return out;
}

struct MoveTally {
  long moves = 0;
  long fail = 0;
  long fail_loopy = 0;
};

struct ProcedureSweep {
  long tracks = 0;
  long runs = 0;
  long closed = 0;
  long doubled = 0, below = 0, rounds = 0;
  long conserved_fail = 0;
  std::map<std::string, MoveTally> tally;
};

ProcedureSweep sweep_main_procedure() {
  ProcedureSweep s;
  const auto tracks = base_tracks(2, 5, true);
  s.tracks = static_cast<long>(tracks.size());
  std::mt19937_64 rng(corpus_seed());
  ProcedureOptions o;
  o.enforce = false;
  for (auto t : tracks) {
    for (auto& e : t.edges) e.length = kLengths[rng() % 5];
    const auto w = generic_weights(t, rng);
    std::optional<ProcedureResult> r;
    try {
      r.emplace(main_procedure(LambdaStructure(t, w), o));
    } catch (const TrackError& err) {
      if (err.kind() != TrackError::Kind::ClosedLeaf) throw;
      ++s.closed;
      continue;
    }
    ++s.runs;
    const auto& c = r->certificate;
    s.doubled += !c.doubled();
    s.below += !c.below_bound();
    s.rounds += !c.rounds_ok();
    const auto& cur = r->refinement.current;
    if (!(cur.check() && satisfies_switch_equations(cur.track(), cur.weights()) && pushforward_matches(r->refinement))) {
      ++s.conserved_fail;
    }
    for (const auto& m : r->trace.moves) {
      auto& k = s.tally[to_string(m.kind)];
      ++k.moves;
      if (!m.identity_holds) {
        ++k.fail;
        k.fail_loopy += m.loopy_involved;
      }
    }
  }
  return s;
}

void criterion1(const ProcedureSweep& s, double secs) {
  std::ostringstream d;
  d << "tracks=" << s.tracks << " runs=" << s.runs << " closed_leaf=" << s.closed << " doubled_fail=" << s.doubled
    << " bound_fail=" << s.below << " rounds_fail=" << s.rounds;
  report(1, "main-procedure-certificate", s.doubled == 0 && s.below == 0 && s.rounds == 0, d.str(), secs);
}

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  int closed_input = 0;
  const auto corpus = structures(base_tracks(2, 4, true), 2, closed_input);
  ProcedureOptions o;
  o.enforce = false;
  long runs = 0, closed = 0, ratio_fail = 0, long_fail = 0;
  long gruns = 0, gclosed = 0, gratio_fail = 0, valence_fail = 0;
  for (const auto& ls : corpus) {
    const int chi = -euler_char(*ls.track().surface);
    const Rational C = 1000 * chi + 1;
    const Rational L = 10 * ls.lengths().total;
    try {
      const auto r = uniformize(ls, C, L, false, o);
      ++runs;
      const auto l = r.refinement.current.lengths();
      ratio_fail += !(l.total <= C * l.minimum);
      long_fail += !(l.total >= L);
    } catch (const TrackError& e) {
      if (e.kind() != TrackError::Kind::ClosedLeaf) throw;
      ++closed;
    }
    try {
      const auto g = uniformize(ls, C, L, true, o);
      ++gruns;
      const auto l = g.refinement.current.lengths();
      const Integer scale = Integer(1) << (18 * chi + 1);
      gratio_fail += !(l.total <= Rational(scale) * C * l.minimum);
      valence_fail += !bad_valences(g.refinement.current).empty();
    } catch (const TrackError& e) {
      if (e.kind() != TrackError::Kind::ClosedLeaf) throw;
      ++gclosed;
    }
  }
  std::ostringstream d;
  d << "inputs=" << corpus.size() << " runs=" << runs << " closed_leaf=" << closed << " ratio_fail=" << ratio_fail
    << " length_fail=" << long_fail << " generic_runs=" << gruns << " generic_closed_leaf=" << gclosed
    << " generic_ratio_fail=" << gratio_fail << " valence_fail=" << valence_fail;
  const bool pass = runs > 0 && gruns > 0 && ratio_fail == 0 && long_fail == 0 && gratio_fail == 0 && valence_fail == 0;
  report(2, "uniformize-certificate", pass, d.str(), since(t0));
}

void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  long tracks = 0, agree = 0, passing = 0, two_sided_loops = 0;
  for (const auto& t : one_vertex_tracks(4)) {
    if (!is_recurrent(t)) continue;
    ++tracks;
    const SwitchboardTrack b(t);
    const bool conditions = check_conditions(b).all_pass();
    bool found = false;
    for (const auto& l : enumerate_loops(t, 2)) found = found || l.sidedness == Sidedness::TwoSided;
    agree += conditions == !found;
    if (conditions) {
      ++passing;
      for (const auto& l : enumerate_loops(t, 2)) {
        if (l.vertex_visits() <= 2 && l.sidedness != Sidedness::OneSided) ++two_sided_loops;
      }
    }
  }
  std::ostringstream d;
  d << "tracks=" << tracks << " agree=" << agree << " conditions_pass=" << passing
    << " two_sided_loops_on_passing=" << two_sided_loops;
  report(3, "one-vertex-equivalence", tracks > 0 && agree == tracks && two_sided_loops == 0, d.str(), since(t0));
}

void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* text;
    Sidedness want;
  };
  const Case cases[4] = {
      {"switch v\nedge a v.T.0 v.B.0 twist=0 len=1\n", Sidedness::TwoSided},
      {"switch v\nedge a v.T.0 v.B.0 twist=1 len=1\n", Sidedness::OneSided},
      {"switch v\nedge a v.T.0 v.T.1 twist=0 len=1\nedge z v.B.0 v.B.1 twist=0 len=1\n", Sidedness::OneSided},
      {"switch v\nedge a v.T.0 v.T.1 twist=1 len=1\nedge z v.B.0 v.B.1 twist=0 len=1\n", Sidedness::TwoSided},
  };
  int ok = 0;
  for (const auto& c : cases) {
    const SwitchboardTrack b(oracle::track(c.text));
    ok += b.edge_sidedness(0) == c.want;
  }
  report(4, "sidedness-convention", ok == 4, std::to_string(ok) + "/4", since(t0));
}

void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  long tracks = 0, match = 0;
  for (int s = 1; s <= 3; ++s) {
    for (int e = 1; e <= 4; ++e) {
      for_each_track(s, e, false, [&](const TrainTrack& t) {
        ++tracks;
        std::vector<std::vector<int>> rays;
        for (const auto& r : cone_rays(t)) {
          std::vector<int> v;
          for (const auto& x : r) v.push_back(static_cast<int>(x.get_si()));
          rays.push_back(v);
        }
        std::sort(rays.begin(), rays.end());
        match += rays == oracle::brute_rays(t);
      });
    }
  }
  std::ostringstream d;
  d << "tracks=" << tracks << " match=" << match;
  report(5, "cone-rays", tracks > 0 && match == tracks, d.str(), since(t0));
}

void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(corpus_seed() + 6);
  auto rnd = [&](int hi) {
    Rational q(static_cast<long>(rng() % (hi + 1)), static_cast<long>(1 + rng() % 4));
    q.canonicalize();
    return q;
  };
  const long long k = 1000000;
  const Rational kk(static_cast<long>(k));
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    TwistSpec s;
    const int r = 1 + static_cast<int>(rng() % 3);
    std::vector<Rational> row;
    for (int i = 0; i < r; ++i) {
      s.components.push_back({"g" + std::to_string(i), static_cast<long long>(rng() % 21) - 10, rnd(8), rnd(8)});
      row.push_back(s.components.back().i_gamma_beta);
    }
    s.i_alpha_beta = rnd(8);
    const Rational limit = twist_limit(s, {"beta"}, {row}).at("beta");
    const auto b = ivanov_bounds(s.scaled(k));
    const Interval scaled{b.lo / kk, b.hi / kk};
    const Rational width = ivanov_width_bound(s) / kk;
    ok += scaled.contains(limit) && limit - scaled.lo <= width && scaled.hi - limit <= width;
  }
  report(6, "twist-limit-consistency", ok == 100, std::to_string(ok) + "/100 at k=10^6", since(t0));
}

void criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  const SurfaceSig n30{false, 3, 0}, n12{false, 1, 2};
  const int c = max_multicurve(n30), cp = max_two_sided_multicurve(n30), cp12 = max_two_sided_multicurve(n12);
  const auto m = n12_orbits();
  std::ostringstream d;
  d << "c(N,3,0)=" << c << " c+(N,3,0)=" << cp << " c+(N,1,2)=" << cp12 << " pml(N,1,2)=" << m.pml.size()
    << " model_two_sided=" << m.two_sided_curves;
  report(7, "formula-spot-checks", c == 3 && cp == 1 && cp12 == 0 && m.pml.size() == 2 && m.two_sided_curves == 0,
         d.str(), since(t0));
}

// Every single move on every structure of the small corpus, plus the moves
// recorded by the Main Procedure sweep.
void criterion8(const ProcedureSweep& s, double sweep_secs) {
  const auto t0 = std::chrono::steady_clock::now();
  int closed_input = 0;
  const auto corpus = structures(base_tracks(2, 4, true), 8, closed_input);
  long moves = 0, conservation_fail = 0;
  std::map<std::string, MoveTally> tally = s.tally;
  auto account = [&](const Refinement& out, const RefinementTrace& trace) {
    ++moves;
    const auto& cur = out.current;
    const bool ok = cur.check() && satisfies_switch_equations(cur.track(), cur.weights()) && carrying_consistent(out) &&
                    pushforward_matches(out) && validate(cur.track(), false).ok;
    conservation_fail += !ok;
    for (const auto& m : trace.moves) {
      auto& k = tally[to_string(m.kind)];
      ++k.moves;
      if (!m.identity_holds) {
        ++k.fail;
        k.fail_loopy += m.loopy_involved;
      }
    }
  };
  for (const auto& ls : corpus) {
    const Refinement r(ls);
    const auto& t = ls.track();
    const auto rows = slot_rows(t);
    auto attempt = [&](auto&& move) {
      RefinementTrace trace;
      try {
        const Refinement out = move(trace);
        account(out, trace);
      } catch (const TrackError& err) {
        if (err.kind() != TrackError::Kind::ClosedLeaf && err.kind() != TrackError::Kind::Precondition) throw;
      }
    };
    for (int v = 0; v < t.num_switches(); ++v) {
      for (int side = 0; side < 2; ++side) {
        for (int slot = 0; slot + 1 < static_cast<int>(rows[v][side].size()); ++slot) {
          attempt([&](RefinementTrace& tr) { return split_cusp(r, v, static_cast<Side>(side), slot, tr); });
        }
      }
    }
    for (int e = 0; e < t.num_edges(); ++e) {
      switch (ls.kind(e)) {
        case EdgeKind::NonLoopy:
          for (int end : {0, 1}) attempt([&](RefinementTrace& tr) { return comb(r, HalfEdge{e, end}, tr); });
          attempt([&](RefinementTrace& tr) {
            const Rational half = t.edges[e].length / 2;
            auto sub = subdivide(r, e, {half, half}, tr);
            return smooth_all(sub, tr);
          });
          break;
        case EdgeKind::FakeLoopy:
          attempt([&](RefinementTrace& tr) { return unmask(r, e, tr); });
          break;
        case EdgeKind::Loopy:
          attempt([&](RefinementTrace& tr) { return unloop(r, e, tr); });
          break;
      }
    }
  }
  long total = 0, fail = 0, fail_loopy = 0;
  std::ostringstream d;
  d << "single_moves=" << moves << " conservation_fail=" << conservation_fail + s.conserved_fail;
  for (const auto& [kind, k] : tally) {
    total += k.moves;
    fail += k.fail;
    fail_loopy += k.fail_loopy;
    d << " " << kind << "=" << k.fail << "/" << k.moves;
  }
  d << " identity_fail=" << fail << "/" << total << " of_which_loopy=" << fail_loopy;
  report(8, "conservation-and-accounting", conservation_fail + s.conserved_fail == 0 && fail == 0, d.str(),
         since(t0) + sweep_secs);
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  for (int i = 1; i < argc; ++i) strict = strict || std::strcmp(argv[i], "--strict") == 0;
  std::cout << "seed=" << corpus_seed() << std::endl;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const auto sweep = sweep_main_procedure();
    const double secs = since(t0);
    criterion1(sweep, secs);
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8(sweep, secs);
  } catch (const std::exception& e) {
    std::cout << "ERROR  " << e.what() << std::endl;
    return 2;
  }
  int failed = 0;
  for (const auto& l : lines) failed += !l.pass;
  std::cout << "summary: " << lines.size() - failed << "/" << lines.size() << " pass" << std::endl;
  return strict && failed ? 1 : 0;
}

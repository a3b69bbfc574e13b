#include "tracklab/procedure.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace tracklab {

namespace {

int abs_chi_of(const TrainTrack& t) {
  if (!t.surface) throw TrackError(TrackError::Kind::Precondition, "track has no surface attached");
  const int chi = euler_char(*t.surface);
  if (chi >= 0) throw TrackError(TrackError::Kind::Precondition, "surface is not hyperbolic");
  return -chi;
}

void append(RefinementTrace& into, const RefinementTrace& from) {
  into.moves.insert(into.moves.end(), from.moves.begin(), from.moves.end());
}

// Pieces of length 2m, the last one in [2m, 4m).
std::vector<Rational> subdivision(const Rational& len, const Rational& m) {
  const Rational ratio = len / (2 * m);
  const long n = Integer(ratio.get_num() / ratio.get_den()).get_si();
  std::vector<Rational> out(static_cast<std::size_t>(n - 1), 2 * m);
  out.push_back(len - Rational(n - 1) * 2 * m);
  return out;
}

// One pass of the preparatory step; returns false when nothing applies.
bool prepare_once(Refinement& cur, const Rational& m0, RefinementTrace& trace) {
  const auto& ls = cur.current;
  const int ne = ls.track().num_edges();
  for (int e = 0; e < ne; ++e) {
    if (ls.kind(e) == EdgeKind::NonLoopy && ls.track().edges[e].length > 4 * m0) {
      cur = subdivide(cur, e, subdivision(ls.track().edges[e].length, m0), trace);
      return true;
    }
  }
  for (int e = 0; e < ne; ++e) {
    if (ls.kind(e) == EdgeKind::FakeLoopy) {
      cur = unmask(cur, e, trace);
      return true;
    }
  }
  for (int e = 0; e < ne; ++e) {
    if (ls.kind(e) == EdgeKind::Loopy && ls.lambda_length(e) <= 4 * m0) {
      cur = unloop(cur, e, trace);
      return true;
    }
  }
  return false;
}

}  // namespace

ProcedureResult main_procedure(const Refinement& start, const ProcedureOptions& opts) {
  ProcedureResult res{start, {}, {}};
  Certificate& cert = res.certificate;
  cert.abs_chi = abs_chi_of(start.base);
  const auto l0 = start.current.lengths();
  cert.mw0 = l0.minimum;
  cert.lw0 = l0.total;
  const Rational& m0 = cert.mw0;
  Refinement& cur = res.refinement;
  const int prep_cap = 10000;
  while (cur.current.lengths().minimum < 2 * m0) {
    if (cert.rounds >= opts.round_cap) {
      throw TrackError(TrackError::Kind::Certificate, "main procedure exceeded its round cap");
    }
    int passes = 0;
    while (prepare_once(cur, m0, res.trace)) {
      if (++passes > prep_cap) throw TrackError(TrackError::Kind::Certificate, "preparatory pass does not settle");
    }
    const auto l = cur.current.lengths();
    int e0 = 0;
    while (l.per_edge[e0] != l.minimum) ++e0;
    if (cur.current.kind(e0) != EdgeKind::NonLoopy) {
      throw TrackError(TrackError::Kind::Certificate, "shortest edge is loopy after the preparatory pass");
    }
    const auto& ends = cur.current.track().edges[e0].ends;
    const int end = ends[1].slot < ends[0].slot ? 1 : 0;
    cur = comb(cur, HalfEdge{e0, end}, res.trace);
    cur = smooth_all(cur, res.trace);
    ++cert.rounds;
    cert.max_switches = std::max(cert.max_switches, cur.current.track().num_switches());
    cert.max_edges = std::max(cert.max_edges, cur.current.track().num_edges());
  }
  const auto l1 = cur.current.lengths();
  cert.mw1 = l1.minimum;
  cert.lw1 = l1.total;
  if (opts.enforce && !(cert.doubled() && cert.below_bound() && cert.rounds_ok())) {
    throw TrackError(TrackError::Kind::Certificate,
                     "main procedure certificate fails: mw0=" + to_string(cert.mw0) + " mw1=" + to_string(cert.mw1) +
                         " lw0=" + to_string(cert.lw0) + " lw1=" + to_string(cert.lw1) +
                         " rounds=" + std::to_string(cert.rounds));
  }
  return res;
}

ProcedureResult main_procedure(const LambdaStructure& ls, const ProcedureOptions& opts) {
  return main_procedure(Refinement(ls), opts);
}

std::vector<int> bad_valences(const LambdaStructure& ls) {
  const auto& t = ls.track();
  std::vector<bool> at_loopy(t.num_switches(), false);
  for (const auto& l : ls.loopy()) at_loopy[t.edges[l.edge].ends[0].sw] = true;
  std::vector<int> out;
  for (int s = 0; s < t.num_switches(); ++s) {
    const int v = valence(t, s);
    if (v > 3 && !(v == 4 && at_loopy[s])) out.push_back(s);
  }
  return out;
}

namespace {

std::vector<int> valence_key(const LambdaStructure& ls) {
  std::vector<int> key;
  for (int s : bad_valences(ls)) key.push_back(valence(ls.track(), s));
  std::sort(key.begin(), key.end(), std::greater<>());
  return key;
}

Rational pow2(int k) {
  Integer p = 1;
  p <<= k;
  return Rational(p);
}

}  // namespace

bool UniformCertificate::generic_ok() const {
  return valences_ok && mw >= mw_pre / pow2(E) && lw < 2 * lw_pre && generic_steps <= E;
}

bool UniformCertificate::holds() const {
  for (const auto& s : steps) {
    if (!(s.doubled() && s.below_bound() && s.rounds_ok())) return false;
  }
  return uniform_ok() && long_enough() && (!generic || generic_ok());
}

UniformResult uniformize(const LambdaStructure& ls, const Rational& C, const Rational& L, bool generic,
                         const ProcedureOptions& opts) {
  const int chi = abs_chi_of(ls.track());
  if (C <= 1000 * chi) throw TrackError(TrackError::Kind::Precondition, "C must exceed 1000|chi|");
  const auto l_in = ls.lengths();
  if (L < l_in.total) throw TrackError(TrackError::Kind::Precondition, "L is below the lambda-length of the input");
  UniformResult res{Refinement(ls), {}, {}};
  UniformCertificate& cert = res.certificate;
  cert.abs_chi = chi;
  cert.C = C;
  cert.L = L;
  cert.lw_in = l_in.total;
  const int cap = 64;
  auto done = [&] {
    const auto l = res.refinement.current.lengths();
    return l.total <= C * l.minimum && l.total >= L;
  };
  while (!done()) {
    if (cert.procedures >= cap) throw TrackError(TrackError::Kind::Certificate, "uniformization does not converge");
    auto step = main_procedure(res.refinement, opts);
    append(res.trace, step.trace);
    cert.steps.push_back(step.certificate);
    res.refinement = std::move(step.refinement);
    ++cert.procedures;
  }
  {
    const auto l = res.refinement.current.lengths();
    cert.lw_pre = l.total;
    cert.mw_pre = l.minimum;
  }
  if (generic) {
    cert.generic = true;
    cert.E = 18 * chi;
    cert.C_generic = pow2(cert.E + 1) * C;
    Refinement& cur = res.refinement;
    while (true) {
      auto key = valence_key(cur.current);
      if (key.empty()) break;
      if (cert.generic_steps >= 4 * cert.E) {
        throw TrackError(TrackError::Kind::Certificate, "genericity pass does not terminate");
      }
      const auto bad = bad_valences(cur.current);
      int v = bad[0];
      for (int s : bad) {
        if (valence(cur.current.track(), s) > valence(cur.current.track(), v)) v = s;
      }
      std::optional<std::pair<std::vector<int>, std::pair<Refinement, RefinementTrace>>> best;
      const auto rows = slot_rows(cur.current.track());
      for (int side = 0; side < 2; ++side) {
        const int n = static_cast<int>(rows[v][side].size());
        for (int slot = 0; slot + 1 < n; ++slot) {
          try {
            RefinementTrace t2;
            Refinement cand = cur;
            std::vector<int> incident;
            for (const auto& row : rows[v]) {
              for (const auto& h : row) incident.push_back(h.edge);
            }
            std::sort(incident.begin(), incident.end());
            incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
            for (int e : incident) {
              if (cand.current.kind(e) == EdgeKind::Loopy) continue;
              const Rational half = cand.current.track().edges[e].length / 2;
              cand = subdivide(cand, e, {half, half}, t2);
            }
            cand = split_cusp(cand, v, static_cast<Side>(side), slot, t2);
            t2.moves.back().kind = MoveKind::GenericSplit;
            cand = smooth_all(cand, t2);
            auto k2 = valence_key(cand.current);
            if (k2 < key && (!best || k2 < best->first)) best.emplace(k2, std::make_pair(cand, t2));
          } catch (const TrackError& err) {
            if (err.kind() != TrackError::Kind::Precondition) throw;
          }
        }
      }
      if (!best) {
        // Every cusp at v sits over a loopy edge there.
        int loop = -1;
        for (const auto& l : cur.current.loopy()) {
          if (cur.current.track().edges[l.edge].ends[0].sw == v) loop = l.edge;
        }
        if (loop < 0) throw TrackError(TrackError::Kind::Certificate, "no cusp split lowers the valences");
        cur = unloop(cur, loop, res.trace);
        cur = smooth_all(cur, res.trace);
        ++cert.generic_steps;
        continue;
      }
      cur = std::move(best->second.first);
      append(res.trace, best->second.second);
      ++cert.generic_steps;
    }
    cert.valences_ok = bad_valences(cur.current).empty();
  }
  const auto l = res.refinement.current.lengths();
  cert.lw = l.total;
  cert.mw = l.minimum;
  if (opts.enforce && !cert.holds()) {
    throw TrackError(TrackError::Kind::Certificate, "uniformization certificate fails");
  }
  return res;
}

// ---------------------------------------------------------------------------

FirstReturn first_return(const LambdaStructure& ls, int e) {
  const auto& t = ls.track();
  const auto& w = ls.weights();
  if (e < 0 || e >= t.num_edges()) throw TrackError(TrackError::Kind::Precondition, "no such edge");
  for (int f = 0; f < t.num_edges(); ++f) {
    if (t.edges[f].length * w[f] > t.edges[e].length * w[e]) {
      throw TrackError(TrackError::Kind::Precondition, "transversal edge must maximise len*w");
    }
  }
  if (t.num_switches() == 1) {
    std::vector<CarryPath> paths;
    for (int f = 0; f < t.num_edges(); ++f) paths.push_back({Segment{f, 0, t.edges[f].length}});
    return FirstReturn{SwitchboardTrack(t), ls, paths};
  }
  const auto& pos = ls.positions();
  const auto rows = slot_rows(t);
  const Rational W = w[e];
  const Rational half = t.edges[e].length / 2;

  // A family of parallel strands: it has just left edge `edge` through end
  // `end`, occupying [a, b] measured from the left of that plug. `flip`
  // records whether this reverses the order of its starting interval.
  struct Family {
    int edge;
    int end;
    Rational a, b;
    bool flip;
    Side start_side;
    Rational s0, s1;
    CarryPath path;
  };
  struct Arc {
    Side from;
    Rational f0, f1;
    Side to;
    Rational t0, t1;
    bool flip;
    CarryPath path;
  };
  std::vector<Family> work;
  const bool tw = t.edges[e].twist;
  // Leaving through the top goes towards end 1, through the bottom towards end 0.
  work.push_back(Family{e, 1, 0, W, tw, Side::T, 0, W, {Segment{e, half, t.edges[e].length}}});
  work.push_back(Family{e, 0, 0, W, false, Side::B, 0, W, {Segment{e, half, 0}}});
  std::vector<Arc> arcs;
  long guard = 0;
  while (!work.empty()) {
    if (++guard > 5000000) throw TrackError(TrackError::Kind::Invalid, "first return does not close up");
    Family f = std::move(work.back());
    work.pop_back();
    const EndRef& r = t.edges[f.edge].ends[f.end];
    const Rational x0 = pos[f.edge][f.end][0] + f.a, x1 = pos[f.edge][f.end][0] + f.b;
    for (const auto& h : rows[r.sw][static_cast<int>(opposite(r.side))]) {
      const Rational lo = std::max(x0, pos[h.edge][h.end][0]);
      const Rational hi = std::min(x1, pos[h.edge][h.end][1]);
      if (hi <= lo) continue;
      // Start-interval coordinates of this piece.
      Rational s0, s1;
      if (!f.flip) {
        s0 = f.s0 + (lo - x0);
        s1 = f.s0 + (hi - x0);
      } else {
        s0 = f.s0 + (x1 - hi);
        s1 = f.s0 + (x1 - lo);
      }
      Rational a = lo - pos[h.edge][h.end][0], b = hi - pos[h.edge][h.end][0];
      const Edge& g = t.edges[h.edge];
      CarryPath path = f.path;
      if (h.edge == e) {
        // Reaches the transversal; convert to end-0 coordinates of e.
        Side to = h.end == 0 ? Side::B : Side::T;
        bool flip = f.flip;
        Rational c0 = a, c1 = b;
        if (h.end == 1 && tw) {
          c0 = W - b;
          c1 = W - a;
          flip = !flip;
        }
        path.push_back(h.end == 0 ? Segment{e, 0, half} : Segment{e, g.length, half});
        arcs.push_back(Arc{f.start_side, s0, s1, to, c0, c1, flip, path});
        continue;
      }
      const int out = 1 - h.end;
      bool flip = f.flip;
      if (g.twist) {
        const Rational wd = w[h.edge];
        std::tie(a, b) = std::make_pair(Rational(wd - b), Rational(wd - a));
        flip = !flip;
      }
      path.push_back(h.end == 0 ? Segment{h.edge, 0, g.length} : Segment{h.edge, g.length, 0});
      work.push_back(Family{h.edge, out, a, b, flip, f.start_side, s0, s1, path});
    }
  }
  // Every arc is seen from both ends except top-to-bottom arcs, which are
  // only followed from the top.
  std::vector<Arc> kept;
  for (auto& a : arcs) {
    if (a.from == Side::B && a.to == Side::T) continue;
    if (a.from == a.to && a.t0 < a.f0) continue;
    kept.push_back(std::move(a));
  }
  std::sort(kept.begin(), kept.end(), [](const Arc& x, const Arc& y) {
    if (x.from != y.from) return x.from < y.from;
    return x.f0 < y.f0;
  });
  TrainTrack board;
  board.switches.push_back(Switch{"x"});
  board.surface = t.surface;
  WeightVector bw;
  std::vector<CarryPath> paths;
  std::map<std::pair<int, Rational>, HalfEdge> plugs;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const Arc& a = kept[i];
    Edge edge;
    edge.name = "r" + std::to_string(i);
    edge.twist = a.flip;
    edge.length = path_length(a.path);
    const int idx = static_cast<int>(board.edges.size());
    board.edges.push_back(edge);
    bw.push_back(a.f1 - a.f0);
    paths.push_back(a.path);
    plugs[{static_cast<int>(a.from), a.f0}] = HalfEdge{idx, 0};
    plugs[{static_cast<int>(a.to), a.t0}] = HalfEdge{idx, 1};
  }
  std::array<int, 2> next{0, 0};
  for (const auto& [key, h] : plugs) {
    board.edges[h.edge].ends[h.end] = EndRef{0, static_cast<Side>(key.first), next[key.first]++};
  }
  // Every strand of the input must be accounted for.
  std::vector<std::map<Rational, Rational>> delta(t.num_edges());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (const auto& s : paths[i]) {
      delta[s.edge][std::min(s.from, s.to)] += bw[i];
      delta[s.edge][std::max(s.from, s.to)] -= bw[i];
    }
  }
  for (int f = 0; f < t.num_edges(); ++f) {
    if (delta[f].empty() || delta[f].begin()->first != 0) {
      throw TrackError(TrackError::Kind::Precondition, "part of the lamination misses the transversal");
    }
    Rational run = 0;
    for (const auto& [x, d] : delta[f]) {
      run += d;
      if (x < t.edges[f].length && run != w[f]) {
        throw TrackError(TrackError::Kind::Precondition, "part of the lamination misses the transversal");
      }
    }
  }
  LambdaStructure lam(board, bw);
  return FirstReturn{SwitchboardTrack(board), lam, paths};
}

}  // namespace tracklab

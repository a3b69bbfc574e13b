#include "tracklab/moves.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace tracklab {

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Subdivide: return "subdivide";
    case MoveKind::Smooth: return "smooth";
    case MoveKind::SplitCusp: return "split";
    case MoveKind::Comb: return "comb";
    case MoveKind::Unmask: return "unmask";
    case MoveKind::Unloop: return "unloop";
    case MoveKind::GenericSplit: return "generic-split";
  }
  return "?";
}

Rational path_length(const CarryPath& p) {
  Rational s = 0;
  for (const auto& seg : p) s += abs(seg.to - seg.from);
  return s;
}

CarryPath reversed(const CarryPath& p) {
  CarryPath out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(Segment{it->edge, it->to, it->from});
  return out;
}

namespace {

void append(CarryPath& p, const Segment& s) {
  if (s.from == s.to) return;
  if (!p.empty()) {
    Segment& b = p.back();
    const bool same_dir = (b.to > b.from) == (s.to > s.from);
    if (b.edge == s.edge && b.to == s.from && same_dir) {
      b.to = s.to;
      return;
    }
  }
  p.push_back(s);
}

CarryPath concat(const CarryPath& a, const CarryPath& b) {
  CarryPath out = a;
  for (const auto& s : b) append(out, s);
  return out;
}

}  // namespace

CarryPath slice(const CarryPath& p, const Rational& t0, const Rational& t1) {
  CarryPath out;
  Rational t = 0;
  for (const auto& s : p) {
    const Rational len = abs(s.to - s.from);
    const Rational lo = std::max(t0, t), hi = std::min(t1, Rational(t + len));
    if (hi > lo) {
      const Rational dir = s.to > s.from ? 1 : -1;
      append(out, Segment{s.edge, s.from + dir * (lo - t), s.from + dir * (hi - t)});
    }
    t += len;
  }
  return out;
}

Refinement::Refinement(const LambdaStructure& ls)
    : base(ls.track()), base_weights(ls.weights()), current(ls) {
  for (int e = 0; e < base.num_edges(); ++e) {
    paths.push_back(CarryPath{Segment{e, 0, base.edges[e].length}});
  }
}

namespace {

// Mutable working copy used inside a move. `local[e]` lists the edges of the
// track at the start of the move that e is made of, in order.
struct Work {
  TrainTrack t;
  WeightVector w;
  std::vector<CarryPath> paths;
  std::vector<std::vector<int>> local;
  int* next_name;

  explicit Work(Refinement& r) : t(r.current.track()), w(r.current.weights()), paths(r.paths), next_name(&r.next_name) {
    for (int e = 0; e < t.num_edges(); ++e) local.push_back({e});
  }

  std::string fresh_edge() {
    std::string n;
    do n = "e" + std::to_string((*next_name)++);
    while (t.edge_index(n) >= 0);
    return n;
  }
  std::string fresh_switch() {
    std::string n;
    do n = "v" + std::to_string((*next_name)++);
    while (t.switch_index(n) >= 0);
    return n;
  }

  void commit(Refinement& r) {
    r.current = LambdaStructure(t, w);
    r.paths = paths;
  }
};

// Cuts switch v along vertical lines at the given positions. Bands crossing a
// cut line are split lengthwise. Returns the indices of the parts, left to
// right; part 0 keeps index v.
std::vector<int> cut_switch(Work& W, int v, std::vector<Rational> X) {
  std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());
  const auto pos = plug_positions(W.t, W.w);
  const auto rows = slot_rows(W.t);
  Rational width = 0;
  for (const auto& h : rows[v][0]) width += W.w[h.edge];
  for (const auto& x : X) {
    if (x <= 0 || x >= width) throw TrackError(TrackError::Kind::Precondition, "cut outside the switch");
  }
  const int ne = W.t.num_edges();
  const int nsw = W.t.num_switches();

  struct Plug {
    int sw;
    Side side;
    Rational lo;
    HalfEdge h;
  };
  std::vector<Plug> plugs;
  std::vector<Edge> edges;
  WeightVector weights;
  std::vector<CarryPath> paths;
  std::vector<std::vector<int>> local;
  for (int e = 0; e < ne; ++e) {
    const Edge& old = W.t.edges[e];
    const Rational& wd = W.w[e];
    std::set<Rational> offs;
    for (int k = 0; k < 2; ++k) {
      if (old.ends[k].sw != v) continue;
      const auto& [lo, hi] = pos[e][k];
      for (const auto& x : X) {
        if (lo < x && x < hi) {
          const Rational u1 = x - lo;
          offs.insert((k == 1 && old.twist) ? wd - u1 : u1);
        }
      }
    }
    std::vector<Rational> cuts{0};
    cuts.insert(cuts.end(), offs.begin(), offs.end());
    cuts.push_back(wd);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      Edge piece = old;
      if (cuts.size() > 2) piece.name = W.fresh_edge();
      const int idx = static_cast<int>(edges.size());
      const Rational lo0 = pos[e][0][0] + cuts[i];
      const Rational lo1 = pos[e][1][0] + (old.twist ? Rational(wd - cuts[i + 1]) : cuts[i]);
      plugs.push_back({old.ends[0].sw, old.ends[0].side, lo0, HalfEdge{idx, 0}});
      plugs.push_back({old.ends[1].sw, old.ends[1].side, lo1, HalfEdge{idx, 1}});
      edges.push_back(piece);
      weights.push_back(cuts[i + 1] - cuts[i]);
      paths.push_back(W.paths[e]);
      local.push_back(W.local[e]);
    }
  }
  // Reserve names before any switch is added so they stay unique.
  std::vector<int> parts{v};
  std::vector<Switch> switches = W.t.switches;
  for (std::size_t j = 1; j <= X.size(); ++j) {
    parts.push_back(nsw + static_cast<int>(j) - 1);
    switches.push_back(Switch{W.fresh_switch()});
  }
  std::map<std::pair<int, int>, std::vector<std::pair<Rational, HalfEdge>>> row_of;
  for (const auto& p : plugs) {
    int sw = p.sw;
    if (sw == v) {
      const auto j = std::upper_bound(X.begin(), X.end(), p.lo) - X.begin();
      sw = parts[j];
    }
    row_of[{sw, static_cast<int>(p.side)}].push_back({p.lo, p.h});
  }
  for (auto& [key, row] : row_of) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < row.size(); ++i) {
      EndRef& r = edges[row[i].second.edge].ends[row[i].second.end];
      r.sw = key.first;
      r.side = static_cast<Side>(key.second);
      r.slot = static_cast<int>(i);
    }
  }
  W.t.edges = std::move(edges);
  W.t.switches = std::move(switches);
  W.w = std::move(weights);
  W.paths = std::move(paths);
  W.local = std::move(local);
  return parts;
}

// Removes bivalent switch v. Returns the merged edge index, or -1.
int smooth_switch(Work& W, int v) {
  const auto rows = slot_rows(W.t);
  if (rows[v][0].size() != 1 || rows[v][1].size() != 1) return -1;
  const HalfEdge h1 = rows[v][0][0], h2 = rows[v][1][0];
  if (h1.edge == h2.edge) return -1;
  const Edge& f1 = W.t.edges[h1.edge];
  const Edge& f2 = W.t.edges[h2.edge];
  Edge g;
  g.name = W.fresh_edge();
  g.ends = {f1.ends[1 - h1.end], f2.ends[1 - h2.end]};
  g.twist = f1.twist != f2.twist;
  g.length = f1.length + f2.length;
  const CarryPath p1 = h1.end == 1 ? W.paths[h1.edge] : reversed(W.paths[h1.edge]);
  const CarryPath p2 = h2.end == 0 ? W.paths[h2.edge] : reversed(W.paths[h2.edge]);
  std::vector<int> l1 = W.local[h1.edge], l2 = W.local[h2.edge];
  if (h1.end == 0) std::reverse(l1.begin(), l1.end());
  if (h2.end == 1) std::reverse(l2.begin(), l2.end());
  l1.insert(l1.end(), l2.begin(), l2.end());
  const Rational weight = W.w[h1.edge];

  const int keep = std::min(h1.edge, h2.edge), drop = std::max(h1.edge, h2.edge);
  W.t.edges[keep] = g;
  W.paths[keep] = concat(p1, p2);
  W.local[keep] = l1;
  W.w[keep] = weight;
  W.t.edges.erase(W.t.edges.begin() + drop);
  W.paths.erase(W.paths.begin() + drop);
  W.local.erase(W.local.begin() + drop);
  W.w.erase(W.w.begin() + drop);
  W.t.switches.erase(W.t.switches.begin() + v);
  for (auto& e : W.t.edges) {
    for (auto& r : e.ends) {
      if (r.sw > v) --r.sw;
    }
  }
  return keep;
}

// Smooths every bivalent switch among `candidates` (indices into the current
// switch list). Indices shift as switches disappear.
void smooth_among(Work& W, std::vector<int> candidates) {
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  for (int v : candidates) smooth_switch(W, v);
}

struct Snapshot {
  Rational total;
  Rational minimum;
  std::vector<Rational> per_edge;
};

Snapshot snap(const LambdaStructure& ls) {
  auto l = ls.lengths();
  return {l.total, l.minimum, l.per_edge};
}

MoveRecord record(MoveKind k, std::string target, const Snapshot& before, const LambdaStructure& after,
                  const Rational& predicted) {
  MoveRecord m;
  m.kind = k;
  m.target = std::move(target);
  m.length_before = before.total;
  m.min_before = before.minimum;
  const auto l = after.lengths();
  m.length_after = l.total;
  m.min_after = l.minimum;
  m.predicted_delta = predicted;
  m.identity_holds = (m.length_after - m.length_before) == predicted;
  return m;
}

bool loopy_involved(const LambdaStructure& pre, const Work& W, const LambdaStructure& post) {
  // A loopy edge counts as untouched only if it survives whole with the same lambda-length.
  auto untouched = [&](int e) {
    const auto& parts = W.local[e];
    return parts.size() == 1 && pre.kind(parts[0]) == EdgeKind::Loopy && post.kind(e) == EdgeKind::Loopy &&
           pre.lambda_length(parts[0]) == post.lambda_length(e);
  };
  std::vector<bool> kept(pre.track().num_edges(), false);
  for (int e = 0; e < post.track().num_edges(); ++e) {
    if (untouched(e)) kept[W.local[e][0]] = true;
    else if (post.kind(e) == EdgeKind::Loopy) return true;
    else if (W.local[e].size() > 1) {
      for (int x : W.local[e]) if (pre.kind(x) == EdgeKind::Loopy) return true;
    }
  }
  for (int x = 0; x < pre.track().num_edges(); ++x) {
    if (pre.kind(x) == EdgeKind::Loopy && !kept[x]) return true;
  }
  return false;
}

// Index of the plug on `side` of switch v whose interior contains x, or -1.
HalfEdge plug_containing(const TrainTrack& t, const std::vector<std::array<std::array<Rational, 2>, 2>>& pos,
                         int v, Side side, const Rational& x) {
  const auto rows = slot_rows(t);
  for (const auto& h : rows[v][static_cast<int>(side)]) {
    if (pos[h.edge][h.end][0] < x && x < pos[h.edge][h.end][1]) return h;
  }
  return HalfEdge{-1, 0};
}

int find_local(const Work& W, int original, int skip = -1) {
  for (int e = 0; e < W.t.num_edges(); ++e) {
    if (e != skip && W.local[e].size() == 1 && W.local[e][0] == original) return e;
  }
  return -1;
}

std::string sw_name(const TrainTrack& t, int sw) { return t.switches[sw].name; }

}  // namespace

Refinement split_cusp(const Refinement& r, int sw, Side side, int slot, RefinementTrace& trace) {
  const auto& ls = r.current;
  const auto& t = ls.track();
  if (sw < 0 || sw >= t.num_switches()) throw TrackError(TrackError::Kind::Precondition, "no such switch");
  const auto rows = slot_rows(t);
  const auto& row = rows[sw][static_cast<int>(side)];
  if (slot < 0 || slot + 1 >= static_cast<int>(row.size())) {
    throw TrackError(TrackError::Kind::Precondition, "slots are not an adjacent pair");
  }
  const auto& pos = ls.positions();
  const Rational x = pos[row[slot].edge][row[slot].end][1];
  const HalfEdge child = plug_containing(t, pos, sw, opposite(side), x);
  Rational predicted = 0;
  if (child.edge >= 0) {
    if (ls.kind(child.edge) == EdgeKind::Loopy) {
      throw TrackError(TrackError::Kind::Precondition, "common child is loopy; unloop it instead");
    }
    predicted = ls.lambda_length(child.edge);
  }
  const Snapshot before = snap(ls);
  Refinement out = r;
  Work W(out);
  cut_switch(W, sw, {x});
  W.commit(out);
  MoveRecord m = record(MoveKind::SplitCusp, sw_name(t, sw) + "." + side_char(side) + "." + std::to_string(slot),
                        before, out.current, predicted);
  m.loopy_involved = loopy_involved(ls, W, out.current);
  trace.moves.push_back(m);
  return out;
}

Refinement comb(const Refinement& r, HalfEdge h, RefinementTrace& trace) {
  const auto& ls = r.current;
  const auto& t = ls.track();
  if (h.edge < 0 || h.edge >= t.num_edges()) throw TrackError(TrackError::Kind::Precondition, "no such edge");
  if (ls.kind(h.edge) != EdgeKind::NonLoopy) {
    throw TrackError(TrackError::Kind::Precondition, "cannot comb a loopy edge");
  }
  const Snapshot before = snap(ls);
  const int e0 = h.edge;
  const EndRef end = t.end(h);
  const auto& pos = ls.positions();
  const auto rows = slot_rows(t);
  Rational width = 0;
  for (const auto& x : rows[end.sw][0]) width += ls.weights()[x.edge];
  std::vector<Rational> X;
  const auto [p, q] = pos[e0][h.end];
  if (p > 0) X.push_back(p);
  if (q < width) X.push_back(q);

  Refinement out = r;
  Work W(out);
  std::vector<int> touched;
  if (!X.empty()) touched = cut_switch(W, end.sw, X);
  const int e0n = find_local(W, e0);
  const int v0 = W.t.edges[e0n].ends[h.end].sw;
  // All cusps at the copy of v0: cut at every plug boundary on the far side.
  const auto pos2 = plug_positions(W.t, W.w);
  const auto rows2 = slot_rows(W.t);
  std::vector<Rational> Y;
  for (const auto& c : rows2[v0][static_cast<int>(opposite(end.side))]) {
    if (pos2[c.edge][c.end][1] < W.w[e0n]) Y.push_back(pos2[c.edge][c.end][1]);
  }
  std::vector<int> parts{v0};
  if (!Y.empty()) parts = cut_switch(W, v0, Y);
  std::vector<int> cand = touched;
  cand.insert(cand.end(), parts.begin(), parts.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  smooth_among(W, cand);
  W.commit(out);

  MoveRecord m = record(MoveKind::Comb, t.edges[e0].name + "." + std::to_string(h.end), before, out.current,
                        out.current.lengths().total - before.total);
  // Every edge running through e0 has the length of e0 plus that of a child.
  int checked = 0;
  for (int e = 0; e < W.t.num_edges(); ++e) {
    const auto& parts_of = W.local[e];
    if (std::find(parts_of.begin(), parts_of.end(), e0) == parts_of.end()) continue;
    Rational expect = 0;
    for (int x : parts_of) expect += before.per_edge[x];
    ++checked;
    if (out.current.lambda_length(e) != expect) {
      m.identity_holds = false;
      m.note = "edge " + W.t.edges[e].name + " has lambda-length " + to_string(out.current.lambda_length(e)) +
               ", parts add to " + to_string(expect);
    }
    if (parts_of.size() < 2) m.note = "an edge through the combed half-edge has no child";
  }
  if (checked == 0) m.identity_holds = false;
  m.loopy_involved = loopy_involved(ls, W, out.current);
  trace.moves.push_back(m);
  return out;
}

namespace {

// Cuts switch v at the given positions and smooths the parts; records Delta
// against `predicted`. Shared by unmask and the final step of unloop.
Refinement unmask_impl(const Refinement& r, int e0, RefinementTrace& trace, MoveKind kind, const std::string& label) {
  const auto& ls = r.current;
  const auto& t = ls.track();
  if (e0 < 0 || e0 >= t.num_edges() || ls.kind(e0) != EdgeKind::FakeLoopy) {
    throw TrackError(TrackError::Kind::Precondition, "edge is not fake loopy");
  }
  const Snapshot before = snap(ls);
  const int v = t.edges[e0].ends[0].sw;
  const int top_end = t.edges[e0].ends[0].side == Side::T ? 0 : 1;
  const auto& pos = ls.positions();
  const auto& tp = pos[e0][top_end];
  const auto& bp = pos[e0][1 - top_end];
  const bool top_left = tp[1] <= bp[0];
  const Rational g1 = top_left ? tp[1] : bp[1];
  const Rational g2 = top_left ? bp[0] : tp[0];

  const auto rows = slot_rows(t);
  std::map<Rational, int> marks;  // bit 0: top boundary, bit 1: bottom boundary
  for (int side = 0; side < 2; ++side) {
    for (const auto& h : rows[v][side]) {
      for (const auto& x : pos[h.edge][h.end]) {
        if (g1 <= x && x <= g2) marks[x] |= 1 << side;
      }
    }
  }
  std::vector<Rational> X;
  Rational predicted = 0;
  std::string note;
  for (const auto& [x, m] : marks) {
    if (m == 3) {
      X = {x};
      note = "no crossing turn";
      break;
    }
  }
  if (X.empty()) {
    // A crossing turn sits between a boundary on the side of the near plug
    // and the next boundary on the other side.
    const int first = top_left ? 1 : 2;
    std::optional<Rational> best;
    for (auto it = marks.begin(); std::next(it) != marks.end(); ++it) {
      auto nx = std::next(it);
      if (it->second != first || nx->second != 3 - first) continue;
      const Rational mid = (it->first + nx->first) / 2;
      const HalfEdge b = plug_containing(t, pos, v, Side::B, mid);
      const HalfEdge a = plug_containing(t, pos, v, Side::T, mid);
      const Rational cost = ls.lambda_length(a.edge) + ls.lambda_length(b.edge);
      if (!best || cost < *best) {
        best = cost;
        X = {it->first, nx->first};
        note = "crossing turn " + t.edges[b.edge].name + "," + t.edges[a.edge].name;
      }
    }
    if (!best) throw TrackError(TrackError::Kind::Invalid, "no crossing turn found across a masked gap");
    predicted = *best;
  }
  Refinement out = r;
  Work W(out);
  auto parts = cut_switch(W, v, X);
  // The strands of the crossing turn form their own bivalent switch.
  if (parts.size() == 3) smooth_among(W, {parts[1]});
  W.commit(out);
  MoveRecord m = record(kind, label, before, out.current, predicted);
  m.note = note;
  m.loopy_involved = loopy_involved(ls, W, out.current);
  trace.moves.push_back(m);
  return out;
}

}  // namespace

Refinement unmask(const Refinement& r, int e, RefinementTrace& trace) {
  return unmask_impl(r, e, trace, MoveKind::Unmask, r.current.track().edges.at(e).name);
}

Refinement unloop(const Refinement& r, int e, RefinementTrace& trace) {
  const auto& t0 = r.current.track();
  if (e < 0 || e >= t0.num_edges() || r.current.kind(e) != EdgeKind::Loopy) {
    throw TrackError(TrackError::Kind::Precondition, "edge is not loopy");
  }
  const std::string name = t0.edges[e].name;
  const Rational len = t0.edges[e].length;
  const Snapshot start = snap(r.current);
  Refinement cur = r;
  int residual = e;
  int steps = 0;
  bool ok = true;
  while (cur.current.kind(residual) == EdgeKind::Loopy) {
    const auto& ls = cur.current;
    const Snapshot before = snap(ls);
    const Rational lam_before = ls.lambda_length(residual);
    const auto& t = ls.track();
    const int top_end = t.edges[residual].ends[0].side == Side::T ? 0 : 1;
    const auto& tp = ls.positions()[residual][top_end];
    const auto& bp = ls.positions()[residual][1 - top_end];
    const Rational x = tp[0] > bp[0] ? tp[0] : tp[1];
    Refinement next = cur;
    Work W(next);
    smooth_among(W, cut_switch(W, t.edges[residual].ends[0].sw, {x}));
    // The piece that still has both ends at one switch is the residual loop.
    int found = -1;
    for (int f = 0; f < W.t.num_edges(); ++f) {
      if (W.local[f].size() == 1 && W.local[f][0] == residual && W.t.is_tb_self_loop(f)) found = f;
    }
    W.commit(next);
    MoveRecord m = record(MoveKind::SplitCusp, name + "#" + std::to_string(steps), before, next.current, 0);
    if (found < 0) {
      m.identity_holds = false;
      m.note = "no residual loop";
      trace.moves.push_back(m);
      throw TrackError(TrackError::Kind::Certificate, "unloop lost track of the residual loop");
    }
    if (next.current.lambda_length(found) != lam_before - len) m.identity_holds = false;
    m.loopy_involved = loopy_involved(ls, W, next.current);
    ok = ok && m.identity_holds;
    trace.moves.push_back(m);
    cur = std::move(next);
    residual = found;
    ++steps;
  }
  RefinementTrace inner;
  cur = unmask_impl(cur, residual, inner, MoveKind::Unmask, name + "#unmask");
  const MoveRecord& last = inner.moves.back();
  trace.moves.push_back(last);
  MoveRecord m;
  m.kind = MoveKind::Unloop;
  m.target = name;
  m.length_before = start.total;
  m.min_before = start.minimum;
  const auto l = cur.current.lengths();
  m.length_after = l.total;
  m.min_after = l.minimum;
  m.predicted_delta = last.predicted_delta;
  m.identity_holds = ok && last.identity_holds && (m.length_after - m.length_before) == m.predicted_delta;
  m.loopy_involved = last.loopy_involved;
  m.note = std::to_string(steps) + " splits";
  trace.moves.push_back(m);
  return cur;
}

Refinement subdivide(const Refinement& r, int e, const std::vector<Rational>& pieces, RefinementTrace& trace) {
  const auto& ls = r.current;
  const auto& t = ls.track();
  if (e < 0 || e >= t.num_edges()) throw TrackError(TrackError::Kind::Precondition, "no such edge");
  if (ls.kind(e) == EdgeKind::Loopy) throw TrackError(TrackError::Kind::Precondition, "cannot subdivide a loopy edge");
  Rational sum = 0;
  for (const auto& p : pieces) {
    if (p <= 0) throw TrackError(TrackError::Kind::Precondition, "non-positive piece length");
    sum += p;
  }
  if (sum != t.edges[e].length) throw TrackError(TrackError::Kind::Precondition, "pieces do not add up to the edge length");
  const Snapshot before = snap(ls);
  Refinement out = r;
  Work W(out);
  const Edge old = W.t.edges[e];
  const CarryPath path = W.paths[e];
  const Rational weight = W.w[e];
  std::vector<Edge> chain;
  std::vector<CarryPath> chain_paths;
  Rational at = 0;
  EndRef prev = old.ends[0];
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Edge piece;
    piece.name = i == 0 ? old.name : W.fresh_edge();
    piece.length = pieces[i];
    piece.ends[0] = prev;
    if (i + 1 == pieces.size()) {
      piece.ends[1] = old.ends[1];
      piece.twist = old.twist;
    } else {
      const int s = W.t.num_switches();
      W.t.switches.push_back(Switch{W.fresh_switch()});
      piece.ends[1] = EndRef{s, Side::T, 0};
      prev = EndRef{s, Side::B, 0};
    }
    chain.push_back(piece);
    chain_paths.push_back(slice(path, at, at + pieces[i]));
    at += pieces[i];
  }
  W.t.edges[e] = chain[0];
  W.paths[e] = chain_paths[0];
  for (std::size_t i = 1; i < chain.size(); ++i) {
    W.t.edges.push_back(chain[i]);
    W.paths.push_back(chain_paths[i]);
    W.w.push_back(weight);
    W.local.push_back({e});
  }
  W.commit(out);
  MoveRecord m = record(MoveKind::Subdivide, old.name, before, out.current, 0);
  m.loopy_involved = loopy_involved(ls, W, out.current);
  trace.moves.push_back(m);
  return out;
}

Refinement smooth(const Refinement& r, int sw, RefinementTrace& trace) {
  const Snapshot before = snap(r.current);
  Refinement out = r;
  Work W(out);
  const std::string name = W.t.switches.at(sw).name;
  const int g = smooth_switch(W, sw);
  if (g < 0) return out;
  Rational plain = 0;
  for (int x : W.local[g]) plain += r.current.track().edges[x].length;
  W.commit(out);
  MoveRecord m = record(MoveKind::Smooth, name, before, out.current, out.current.lengths().total - before.total);
  m.identity_holds = out.current.track().edges[g].length == plain;
  m.loopy_involved = loopy_involved(r.current, W, out.current);
  trace.moves.push_back(m);
  return out;
}

Refinement smooth_all(const Refinement& r, RefinementTrace& trace) {
  Refinement cur = r;
  for (int sw = cur.current.track().num_switches() - 1; sw >= 0; --sw) {
    if (sw >= cur.current.track().num_switches()) continue;
    if (valence(cur.current.track(), sw) == 2) cur = smooth(cur, sw, trace);
  }
  return cur;
}

bool carrying_consistent(const Refinement& r) {
  const auto& t = r.current.track();
  const auto& base = r.base;
  for (int e = 0; e < t.num_edges(); ++e) {
    const CarryPath& p = r.paths[e];
    if (p.empty() || path_length(p) != t.edges[e].length) return false;
    for (const auto& s : p) {
      const Rational& len = base.edges[s.edge].length;
      if (s.from == s.to || s.from < 0 || s.to < 0 || s.from > len || s.to > len) return false;
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      const Segment& a = p[i];
      const Segment& b = p[i + 1];
      const Rational& la = base.edges[a.edge].length;
      const Rational& lb = base.edges[b.edge].length;
      if (a.to != 0 && a.to != la) return false;
      if (b.from != 0 && b.from != lb) return false;
      const HalfEdge in{a.edge, a.to == 0 ? 0 : 1};
      const HalfEdge out{b.edge, b.from == 0 ? 0 : 1};
      const EndRef& x = base.end(in);
      const EndRef& y = base.end(out);
      if (x.sw != y.sw || x.side == y.side) return false;
    }
  }
  return true;
}

bool pushforward_matches(const Refinement& r) {
  const auto& w = r.current.weights();
  std::vector<std::vector<std::tuple<Rational, Rational, Rational>>> cover(r.base.num_edges());
  for (int e = 0; e < r.current.track().num_edges(); ++e) {
    for (const auto& s : r.paths[e]) {
      cover[s.edge].push_back({std::min(s.from, s.to), std::max(s.from, s.to), w[e]});
    }
  }
  for (int e = 0; e < r.base.num_edges(); ++e) {
    std::set<Rational> cuts{0, r.base.edges[e].length};
    for (const auto& [lo, hi, x] : cover[e]) {
      cuts.insert(lo);
      cuts.insert(hi);
    }
    for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
      const Rational mid = (*it + *std::next(it)) / 2;
      Rational sum = 0;
      for (const auto& [lo, hi, x] : cover[e]) {
        if (lo < mid && mid < hi) sum += x;
      }
      if (sum != r.base_weights[e]) return false;
    }
  }
  return true;
}

}  // namespace tracklab

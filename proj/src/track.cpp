#include "tracklab/track.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace tracklab {

int TrainTrack::switch_index(const std::string& name) const {
  for (int i = 0; i < num_switches(); ++i) {
    if (switches[i].name == name) return i;
  }
  return -1;
}

int TrainTrack::edge_index(const std::string& name) const {
  for (int i = 0; i < num_edges(); ++i) {
    if (edges[i].name == name) return i;
  }
  return -1;
}

std::vector<std::array<std::vector<HalfEdge>, 2>> slot_rows(const TrainTrack& track) {
  const int n = track.num_switches();
  std::vector<std::array<std::vector<std::optional<HalfEdge>>, 2>> raw(n);
  for (int e = 0; e < track.num_edges(); ++e) {
    for (int k = 0; k < 2; ++k) {
      const EndRef& r = track.edges[e].ends[k];
      const std::string where = track.edges[e].name + "." + std::to_string(k);
      if (r.sw < 0 || r.sw >= n) throw TrackError(TrackError::Kind::Malformed, "end " + where + " refers to a missing switch");
      if (r.slot < 0) throw TrackError(TrackError::Kind::Malformed, "end " + where + " has a negative slot");
      auto& row = raw[r.sw][static_cast<int>(r.side)];
      if (static_cast<int>(row.size()) <= r.slot) row.resize(r.slot + 1);
      if (row[r.slot]) {
        const auto& other = *row[r.slot];
        throw TrackError(TrackError::Kind::Malformed,
                         "slot " + track.switches[r.sw].name + "." + side_char(r.side) + "." + std::to_string(r.slot) +
                             " is occupied by both " + track.edges[other.edge].name + "." + std::to_string(other.end) +
                             " and " + where);
      }
      row[r.slot] = HalfEdge{e, k};
    }
  }
  std::vector<std::array<std::vector<HalfEdge>, 2>> rows(n);
  for (int s = 0; s < n; ++s) {
    for (int side = 0; side < 2; ++side) {
      for (std::size_t i = 0; i < raw[s][side].size(); ++i) {
        if (!raw[s][side][i]) {
          throw TrackError(TrackError::Kind::Malformed, "slot " + track.switches[s].name + "." +
                                                            side_char(static_cast<Side>(side)) + "." +
                                                            std::to_string(i) + " is empty");
        }
        rows[s][side].push_back(*raw[s][side][i]);
      }
    }
  }
  return rows;
}

int valence(const TrainTrack& track, int sw) {
  int v = 0;
  for (const auto& e : track.edges) {
    for (const auto& r : e.ends) v += (r.sw == sw);
  }
  return v;
}

std::vector<std::vector<int>> switch_matrix(const TrainTrack& track) {
  std::vector<std::vector<int>> m(track.num_switches(), std::vector<int>(track.num_edges(), 0));
  for (int e = 0; e < track.num_edges(); ++e) {
    for (const auto& r : track.edges[e].ends) m[r.sw][e] += (r.side == Side::T) ? 1 : -1;
  }
  return m;
}

bool satisfies_switch_equations(const TrainTrack& track, const WeightVector& w) {
  if (static_cast<int>(w.size()) != track.num_edges()) return false;
  for (const auto& x : w) {
    if (x < 0) return false;
  }
  for (const auto& row : switch_matrix(track)) {
    Rational s = 0;
    for (std::size_t e = 0; e < row.size(); ++e) s += row[e] * w[e];
    if (s != 0) return false;
  }
  return true;
}

std::vector<std::array<std::array<Rational, 2>, 2>> plug_positions(const TrainTrack& track, const WeightVector& w) {
  std::vector<std::array<std::array<Rational, 2>, 2>> pos(track.num_edges());
  const auto rows = slot_rows(track);
  for (const auto& sw : rows) {
    for (const auto& row : sw) {
      Rational x = 0;
      for (const auto& h : row) {
        pos[h.edge][h.end] = {x, x + w[h.edge]};
        x += w[h.edge];
      }
    }
  }
  return pos;
}

Rational combinatorial_length(const TrainTrack& track, const WeightVector& w) {
  Rational total = 0;
  for (int e = 0; e < track.num_edges(); ++e) total += track.edges[e].length * w[e];
  return total;
}

// ---------------------------------------------------------------------------

namespace {

// Boundary points of the band complex: (half-edge, band side), side 0 = the
// left edge of the band at that plug, 1 = the right edge.
struct Corner {
  HalfEdge h;
  int lr;
  auto operator<=>(const Corner&) const = default;
};

int edge_parity(const TrainTrack& t, int e) { return (t.edges[e].twist ? 1 : 0) ^ (t.same_side(e) ? 1 : 0); }

}  // namespace

std::vector<Region> region_census(const TrainTrack& track) {
  const auto rows = slot_rows(track);
  auto band = [&](const Corner& c) {
    const Edge& e = track.edges[c.h.edge];
    return Corner{HalfEdge{c.h.edge, 1 - c.h.end}, e.twist ? 1 - c.lr : c.lr};
  };
  // Returns the corner reached by walking along the switch boundary, and
  // whether a cusp was passed.
  auto along_switch = [&](const Corner& c) -> std::pair<Corner, bool> {
    const EndRef& r = track.end(c.h);
    const auto& row = rows[r.sw][static_cast<int>(r.side)];
    const auto& other = rows[r.sw][static_cast<int>(opposite(r.side))];
    if (c.lr == 0) {
      if (r.slot > 0) return {Corner{row[r.slot - 1], 1}, true};
      if (!other.empty()) return {Corner{other.front(), 0}, false};
      return {Corner{row.back(), 1}, false};
    }
    if (r.slot + 1 < static_cast<int>(row.size())) return {Corner{row[r.slot + 1], 0}, true};
    if (!other.empty()) return {Corner{other.back(), 1}, false};
    return {Corner{row.front(), 0}, false};
  };

  std::set<Corner> seen;
  std::vector<Region> regions;
  for (int e = 0; e < track.num_edges(); ++e) {
    for (int k = 0; k < 2; ++k) {
      for (int lr = 0; lr < 2; ++lr) {
        Corner start{HalfEdge{e, k}, lr};
        if (seen.count(start)) continue;
        Region region;
        Corner p = start;
        do {
          Corner q = band(p);
          seen.insert(p);
          seen.insert(q);
          region.word.push_back(track.edges[p.h.edge].name + (p.h.end == 0 ? "+" : "-"));
          auto [next, cusp] = along_switch(q);
          region.cusps += cusp ? 1 : 0;
          p = next;
        } while (!(p == start));
        regions.push_back(std::move(region));
      }
    }
  }
  return regions;
}

bool ribbon_orientable(const TrainTrack& track) {
  std::vector<int> color(track.num_switches(), -1);
  std::vector<std::vector<std::pair<int, int>>> adj(track.num_switches());
  for (int e = 0; e < track.num_edges(); ++e) {
    const auto& [a, b] = track.edges[e].ends;
    adj[a.sw].push_back({b.sw, edge_parity(track, e)});
    adj[b.sw].push_back({a.sw, edge_parity(track, e)});
  }
  for (int s = 0; s < track.num_switches(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (auto [v, p] : adj[u]) {
        if (color[v] < 0) {
          color[v] = color[u] ^ p;
          q.push(v);
        } else if (color[v] != (color[u] ^ p)) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

int punctures_needed(int cusps) {
  if (cusps >= 3) return 0;
  return cusps == 0 ? 2 : 1;
}

// Vertex/edge counts once bivalent switches are smoothed away.
std::pair<int, int> reduced_counts(const TrainTrack& track) {
  const int n = track.num_switches();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : track.edges) parent[find(e.ends[0].sw)] = find(e.ends[1].sw);
  std::map<int, std::pair<int, int>> comp;  // root -> (#switches, #non-bivalent)
  std::map<int, int> comp_edges;
  for (int s = 0; s < n; ++s) {
    auto& c = comp[find(s)];
    c.first += 1;
    c.second += valence(track, s) != 2 ? 1 : 0;
  }
  for (const auto& e : track.edges) comp_edges[find(e.ends[0].sw)] += 1;
  int v = 0, ecount = 0;
  for (const auto& [root, c] : comp) {
    if (c.second == 0) {
      v += 1;
      ecount += 1;
    } else {
      v += c.second;
      ecount += comp_edges[root] - (c.first - c.second);
    }
  }
  return {v, ecount};
}

}  // namespace

SurfaceSig implied_surface(const TrainTrack& track) {
  const auto regions = region_census(track);
  const int closed_chi = track.num_switches() - track.num_edges() + static_cast<int>(regions.size());
  int holes = 0;
  for (const auto& r : regions) holes += punctures_needed(r.cusps);
  SurfaceSig sig;
  sig.orientable = ribbon_orientable(track);
  sig.genus = sig.orientable ? (2 - closed_chi) / 2 : 2 - closed_chi;
  sig.boundary = holes;
  return sig;
}

ValidationReport validate(const TrainTrack& track, bool strict) {
  ValidationReport rep;
  const auto rows = slot_rows(track);  // throws on malformed ends
  for (int e = 0; e < track.num_edges(); ++e) {
    if (track.edges[e].length <= 0) {
      rep.issues.push_back("edge " + track.edges[e].name + " has non-positive length");
    }
  }
  for (int s = 0; s < track.num_switches(); ++s) {
    for (int side = 0; side < 2; ++side) {
      if (rows[s][side].empty()) {
        rep.issues.push_back("switch " + track.switches[s].name + " has no slot on side " +
                             side_char(static_cast<Side>(side)));
      }
    }
  }
  std::tie(rep.reduced_switches, rep.reduced_edges) = reduced_counts(track);
  if (strict) {
    rep.regions = region_census(track);
    rep.ribbon_orientable = ribbon_orientable(track);
    const int closed_chi = track.num_switches() - track.num_edges() + static_cast<int>(rep.regions.size());
    int slack = 0;
    if (track.surface) {
      const int chi = euler_char(*track.surface);
      const int abs_chi = chi < 0 ? -chi : chi;
      if (rep.reduced_switches > 6 * abs_chi) {
        rep.issues.push_back("too many switches: " + std::to_string(rep.reduced_switches) + " > 6|chi| = " +
                             std::to_string(6 * abs_chi));
      }
      if (rep.reduced_edges > 9 * abs_chi) {
        rep.issues.push_back("too many edges: " + std::to_string(rep.reduced_edges) + " > 9|chi| = " +
                             std::to_string(9 * abs_chi));
      }
      if (track.surface->orientable && !rep.ribbon_orientable) {
        rep.issues.push_back("non-orientable band complex on an orientable surface");
      }
      slack = closed_chi - chi;
      rep.puncture_slack = slack;
      if (slack < 0) rep.issues.push_back("band complex does not fit in surface " + to_string(*track.surface));
    }
    int needed = 0;
    for (const auto& r : rep.regions) needed += punctures_needed(r.cusps);
    if (needed > std::max(slack, 0)) {
      for (const auto& r : rep.regions) {
        if (r.cusps <= 2) {
          rep.issues.push_back("forbidden complementary region: disk with " + std::to_string(r.cusps) + " cusps");
        }
      }
    }
  }
  rep.ok = rep.issues.empty();
  return rep;
}

// ---------------------------------------------------------------------------

const char* to_string(Sidedness s) { return s == Sidedness::OneSided ? "one-sided" : "two-sided"; }

namespace {

HalfEdge departure(const Step& s) { return HalfEdge{s.edge, s.forward ? 0 : 1}; }
HalfEdge arrival(const Step& s) { return HalfEdge{s.edge, s.forward ? 1 : 0}; }

}  // namespace

bool is_legal(const TrainTrack& track, const std::vector<Step>& steps) {
  if (steps.empty()) return false;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& a = steps[i];
    const Step& b = steps[(i + 1) % steps.size()];
    if (a.edge < 0 || a.edge >= track.num_edges()) return false;
    const EndRef& in = track.end(arrival(a));
    const EndRef& out = track.end(departure(b));
    if (in.sw != out.sw || in.side == out.side) return false;
  }
  return true;
}

Sidedness sidedness_parity(const TrainTrack& track, const std::vector<Step>& steps) {
  if (!is_legal(track, steps)) throw TrackError(TrackError::Kind::Illegal, "loop is not legal");
  int parity = 0;
  for (const auto& s : steps) parity ^= edge_parity(track, s.edge);
  return parity ? Sidedness::OneSided : Sidedness::TwoSided;
}

std::vector<Step> canonical_loop(const std::vector<Step>& steps) {
  std::vector<Step> best = steps;
  std::vector<Step> rev;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) rev.push_back(Step{it->edge, !it->forward});
  for (const std::vector<Step>* seq : {&steps, static_cast<const std::vector<Step>*>(&rev)}) {
    std::vector<Step> rot = *seq;
    for (std::size_t i = 0; i < rot.size(); ++i) {
      if (rot < best) best = rot;
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
  }
  return best;
}

std::vector<LegalLoop> multicurve_components(const TrainTrack& track, const std::vector<int>& weights) {
  const auto rows = slot_rows(track);
  const int ne = track.num_edges();
  // prefix[edge][end] = index of the first unit strand of this plug in its row.
  std::vector<std::array<int, 2>> prefix(ne);
  for (const auto& sw : rows) {
    for (const auto& row : sw) {
      int x = 0;
      for (const auto& h : row) {
        prefix[h.edge][h.end] = x;
        x += weights[h.edge];
      }
    }
  }
  auto locate = [&](int sw, Side side, int index) -> std::pair<HalfEdge, int> {
    for (const auto& h : rows[sw][static_cast<int>(side)]) {
      if (index < prefix[h.edge][h.end] + weights[h.edge]) return {h, index - prefix[h.edge][h.end]};
    }
    throw TrackError(TrackError::Kind::Invalid, "weights violate the switch equations");
  };

  std::vector<std::vector<bool>> seen(ne);
  for (int e = 0; e < ne; ++e) seen[e].assign(std::max(weights[e], 0), false);
  std::vector<LegalLoop> out;
  for (int e0 = 0; e0 < ne; ++e0) {
    for (int k0 = 0; k0 < weights[e0]; ++k0) {
      if (seen[e0][k0]) continue;
      std::vector<Step> steps;
      int e = e0, k = k0;
      bool fwd = true;
      do {
        seen[e][k] = true;
        steps.push_back(Step{e, fwd});
        const Edge& edge = track.edges[e];
        const int n = weights[e];
        // Local coordinate (from the left of the plug) at the arrival end.
        const int in_end = fwd ? 1 : 0;
        int local = (in_end == 1 && edge.twist) ? n - 1 - k : k;
        const EndRef& r = edge.ends[in_end];
        auto [h, loc] = locate(r.sw, opposite(r.side), prefix[e][in_end] + local);
        e = h.edge;
        fwd = (h.end == 0);
        k = (h.end == 1 && track.edges[e].twist) ? weights[e] - 1 - loc : loc;
      } while (!(e == e0 && k == k0 && fwd));
      // A family of parallel strands around a Mobius core closes up only after
      // two laps; report it as its core.
      const std::size_t len = steps.size();
      if (len % 2 == 0 && std::equal(steps.begin(), steps.begin() + len / 2, steps.begin() + len / 2)) {
        std::vector<Step> root(steps.begin(), steps.begin() + len / 2);
        if (sidedness_parity(track, root) == Sidedness::OneSided) steps = std::move(root);
      }
      LegalLoop loop;
      loop.steps = canonical_loop(steps);
      loop.multiplicity.assign(ne, 0);
      for (const auto& s : loop.steps) loop.multiplicity[s.edge] += 1;
      loop.sidedness = sidedness_parity(track, loop.steps);
      out.push_back(std::move(loop));
    }
  }
  return out;
}

std::vector<LegalLoop> enumerate_loops(const TrainTrack& track, int max_mult) {
  const int ne = track.num_edges();
  const auto matrix = switch_matrix(track);
  std::map<std::vector<Step>, LegalLoop> found;
  std::vector<int> w(ne, 0);
  while (true) {
    bool nonzero = std::any_of(w.begin(), w.end(), [](int x) { return x != 0; });
    bool balanced = true;
    for (const auto& row : matrix) {
      long s = 0;
      for (int e = 0; e < ne; ++e) s += static_cast<long>(row[e]) * w[e];
      if (s != 0) {
        balanced = false;
        break;
      }
    }
    if (nonzero && balanced) {
      for (auto& loop : multicurve_components(track, w)) found.emplace(loop.steps, std::move(loop));
    }
    int i = 0;
    while (i < ne && w[i] == max_mult) w[i++] = 0;
    if (i == ne) break;
    ++w[i];
  }
  std::vector<LegalLoop> out;
  for (auto& [key, loop] : found) out.push_back(std::move(loop));
  std::stable_sort(out.begin(), out.end(), [](const LegalLoop& a, const LegalLoop& b) {
    return a.steps.size() < b.steps.size();
  });
  return out;
}

std::string format_loop(const TrainTrack& track, const std::vector<Step>& steps) {
  std::string s;
  for (const auto& st : steps) {
    if (!s.empty()) s += ' ';
    s += track.edges[st.edge].name + (st.forward ? "+" : "-");
  }
  return s;
}

}  // namespace tracklab

#include "tracklab/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "tracklab/cone.hpp"

namespace tracklab {

std::uint64_t corpus_seed(std::uint64_t fallback) {
  const char* env = std::getenv("TRACKLAB_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    return fallback;
  }
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, parts, cur, f);
    cur.pop_back();
  }
}

void matchings(std::vector<int>& partner, const std::function<void()>& f) {
  int first = -1;
  for (int i = 0; i < static_cast<int>(partner.size()); ++i) {
    if (partner[i] < 0) {
      first = i;
      break;
    }
  }
  if (first < 0) {
    f();
    return;
  }
  for (int j = first + 1; j < static_cast<int>(partner.size()); ++j) {
    if (partner[j] >= 0) continue;
    partner[first] = j;
    partner[j] = first;
    matchings(partner, f);
    partner[first] = partner[j] = -1;
  }
}

}  // namespace

void for_each_track(int switches, int edges, bool with_twists,
                    const std::function<void(const TrainTrack&)>& visit) {
  const int ends = 2 * edges;
  std::vector<int> cur;
  compositions(ends, 2 * switches, cur, [&](const std::vector<int>& rows) {
    for (int r = 0; r < 2 * switches; r += 2) {
      if (rows[r] + rows[r + 1] == 0) return;
    }
    std::vector<EndRef> pos;
    for (int r = 0; r < 2 * switches; ++r) {
      for (int s = 0; s < rows[r]; ++s) pos.push_back({r / 2, r % 2 == 0 ? Side::T : Side::B, s});
    }
    std::vector<int> partner(ends, -1);
    matchings(partner, [&] {
      TrainTrack t;
      for (int s = 0; s < switches; ++s) t.switches.push_back({"v" + std::to_string(s)});
      for (int i = 0; i < ends; ++i) {
        if (partner[i] < i) continue;
        Edge e;
        e.name = std::string(1, static_cast<char>('a' + t.edges.size()));
        e.ends = {pos[i], pos[partner[i]]};
        t.edges.push_back(e);
      }
      const int masks = with_twists ? (1 << edges) : 1;
      for (int m = 0; m < masks; ++m) {
        for (int e = 0; e < edges; ++e) t.edges[e].twist = ((m >> e) & 1) != 0;
        visit(t);
      }
    });
  });
}

namespace {

using Key = std::vector<std::array<int, 7>>;

std::array<int, 7> key_entry(std::array<int, 3> a, std::array<int, 3> b, bool twist) {
  if (b < a) std::swap(a, b);
  return {a[0], a[1], a[2], b[0], b[1], b[2], twist ? 1 : 0};
}

}  // namespace

std::vector<std::array<int, 7>> track_key(const TrainTrack& track) {
  Key key;
  key.reserve(track.edges.size());
  for (const auto& e : track.edges) {
    key.push_back(key_entry({e.ends[0].sw, static_cast<int>(e.ends[0].side), e.ends[0].slot},
                            {e.ends[1].sw, static_cast<int>(e.ends[1].side), e.ends[1].slot}, e.twist));
  }
  std::sort(key.begin(), key.end());
  return key;
}

bool is_canonical(const TrainTrack& track) {
  const int n = track.num_switches();
  std::vector<std::array<int, 2>> len(n, {0, 0});
  for (const auto& e : track.edges) {
    for (const auto& r : e.ends) ++len[r.sw][static_cast<int>(r.side)];
  }
  const Key key = track_key(track);
  Key img(key.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    for (int flags = 0; flags < (1 << (2 * n)); ++flags) {
      for (std::size_t e = 0; e < track.edges.size(); ++e) {
        const auto& ed = track.edges[e];
        bool tw = ed.twist;
        std::array<std::array<int, 3>, 2> ends;
        for (int k = 0; k < 2; ++k) {
          const EndRef& r = ed.ends[k];
          const bool swap = (flags >> (2 * r.sw)) & 1;
          const bool rev = (flags >> (2 * r.sw + 1)) & 1;
          const int side = static_cast<int>(r.side);
          ends[k] = {perm[r.sw], swap ? 1 - side : side, rev ? len[r.sw][side] - 1 - r.slot : r.slot};
          tw ^= rev;
        }
        img[e] = key_entry(ends[0], ends[1], tw);
      }
      std::sort(img.begin(), img.end());
      if (img < key) return false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

std::vector<TrainTrack> one_vertex_tracks(int max_edges) {
  std::vector<TrainTrack> out;
  for (int n = 1; n <= max_edges; ++n) {
    for_each_track(1, n, true, [&](const TrainTrack& t) { out.push_back(t); });
  }
  return out;
}

std::vector<TrainTrack> base_tracks(int max_switches, int max_edges, bool up_to_symmetry) {
  std::vector<TrainTrack> out;
  for (int s = 1; s <= max_switches; ++s) {
    for (int n = 1; n <= max_edges; ++n) {
      for_each_track(s, n, true, [&](const TrainTrack& t) {
        std::vector<int> val(s, 0);
        for (const auto& e : t.edges) {
          ++val[e.ends[0].sw];
          ++val[e.ends[1].sw];
        }
        for (int v = 0; v < s; ++v) {
          if (val[v] < 3) return;
        }
        // Connected only.
        std::vector<int> comp(s);
        for (int v = 0; v < s; ++v) comp[v] = v;
        for (int pass = 0; pass < s; ++pass) {
          for (const auto& e : t.edges) {
            const int m = std::min(comp[e.ends[0].sw], comp[e.ends[1].sw]);
            comp[e.ends[0].sw] = comp[e.ends[1].sw] = m;
          }
        }
        for (int v = 0; v < s; ++v) {
          if (comp[v] != 0) return;
        }
        if (up_to_symmetry && !is_canonical(t)) return;
        TrainTrack u = t;
        u.surface = implied_surface(t);
        if (!is_hyperbolic(*u.surface)) return;
        if (!validate(u, true).ok) return;
        if (!is_recurrent(u)) return;
        out.push_back(std::move(u));
      });
    }
  }
  return out;
}

WeightVector generic_weights(const TrainTrack& track, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coef(500000, 1500000);
  WeightVector w(track.num_edges(), 0);
  for (const auto& ray : cone_rays(track)) {
    const Integer c = coef(rng);
    for (int e = 0; e < track.num_edges(); ++e) w[e] += Rational(c * ray[e]);
  }
  return w;
}

}  // namespace tracklab

#include "tracklab/one_vertex.hpp"

#include <algorithm>
#include <map>

#include "tracklab/cone.hpp"

namespace tracklab {

const char* to_string(EdgeType t) {
  switch (t) {
    case EdgeType::TB: return "t-b";
    case EdgeType::TT: return "t-t";
    case EdgeType::BB: return "b-b";
  }
  return "?";
}

const char* to_string(PairRelation r) {
  switch (r) {
    case PairRelation::Crossing: return "crossing";
    case PairRelation::Nested: return "nested";
    case PairRelation::Separated: return "separated";
  }
  return "?";
}

SwitchboardTrack::SwitchboardTrack(TrainTrack track) : track_(std::move(track)) {
  if (track_.num_switches() != 1) {
    throw TrackError(TrackError::Kind::Precondition, "switchboard tracks have exactly one switch");
  }
  slot_rows(track_);
  for (const auto& e : track_.edges) {
    const Side a = e.ends[0].side, b = e.ends[1].side;
    types_.push_back(a != b ? EdgeType::TB : (a == Side::T ? EdgeType::TT : EdgeType::BB));
  }
}

Sidedness SwitchboardTrack::edge_sidedness(int e) const {
  const bool flip = track_.edges[e].twist != track_.same_side(e);
  return flip ? Sidedness::OneSided : Sidedness::TwoSided;
}

std::vector<int> SwitchboardTrack::edges_of(EdgeType t) const {
  std::vector<int> out;
  for (int e = 0; e < track_.num_edges(); ++e) {
    if (types_[e] == t) out.push_back(e);
  }
  return out;
}

ChordDiagram::ChordDiagram(const SwitchboardTrack& t) : board_(&t) {
  const auto rows = slot_rows(t.track());
  top_ = static_cast<int>(rows[0][0].size());
  bottom_ = static_cast<int>(rows[0][1].size());
}

int ChordDiagram::position(const EndRef& r) const {
  return r.side == Side::T ? r.slot : top_ + (bottom_ - 1 - r.slot);
}

std::array<int, 2> ChordDiagram::chord(int e) const {
  const auto& ends = board_->track().edges[e].ends;
  int a = position(ends[0]), b = position(ends[1]);
  if (a > b) std::swap(a, b);
  return {a, b};
}

bool ChordDiagram::links(std::array<int, 2> a, std::array<int, 2> b) {
  const bool b0_inside = a[0] < b[0] && b[0] < a[1];
  const bool b1_inside = a[0] < b[1] && b[1] < a[1];
  return b0_inside != b1_inside;
}

namespace {

void require_type(const SwitchboardTrack& t, int e, EdgeType want) {
  if (e < 0 || e >= t.track().num_edges() || t.type(e) != want) {
    throw TrackError(TrackError::Kind::Precondition,
                     "edge " + std::to_string(e) + " is not of type " + to_string(want));
  }
}

}  // namespace

bool crossing_tb(const SwitchboardTrack& t, int e, int f) {
  require_type(t, e, EdgeType::TB);
  require_type(t, f, EdgeType::TB);
  if (e == f) throw TrackError(TrackError::Kind::Precondition, "crossing needs two distinct edges");
  ChordDiagram d(t);
  return ChordDiagram::links(d.chord(e), d.chord(f));
}

PairRelation tt_relation(const SwitchboardTrack& t, int e, int f) {
  if (e == f) throw TrackError(TrackError::Kind::Precondition, "relation needs two distinct edges");
  const EdgeType te = t.type(e);
  if (te == EdgeType::TB) throw TrackError(TrackError::Kind::Precondition, "t-b edge given to tt_relation");
  require_type(t, f, te);
  auto span = [&](int x) {
    int a = t.track().edges[x].ends[0].slot, b = t.track().edges[x].ends[1].slot;
    return std::array<int, 2>{std::min(a, b), std::max(a, b)};
  };
  const auto a = span(e), b = span(f);
  if (ChordDiagram::links(a, b)) return PairRelation::Crossing;
  const bool a_in_b = b[0] < a[0] && a[1] < b[1];
  const bool b_in_a = a[0] < b[0] && b[1] < a[1];
  return (a_in_b || b_in_a) ? PairRelation::Nested : PairRelation::Separated;
}

bool tb_separated_from_pair(const SwitchboardTrack& t, int e, int et, int eb) {
  require_type(t, e, EdgeType::TB);
  require_type(t, et, EdgeType::TT);
  require_type(t, eb, EdgeType::BB);
  ChordDiagram d(t);
  const auto& tr = t.track();
  const auto ce = d.chord(e);
  const std::array<int, 2> tops{d.position(tr.edges[et].ends[0]), d.position(tr.edges[et].ends[1])};
  const std::array<int, 2> bots{d.position(tr.edges[eb].ends[0]), d.position(tr.edges[eb].ends[1])};
  // The pair curve runs through the switch twice; the two passages join the
  // plugs of et to those of eb in one of two ways. Outside the switch the
  // bands are disjoint, so only the passages can meet the passage of e.
  for (int m = 0; m < 2; ++m) {
    auto c1 = std::array<int, 2>{tops[0], bots[m]};
    auto c2 = std::array<int, 2>{tops[1], bots[1 - m]};
    for (auto* c : {&c1, &c2}) {
      if ((*c)[0] > (*c)[1]) std::swap((*c)[0], (*c)[1]);
    }
    if (!ChordDiagram::links(c1, ce) && !ChordDiagram::links(c2, ce)) return true;
  }
  return false;
}

ConditionReport check_conditions(const SwitchboardTrack& t) {
  ConditionReport rep;
  const auto tb = t.edges_of(EdgeType::TB);
  const auto tt = t.edges_of(EdgeType::TT);
  const auto bb = t.edges_of(EdgeType::BB);
  const auto& names = t.track().edges;
  auto nm = [&](int e) { return names[e].name; };

  rep.pass[0] = true;
  for (int e : tb) {
    if (t.edge_sidedness(e) == Sidedness::TwoSided) {
      rep.pass[0] = false;
      rep.detail[0] = "t-b edge " + nm(e) + " is two-sided";
      break;
    }
  }

  rep.pass[1] = true;
  for (int a : tt) {
    for (int b : bb) {
      if (rep.pass[1] && t.edge_sidedness(a) == t.edge_sidedness(b)) {
        rep.pass[1] = false;
        rep.detail[1] = "pair " + nm(a) + "," + nm(b) + " are both " + to_string(t.edge_sidedness(a));
      }
    }
  }
  if (!tt.empty()) {
    rep.tt_two_sided_mode = t.edge_sidedness(tt[0]) == Sidedness::TwoSided;
  } else if (!bb.empty()) {
    rep.tt_two_sided_mode = t.edge_sidedness(bb[0]) == Sidedness::OneSided;
  }

  rep.pass[2] = true;
  for (std::size_t i = 0; i < tb.size() && rep.pass[2]; ++i) {
    for (std::size_t j = i + 1; j < tb.size(); ++j) {
      if (crossing_tb(t, tb[i], tb[j])) {
        rep.pass[2] = false;
        rep.detail[2] = "t-b edges " + nm(tb[i]) + "," + nm(tb[j]) + " cross";
        break;
      }
    }
  }

  rep.pass[3] = true;
  for (int e : tb) {
    for (int a : tt) {
      for (int b : bb) {
        if (rep.pass[3] && !tb_separated_from_pair(t, e, a, b)) {
          rep.pass[3] = false;
          rep.detail[3] = "t-b edge " + nm(e) + " is not separated from " + nm(a) + "," + nm(b);
        }
      }
    }
  }

  auto pairwise = [&](const std::vector<int>& es, PairRelation want, int idx) {
    rep.pass[idx] = true;
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        const auto r = tt_relation(t, es[i], es[j]);
        if (rep.pass[idx] && r != want) {
          rep.pass[idx] = false;
          rep.detail[idx] = nm(es[i]) + "," + nm(es[j]) + " are " + to_string(r) + ", expected " + to_string(want);
        }
      }
    }
  };
  pairwise(tt, rep.tt_two_sided_mode ? PairRelation::Crossing : PairRelation::Nested, 4);
  pairwise(bb, rep.tt_two_sided_mode ? PairRelation::Nested : PairRelation::Crossing, 5);

  rep.pass[6] = tt.size() <= 1 || bb.size() <= 1;
  if (!rep.pass[6]) rep.detail[6] = "several t-t and several b-b edges";
  return rep;
}

TwoSidedDecision decide_two_sided(const SwitchboardTrack& t) {
  if (!is_recurrent(t.track())) throw TrackError(TrackError::Kind::Precondition, "track is not recurrent");
  TwoSidedDecision d;
  for (auto& loop : enumerate_loops(t.track(), 2)) {
    if (loop.sidedness == Sidedness::TwoSided) {
      d.witness = std::move(loop);
      break;
    }
  }
  return d;
}

CarriedClassification classify_carried(const SwitchboardTrack& t) {
  const auto rep = check_conditions(t);
  if (!rep.all_pass()) throw TrackError(TrackError::Kind::Precondition, "conditions (1)-(7) do not all hold");
  if (!is_recurrent(t.track())) throw TrackError(TrackError::Kind::Precondition, "track is not recurrent");
  CarriedClassification out;
  for (auto& loop : enumerate_loops(t.track(), 2)) {
    if (loop.sidedness == Sidedness::TwoSided && !out.two_sided_witness) {
      out.has_two_sided = true;
      out.two_sided_witness = loop;
    }
    if (loop.vertex_visits() <= 2) out.components.push_back(std::move(loop));
  }
  std::map<std::vector<Step>, bool> known;
  for (const auto& c : out.components) known[c.steps] = true;
  out.rays_decompose = true;
  for (const auto& ray : cone_rays(t.track())) {
    std::vector<int> w;
    for (const auto& x : ray) w.push_back(static_cast<int>(x.get_si()));
    for (const auto& comp : multicurve_components(t.track(), w)) {
      if (!known.count(comp.steps)) out.rays_decompose = false;
    }
  }
  return out;
}

}  // namespace tracklab

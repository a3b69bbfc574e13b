#include "tracklab/lambda.hpp"

#include <algorithm>

namespace tracklab {

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::NonLoopy: return "non-loopy";
    case EdgeKind::FakeLoopy: return "fake-loopy";
    case EdgeKind::Loopy: return "loopy";
  }
  return "?";
}

LoopyInfo winding_data(const Rational& width, const Rational& shift) {
  LoopyInfo info;
  const Rational d = abs(shift);
  info.shift = shift;
  const Rational ratio = width / d;
  const Integer q = ratio.get_num() / ratio.get_den();
  const Rational rem = width - Rational(q) * d;
  if (rem > 0) {
    info.winding = static_cast<int>(q.get_si()) - 1;
    info.m_w = d - rem;
    info.m_w1 = rem;
  } else {
    info.winding = static_cast<int>(q.get_si()) - 2;
    info.m_w = 0;
    info.m_w1 = d;
  }
  info.self_turn = width - d;
  return info;
}

LambdaStructure::LambdaStructure(TrainTrack track, WeightVector weights)
    : track_(std::move(track)), weights_(std::move(weights)) {
  if (static_cast<int>(weights_.size()) != track_.num_edges()) {
    throw TrackError(TrackError::Kind::Invalid, "weight vector has the wrong length");
  }
  for (int e = 0; e < track_.num_edges(); ++e) {
    if (weights_[e] <= 0) {
      throw TrackError(TrackError::Kind::Invalid, "weight of " + track_.edges[e].name + " is not positive");
    }
  }
  if (!satisfies_switch_equations(track_, weights_)) {
    throw TrackError(TrackError::Kind::Invalid, "weights violate the switch equations");
  }
  pos_ = plug_positions(track_, weights_);
  const auto rows = slot_rows(track_);
  for (int s = 0; s < track_.num_switches(); ++s) {
    for (const HalfEdge& t : rows[s][0]) {
      const auto& a = pos_[t.edge][t.end];
      for (const HalfEdge& b : rows[s][1]) {
        const auto& c = pos_[b.edge][b.end];
        const Rational lo = std::max(a[0], c[0]), hi = std::min(a[1], c[1]);
        if (hi > lo) turns_.push_back(Turn{s, t, b, hi - lo});
      }
    }
  }
  kinds_.assign(track_.num_edges(), EdgeKind::NonLoopy);
  for (int e = 0; e < track_.num_edges(); ++e) {
    if (!track_.is_tb_self_loop(e)) continue;
    const Edge& edge = track_.edges[e];
    const int top_end = edge.ends[0].side == Side::T ? 0 : 1;
    const auto& tp = pos_[e][top_end];
    const auto& bp = pos_[e][1 - top_end];
    const Rational overlap = std::min(tp[1], bp[1]) - std::max(tp[0], bp[0]);
    if (overlap <= 0) {
      kinds_[e] = EdgeKind::FakeLoopy;
      continue;
    }
    const Rational shift = tp[0] - bp[0];
    if (edge.twist || shift == 0) {
      throw TrackError(TrackError::Kind::ClosedLeaf, "edge " + edge.name + " carries a closed leaf");
    }
    kinds_[e] = EdgeKind::Loopy;
    LoopyInfo info = winding_data(weights_[e], shift);
    info.edge = e;
    loopy_.push_back(info);
  }
}

const LoopyInfo* LambdaStructure::loopy_info(int e) const {
  for (const auto& l : loopy_) {
    if (l.edge == e) return &l;
  }
  return nullptr;
}

Rational LambdaStructure::lambda_length(int e) const {
  const Rational& len = track_.edges[e].length;
  if (const LoopyInfo* l = loopy_info(e)) return Rational(l->winding + 2) * len;
  return len;
}

LambdaLengths LambdaStructure::lengths() const {
  LambdaLengths out;
  for (int e = 0; e < track_.num_edges(); ++e) {
    out.per_edge.push_back(lambda_length(e));
    out.total += out.per_edge.back();
    if (e == 0 || out.per_edge.back() < out.minimum) out.minimum = out.per_edge.back();
  }
  return out;
}

LambdaLengths lambda_lengths(const LambdaStructure& ls) { return ls.lengths(); }

Rational LambdaStructure::marginal(HalfEdge h) const {
  Rational sum = 0;
  for (const Turn& t : turns_) {
    if (t.top == h || t.bottom == h) sum += t.mass;
  }
  return sum;
}

bool LambdaStructure::check() const {
  for (int e = 0; e < track_.num_edges(); ++e) {
    for (int k = 0; k < 2; ++k) {
      if (marginal(HalfEdge{e, k}) != weights_[e]) return false;
    }
  }
  for (const auto& l : loopy_) {
    const Rational w(l.winding);
    if (l.m_w < 0 || l.m_w1 <= 0 || l.winding < 0) return false;
    if (l.m_w * (w + 1) + l.m_w1 * (w + 2) != weights_[l.edge]) return false;
    if (l.m_w * w + l.m_w1 * (w + 1) != l.self_turn) return false;
    Rational self = 0;
    for (const Turn& t : turns_) {
      if (t.top.edge == l.edge && t.bottom.edge == l.edge) self += t.mass;
    }
    if (self != l.self_turn) return false;
  }
  for (const Turn& t : turns_) {
    if (track_.end(t.top).side != Side::T || track_.end(t.bottom).side != Side::B) return false;
  }
  return true;
}

}  // namespace tracklab

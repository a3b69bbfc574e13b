#include "tracklab/track_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tracklab {

ParseError::ParseError(Kind kind, int line, int col, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " +
                         (kind == Kind::Syntax ? "syntax error: " : "error: ") + msg),
      kind_(kind),
      line_(line),
      col_(col) {}

namespace {

struct Token {
  std::string text;
  int col;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

struct Ctx {
  int line = 0;

  [[noreturn]] void syntax(const Token& t, const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, line, t.col, msg);
  }
  [[noreturn]] void semantic(const Token& t, const std::string& msg) const {
    throw ParseError(ParseError::Kind::Semantic, line, t.col, msg);
  }

  Rational rational(const Token& t, std::string_view text) const {
    try {
      return parse_rational(text);
    } catch (const std::invalid_argument&) {
      syntax(t, "bad rational '" + std::string(text) + "'");
    }
  }

  // key=value with the expected key.
  std::string_view value(const Token& t, std::string_view key) const {
    std::string_view s = t.text;
    if (s.size() <= key.size() + 1 || s.substr(0, key.size()) != key || s[key.size()] != '=') {
      syntax(t, "expected " + std::string(key) + "=<value>");
    }
    return s.substr(key.size() + 1);
  }

  int integer(const Token& t, std::string_view text) const {
    if (text.empty() || text.size() > 9) syntax(t, "bad integer '" + std::string(text) + "'");
    for (char c : text) {
      if (c < '0' || c > '9') syntax(t, "bad integer '" + std::string(text) + "'");
    }
    return std::stoi(std::string(text));
  }
};

struct Pending {
  Token tok;
  int line;
};

}  // namespace

TrackFile parse_track(std::string_view text) {
  TrackFile f;
  TrainTrack& t = f.track;
  std::map<std::string, std::pair<Rational, Pending>> weights;
  struct TurnLine {
    Pending at;
    std::string sw;
    std::array<std::pair<std::string, int>, 2> ends;
    Rational mass;
  };
  struct LoopyLine {
    Pending at;
    std::string edge;
    int w;
    Rational mw, mw1;
  };
  std::vector<TurnLine> turn_lines;
  std::vector<LoopyLine> loopy_lines;
  std::vector<Pending> edge_at;

  std::istringstream in{std::string(text)};
  std::string raw;
  Ctx c;
  while (std::getline(in, raw)) {
    ++c.line;
    const auto tok = tokenize(raw);
    if (tok.empty()) continue;
    const std::string& kw = tok[0].text;
    auto arity = [&](std::size_t n) {
      if (tok.size() != n) {
        c.syntax(tok.size() > n ? tok[n] : tok.back(), kw + " takes " + std::to_string(n - 1) + " fields");
      }
    };
    if (kw == "surface") {
      arity(4);
      if (t.surface) c.semantic(tok[0], "duplicate surface line");
      if (tok[1].text != "O" && tok[1].text != "N") c.syntax(tok[1], "expected O or N");
      t.surface = SurfaceSig{tok[1].text == "O", c.integer(tok[2], tok[2].text), c.integer(tok[3], tok[3].text)};
    } else if (kw == "switch") {
      arity(2);
      if (t.switch_index(tok[1].text) >= 0) c.semantic(tok[1], "duplicate switch " + tok[1].text);
      t.switches.push_back(Switch{tok[1].text});
    } else if (kw == "edge") {
      arity(6);
      if (t.edge_index(tok[1].text) >= 0) c.semantic(tok[1], "duplicate edge " + tok[1].text);
      Edge e;
      e.name = tok[1].text;
      for (int k = 0; k < 2; ++k) {
        const Token& p = tok[2 + k];
        const auto d1 = p.text.find('.');
        const auto d2 = d1 == std::string::npos ? d1 : p.text.find('.', d1 + 1);
        if (d2 == std::string::npos || d2 != d1 + 2 || (p.text[d1 + 1] != 'T' && p.text[d1 + 1] != 'B')) {
          c.syntax(p, "expected <switch>.<T|B>.<slot>");
        }
        const std::string sw = p.text.substr(0, d1);
        const int slot = c.integer(p, std::string_view(p.text).substr(d2 + 1));
        const int si = t.switch_index(sw);
        if (si < 0) c.semantic(p, "undeclared switch " + sw);
        e.ends[k] = EndRef{si, p.text[d1 + 1] == 'T' ? Side::T : Side::B, slot};
      }
      const auto tw = c.value(tok[4], "twist");
      if (tw != "0" && tw != "1") c.syntax(tok[4], "twist must be 0 or 1");
      e.twist = tw == "1";
      e.length = c.rational(tok[5], c.value(tok[5], "len"));
      if (e.length <= 0) c.semantic(tok[5], "length must be positive");
      for (int k = 0; k < 2; ++k) {
        for (std::size_t o = 0; o < t.edges.size(); ++o) {
          for (const auto& r : t.edges[o].ends) {
            if (r == e.ends[k]) c.semantic(tok[2 + k], "slot already used by edge " + t.edges[o].name);
          }
        }
      }
      if (e.ends[0] == e.ends[1]) c.semantic(tok[3], "both ends in one slot");
      t.edges.push_back(e);
      edge_at.push_back({tok[0], c.line});
    } else if (kw == "weight") {
      arity(2);
      const auto eq = tok[1].text.find('=');
      if (eq == std::string::npos || eq == 0) c.syntax(tok[1], "expected <edge>=<rational>");
      const std::string name = tok[1].text.substr(0, eq);
      if (t.edge_index(name) < 0) c.semantic(tok[1], "unknown edge " + name);
      if (weights.count(name)) c.semantic(tok[1], "duplicate weight for " + name);
      const Rational w = c.rational(tok[1], std::string_view(tok[1].text).substr(eq + 1));
      if (w < 0) c.semantic(tok[1], "negative weight");
      weights.emplace(name, std::make_pair(w, Pending{tok[1], c.line}));
    } else if (kw == "turn") {
      arity(5);
      TurnLine tl{{tok[0], c.line}, tok[1].text, {}, 0};
      for (int k = 0; k < 2; ++k) {
        const Token& p = tok[2 + k];
        const auto d = p.text.rfind('.');
        if (d == std::string::npos || d == 0 || (p.text.substr(d + 1) != "0" && p.text.substr(d + 1) != "1")) {
          c.syntax(p, "expected <edge>.<0|1>");
        }
        tl.ends[k] = {p.text.substr(0, d), p.text[d + 1] - '0'};
      }
      tl.mass = c.rational(tok[4], c.value(tok[4], "mass"));
      turn_lines.push_back(tl);
    } else if (kw == "loopy") {
      arity(5);
      LoopyLine ll{{tok[0], c.line}, tok[1].text, c.integer(tok[2], c.value(tok[2], "w")),
                   c.rational(tok[3], c.value(tok[3], "mw")), c.rational(tok[4], c.value(tok[4], "mw1"))};
      loopy_lines.push_back(ll);
    } else {
      c.syntax(tok[0], "unknown keyword '" + kw + "'");
    }
  }

  // Dense slot rows.
  {
    std::map<std::pair<int, int>, std::set<int>> used;
    for (const auto& e : t.edges) {
      for (const auto& r : e.ends) used[{r.sw, static_cast<int>(r.side)}].insert(r.slot);
    }
    for (const auto& [key, slots] : used) {
      if (*slots.rbegin() + 1 != static_cast<int>(slots.size())) {
        int first = 0;
        while (slots.count(first)) ++first;
        // report at the edge that occupies the largest slot
        for (std::size_t e = 0; e < t.edges.size(); ++e) {
          for (const auto& r : t.edges[e].ends) {
            if (r.sw == key.first && static_cast<int>(r.side) == key.second && r.slot == *slots.rbegin()) {
              throw ParseError(ParseError::Kind::Semantic, edge_at[e].line, edge_at[e].tok.col,
                               "slots of " + t.switches[key.first].name + "." +
                                   side_char(static_cast<Side>(key.second)) + " are not dense (slot " +
                                   std::to_string(first) + " is empty)");
            }
          }
        }
      }
    }
  }

  if (!weights.empty()) {
    WeightVector w;
    for (const auto& e : t.edges) {
      auto it = weights.find(e.name);
      if (it == weights.end()) {
        const auto& p = weights.begin()->second.second;
        throw ParseError(ParseError::Kind::Semantic, p.line, p.tok.col, "no weight for edge " + e.name);
      }
      w.push_back(it->second.first);
    }
    f.weights = w;
  }

  const bool wants_lambda = !turn_lines.empty() || !loopy_lines.empty();
  if (wants_lambda && !f.weights) {
    const auto& p = turn_lines.empty() ? loopy_lines[0].at : turn_lines[0].at;
    throw ParseError(ParseError::Kind::Semantic, p.line, p.tok.col, "turn and loopy lines need weights");
  }
  if (f.weights) {
    try {
      f.lambda.emplace(t, *f.weights);
    } catch (const TrackError& e) {
      if (wants_lambda) {
        const auto& p = turn_lines.empty() ? loopy_lines[0].at : turn_lines[0].at;
        throw ParseError(ParseError::Kind::Semantic, p.line, p.tok.col, std::string("no lambda-structure: ") + e.what());
      }
    }
  }
  for (const auto& tl : turn_lines) {
    auto fail = [&](const std::string& m) {
      throw ParseError(ParseError::Kind::Semantic, tl.at.line, tl.at.tok.col, m);
    };
    const int sw = t.switch_index(tl.sw);
    if (sw < 0) fail("unknown switch " + tl.sw);
    std::array<HalfEdge, 2> h;
    for (int k = 0; k < 2; ++k) {
      const int e = t.edge_index(tl.ends[k].first);
      if (e < 0) fail("unknown edge " + tl.ends[k].first);
      h[k] = HalfEdge{e, tl.ends[k].second};
      if (t.end(h[k]).sw != sw) fail("half-edge " + tl.ends[k].first + " is not at " + tl.sw);
    }
    if (t.end(h[0]).side == t.end(h[1]).side) fail("a turn crosses the switch");
    if (t.end(h[0]).side == Side::B) std::swap(h[0], h[1]);
    Rational derived = 0;
    for (const auto& tr : f.lambda->turns()) {
      if (tr.sw == sw && tr.top == h[0] && tr.bottom == h[1]) derived = tr.mass;
    }
    if (derived != tl.mass) fail("turn mass " + to_string(tl.mass) + " differs from derived " + to_string(derived));
  }
  for (const auto& ll : loopy_lines) {
    auto fail = [&](const std::string& m) {
      throw ParseError(ParseError::Kind::Semantic, ll.at.line, ll.at.tok.col, m);
    };
    const int e = t.edge_index(ll.edge);
    if (e < 0) fail("unknown edge " + ll.edge);
    const LoopyInfo* li = f.lambda->loopy_info(e);
    if (!li) fail("edge " + ll.edge + " is not loopy");
    if (li->winding != ll.w || li->m_w != ll.mw || li->m_w1 != ll.mw1) {
      fail("loopy data differs from derived w=" + std::to_string(li->winding) + " mw=" + to_string(li->m_w) +
           " mw1=" + to_string(li->m_w1));
    }
  }
  return f;
}

TrackFile load_track(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_track(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.line(), e.col(),
                     path + ":" + std::string(e.what()).substr(std::string(e.what()).find(' ') + 1));
  }
}

namespace {

void write_body(std::ostream& o, const TrainTrack& t) {
  if (t.surface) o << "surface " << to_string(*t.surface) << "\n";
  for (const auto& s : t.switches) o << "switch " << s.name << "\n";
  for (const auto& e : t.edges) {
    o << "edge " << e.name;
    for (const auto& r : e.ends) o << " " << t.switches[r.sw].name << "." << side_char(r.side) << "." << r.slot;
    o << " twist=" << (e.twist ? 1 : 0) << " len=" << to_string(e.length) << "\n";
  }
}

}  // namespace

std::string format_track(const TrainTrack& track, const WeightVector* weights) {
  std::ostringstream o;
  write_body(o, track);
  if (weights) {
    for (int e = 0; e < track.num_edges(); ++e) o << "weight " << track.edges[e].name << "=" << to_string((*weights)[e]) << "\n";
  }
  return o.str();
}

std::string format_track(const LambdaStructure& ls) {
  const auto& t = ls.track();
  std::ostringstream o;
  o << format_track(t, &ls.weights());
  for (const auto& tr : ls.turns()) {
    if (tr.mass == 0) continue;
    o << "turn " << t.switches[tr.sw].name << " " << t.edges[tr.top.edge].name << "." << tr.top.end << " "
      << t.edges[tr.bottom.edge].name << "." << tr.bottom.end << " mass=" << to_string(tr.mass) << "\n";
  }
  for (const auto& li : ls.loopy()) {
    o << "loopy " << t.edges[li.edge].name << " w=" << li.winding << " mw=" << to_string(li.m_w)
      << " mw1=" << to_string(li.m_w1) << "\n";
  }
  return o.str();
}

std::string format_trace(const RefinementTrace& trace) {
  std::ostringstream o;
  for (const auto& m : trace.moves) {
    o << "move kind=" << to_string(m.kind) << " target=" << m.target << " lw_before=" << to_string(m.length_before)
      << " lw_after=" << to_string(m.length_after) << " mw_before=" << to_string(m.min_before)
      << " mw_after=" << to_string(m.min_after) << " predicted_delta=" << to_string(m.predicted_delta)
      << " identity=" << (m.identity_holds ? 1 : 0) << " loopy_involved=" << (m.loopy_involved ? 1 : 0);
    if (!m.note.empty()) o << " note=\"" << m.note << "\"";
    o << "\n";
  }
  return o.str();
}

}  // namespace tracklab

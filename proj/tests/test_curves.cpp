#include <doctest.h>

#include <random>

#include "tracklab/corpus.hpp"
#include "tracklab/curves.hpp"

using namespace tracklab;

namespace {

IntersectionVector vec(std::vector<Rational> v) {
  std::vector<std::string> f;
  for (std::size_t i = 0; i < v.size(); ++i) f.push_back("a" + std::to_string(i));
  return IntersectionVector(f, std::move(v));
}

TwistSpec one(long long n, const Rational& iag, const Rational& igb, const Rational& iab) {
  return TwistSpec{{TwistComponent{"g", n, iag, igb}}, iab};
}

Rational rnd(std::mt19937_64& rng, int hi) {
  Rational q(static_cast<long>(rng() % (hi + 1)), static_cast<long>(1 + rng() % 3));
  q.canonicalize();
  return q;
}

TwistSpec random_spec(std::mt19937_64& rng) {
  TwistSpec s;
  const int r = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < r; ++i) {
    const long long n = static_cast<long long>(rng() % 13) - 6;
    s.components.push_back(TwistComponent{"g" + std::to_string(i), n, rnd(rng, 6), rnd(rng, 6)});
  }
  s.i_alpha_beta = rnd(rng, 8);
  return s;
}

// Direct transcription of the sandwich, one term at a time.
Interval sandwich(const TwistSpec& s) {
  Rational up = s.i_alpha_beta, down = -s.i_alpha_beta;
  for (const auto& c : s.components) {
    const Rational n(static_cast<long>(c.exponent < 0 ? -c.exponent : c.exponent));
    up += n * c.i_alpha_gamma * c.i_gamma_beta;
    down += (n - 2) * c.i_alpha_gamma * c.i_gamma_beta;
  }
  return Interval{down < 0 ? Rational(0) : down, up};
}

}  // namespace

TEST_CASE("d_A distance") {
  CHECK(dA_distance(vec({1, 3}), vec({1, 3})) == 0);
  CHECK(dA_distance(vec({1, 3}), vec({2, 1})) == 2);
  CHECK(dA_distance(vec({Rational(1, 2)}), vec({0})) == Rational(1, 2));
  CHECK_THROWS_AS(dA_distance(vec({1, 3}), vec({1, 3, 0})), CurveError);
  CHECK_THROWS_AS(dA_distance(vec({1}), IntersectionVector({"b"}, {1})), CurveError);
  CHECK_THROWS_AS(vec({-1}), CurveError);
  CHECK_THROWS_AS(IntersectionVector({"a", "b"}, {1}), CurveError);
  CHECK(vec({4, 5}).at("a1") == 5);
  CHECK_FALSE(vec({4, 5}).has("b"));
  CHECK_THROWS_AS(vec({4}).at("b"), CurveError);
}

TEST_CASE("d_A is a metric on random vectors") {
  std::mt19937_64 rng(corpus_seed());
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<Rational> a, b, c;
    for (int i = 0; i < n; ++i) {
      a.push_back(rnd(rng, 20));
      b.push_back(rnd(rng, 20));
      c.push_back(rnd(rng, 20));
    }
    const auto u = vec(a), v = vec(b), w = vec(c);
    CHECK(dA_distance(u, w) <= dA_distance(u, v) + dA_distance(v, w));
    CHECK(dA_distance(u, v) == dA_distance(v, u));
    CHECK(dA_distance(u, u) == 0);
    CHECK((dA_distance(u, v) == 0) == (u == v));
  }
}

TEST_CASE("Ivanov bounds examples") {
  const auto b = ivanov_bounds(one(5, 1, 1, 0));
  CHECK(b.lo == 3);
  CHECK(b.hi == 5);

  // the identity twist is only bounded by i(alpha, beta)
  const auto id = ivanov_bounds(one(0, 2, 3, 4));
  CHECK(id.lo == 0);
  CHECK(id.hi == 4);
  CHECK(id.contains(4));

  // negative exponents count by absolute value
  CHECK(ivanov_bounds(one(-5, 1, 1, 0)).lo == 3);
  CHECK(ivanov_bounds(one(-5, 1, 1, 0)).hi == 5);

  // two components add up
  TwistSpec two{{TwistComponent{"g1", 3, 2, 1}, TwistComponent{"g2", -4, 1, 3}}, 1};
  const auto t = ivanov_bounds(two);
  CHECK(t.hi == 3 * 2 * 1 + 4 * 1 * 3 + 1);
  CHECK(t.lo == 1 * 2 * 1 + 2 * 1 * 3 - 1);
  const auto a = ivanov_bounds(TwistSpec{{two.components[0]}, 0});
  const auto c = ivanov_bounds(TwistSpec{{two.components[1]}, 0});
  CHECK(t.hi == a.hi + c.hi + 1);
  CHECK(t.lo == a.lo + c.lo - 1);

  CHECK_THROWS_AS(ivanov_bounds(one(1, -1, 1, 0)), CurveError);
  CHECK_THROWS_AS(ivanov_bounds(one(1, 1, 1, -1)), CurveError);
}

TEST_CASE("Ivanov bounds agree with the sandwich and stay narrow") {
  std::mt19937_64 rng(corpus_seed() + 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = random_spec(rng);
    const auto b = ivanov_bounds(s);
    const auto ref = sandwich(s);
    CHECK(b.lo == ref.lo);
    CHECK(b.hi == ref.hi);
    CHECK(b.lo <= b.hi);
    CHECK(b.width() <= ivanov_width_bound(s));
    Rational bound = 2 * s.i_alpha_beta;
    for (const auto& c : s.components) bound += 2 * c.i_alpha_gamma * c.i_gamma_beta;
    CHECK(ivanov_width_bound(s) == bound);
    // once every exponent is at least 2 in size and the lower bound is positive, the width is fixed
    bool big = true;
    for (const auto& c : s.components) big = big && (c.exponent >= 2 || c.exponent <= -2);
    if (big && b.lo > 0) CHECK(b.width() == bound);
  }
}

TEST_CASE("twist limit") {
  const std::vector<std::string> family{"x", "y", "z"};
  // a twist that misses alpha fixes it
  const auto zero = twist_limit(one(7, 0, 4, 1), family, {{1}, {2}, {3}});
  for (const auto& v : zero.values) CHECK(v == 0);

  const auto six = twist_limit(one(3, 2, 1, 0), family, {{1}, {Rational(5, 2)}, {0}});
  CHECK(six.at("x") == 6);
  CHECK(six.at("y") == 15);
  CHECK(six.at("z") == 0);
  CHECK(six.family == family);

  CHECK_THROWS_AS(twist_limit(one(3, 2, 1, 0), family, {{1}, {2}}), CurveError);
  CHECK_THROWS_AS(twist_limit(one(3, 2, 1, 0), {"x"}, {{1, 2}}), CurveError);
  CHECK_THROWS_AS(twist_limit(one(3, 2, 1, 0), {"x"}, {{-1}}), CurveError);
}

TEST_CASE("scaled bounds converge to the twist limit") {
  std::mt19937_64 rng(corpus_seed() + 2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_spec(rng);
    std::vector<Rational> row;
    for (const auto& c : s.components) row.push_back(c.i_gamma_beta);
    const Rational limit = twist_limit(s, {"beta"}, {row}).at("beta");
    Rational prev_gap = -1;
    for (long long k : {1000LL, 1000000LL}) {
      const Rational kk(static_cast<long>(k));
      const auto b = ivanov_bounds(s.scaled(k));
      const Interval scaled{b.lo / kk, b.hi / kk};
      const Rational gap = std::max(Rational(abs(scaled.hi - limit)), Rational(abs(scaled.lo - limit)));
      CHECK(gap <= ivanov_width_bound(s) / kk);
      if (limit > 0 && b.lo > 0) CHECK(scaled.contains(limit));
      if (prev_gap >= 0) CHECK(gap <= prev_gap);
      prev_gap = gap;
    }
    CHECK(s.scaled(3).components.size() == s.components.size());
    CHECK(s.scaled(3).i_alpha_beta == s.i_alpha_beta);
  }
}

TEST_CASE("one-sided atoms") {
  const HoledPlane P{{"d1", "d2"}, "eta", "gamma"};
  const auto lam = [](Rational d1, Rational d2, Rational eta) {
    return IntersectionVector({"d1", "d2", "eta"}, {d1, d2, eta});
  };
  const auto none = scharlemann_atom(lam(2, 1, 2), P);
  CHECK_FALSE(none.atom);
  CHECK(none.weight == 0);

  const auto yes = scharlemann_atom(lam(1, 0, 3), P);
  CHECK(yes.atom);
  CHECK(yes.weight == 4);
  CHECK(yes.core == "gamma");

  CHECK_THROWS_AS(scharlemann_atom(lam(1, 1, 1), HoledPlane{{"d1", "d3"}, "eta", "gamma"}), CurveError);
  CHECK_THROWS_AS(scharlemann_atom(lam(1, 1, 1), HoledPlane{{"d1"}, "mu", "gamma"}), CurveError);
  CHECK_THROWS_AS(scharlemann_atom(lam(1, 1, 1), HoledPlane{{}, "eta", "gamma"}), CurveError);
}

TEST_CASE("atom test is monotone in eta and scales linearly") {
  std::mt19937_64 rng(corpus_seed() + 3);
  const HoledPlane P{{"d1", "d2"}, "eta", "gamma"};
  for (int trial = 0; trial < 500; ++trial) {
    const Rational d1 = rnd(rng, 10), d2 = rnd(rng, 10), eta = rnd(rng, 12);
    const IntersectionVector lam({"d1", "d2", "eta"}, {d1, d2, eta});
    const auto r = scharlemann_atom(lam, P);
    CHECK(r.atom == (std::max(d1, d2) < eta));
    for (const Rational& more : {Rational(1, 3), Rational(1), Rational(5)}) {
      const auto s = scharlemann_atom(IntersectionVector({"d1", "d2", "eta"}, {d1, d2, eta + more}), P);
      if (r.atom) CHECK(s.atom);
      CHECK(s.weight >= r.weight);
    }
    for (const Rational& c : {Rational(1, 7), Rational(3), Rational(1000)}) {
      const auto s = scharlemann_atom(IntersectionVector({"d1", "d2", "eta"}, {c * d1, c * d2, c * eta}), P);
      CHECK(s.atom == r.atom);
      CHECK(s.weight == c * r.weight);
    }
  }
}

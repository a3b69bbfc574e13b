#include "tracklab/lp.hpp"

#include <stdexcept>

namespace tracklab::lp {

namespace {

// Tableau rows: basic variable expressed in non-basic ones. Column layout:
// [structural | slack/surplus | artificial], rhs kept separately.
struct Tableau {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<int> basis;
  int cols = 0;

  void pivot(int row, int col) {
    const Rational p = a[row][col];
    for (auto& v : a[row]) v /= p;
    b[row] /= p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (static_cast<int>(r) == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (int c = 0; c < cols; ++c) {
        if (a[row][c] != 0) a[r][c] -= f * a[row][c];
      }
      b[r] -= f * b[row];
    }
    basis[row] = col;
  }

  // Minimizes cost over columns allowed[c]; returns false if unbounded.
  bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    while (true) {
      // Reduced costs: c_j - c_B B^-1 A_j.
      int enter = -1;
      for (int c = 0; c < cols && enter < 0; ++c) {
        if (!allowed[c]) continue;
        bool basic = false;
        for (int bv : basis) basic |= (bv == c);
        if (basic) continue;
        Rational rc = cost[c];
        for (std::size_t r = 0; r < a.size(); ++r) rc -= cost[basis[r]] * a[r][c];
        if (rc < 0) enter = c;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r][enter] <= 0) continue;
        Rational ratio = b[r] / a[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = static_cast<int>(r);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Solution solve(const Problem& problem) {
  const int n = problem.num_vars;
  const int m = static_cast<int>(problem.constraints.size());
  int slack_count = 0;
  for (const auto& c : problem.constraints) slack_count += (c.rel != Relation::Equal);
  const int art_start = n + slack_count;
  Tableau t;
  t.cols = art_start + m;
  t.a.assign(m, std::vector<Rational>(t.cols, 0));
  t.b.assign(m, 0);
  t.basis.assign(m, -1);
  int slack = n;
  for (int r = 0; r < m; ++r) {
    const auto& c = problem.constraints[r];
    if (static_cast<int>(c.coeffs.size()) != n) throw std::invalid_argument("constraint width mismatch");
    for (int j = 0; j < n; ++j) t.a[r][j] = c.coeffs[j];
    t.b[r] = c.rhs;
    if (c.rel == Relation::LessEq) t.a[r][slack++] = 1;
    if (c.rel == Relation::GreaterEq) t.a[r][slack++] = -1;
    if (t.b[r] < 0) {
      for (auto& v : t.a[r]) v = -v;
      t.b[r] = -t.b[r];
    }
    t.a[r][art_start + r] = 1;
    t.basis[r] = art_start + r;
  }

  std::vector<bool> all(t.cols, true);
  std::vector<Rational> phase1(t.cols, 0);
  for (int r = 0; r < m; ++r) phase1[art_start + r] = 1;
  t.optimize(phase1, all);
  Rational infeas = 0;
  for (int r = 0; r < m; ++r) {
    if (t.basis[r] >= art_start) infeas += t.b[r];
  }
  Solution sol;
  if (infeas != 0) {
    sol.status = Status::Infeasible;
    return sol;
  }
  // Drive remaining artificials (at zero level) out of the basis when possible.
  for (int r = 0; r < m; ++r) {
    if (t.basis[r] < art_start) continue;
    for (int c = 0; c < art_start; ++c) {
      if (t.a[r][c] != 0) {
        t.pivot(r, c);
        break;
      }
    }
  }
  std::vector<bool> allowed(t.cols, true);
  for (int c = art_start; c < t.cols; ++c) allowed[c] = false;
  std::vector<Rational> cost(t.cols, 0);
  for (int j = 0; j < n; ++j) cost[j] = problem.objective[j];
  if (!t.optimize(cost, allowed)) {
    sol.status = Status::Unbounded;
    return sol;
  }
  sol.status = Status::Optimal;
  sol.x.assign(n, 0);
  for (int r = 0; r < m; ++r) {
    if (t.basis[r] < n) sol.x[t.basis[r]] = t.b[r];
  }
  for (int j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace tracklab::lp

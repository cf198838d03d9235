#pragma once

#include <vector>

#include "toricmmp/linalg.hpp"

namespace toricmmp {

/// Exact dense two-phase simplex over an ordered field (Rational or Scalar).
/// Bland's rule throughout, so it never cycles. Problem sizes in this project
/// stay in the tens of rows and columns.
namespace lp {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Status { Optimal, Infeasible, Unbounded };

template <class F>
struct Row {
  Vec<F> coeffs;
  Relation rel;
  F rhs;
};

template <class F>
struct Problem {
  int num_vars = 0;
  std::vector<Row<F>> rows;
  Vec<F> objective;           // maximized; empty means pure feasibility
  std::vector<bool> nonneg;   // per variable; empty means all free

  void add(Vec<F> coeffs, Relation rel, F rhs) { rows.push_back({std::move(coeffs), rel, std::move(rhs)}); }
};

template <class F>
struct Result {
  Status status = Status::Infeasible;
  F value{};
  Vec<F> x;
};

template <class F>
class Tableau {
 public:
  Tableau(Mat<F> t, std::vector<int> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  /// Maximizes cost . x over the current feasible basis using only columns
  /// marked allowed. Returns false when unbounded.
  bool optimize(const Vec<F>& cost, const std::vector<bool>& allowed) {
    const int m = static_cast<int>(t_.size());
    const int cols = static_cast<int>(cost.size());
    while (true) {
      int enter = -1;
      for (int k = 0; k < cols && enter < 0; ++k) {
        if (!allowed[k] || is_basic(k)) continue;
        F r = cost[k];
        for (int i = 0; i < m; ++i)
          if (!is_zero(t_[i][k])) r -= cost[basis_[i]] * t_[i][k];
        if (sign_of(r) > 0) enter = k;
      }
      if (enter < 0) return true;
      int leave = -1;
      F best{};
      for (int i = 0; i < m; ++i) {
        if (sign_of(t_[i][enter]) <= 0) continue;
        F ratio = t_[i][cols] / t_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    const int m = static_cast<int>(t_.size());
    const int width = static_cast<int>(t_[row].size());
    F inv = F(1) / t_[row][col];
    for (int j = 0; j < width; ++j)
      if (!is_zero(t_[row][j])) t_[row][j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || is_zero(t_[i][col])) continue;
      F f = t_[i][col];
      for (int j = 0; j < width; ++j)
        if (!is_zero(t_[row][j])) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  bool is_basic(int col) const {
    for (int b : basis_)
      if (b == col) return true;
    return false;
  }

  Mat<F>& table() { return t_; }
  std::vector<int>& basis() { return basis_; }

 private:
  Mat<F> t_;  // last column is the right-hand side
  std::vector<int> basis_;
};

template <class F>
Result<F> solve(const Problem<F>& p) {
  const int n = p.num_vars;
  std::vector<int> pos(n), neg(n, -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    pos[j] = cols++;
    bool nn = !p.nonneg.empty() && p.nonneg[j];
    if (!nn) neg[j] = cols++;
  }
  const int structural = cols;
  const int m = static_cast<int>(p.rows.size());

  struct Prepared {
    Vec<F> a;
    Relation rel;
    F b;
  };
  std::vector<Prepared> prep;
  prep.reserve(m);
  int extra = 0;
  for (const auto& row : p.rows) {
    Prepared q{Vec<F>(structural, F(0)), row.rel, row.rhs};
    for (int j = 0; j < n; ++j) {
      if (is_zero(row.coeffs[j])) continue;
      q.a[pos[j]] = row.coeffs[j];
      if (neg[j] >= 0) q.a[neg[j]] = -row.coeffs[j];
    }
    if (sign_of(q.b) < 0) {
      for (auto& v : q.a) v = -v;
      q.b = -q.b;
      if (q.rel == Relation::LessEq) q.rel = Relation::GreaterEq;
      else if (q.rel == Relation::GreaterEq) q.rel = Relation::LessEq;
    }
    extra += (q.rel == Relation::GreaterEq) ? 2 : 1;
    prep.push_back(std::move(q));
  }
  const int total = structural + extra;
  Mat<F> t(m, Vec<F>(total + 1, F(0)));
  std::vector<int> basis(m);
  std::vector<bool> artificial(total, false);
  int next = structural;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < structural; ++j) t[i][j] = prep[i].a[j];
    t[i][total] = prep[i].b;
    switch (prep[i].rel) {
      case Relation::LessEq:
        t[i][next] = F(1);
        basis[i] = next++;
        break;
      case Relation::GreaterEq:
        t[i][next++] = F(-1);
        t[i][next] = F(1);
        artificial[next] = true;
        basis[i] = next++;
        break;
      case Relation::Equal:
        t[i][next] = F(1);
        artificial[next] = true;
        basis[i] = next++;
        break;
    }
  }

  Tableau<F> tab(std::move(t), std::move(basis));
  std::vector<bool> allowed(total, true);
  Vec<F> phase1(total, F(0));
  bool any_artificial = false;
  for (int k = 0; k < total; ++k)
    if (artificial[k]) {
      phase1[k] = F(-1);
      any_artificial = true;
    }
  Result<F> res;
  if (any_artificial) {
    tab.optimize(phase1, allowed);
    F infeas(0);
    for (int i = 0; i < m; ++i)
      if (artificial[tab.basis()[i]]) infeas += tab.table()[i][total];
    if (sign_of(infeas) != 0) {
      res.status = Status::Infeasible;
      return res;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (!artificial[tab.basis()[i]]) continue;
      for (int k = 0; k < total; ++k) {
        if (artificial[k] || tab.is_basic(k) || is_zero(tab.table()[i][k])) continue;
        tab.pivot(i, k);
        break;
      }
    }
    for (int k = 0; k < total; ++k)
      if (artificial[k]) allowed[k] = false;
  }
  Vec<F> cost(total, F(0));
  if (!p.objective.empty()) {
    for (int j = 0; j < n; ++j) {
      cost[pos[j]] = p.objective[j];
      if (neg[j] >= 0) cost[neg[j]] = -p.objective[j];
    }
  }
  if (!tab.optimize(cost, allowed)) {
    res.status = Status::Unbounded;
    return res;
  }
  Vec<F> col_val(total, F(0));
  for (int i = 0; i < m; ++i) col_val[tab.basis()[i]] = tab.table()[i][total];
  res.status = Status::Optimal;
  res.x.assign(n, F(0));
  for (int j = 0; j < n; ++j) {
    res.x[j] = col_val[pos[j]];
    if (neg[j] >= 0) res.x[j] -= col_val[neg[j]];
  }
  res.value = F(0);
  if (!p.objective.empty())
    for (int j = 0; j < n; ++j) res.value += p.objective[j] * res.x[j];
  return res;
}

template <class F>
bool feasible(const Problem<F>& p) {
  Problem<F> q = p;
  q.objective.clear();
  return solve(q).status == Status::Optimal;
}

}  // namespace lp
}  // namespace toricmmp

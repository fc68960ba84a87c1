#include "hyperflow/simplex.hpp"

namespace hyperflow {

namespace {

// Dense tableau for the phase-one problem: minimize the sum of artificial
// variables subject to Ax + Ia = b with b >= 0. Bland's rule on both the
// entering and leaving choices prevents cycling.
struct Tableau {
  size_t m, n;                      // constraint rows, total columns (no rhs)
  std::vector<std::vector<Rat>> a;  // m rows of n coefficients
  std::vector<Rat> b;               // rhs, kept nonnegative
  std::vector<Rat> cost;            // reduced-cost row
  Rat cost_rhs;                     // negated objective value
  std::vector<size_t> basis;        // basic column per row

  void pivot(size_t prow, size_t pcol) {
    Rat p = a[prow][pcol];
    for (size_t j = 0; j < n; ++j) a[prow][j] /= p;
    b[prow] /= p;
    for (size_t r = 0; r < m; ++r) {
      if (r == prow) continue;
      Rat f = a[r][pcol];
      if (f == 0) continue;
      for (size_t j = 0; j < n; ++j) a[r][j] -= f * a[prow][j];
      b[r] -= f * b[prow];
    }
    Rat f = cost[pcol];
    if (f != 0) {
      for (size_t j = 0; j < n; ++j) cost[j] -= f * a[prow][j];
      cost_rhs -= f * b[prow];
    }
    basis[prow] = pcol;
  }
};

}  // namespace

std::optional<std::vector<Rat>> find_feasible(const LinearSystem& sys) {
  const size_t nx = sys.nvars;
  size_t nslack = 0;
  for (const auto& r : sys.rows)
    if (!r.is_eq) ++nslack;

  const size_t m = sys.rows.size();
  const size_t n = nx + nslack + m;  // structural + slack + artificial
  Tableau t;
  t.m = m;
  t.n = n;
  t.a.assign(m, std::vector<Rat>(n, Rat(0)));
  t.b.assign(m, Rat(0));
  t.cost.assign(n, Rat(0));
  t.cost_rhs = 0;
  t.basis.assign(m, 0);

  size_t slack_at = nx;
  for (size_t r = 0; r < m; ++r) {
    const auto& row = sys.rows[r];
    bool flip = row.rhs < 0;
    for (size_t j = 0; j < nx; ++j) t.a[r][j] = flip ? -row.coeff[j] : row.coeff[j];
    t.b[r] = flip ? -row.rhs : row.rhs;
    if (!row.is_eq) {
      t.a[r][slack_at] = flip ? Rat(-1) : Rat(1);
      ++slack_at;
    }
    t.a[r][nx + nslack + r] = 1;
    t.basis[r] = nx + nslack + r;
  }

  // Reduced costs for min(sum of artificials) with the artificial basis:
  // cost_j = -sum_r a[r][j] over non-artificial columns.
  for (size_t j = 0; j < nx + nslack; ++j)
    for (size_t r = 0; r < m; ++r) t.cost[j] -= t.a[r][j];
  for (size_t r = 0; r < m; ++r) t.cost_rhs -= t.b[r];

  for (;;) {
    // Bland: the lowest-index column with negative reduced cost.
    size_t enter = n;
    for (size_t j = 0; j < n; ++j) {
      if (t.cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n) break;

    // Ratio test; ties broken by the lowest basic-variable index.
    size_t leave = m;
    Rat best;
    for (size_t r = 0; r < m; ++r) {
      if (t.a[r][enter] <= 0) continue;
      Rat ratio = t.b[r] / t.a[r][enter];
      if (leave == m || ratio < best ||
          (ratio == best && t.basis[r] < t.basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) break;  // phase one is bounded; unreachable in practice
    t.pivot(leave, enter);
  }

  if (t.cost_rhs != 0) return std::nullopt;  // residual artificial mass

  std::vector<Rat> x(nx, Rat(0));
  for (size_t r = 0; r < m; ++r)
    if (t.basis[r] < nx) x[t.basis[r]] = t.b[r];
  return x;
}

}  // namespace hyperflow
